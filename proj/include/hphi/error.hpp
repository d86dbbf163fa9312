#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hphi {

/// Numerical tolerances shared by every module.
namespace tol {
inline constexpr double norm = 1e-9;     // |sum - 1| accepted on input spectra
inline constexpr double clamp = 1e-12;   // negative entries above -clamp are set to 0
inline constexpr double eq = 1e-12;      // prefix-sum / componentwise comparisons
inline constexpr double mult = 1e-10;    // eigenvalue multiplicity grouping
inline constexpr double alpha_guard = 1e-6;
inline constexpr double decomp = 1e-11;
inline constexpr double herm = 1e-10;    // Hermiticity of ingested matrices
}  // namespace tol

enum class ErrorKind {
  NotNormalized,
  NegativeEntry,
  DimMismatch,
  NumericalOverflow,
  BadParameter,
  InadmissibleFamily,
  BadEpsilon,
  UniformInput,
  NotComparable,
  IneligibleFamily,
  BadDimension,
  BallViolation,
  DegenerateInterval,
  UnknownSuite,
  NotHermitian,
  NotPSD,
  ParseError,
  BadGrid,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NegativeEntry: return "NegativeEntry";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::NumericalOverflow: return "NumericalOverflow";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::InadmissibleFamily: return "InadmissibleFamily";
    case ErrorKind::BadEpsilon: return "BadEpsilon";
    case ErrorKind::UniformInput: return "UniformInput";
    case ErrorKind::NotComparable: return "NotComparable";
    case ErrorKind::IneligibleFamily: return "IneligibleFamily";
    case ErrorKind::BadDimension: return "BadDimension";
    case ErrorKind::BallViolation: return "BallViolation";
    case ErrorKind::DegenerateInterval: return "DegenerateInterval";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::BadGrid: return "BadGrid";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void check_epsilon(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw Error(ErrorKind::BadEpsilon, "epsilon must lie in (0,1], got " + std::to_string(eps));
  }
}

}  // namespace hphi
