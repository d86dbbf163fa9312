#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "hphi/error.hpp"
#include "hphi/spectrum.hpp"

namespace hphi {

enum class Monotonicity { StrictlyIncreasing, StrictlyDecreasing };
enum class HCurvature { Concave, StrictlyConcave, Affine, Convex, Other };
enum class PhiCurvature { StrictlyConcave, StrictlyConvex };

using ScalarFn = std::function<double(double)>;

/// An (h, phi)-entropy H(rho) = h(sum_i phi(lambda_i)) together with the
/// analytic traits of h and phi. Traits are declared by the caller, never
/// inferred.
class EntropyFamily {
 public:
  struct Traits {
    Monotonicity h_monotonicity;
    HCurvature h_curvature;
    PhiCurvature phi_curvature;
  };

  /// Builds a user-supplied family. Throws InadmissibleFamily when the
  /// declared pairing is not one of (increasing h, concave phi) or
  /// (decreasing h, convex phi), or when phi(0) != 0 or h(phi(1)) != 0.
  static EntropyFamily custom(std::string name, ScalarFn h, ScalarFn phi, Traits traits,
                              std::optional<double> param = std::nullopt) {
    EntropyFamily f(std::move(name), std::move(h), std::move(phi), traits, param);
    f.validate();
#ifndef NDEBUG
    if (!f.phi_curvature_consistent()) {
      throw Error(ErrorKind::InadmissibleFamily,
                  "declared curvature of phi contradicts sampled values for " + f.name_);
    }
#endif
    return f;
  }

  const std::string& name() const noexcept { return name_; }
  std::optional<double> param() const noexcept { return param_; }
  const Traits& traits() const noexcept { return traits_; }
  double h(double t) const { return h_(t); }
  double phi(double x) const { return x == 0.0 ? 0.0 : phi_(x); }
  const ScalarFn& phi_fn() const noexcept { return phi_; }

  /// Label including the parameter, e.g. "renyi(0.5)".
  std::string label() const {
    if (!param_) return name_;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s(%.15g)", name_.c_str(), *param_);
    return buf;
  }

  /// Second differences of phi on a 100-point grid agree in sign with the
  /// declared curvature.
  bool phi_curvature_consistent() const {
    constexpr int n = 100;
    const double step = 1.0 / n;
    for (int i = 1; i < n; ++i) {
      const double x = i * step;
      const double second = phi(x - step) + phi(x + step) - 2.0 * phi(x);
      const bool concave = traits_.phi_curvature == PhiCurvature::StrictlyConcave;
      if (concave && second > 1e-12) return false;
      if (!concave && second < -1e-12) return false;
    }
    return true;
  }

 private:
  friend EntropyFamily von_neumann();
  friend EntropyFamily renyi(double);
  friend EntropyFamily tsallis(double);

  EntropyFamily(std::string name, ScalarFn h, ScalarFn phi, Traits traits,
                std::optional<double> param)
      : name_(std::move(name)), param_(param), h_(std::move(h)), phi_(std::move(phi)),
        traits_(traits) {}

  void validate() const {
    const bool increasing_concave = traits_.h_monotonicity == Monotonicity::StrictlyIncreasing &&
                                    traits_.phi_curvature == PhiCurvature::StrictlyConcave;
    const bool decreasing_convex = traits_.h_monotonicity == Monotonicity::StrictlyDecreasing &&
                                   traits_.phi_curvature == PhiCurvature::StrictlyConvex;
    if (!increasing_concave && !decreasing_convex) {
      throw Error(ErrorKind::InadmissibleFamily,
                  name_ + ": h and phi traits are not an admissible pairing");
    }
    if (std::abs(phi_(0.0)) > tol::eq && std::isfinite(phi_(0.0))) {
      throw Error(ErrorKind::InadmissibleFamily, name_ + ": phi(0) must vanish");
    }
    if (!(std::abs(h_(phi_(1.0))) <= tol::eq)) {
      throw Error(ErrorKind::InadmissibleFamily, name_ + ": h(phi(1)) must vanish");
    }
  }

  std::string name_;
  std::optional<double> param_;
  ScalarFn h_;
  ScalarFn phi_;
  Traits traits_;
};

namespace detail {
inline void check_family_param(std::string_view what, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::BadParameter, std::string(what) + " parameter must be positive");
  }
  if (std::abs(p - 1.0) < tol::alpha_guard) {
    throw Error(ErrorKind::BadParameter,
                std::string(what) + " parameter too close to 1; use von_neumann");
  }
}
}  // namespace detail

inline EntropyFamily von_neumann() {
  return EntropyFamily(
      "von_neumann", [](double t) { return t; },
      [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; },
      {Monotonicity::StrictlyIncreasing, HCurvature::Affine, PhiCurvature::StrictlyConcave},
      std::nullopt);
}

inline EntropyFamily renyi(double alpha) {
  detail::check_family_param("renyi", alpha);
  const double scale = 1.0 / (1.0 - alpha);
  EntropyFamily::Traits traits =
      alpha < 1.0 ? EntropyFamily::Traits{Monotonicity::StrictlyIncreasing,
                                          HCurvature::StrictlyConcave,
                                          PhiCurvature::StrictlyConcave}
                  : EntropyFamily::Traits{Monotonicity::StrictlyDecreasing, HCurvature::Convex,
                                          PhiCurvature::StrictlyConvex};
  return EntropyFamily(
      "renyi", [scale](double t) { return scale * std::log2(t); },
      [alpha](double x) { return x > 0.0 ? std::pow(x, alpha) : 0.0; }, traits, alpha);
}

inline EntropyFamily tsallis(double q) {
  detail::check_family_param("tsallis", q);
  const double scale = 1.0 / (1.0 - q);
  return EntropyFamily(
      "tsallis", [scale](double t) { return t - scale; },
      [q, scale](double x) { return x > 0.0 ? scale * std::pow(x, q) : 0.0; },
      {Monotonicity::StrictlyIncreasing, HCurvature::Affine, PhiCurvature::StrictlyConcave}, q);
}

/// Looks up a built-in family by name: von_neumann, renyi or tsallis.
inline EntropyFamily builtin(std::string_view name, std::optional<double> param = std::nullopt) {
  if (name == "von_neumann") return von_neumann();
  if (name == "renyi" || name == "tsallis") {
    if (!param) throw Error(ErrorKind::BadParameter, std::string(name) + " requires --param");
    return name == "renyi" ? renyi(*param) : tsallis(*param);
  }
  throw Error(ErrorKind::BadParameter, "unknown entropy family '" + std::string(name) + "'");
}

/// H(x) = h(sum_i phi(x_i)), with phi(0) contributing nothing.
inline double evaluate(const EntropyFamily& family, const Spectrum& x) {
  double trace = 0.0;
  for (double v : x) trace += family.phi(v);
  const double value = family.h(trace);
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::NumericalOverflow, "entropy of " + family.label() + " is not finite");
  }
  return value;
}

struct BoundEligibility {
  bool eligible;
  std::string reason;
};

/// The uniform bound needs h concave (affine included) and phi strictly concave.
inline BoundEligibility check_eligibility(const EntropyFamily& family) {
  const auto& t = family.traits();
  const bool h_ok = t.h_curvature == HCurvature::Concave ||
                    t.h_curvature == HCurvature::StrictlyConcave ||
                    t.h_curvature == HCurvature::Affine;
  const bool phi_ok = t.phi_curvature == PhiCurvature::StrictlyConcave;
  if (h_ok && phi_ok) {
    return {true, family.label() + ": h is concave and phi is strictly concave"};
  }
  std::string reason = family.label() + ":";
  if (!h_ok) reason += " h is not concave;";
  if (!phi_ok) reason += " phi is not strictly concave;";
  reason += " the tight uniform bound does not apply";
  return {false, reason};
}

inline bool h_strictly_concave(const EntropyFamily& family) {
  return family.traits().h_curvature == HCurvature::StrictlyConcave;
}

/// -p log2 p - (1-p) log2 (1-p), zero at both endpoints.
inline double binary_entropy(double p) {
  auto term = [](double v) { return v > 0.0 ? -v * std::log2(v) : 0.0; };
  return term(p) + term(1.0 - p);
}

}  // namespace hphi
