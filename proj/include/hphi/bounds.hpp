#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hphi/entropy.hpp"
#include "hphi/error.hpp"
#include "hphi/minimizer.hpp"
#include "hphi/spectrum.hpp"

namespace hphi {

/// Delta_eps(x) = H(M_eps(x)) - H(x): the largest entropy increase available
/// inside the eps-ball around x.
struct DeltaValue {
  double value;
  Spectrum at;
  double eps;
};

inline DeltaValue delta_eps(const EntropyFamily& family, const Spectrum& x, double eps) {
  const auto minimized = mmm(x, eps);
  double value = evaluate(family, minimized.output) - evaluate(family, x);
  if (value < 0.0 && value >= -tol::eq) value = 0.0;
  return {value, x, eps};
}

enum class BoundBranch { SubCritical, Saturated };

inline std::string_view to_string(BoundBranch b) {
  return b == BoundBranch::SubCritical ? "SubCritical" : "Saturated";
}

struct BoundReport {
  double bound;
  BoundBranch branch;
  std::string family;
  double eps;
  std::size_t dim;
  std::optional<Spectrum> tight_witness;
};

/// Spectrum paired with a pure state at which the uniform bound is attained:
/// (1-eps, eps/(d-1), ..., eps/(d-1)) below 1-1/d, the mixed state above.
inline Spectrum extremal_witness(std::size_t dim, double eps) {
  if (dim < 2) throw Error(ErrorKind::BadDimension, "dimension must be at least 2");
  check_epsilon(eps);
  const double d = static_cast<double>(dim);
  if (!(eps < 1.0 - 1.0 / d)) return Spectrum::uniform(dim);
  std::vector<double> v(dim, eps / (d - 1.0));
  v[0] = 1.0 - eps;
  return Spectrum::from_values(std::move(v));
}

namespace detail {

// The bound's closed form without the eligibility check; only meaningful as a
// bound for eligible families, but well defined for any admissible one.
inline double bound_expression(const EntropyFamily& family, std::size_t dim, double eps) {
  const double d = static_cast<double>(dim);
  if (eps < 1.0 - 1.0 / d) {
    return family.h(family.phi(1.0 - eps) + (d - 1.0) * family.phi(eps / (d - 1.0)));
  }
  return family.h(d * family.phi(1.0 / d));
}

}  // namespace detail

/// Tight uniform continuity bound
///   h(phi(1-eps) + (d-1) phi(eps/(d-1)))   for eps < 1 - 1/d,
///   h(d phi(1/d))                          otherwise.
inline BoundReport uniform_bound(const EntropyFamily& family, std::size_t dim, double eps) {
  const auto eligibility = check_eligibility(family);
  if (!eligibility.eligible) throw Error(ErrorKind::IneligibleFamily, eligibility.reason);
  if (dim < 2) throw Error(ErrorKind::BadDimension, "dimension must be at least 2");
  check_epsilon(eps);

  BoundReport report{detail::bound_expression(family, dim, eps), BoundBranch::Saturated,
                     family.label(), eps, dim, extremal_witness(dim, eps)};
  if (eps < 1.0 - 1.0 / static_cast<double>(dim)) report.branch = BoundBranch::SubCritical;
  return report;
}

/// eps log2(d-1) + binary_entropy(eps) below 1-1/d, log2 d above.
inline double audenaert_fannes(std::size_t dim, double eps) {
  if (dim < 2) throw Error(ErrorKind::BadDimension, "dimension must be at least 2");
  check_epsilon(eps);
  const double d = static_cast<double>(dim);
  if (eps < 1.0 - 1.0 / d) return eps * std::log2(d - 1.0) + binary_entropy(eps);
  return std::log2(d);
}

struct BoundGap {
  double lhs;
  double rhs;
  bool tight;
};

/// |H(x) - H(y)| against the uniform bound, with equality detected
/// spectrally: one argument pure and the other equal to the extremal witness.
inline BoundGap bound_gap(const EntropyFamily& family, const Spectrum& x, const Spectrum& y,
                          double eps) {
  require_same_dim(x, y);
  const auto report = uniform_bound(family, x.dim(), eps);
  const double distance = trace_distance(x, y);
  if (distance > eps + tol::eq) {
    throw Error(ErrorKind::BallViolation, "trace distance " + std::to_string(distance) +
                                              " exceeds eps " + std::to_string(eps));
  }
  const double lhs = std::abs(evaluate(family, x) - evaluate(family, y));
  const auto& witness = *report.tight_witness;
  const bool tight = (is_pure(x) && approx_equal(y, witness)) ||
                     (is_pure(y) && approx_equal(x, witness));
  return {lhs, report.bound, tight};
}

/// Upper local continuity bound at x: max over the eps-ball of H(w) - H(x).
inline double local_bound(const EntropyFamily& family, const Spectrum& x, double eps) {
  const auto eligibility = check_eligibility(family);
  if (!eligibility.eligible) throw Error(ErrorKind::IneligibleFamily, eligibility.reason);
  return delta_eps(family, x, eps).value;
}

struct Decomposition {
  double lhs;
  double rhs;
  double residual() const { return std::abs(lhs - rhs); }
};

/// Both sides of Delta_{e1+e2}(x) = Delta_{e1}(M_{e2}(x)) + Delta_{e2}(x).
inline Decomposition delta_decomposition(const EntropyFamily& family, const Spectrum& x,
                                         double eps1, double eps2) {
  check_split(eps1, eps2);
  const double lhs = delta_eps(family, x, std::min(1.0, eps1 + eps2)).value;
  const double rhs =
      delta_eps(family, mmm(x, eps2).output, eps1).value + delta_eps(family, x, eps2).value;
  return {lhs, rhs};
}

/// Slope of the chord of phi between x1 and x2; symmetric in its arguments.
template <typename Fn>
double slope(const Fn& phi, double x1, double x2) {
  if (std::abs(x1 - x2) < tol::eq) {
    throw Error(ErrorKind::DegenerateInterval, "slope needs two distinct points");
  }
  return (phi(x2) - phi(x1)) / (x2 - x1);
}

}  // namespace hphi
