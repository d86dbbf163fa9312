#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hphi/error.hpp"
#include "hphi/spectrum.hpp"

namespace hphi {

/// One application of the majorization-minimizer map: the state in the
/// trace-distance eps-ball around x that is majorized by every other member.
struct MinimizerResult {
  std::size_t m_plus;
  std::size_t m_minus;
  double gamma_plus;
  double gamma_minus;
  Spectrum output;
  bool reached_tau;
};

namespace detail {

// Boundary between positions m-1 and m (0-based) separates two eigenvalue
// levels; ties within tol::mult are one level.
inline bool level_boundary(std::span<const double> l, std::size_t m) {
  return l[m - 1] - l[m] > tol::mult;
}

// Number of leading eigenvalues lowered to gamma_plus. Tests
//   l_{m+1} <= (l_1 + ... + l_m - eps)/m < l_m
// at every level boundary m in 1..d-1 and returns the first solution.
inline std::pair<std::size_t, double> top_block(std::span<const double> l, double eps) {
  const std::size_t d = l.size();
  std::optional<std::pair<std::size_t, double>> found;
  std::optional<std::pair<std::size_t, double>> fallback;
  double sum = 0.0;
  for (std::size_t m = 1; m < d; ++m) {
    sum += l[m - 1];
    if (!level_boundary(l, m)) continue;
    const double gamma = (sum - eps) / static_cast<double>(m);
    if (!found && l[m] <= gamma && gamma < l[m - 1]) {
      found.emplace(m, gamma);
#ifdef NDEBUG
      break;
#endif
    } else if (found && l[m] - tol::eq <= gamma && gamma < l[m - 1] - tol::eq) {
      throw std::logic_error("second solution for the top block at m=" + std::to_string(m));
    }
    if (!fallback && gamma >= l[m] - tol::eq) fallback.emplace(m, gamma);
  }
  if (found) return *found;
  if (fallback) return *fallback;
  return {0, 0.0};
}

// Number of trailing eigenvalues raised to gamma_minus. Tests
//   l_{d-m+1} < (l_{d-m+1} + ... + l_d + eps)/m <= l_{d-m}
// at every level boundary.
inline std::pair<std::size_t, double> bottom_block(std::span<const double> l, double eps) {
  const std::size_t d = l.size();
  std::optional<std::pair<std::size_t, double>> found;
  std::optional<std::pair<std::size_t, double>> fallback;
  double sum = 0.0;
  for (std::size_t m = 1; m < d; ++m) {
    sum += l[d - m];
    if (!level_boundary(l, d - m)) continue;
    const double gamma = (sum + eps) / static_cast<double>(m);
    const double inside = l[d - m];
    const double above = l[d - m - 1];
    if (!found && inside < gamma && gamma <= above) {
      found.emplace(m, gamma);
#ifdef NDEBUG
      break;
#endif
    } else if (found && inside + tol::eq < gamma && gamma <= above + tol::eq) {
      throw std::logic_error("second solution for the bottom block at m=" + std::to_string(m));
    }
    if (!fallback && gamma <= above + tol::eq) fallback.emplace(m, gamma);
  }
  if (found) return *found;
  if (fallback) return *fallback;
  return {0, 0.0};
}

inline MinimizerResult saturated(std::size_t d) {
  const double level = 1.0 / static_cast<double>(d);
  return {0, 0, level, level, Spectrum::uniform(d), true};
}

}  // namespace detail

/// Majorization-minimal state in the eps-ball around x.
///
/// When x lies within eps of the completely mixed state the result is the
/// completely mixed state. Otherwise the m_plus largest eigenvalues are
/// lowered to a common level gamma_plus, the m_minus smallest are raised to
/// gamma_minus, and the rest are kept; each block moves exactly eps of mass.
inline MinimizerResult mmm(const Spectrum& x, double eps) {
  check_epsilon(eps);
  const std::size_t d = x.dim();
  if (d == 1 || !(distance_to_uniform(x) > eps + tol::eq)) return detail::saturated(d);

  const auto l = x.values();
  const auto [m_plus, gamma_plus] = detail::top_block(l, eps);
  const auto [m_minus, gamma_minus] = detail::bottom_block(l, eps);
  if (m_plus == 0 || m_minus == 0 || m_plus + m_minus > d) {
    // Unreachable once x is farther than eps from the mixed state.
#ifndef NDEBUG
    throw std::logic_error("no block solution although the ball excludes the mixed state");
#endif
    return detail::saturated(d);
  }

  std::vector<double> out(l.begin(), l.end());
  std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(m_plus), gamma_plus);
  std::fill(out.end() - static_cast<std::ptrdiff_t>(m_minus), out.end(), gamma_minus);
  return {m_plus, m_minus, gamma_plus, gamma_minus, Spectrum::from_values(std::move(out)), false};
}

struct DeltaStep {
  double value;
};

/// delta(x) = min{k_+ (mu_1 - mu_2), k_- (mu_{l-1} - mu_l)} over the distinct
/// eigenvalues mu_1 > ... > mu_l of x: the largest eps for which the
/// minimizer only moves the top and bottom eigenvalue levels.
inline DeltaStep delta_step(const Spectrum& x) {
  if (is_uniform(x)) {
    throw Error(ErrorKind::UniformInput, "delta is undefined at the completely mixed state");
  }
  const auto e = multiplicity_extremes(x);
  const double second = x[e.k_plus];
  const double second_last = x[x.dim() - 1 - e.k_minus];
  const double top = static_cast<double>(e.k_plus) * (e.lambda_plus - second);
  const double bottom = static_cast<double>(e.k_minus) * (second_last - e.lambda_minus);
  return {std::min(top, bottom)};
}

inline DeltaStep delta_pair(const Spectrum& x, const Spectrum& y) {
  return {std::min(delta_step(x).value, delta_step(y).value)};
}

inline void check_split(double eps1, double eps2) {
  check_epsilon(eps1);
  check_epsilon(eps2);
  if (eps1 + eps2 > 1.0 + tol::eq) {
    throw Error(ErrorKind::BadEpsilon, "eps1 + eps2 must not exceed 1");
  }
}

/// Largest componentwise gap between M_{e1+e2}(x) and M_{e1}(M_{e2}(x)).
inline double semigroup_residual(const Spectrum& x, double eps1, double eps2) {
  check_split(eps1, eps2);
  const auto joint = mmm(x, std::min(1.0, eps1 + eps2)).output;
  const auto composed = mmm(mmm(x, eps2).output, eps1).output;
  return max_abs_diff(joint, composed);
}

inline bool check_semigroup(const Spectrum& x, double eps1, double eps2) {
  return semigroup_residual(x, eps1, eps2) <= tol::eq;
}

/// For x majorized by y, checks that M_eps(x) is majorized by M_eps(y).
inline bool check_majorization_preserving(const Spectrum& x, const Spectrum& y, double eps) {
  if (!precedes(x, y)) {
    throw Error(ErrorKind::NotComparable, "first spectrum is not majorized by the second");
  }
  return precedes(mmm(x, eps).output, mmm(y, eps).output);
}

}  // namespace hphi
