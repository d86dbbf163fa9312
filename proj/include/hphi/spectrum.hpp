#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "hphi/error.hpp"

namespace hphi {

/// Eigenvalue list of a state, stored in non-increasing order.
///
/// Instances are only produced through validating factories, so every
/// Spectrum in the program is sorted, has entries in [0,1] and sums to one
/// within tol::norm.
class Spectrum {
 public:
  /// Sorts, clamps tiny negatives to zero and validates normalization.
  static Spectrum from_values(std::vector<double> values) {
    if (values.empty()) {
      throw Error(ErrorKind::BadDimension, "spectrum must have at least one entry");
    }
    for (double& v : values) {
      if (!std::isfinite(v)) {
        throw Error(ErrorKind::NotNormalized, "non-finite spectrum entry");
      }
      if (v < -tol::clamp) {
        throw Error(ErrorKind::NegativeEntry, "entry " + std::to_string(v) + " is negative");
      }
      v = std::clamp(v, 0.0, 1.0);
    }
    const double total = std::accumulate(values.begin(), values.end(), 0.0);
    if (std::abs(total - 1.0) > tol::norm) {
      throw Error(ErrorKind::NotNormalized, "entries sum to " + std::to_string(total));
    }
    std::sort(values.begin(), values.end(), std::greater<>());
    return Spectrum(std::move(values));
  }

  /// Completely mixed state 1/d.
  static Spectrum uniform(std::size_t dim) {
    if (dim == 0) throw Error(ErrorKind::BadDimension, "dimension must be positive");
    return Spectrum(std::vector<double>(dim, 1.0 / static_cast<double>(dim)));
  }

  static Spectrum pure(std::size_t dim) {
    if (dim == 0) throw Error(ErrorKind::BadDimension, "dimension must be positive");
    std::vector<double> v(dim, 0.0);
    v[0] = 1.0;
    return Spectrum(std::move(v));
  }

  std::size_t dim() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double largest() const noexcept { return values_.front(); }
  double smallest() const noexcept { return values_.back(); }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

 private:
  explicit Spectrum(std::vector<double> values) : values_(std::move(values)) {}
  std::vector<double> values_;
};

inline void require_same_dim(const Spectrum& x, const Spectrum& y) {
  if (x.dim() != y.dim()) {
    throw Error(ErrorKind::DimMismatch,
                "dimensions " + std::to_string(x.dim()) + " and " + std::to_string(y.dim()));
  }
}

enum class Majorization { LeftMajorized, RightMajorized, Equal, Incomparable };

inline std::string_view to_string(Majorization m) {
  switch (m) {
    case Majorization::LeftMajorized: return "LeftMajorized";
    case Majorization::RightMajorized: return "RightMajorized";
    case Majorization::Equal: return "Equal";
    case Majorization::Incomparable: return "Incomparable";
  }
  return "Incomparable";
}

struct MajorizationVerdict {
  Majorization relation;
  std::vector<double> partial_sums_left;
  std::vector<double> partial_sums_right;
};

inline std::vector<double> prefix_sums(const Spectrum& x) {
  std::vector<double> out(x.dim());
  std::partial_sum(x.begin(), x.end(), out.begin());
  return out;
}

/// Compares x against y in the majorization preorder. LeftMajorized means
/// x majorizes y (x is the less mixed of the two).
inline MajorizationVerdict majorizes(const Spectrum& x, const Spectrum& y) {
  require_same_dim(x, y);
  MajorizationVerdict verdict{Majorization::Incomparable, prefix_sums(x), prefix_sums(y)};
  const auto& px = verdict.partial_sums_left;
  const auto& py = verdict.partial_sums_right;
  const std::size_t d = x.dim();

  // Totals are only normalized to tol::norm, so the last prefix uses that.
  if (std::abs(px[d - 1] - py[d - 1]) > 2 * tol::norm) return verdict;

  bool left = true;
  bool right = true;
  bool componentwise = true;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    if (px[k] < py[k] - tol::eq) left = false;
    if (py[k] < px[k] - tol::eq) right = false;
  }
  for (std::size_t k = 0; k < d; ++k) {
    if (std::abs(x[k] - y[k]) > tol::eq) componentwise = false;
  }

  if (componentwise) {
    verdict.relation = Majorization::Equal;
  } else if (left) {
    verdict.relation = Majorization::LeftMajorized;
  } else if (right) {
    verdict.relation = Majorization::RightMajorized;
  }
  return verdict;
}

/// True when x is majorized by y (x is at least as mixed as y).
inline bool precedes(const Spectrum& x, const Spectrum& y) {
  const auto r = majorizes(y, x).relation;
  return r == Majorization::LeftMajorized || r == Majorization::Equal;
}

/// Trace distance between two states diagonal in a common basis, with both
/// eigenvalue lists taken in descending order.
inline double trace_distance(const Spectrum& x, const Spectrum& y) {
  require_same_dim(x, y);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) acc += std::abs(x[i] - y[i]);
  return 0.5 * acc;
}

inline double distance_to_uniform(const Spectrum& x) {
  return trace_distance(x, Spectrum::uniform(x.dim()));
}

struct Extremes {
  std::size_t k_plus;
  std::size_t k_minus;
  double lambda_plus;
  double lambda_minus;
};

inline Extremes multiplicity_extremes(const Spectrum& x) {
  Extremes e{0, 0, x.largest(), x.smallest()};
  for (double v : x) {
    if (e.lambda_plus - v <= tol::mult) ++e.k_plus;
    if (v - e.lambda_minus <= tol::mult) ++e.k_minus;
  }
  return e;
}

inline bool is_uniform(const Spectrum& x) { return x.largest() - x.smallest() <= tol::mult; }

inline bool is_pure(const Spectrum& x) { return x.largest() >= 1.0 - tol::eq; }

/// Componentwise equality within `tolerance`.
inline bool approx_equal(const Spectrum& x, const Spectrum& y, double tolerance = tol::eq) {
  if (x.dim() != y.dim()) return false;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (std::abs(x[i] - y[i]) > tolerance) return false;
  }
  return true;
}

inline double max_abs_diff(const Spectrum& x, const Spectrum& y) {
  require_same_dim(x, y);
  double m = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

}  // namespace hphi
