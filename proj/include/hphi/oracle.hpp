#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hphi/bounds.hpp"
#include "hphi/entropy.hpp"
#include "hphi/error.hpp"
#include "hphi/minimizer.hpp"
#include "hphi/spectrum.hpp"

namespace hphi {

struct RngSeed {
  std::uint64_t seed;
};

/// Seeded generator with a portable mapping to doubles, so a seed replays
/// the same stream on every standard library.
class Rng {
 public:
  explicit Rng(RngSeed s) : engine_(s.seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1).
  double open_uniform() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return static_cast<std::size_t>(r % bound);
  }

  double exponential() { return -std::log(open_uniform()); }

 private:
  std::mt19937_64 engine_;
};

/// Sub-seed for trial `index` of a run seeded with `master`.
inline RngSeed derive_seed(RngSeed master, std::uint64_t index) {
  std::uint64_t z = master.seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return {z ^ (z >> 31)};
}

namespace detail {
inline std::vector<double> flat_dirichlet(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  double total = 0.0;
  for (double& v : w) total += (v = rng.exponential());
  for (double& v : w) v /= total;
  return w;
}
}  // namespace detail

/// Uniformly distributed point of the probability simplex, sorted.
inline Spectrum sample_spectrum(std::size_t dim, Rng& rng) {
  if (dim == 0) throw Error(ErrorKind::BadDimension, "dimension must be positive");
  return Spectrum::from_values(detail::flat_dirichlet(dim, rng));
}

inline Spectrum sample_spectrum(std::size_t dim, RngSeed seed) {
  Rng rng(seed);
  return sample_spectrum(dim, rng);
}

struct MajorizedPair {
  Spectrum x;  // majorized by y
  Spectrum y;
};

/// y is a uniform sample; x comes from y through `steps` T-transforms, each
/// pulling a random pair of entries toward their mean by `fraction` (random
/// in [0,1] when not given). Hence x is majorized by y.
inline MajorizedPair sample_majorized_pair(std::size_t dim, std::size_t steps, Rng& rng,
                                           std::optional<double> fraction = std::nullopt) {
  if (dim < 2) throw Error(ErrorKind::BadDimension, "pairs need dimension at least 2");
  auto y = sample_spectrum(dim, rng);
  std::vector<double> v(y.begin(), y.end());
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t i = rng.index(dim);
    std::size_t j = rng.index(dim - 1);
    if (j >= i) ++j;
    const double t = fraction ? *fraction : rng.uniform();
    const double mean = 0.5 * (v[i] + v[j]);
    v[i] += t * (mean - v[i]);
    v[j] += t * (mean - v[j]);
  }
  return {Spectrum::from_values(std::move(v)), std::move(y)};
}

inline MajorizedPair sample_majorized_pair(std::size_t dim, std::size_t steps, RngSeed seed) {
  Rng rng(seed);
  return sample_majorized_pair(dim, steps, rng);
}

/// A member of the eps-ball around x in the eigenbasis of x.
///
/// The perturbation has a random sign pattern with at least one raised and
/// one lowered entry, flat Dirichlet weights on each side, and half-l1 norm
/// equal to eps (half the draws) or uniform in [0, eps]. Draws leaving the
/// simplex are rejected; after 1000 rejections the radius is halved.
inline Spectrum sample_ball(const Spectrum& x, double eps, Rng& rng) {
  check_epsilon(eps);
  const std::size_t d = x.dim();
  if (d == 1) return x;
  double radius_cap = eps;
  for (;;) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const double radius = rng.uniform() < 0.5 ? radius_cap : radius_cap * rng.uniform();
      std::vector<int> sign(d);
      std::size_t n_pos = 0;
      std::size_t n_neg = 0;
      for (auto& s : sign) {
        s = static_cast<int>(rng.index(3)) - 1;
        n_pos += s > 0;
        n_neg += s < 0;
      }
      if (n_pos == 0 || n_neg == 0) continue;
      const auto up = detail::flat_dirichlet(n_pos, rng);
      const auto down = detail::flat_dirichlet(n_neg, rng);
      std::vector<double> v(x.begin(), x.end());
      std::size_t ip = 0;
      std::size_t in = 0;
      bool inside = true;
      for (std::size_t i = 0; i < d; ++i) {
        if (sign[i] > 0) v[i] += radius * up[ip++];
        if (sign[i] < 0) v[i] -= radius * down[in++];
        if (v[i] < -tol::clamp) inside = false;
      }
      if (!inside) continue;
      for (double& e : v) e = std::max(e, 0.0);
      auto candidate = Spectrum::from_values(v);
      if (trace_distance(x, candidate) <= eps) return candidate;
    }
    radius_cap *= 0.5;
  }
}

inline Spectrum sample_ball(const Spectrum& x, double eps, RngSeed seed) {
  Rng rng(seed);
  return sample_ball(x, eps, rng);
}

/// Largest entropy seen over the center and `samples` ball members.
inline double brute_force_max_entropy(const EntropyFamily& family, const Spectrum& x, double eps,
                                      std::size_t samples, Rng& rng) {
  check_epsilon(eps);
  double best = evaluate(family, x);
  for (std::size_t s = 0; s < samples; ++s) {
    best = std::max(best, evaluate(family, sample_ball(x, eps, rng)));
  }
  return best;
}

inline double brute_force_max_entropy(const EntropyFamily& family, const Spectrum& x, double eps,
                                      std::size_t samples, RngSeed seed) {
  Rng rng(seed);
  return brute_force_max_entropy(family, x, eps, samples, rng);
}

struct DeltaExhaustion {
  std::size_t steps;
  bool multiplicity_grew_each_step;
  bool reached_uniform;
};

/// Repeats x <- M_{delta(x)}(x) until x is completely mixed. Each step must
/// raise k_+ or k_-; the walk is cut off after 4d steps.
inline DeltaExhaustion exhaust_by_delta_steps(const Spectrum& start) {
  const std::size_t limit = 4 * start.dim();
  DeltaExhaustion out{0, true, false};
  Spectrum current = start;
  while (!is_uniform(current) && out.steps < limit) {
    const auto before = multiplicity_extremes(current);
    const double step = std::min(1.0, delta_step(current).value);
    Spectrum next = mmm(current, step).output;
    const auto after = multiplicity_extremes(next);
    if (!is_uniform(next) && after.k_plus <= before.k_plus && after.k_minus <= before.k_minus) {
      out.multiplicity_grew_each_step = false;
    }
    current = std::move(next);
    ++out.steps;
  }
  out.reached_uniform = is_uniform(current);
  return out;
}

struct TrialFailure {
  std::string inputs;
  double observed;
  double expected;
};

struct TrialReport {
  std::string suite;
  std::size_t trials = 0;
  std::vector<TrialFailure> failures;
  double max_violation = 0.0;
  double tolerance = 0.0;

  bool passed() const { return failures.empty(); }
};

struct SuiteConfig {
  std::vector<std::size_t> dims;
  std::size_t trials = 1000;
  RngSeed seed{42};
  std::vector<double> eps;
  std::vector<EntropyFamily> families;
  double tolerance = 0.0;
};

inline constexpr std::string_view kSuiteNames[] = {
    "schur_convexity", "semigroup", "decomposition", "counterexample",
    "tightness",       "slope",     "limit_alpha"};

inline bool is_known_suite(std::string_view name) {
  return std::find(std::begin(kSuiteNames), std::end(kSuiteNames), name) != std::end(kSuiteNames);
}

/// Defaults reproduce the documented verification runs of each suite.
inline SuiteConfig default_config(std::string_view suite) {
  SuiteConfig c;
  if (suite == "schur_convexity") {
    c.dims = {3, 4, 5, 6};
    c.eps = {0.05, 0.2, 0.6};
    c.families = {von_neumann(), renyi(0.5), tsallis(0.5), tsallis(2.0)};
    c.tolerance = 1e-11;
  } else if (suite == "semigroup") {
    c.dims = {2, 3, 4, 5, 6, 7, 8};
    c.tolerance = 1e-11;
  } else if (suite == "decomposition") {
    c.dims = {2, 3, 4, 5, 6, 7, 8};
    c.families = {von_neumann(), renyi(0.5), renyi(2.0), tsallis(0.5), tsallis(2.0)};
    c.tolerance = 1e-11;
  } else if (suite == "counterexample") {
    c.dims = {4};
    c.eps = {0.05};
    c.trials = 1;
    c.tolerance = 1e-12;
  } else if (suite == "tightness") {
    c.dims = {2, 3, 4, 5, 6, 7, 8};
    c.eps = {0.05, 0.3, 0.95};
    c.families = {von_neumann(), renyi(0.3), renyi(0.5), renyi(0.9),
                  tsallis(0.5),  tsallis(2.0), tsallis(3.0)};
    c.tolerance = 1e-10;
  } else if (suite == "slope") {
    c.trials = 10000;
    c.families = {von_neumann(), renyi(0.5), tsallis(0.5), tsallis(2.0)};
    c.tolerance = 1e-12;
  } else if (suite == "limit_alpha") {
    c.dims = {2, 3, 4, 5, 6};
    c.tolerance = 1e-3;
  } else {
    throw Error(ErrorKind::UnknownSuite, "unknown suite '" + std::string(suite) + "'");
  }
  return c;
}

namespace detail {

inline std::string describe(const Spectrum& x) {
  std::ostringstream os;
  os.precision(15);
  os << '(';
  for (std::size_t i = 0; i < x.dim(); ++i) os << (i ? "," : "") << x[i];
  os << ')';
  return os.str();
}

inline std::string describe_eps(double eps) {
  std::ostringstream os;
  os.precision(15);
  os << eps;
  return os.str();
}

class ReportBuilder {
 public:
  ReportBuilder(std::string suite, double tolerance) {
    report_.suite = std::move(suite);
    report_.tolerance = tolerance;
  }

  // Records one trial whose violation must not exceed the tolerance.
  void bounded(double violation, std::string inputs, double observed, double expected) {
    ++report_.trials;
    report_.max_violation = std::max(report_.max_violation, violation);
    if (!(violation <= report_.tolerance)) {
      report_.failures.push_back({std::move(inputs), observed, expected});
    }
  }

  // Records a pass/fail condition that has no natural magnitude.
  void condition(bool ok, std::string inputs, double observed, double expected) {
    if (!ok) report_.failures.push_back({std::move(inputs), observed, expected});
  }

  void count_trial() { ++report_.trials; }
  TrialReport take() { return std::move(report_); }

 private:
  TrialReport report_;
};

// In the small-eps regime only the extreme levels move.
inline void check_delta_regime(ReportBuilder& rb, const Spectrum& x, double eps) {
  if (is_uniform(x) || eps > delta_step(x).value) return;
  const auto r = mmm(x, eps);
  if (r.reached_tau) return;
  const auto e = multiplicity_extremes(x);
  rb.condition(r.m_plus == e.k_plus && r.m_minus == e.k_minus,
               "delta regime x=" + describe(x) + " eps=" + describe_eps(eps),
               static_cast<double>(r.m_plus), static_cast<double>(e.k_plus));
}

inline double max_prefix_gap(const Spectrum& x, const Spectrum& y) {
  const auto px = prefix_sums(x);
  const auto py = prefix_sums(y);
  double gap = 0.0;
  for (std::size_t k = 0; k < px.size(); ++k) gap = std::max(gap, std::abs(px[k] - py[k]));
  return gap;
}

inline TrialReport suite_schur_convexity(const SuiteConfig& c) {
  ReportBuilder rb("schur_convexity", c.tolerance);
  std::uint64_t counter = 0;
  for (const auto& family : c.families) {
    const bool strict = h_strictly_concave(family) && check_eligibility(family).eligible;
    for (std::size_t d : c.dims) {
      for (double eps : c.eps) {
        for (std::size_t t = 0; t < c.trials; ++t) {
          Rng rng(derive_seed(c.seed, counter++));
          const std::size_t steps = 1 + rng.index(2 * d);
          const auto [x, y] = sample_majorized_pair(d, steps, rng);
          const double dx = delta_eps(family, x, eps).value;
          const double dy = delta_eps(family, y, eps).value;
          const std::string inputs = family.label() + " x=" + describe(x) + " y=" + describe(y) +
                                     " eps=" + describe_eps(eps);
          rb.bounded(dx - dy, inputs, dx, dy);
          if (strict && max_prefix_gap(x, y) >= 1e-6) {
            rb.condition(dx - dy <= -tol::eq, "strict " + inputs, dx, dy);
          }
          if (std::abs(dx - dy) <= tol::eq && check_eligibility(family).eligible) {
            rb.condition(std::abs(x.largest() - y.largest()) <= tol::mult,
                         "equal gap needs equal largest eigenvalue " + inputs, x.largest(),
                         y.largest());
          }
          check_delta_regime(rb, x, eps);
          check_delta_regime(rb, y, eps);
        }
      }
    }
  }
  return rb.take();
}

inline TrialReport suite_semigroup(const SuiteConfig& c) {
  ReportBuilder rb("semigroup", c.tolerance);
  for (std::size_t t = 0; t < c.trials; ++t) {
    Rng rng(derive_seed(c.seed, t));
    const std::size_t d = c.dims[t % c.dims.size()];
    const auto x = sample_spectrum(d, rng);
    const double eps1 = rng.open_uniform();
    const double eps2 = rng.open_uniform() * (1.0 - eps1);
    if (!(eps2 > 0.0)) continue;
    const double residual = semigroup_residual(x, eps1, eps2);
    rb.bounded(residual,
               "x=" + describe(x) + " eps1=" + describe_eps(eps1) + " eps2=" + describe_eps(eps2),
               residual, 0.0);
    check_delta_regime(rb, x, eps2);
  }
  return rb.take();
}

inline TrialReport suite_decomposition(const SuiteConfig& c) {
  ReportBuilder rb("decomposition", c.tolerance);
  for (std::size_t t = 0; t < c.trials; ++t) {
    Rng rng(derive_seed(c.seed, t));
    const std::size_t d = c.dims[t % c.dims.size()];
    const auto x = sample_spectrum(d, rng);
    const double eps1 = rng.open_uniform();
    const double eps2 = rng.open_uniform() * (1.0 - eps1);
    if (!(eps2 > 0.0)) continue;
    for (const auto& family : c.families) {
      const auto dec = delta_decomposition(family, x, eps1, eps2);
      rb.bounded(dec.residual(),
                 family.label() + " x=" + describe(x) + " eps1=" + describe_eps(eps1) +
                     " eps2=" + describe_eps(eps2),
                 dec.lhs, dec.rhs);
    }
  }
  return rb.take();
}

// rho = diag(0.1,0.2,0.2,0.5) is majorized by sigma = diag(0.1,0.15,0.25,0.5),
// the two are not unitarily equivalent, yet for eps <= 0.05 their von
// Neumann gaps coincide while the Renyi-2 gaps do not.
inline TrialReport suite_counterexample(const SuiteConfig& c) {
  ReportBuilder rb("counterexample", c.tolerance);
  const auto rho = Spectrum::from_values({0.1, 0.2, 0.2, 0.5});
  const auto sigma = Spectrum::from_values({0.1, 0.15, 0.25, 0.5});
  rb.condition(precedes(rho, sigma), "rho must be majorized by sigma", 0.0, 0.0);
  for (double eps : c.eps) {
    const auto vn = von_neumann();
    const double vn_gap = delta_eps(vn, rho, eps).value - delta_eps(vn, sigma, eps).value;
    rb.bounded(std::abs(vn_gap), "von_neumann eps=" + describe_eps(eps), vn_gap, 0.0);

    const auto r2 = renyi(2.0);
    const double r2_gap = delta_eps(r2, rho, eps).value - delta_eps(r2, sigma, eps).value;
    rb.count_trial();
    rb.condition(r2_gap >= 1e-6, "renyi(2) eps=" + describe_eps(eps) + " needs rho gap > sigma gap",
                 r2_gap, 1e-6);
  }
  return rb.take();
}

// Moves 1e-3 of weight from the smallest entry to the largest; stays in the
// ball around the pure state and lowers the entropy.
inline Spectrum perturb_witness(const Spectrum& w) {
  std::vector<double> v(w.begin(), w.end());
  v.front() += 1e-3;
  v.back() -= 1e-3;
  return Spectrum::from_values(std::move(v));
}

inline TrialReport suite_tightness(const SuiteConfig& c) {
  ReportBuilder rb("tightness", c.tolerance);
  for (std::size_t d : c.dims) {
    std::vector<double> grid = c.eps;
    grid.push_back(1.0 - 1.0 / static_cast<double>(d));
    for (double eps : grid) {
      const auto pure = Spectrum::pure(d);
      const auto witness = extremal_witness(d, eps);
      for (const auto& family : c.families) {
        const std::string inputs =
            family.label() + " d=" + std::to_string(d) + " eps=" + describe_eps(eps);
        const auto gap = bound_gap(family, pure, witness, eps);
        rb.bounded(std::abs(gap.lhs - gap.rhs), inputs, gap.lhs, gap.rhs);
        rb.condition(gap.tight, "tight verdict " + inputs, 0.0, 1.0);

        const auto off = bound_gap(family, pure, perturb_witness(witness), eps);
        rb.condition(!off.tight && off.lhs < off.rhs, "perturbed witness " + inputs, off.lhs,
                     off.rhs);
      }
    }
  }
  return rb.take();
}

inline TrialReport suite_slope(const SuiteConfig& c) {
  ReportBuilder rb("slope", c.tolerance);
  std::uint64_t counter = 0;
  for (const auto& family : c.families) {
    auto phi = [&family](double v) { return family.phi(v); };
    for (std::size_t t = 0; t < c.trials; ++t) {
      Rng rng(derive_seed(c.seed, counter++));
      double x1, y1, x2, y2;
      do {
        const double a = rng.open_uniform(), b = rng.open_uniform();
        const double p = rng.open_uniform(), q = rng.open_uniform();
        x1 = std::min(a, b);
        y1 = std::max(a, b);
        x2 = std::min(p, q);
        y2 = std::max(p, q);
      } while (std::abs(x1 - x2) < tol::eq || std::abs(y1 - y2) < tol::eq);
      const double sx = slope(phi, x1, x2);
      const double sy = slope(phi, y1, y2);
      rb.bounded(sy - sx,
                 family.label() + " x=(" + describe_eps(x1) + "," + describe_eps(x2) + ") y=(" +
                     describe_eps(y1) + "," + describe_eps(y2) + ")",
                 sx, sy);
    }
  }
  return rb.take();
}

inline TrialReport suite_limit_alpha(const SuiteConfig& c) {
  ReportBuilder rb("limit_alpha", c.tolerance);
  const auto vn = von_neumann();
  const double offsets[] = {-1e-4, 1e-4};
  for (std::size_t t = 0; t < c.trials; ++t) {
    Rng rng(derive_seed(c.seed, t));
    const std::size_t d = c.dims[t % c.dims.size()];
    const auto x = sample_spectrum(d, rng);
    const double eps = rng.open_uniform();
    for (double off : offsets) {
      const auto r = renyi(1.0 + off);
      const double gap = std::abs(evaluate(r, x) - evaluate(vn, x));
      rb.bounded(gap, r.label() + " entropy x=" + describe(x), evaluate(r, x), evaluate(vn, x));
      // Above 1 the family is ineligible and uniform_bound refuses it; the
      // expression itself still converges to the von Neumann value.
      const double rb_bound = off < 0.0 ? uniform_bound(r, d, eps).bound
                                        : bound_expression(r, d, eps);
      const double af = audenaert_fannes(d, eps);
      rb.bounded(std::abs(rb_bound - af),
                 r.label() + " bound d=" + std::to_string(d) + " eps=" + describe_eps(eps),
                 rb_bound, af);
    }
  }
  return rb.take();
}

}  // namespace detail

/// Runs a named verification suite. Deterministic for a fixed seed.
inline TrialReport run_suite(std::string_view name, const SuiteConfig& config) {
  if (name == "schur_convexity") return detail::suite_schur_convexity(config);
  if (name == "semigroup") return detail::suite_semigroup(config);
  if (name == "decomposition") return detail::suite_decomposition(config);
  if (name == "counterexample") return detail::suite_counterexample(config);
  if (name == "tightness") return detail::suite_tightness(config);
  if (name == "slope") return detail::suite_slope(config);
  if (name == "limit_alpha") return detail::suite_limit_alpha(config);
  throw Error(ErrorKind::UnknownSuite, "unknown suite '" + std::string(name) + "'");
}

inline TrialReport run_suite(std::string_view name) {
  return run_suite(name, default_config(name));
}

}  // namespace hphi
