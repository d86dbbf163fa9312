#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hphi/bounds.hpp"
#include "hphi/entropy.hpp"
#include "hphi/error.hpp"
#include "hphi/minimizer.hpp"
#include "hphi/oracle.hpp"
#include "hphi/spectrum.hpp"
#include "hphi/state_file.hpp"

namespace hphi::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kValidation = 2, kSuiteFailure = 3 };

/// Missing or contradictory command-line input.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<std::string> state;
  std::optional<std::string> state2;
  std::string family = "von_neumann";
  std::optional<double> param;
  std::optional<std::size_t> dim;
  std::optional<double> eps;
  std::optional<std::string> eps_grid;
  std::uint64_t seed = 42;
  std::optional<std::string> out;
  std::size_t random_states = 0;
  std::optional<std::size_t> trials;
  std::optional<double> tol;
};

/// Reals are printed with 15 significant digits in the C locale.
inline std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

inline std::string format_spectrum(const Spectrum& x, char sep = ',') {
  std::string s;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (i) s += sep;
    s += format_real(x[i]);
  }
  return s;
}

namespace detail {

inline double parse_real(std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::BadGrid, "not a number: '" + std::string(text) + "'");
  }
  return v;
}

inline const std::string& require(const std::optional<std::string>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required option ") + flag);
  return *v;
}

inline double require(const std::optional<double>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required option ") + flag);
  return *v;
}

}  // namespace detail

/// Expands "start:stop:step" into eps values; requires 0 < start <= stop <= 1.
inline std::vector<double> parse_grid(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
    throw Error(ErrorKind::BadGrid, "grid must be start:stop:step, got '" + std::string(text) + "'");
  }
  const double start = detail::parse_real(text.substr(0, first));
  const double stop = detail::parse_real(text.substr(first + 1, second - first - 1));
  const double step = detail::parse_real(text.substr(second + 1));
  if (!(start > 0.0 && start <= stop && stop <= 1.0)) {
    throw Error(ErrorKind::BadGrid, "grid needs 0 < start <= stop <= 1");
  }
  if (!(step > 0.0)) throw Error(ErrorKind::BadGrid, "grid step must be positive");
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid.push_back(std::min(stop, start + static_cast<double>(i) * step));
  }
  return grid;
}

inline EntropyFamily family_of(const Options& o) { return builtin(o.family, o.param); }

inline State state_of(const Options& o) { return load_state(detail::require(o.state, "--state")); }

inline int cmd_entropy(const Options& o, std::ostream& out) {
  const auto family = family_of(o);
  const auto state = state_of(o);
  out << format_real(evaluate(family, state.spectrum)) << '\n';
  return kOk;
}

inline void print_minimizer(const MinimizerResult& r, std::ostream& out) {
  out << "m_plus: " << r.m_plus << '\n'
      << "m_minus: " << r.m_minus << '\n'
      << "gamma_plus: " << format_real(r.gamma_plus) << '\n'
      << "gamma_minus: " << format_real(r.gamma_minus) << '\n'
      << "reached_tau: " << (r.reached_tau ? "true" : "false") << '\n'
      << "spectrum: " << format_spectrum(r.output) << '\n';
}

inline int cmd_minimize(const Options& o, std::ostream& out) {
  const auto state = state_of(o);
  print_minimizer(mmm(state.spectrum, detail::require(o.eps, "--eps")), out);
  return kOk;
}

/// With no state: the uniform bound. One state adds the local bound; a
/// second state adds the entropy gap between the two and the tightness test.
inline int cmd_bound(const Options& o, std::ostream& out) {
  const auto family = family_of(o);
  const double eps = detail::require(o.eps, "--eps");
  std::optional<State> first;
  std::optional<State> second;
  if (o.state) first = state_of(o);
  if (o.state2) {
    if (!first) throw UsageError("--state2 needs --state");
    second = load_state(*o.state2);
  }
  std::size_t dim = 0;
  if (first) {
    dim = first->spectrum.dim();
    if (o.dim && *o.dim != dim) {
      throw Error(ErrorKind::DimMismatch, "--dim disagrees with the state dimension");
    }
  } else {
    if (!o.dim) throw UsageError("missing required option --dim");
    dim = *o.dim;
  }

  const auto report = uniform_bound(family, dim, eps);
  out << "family: " << report.family << '\n'
      << "dim: " << report.dim << '\n'
      << "eps: " << format_real(report.eps) << '\n'
      << "branch: " << to_string(report.branch) << '\n'
      << "bound: " << format_real(report.bound) << '\n'
      << "tight_witness: " << format_spectrum(*report.tight_witness) << '\n';
  if (first) {
    out << "local_bound: " << format_real(local_bound(family, first->spectrum, eps)) << '\n';
  }
  if (second) {
    require_same_dim(first->spectrum, second->spectrum);
    const double distance = trace_distance(*first, *second);
    if (distance > eps + tol::eq) {
      throw Error(ErrorKind::BallViolation, "trace distance " + format_real(distance) +
                                                " exceeds eps " + format_real(eps));
    }
    const auto gap = bound_gap(family, first->spectrum, second->spectrum, eps);
    out << "trace_distance: " << format_real(distance) << '\n'
        << "lhs: " << format_real(gap.lhs) << '\n'
        << "rhs: " << format_real(gap.rhs) << '\n'
        << "tight: " << (gap.tight ? "true" : "false") << '\n';
  }
  return kOk;
}

/// CSV "eps,bound,local,family". One bound row per grid point; with
/// random states, each sampled state adds a row at a random grid point
/// carrying its local bound. Rows are ordered by eps.
inline int cmd_sweep(const Options& o, std::ostream& out) {
  const auto family = family_of(o);
  if (!o.dim) throw UsageError("missing required option --dim");
  const auto grid = parse_grid(detail::require(o.eps_grid, "--eps-grid"));

  struct Row {
    double eps;
    double bound;
    std::optional<double> local;
  };
  std::vector<Row> rows;
  for (double eps : grid) rows.push_back({eps, uniform_bound(family, *o.dim, eps).bound, {}});
  for (std::size_t k = 0; k < o.random_states; ++k) {
    Rng rng(derive_seed({o.seed}, k));
    const auto x = sample_spectrum(*o.dim, rng);
    const double eps = grid[rng.index(grid.size())];
    rows.push_back({eps, uniform_bound(family, *o.dim, eps).bound, local_bound(family, x, eps)});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.eps < b.eps; });

  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].bound < rows[i - 1].bound - tol::eq) {
      throw std::logic_error("bound column decreased at eps=" + format_real(rows[i].eps));
    }
  }

  const std::string label = family.label();
  out << "eps,bound,local,family\n";
  for (const auto& r : rows) {
    out << format_real(r.eps) << ',' << format_real(r.bound) << ','
        << (r.local ? format_real(*r.local) : std::string()) << ',' << label << '\n';
  }
  return kOk;
}

/// CSV of the minimizer spectrum along an eps grid: "eps,l1,...,ld".
inline int cmd_flow(const Options& o, std::ostream& out) {
  const auto state = state_of(o);
  const auto grid = parse_grid(detail::require(o.eps_grid, "--eps-grid"));
  out << "eps";
  for (std::size_t i = 1; i <= state.spectrum.dim(); ++i) out << ",l" << i;
  out << '\n';
  for (double eps : grid) {
    out << format_real(eps) << ',' << format_spectrum(mmm(state.spectrum, eps).output) << '\n';
  }
  return kOk;
}

/// delta(x), or delta(x, y) when a second state is given.
inline int cmd_delta(const Options& o, std::ostream& out) {
  const auto state = state_of(o);
  if (o.state2) {
    const auto other = load_state(*o.state2);
    out << "delta: " << format_real(delta_pair(state.spectrum, other.spectrum).value) << '\n';
  } else {
    out << "delta: " << format_real(delta_step(state.spectrum).value) << '\n';
  }
  return kOk;
}

inline void print_report(const TrialReport& r, std::ostream& out, std::size_t max_listed = 10) {
  out << "suite: " << r.suite << '\n'
      << "trials: " << r.trials << '\n'
      << "failures: " << r.failures.size() << '\n'
      << "max_violation: " << format_real(r.max_violation) << '\n'
      << "tolerance: " << format_real(r.tolerance) << '\n';
  for (std::size_t i = 0; i < std::min(max_listed, r.failures.size()); ++i) {
    const auto& f = r.failures[i];
    out << "failure: " << f.inputs << " observed=" << format_real(f.observed)
        << " expected=" << format_real(f.expected) << '\n';
  }
  out << "result: " << (r.passed() ? "PASS" : "FAIL") << '\n';
}

/// Runs a suite; exit code 3 when violations were found.
inline int cmd_verify(std::string_view suite, const Options& o, std::ostream& out,
                      bool family_given = false) {
  auto config = default_config(suite);
  if (o.trials) config.trials = *o.trials;
  if (o.dim) config.dims = {*o.dim};
  if (o.eps) config.eps = {*o.eps};
  if (o.tol) config.tolerance = *o.tol;
  if (family_given || o.param) config.families = {family_of(o)};
  config.seed = {o.seed};
  const auto report = run_suite(suite, config);
  print_report(report, out);
  return report.passed() ? kOk : kSuiteFailure;
}

/// Runs `command`, mapping library errors to exit code 2 and usage errors to 1.
template <typename Command>
int guarded(Command&& command, std::ostream& err) {
  try {
    return command();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace hphi::cli
