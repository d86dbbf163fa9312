#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <locale>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hphi/error.hpp"
#include "hphi/spectrum.hpp"

namespace hphi {

/// Dense d x d complex matrix, row-major.
struct HermitianMatrix {
  std::size_t dim = 0;
  std::vector<std::complex<double>> entries;

  std::complex<double>& operator()(std::size_t r, std::size_t c) { return entries[r * dim + c]; }
  std::complex<double> operator()(std::size_t r, std::size_t c) const {
    return entries[r * dim + c];
  }

  static HermitianMatrix diagonal(const Spectrum& x) {
    HermitianMatrix m{x.dim(), std::vector<std::complex<double>>(x.dim() * x.dim())};
    for (std::size_t i = 0; i < x.dim(); ++i) m(i, i) = x[i];
    return m;
  }
};

/// Eigenvalues of a real symmetric matrix (row-major, n x n) by cyclic
/// Jacobi rotations, iterated until the off-diagonal Frobenius norm drops
/// below 1e-12 times the norm of the matrix. Returned in descending order.
inline std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
  auto at = [&a, n](std::size_t r, std::size_t c) -> double& { return a[r * n + c]; };
  double total = 0.0;
  for (double v : a) total += v * v;
  const double threshold = 1e-12 * std::sqrt(total);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * at(p, q) * at(p, q);
    if (std::sqrt(off) <= threshold) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

/// Eigenvalues of a Hermitian matrix, descending. H = A + iB is embedded as
/// the real symmetric [[A, -B], [B, A]], whose spectrum is that of H with
/// every eigenvalue doubled.
inline std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h) {
  const std::size_t d = h.dim;
  const std::size_t n = 2 * d;
  std::vector<double> real(n * n);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      // Symmetrize first so the embedding is exactly symmetric.
      const auto v = 0.5 * (h(r, c) + std::conj(h(c, r)));
      real[r * n + c] = v.real();
      real[(r + d) * n + (c + d)] = v.real();
      real[r * n + (c + d)] = -v.imag();
      real[(r + d) * n + c] = v.imag();
    }
  }
  const auto doubled = symmetric_eigenvalues(std::move(real), n);
  std::vector<double> eig(d);
  for (std::size_t i = 0; i < d; ++i) eig[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
  return eig;
}

/// Trace distance 1/2 ||a - b||_1 for arbitrary (non-commuting) states.
inline double trace_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim != b.dim) throw Error(ErrorKind::DimMismatch, "matrix dimensions differ");
  HermitianMatrix diff{a.dim, a.entries};
  for (std::size_t i = 0; i < diff.entries.size(); ++i) diff.entries[i] -= b.entries[i];
  double acc = 0.0;
  for (double v : hermitian_eigenvalues(diff)) acc += std::abs(v);
  return 0.5 * acc;
}

/// A loaded state: always its spectrum, plus the matrix when one was given.
struct State {
  Spectrum spectrum;
  std::optional<HermitianMatrix> matrix;

  HermitianMatrix as_matrix() const { return matrix ? *matrix : HermitianMatrix::diagonal(spectrum); }
};

/// Spectrum-only states are taken to share one eigenbasis in descending order.
inline double trace_distance(const State& a, const State& b) {
  if (!a.matrix && !b.matrix) return trace_distance(a.spectrum, b.spectrum);
  return trace_distance(a.as_matrix(), b.as_matrix());
}

namespace detail {

inline std::vector<std::vector<double>> read_square(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorKind::ParseError, std::string("matrix.") + what + " must be a non-empty array");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != j.size()) {
      throw Error(ErrorKind::ParseError, std::string("matrix.") + what + " must be square");
    }
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number()) throw Error(ErrorKind::ParseError, "matrix entries must be numbers");
      r.push_back(v.get<double>());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

inline State state_from_matrix(const nlohmann::json& m) {
  if (!m.is_object() || !m.contains("re")) {
    throw Error(ErrorKind::ParseError, "matrix needs an 're' array");
  }
  const auto re = read_square(m["re"], "re");
  const std::size_t d = re.size();
  std::vector<std::vector<double>> im(d, std::vector<double>(d, 0.0));
  if (m.contains("im")) {
    im = read_square(m["im"], "im");
    if (im.size() != d) throw Error(ErrorKind::ParseError, "matrix.re and matrix.im differ in size");
  }

  HermitianMatrix h{d, std::vector<std::complex<double>>(d * d)};
  double trace = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    trace += re[r][r];
    for (std::size_t c = 0; c < d; ++c) {
      h(r, c) = {re[r][c], im[r][c]};
      if (std::abs(re[r][c] - re[c][r]) > tol::herm || std::abs(im[r][c] + im[c][r]) > tol::herm) {
        throw Error(ErrorKind::NotHermitian, "entry (" + std::to_string(r) + "," +
                                                 std::to_string(c) + ") breaks Hermiticity");
      }
    }
  }
  if (std::abs(trace - 1.0) > tol::norm) {
    throw Error(ErrorKind::NotNormalized, "trace is " + std::to_string(trace));
  }
  auto eig = hermitian_eigenvalues(h);
  if (eig.back() < -tol::clamp) {
    throw Error(ErrorKind::NotPSD, "eigenvalue " + std::to_string(eig.back()) + " is negative");
  }
  for (double& v : eig) v = std::max(v, 0.0);
  return {Spectrum::from_values(std::move(eig)), std::move(h)};
}

}  // namespace detail

/// Parses the state-file text: {"spectrum": [...]} or
/// {"matrix": {"re": [[...]], "im": [[...]]}} with rows listed in order.
inline State parse_state(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "state file must hold an object");
  const bool has_spectrum = j.contains("spectrum");
  const bool has_matrix = j.contains("matrix");
  if (has_spectrum == has_matrix) {
    throw Error(ErrorKind::ParseError, "state file needs exactly one of 'spectrum' or 'matrix'");
  }
  if (has_matrix) return detail::state_from_matrix(j["matrix"]);

  const auto& s = j["spectrum"];
  if (!s.is_array()) throw Error(ErrorKind::ParseError, "'spectrum' must be an array");
  std::vector<double> values;
  for (const auto& v : s) {
    if (!v.is_number()) throw Error(ErrorKind::ParseError, "spectrum entries must be numbers");
    values.push_back(v.get<double>());
  }
  return {Spectrum::from_values(std::move(values)), std::nullopt};
}

inline State load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open state file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str());
}

inline Spectrum ingest(const std::string& path) { return load_state(path).spectrum; }

/// Serializes a spectrum in the state-file format, 17 significant digits.
inline std::string write_state(const Spectrum& x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << "{\"spectrum\": [";
  for (std::size_t i = 0; i < x.dim(); ++i) os << (i ? ", " : "") << x[i];
  os << "]}\n";
  return os.str();
}

}  // namespace hphi
