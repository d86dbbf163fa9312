#include <gtest/gtest.h>

#include <cmath>

#include "hphi/oracle.hpp"
#include "hphi/state_file.hpp"

namespace {

using hphi::ErrorKind;
using hphi::Spectrum;

const std::string kDir = HPHI_SAMPLE_STATES;

ErrorKind parse_error_kind(const std::string& text) {
  try {
    hphi::parse_state(text);
  } catch (const hphi::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorKind::BadGrid;
}

TEST(StateFile, SpectrumForm) {
  const auto s = hphi::parse_state(R"({"spectrum": [0.1, 0.6, 0.3]})");
  EXPECT_FALSE(s.matrix);
  EXPECT_DOUBLE_EQ(s.spectrum[0], 0.6);
}

TEST(StateFile, RealMatrixForm) {
  const auto s = hphi::load_state(kDir + "/hadamard_rotated.json");
  ASSERT_TRUE(s.matrix);
  EXPECT_NEAR(s.spectrum[0], 0.7, 1e-12);
  EXPECT_NEAR(s.spectrum[1], 0.3, 1e-12);
}

TEST(StateFile, ComplexMatrixForm) {
  const auto s = hphi::load_state(kDir + "/complex_qubit.json");
  EXPECT_NEAR(s.spectrum[0], 0.7, 1e-12);
  EXPECT_NEAR(s.spectrum[1], 0.3, 1e-12);
}

TEST(StateFile, Rejections) {
  EXPECT_EQ(parse_error_kind("not json"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("{}"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind(R"({"spectrum": [1], "matrix": {"re": [[1]]}})"),
            ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind(R"({"spectrum": [0.5, "x"]})"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind(R"({"spectrum": [0.5, 0.4]})"), ErrorKind::NotNormalized);
  EXPECT_EQ(parse_error_kind(R"({"matrix": {"re": [[0.5, 0.1], [0.2, 0.5]]}})"),
            ErrorKind::NotHermitian);
  EXPECT_EQ(parse_error_kind(R"({"matrix": {"re": [[0.5, 0.1], [0.1]]}})"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind(R"({"matrix": {"re": [[1.2, 0.0], [0.0, -0.2]]}})"),
            ErrorKind::NotPSD);
  EXPECT_EQ(parse_error_kind(R"({"matrix": {"re": [[0.5, 0], [0, 0.5]], "im": [[0, 0.1], [0.1, 0]]}})"),
            ErrorKind::NotHermitian);
}

TEST(StateFile, RoundTrip) {
  hphi::Rng rng({41});
  for (int t = 0; t < 100; ++t) {
    const auto x = hphi::sample_spectrum(1 + rng.index(10), rng);
    const auto back = hphi::parse_state(hphi::write_state(x)).spectrum;
    EXPECT_EQ(hphi::max_abs_diff(x, back), 0.0);
  }
}

TEST(Eigensolver, KnownSpectra) {
  // [[2,1],[1,2]] has eigenvalues 3 and 1.
  const auto e = hphi::symmetric_eigenvalues({2, 1, 1, 2}, 2);
  EXPECT_NEAR(e[0], 3.0, 1e-13);
  EXPECT_NEAR(e[1], 1.0, 1e-13);
}

TEST(Eigensolver, RandomUnitaryConjugation) {
  // U diag(x) U^dagger built from a product of complex Givens rotations.
  hphi::Rng rng({12});
  for (int t = 0; t < 50; ++t) {
    const std::size_t d = 2 + rng.index(6);
    const auto x = hphi::sample_spectrum(d, rng);
    auto m = hphi::HermitianMatrix::diagonal(x);
    for (int g = 0; g < 3 * static_cast<int>(d); ++g) {
      const std::size_t p = rng.index(d);
      std::size_t q = rng.index(d - 1);
      if (q >= p) ++q;
      const double th = 6.283185307179586 * rng.uniform();
      const auto ph = std::polar(1.0, 6.283185307179586 * rng.uniform());
      const std::complex<double> c = std::cos(th), s = std::sin(th) * ph;
      // Rows then columns: M <- G M G^dagger.
      for (std::size_t k = 0; k < d; ++k) {
        const auto a = m(p, k), b = m(q, k);
        m(p, k) = c * a - std::conj(s) * b;
        m(q, k) = s * a + c * b;
      }
      for (std::size_t k = 0; k < d; ++k) {
        const auto a = m(k, p), b = m(k, q);
        m(k, p) = a * c - b * s;
        m(k, q) = a * std::conj(s) + b * c;
      }
    }
    const auto eig = hphi::hermitian_eigenvalues(m);
    for (std::size_t i = 0; i < d; ++i) EXPECT_NEAR(eig[i], x[i], 1e-11);
    // Rotating one state can only increase its distance from a diagonal one.
    const auto y = hphi::sample_spectrum(d, rng);
    EXPECT_GE(hphi::trace_distance(m, hphi::HermitianMatrix::diagonal(y)),
              hphi::trace_distance(x, y) - 1e-12);
  }
}

TEST(MatrixTraceDistance, NonCommutingQubits) {
  // diag(1,0) against |+><+|: distance sqrt(1/2).
  const auto a = hphi::parse_state(R"({"spectrum": [1, 0]})");
  const auto b = hphi::parse_state(R"({"matrix": {"re": [[0.5, 0.5], [0.5, 0.5]]}})");
  EXPECT_NEAR(hphi::trace_distance(a, b), std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(hphi::trace_distance(a.spectrum, b.spectrum), 0.0, 1e-12);
}

}  // namespace
