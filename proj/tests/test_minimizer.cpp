#include <gtest/gtest.h>

#include <vector>

#include "hphi/bounds.hpp"
#include "hphi/minimizer.hpp"
#include "hphi/oracle.hpp"
#include "oracles.hpp"

namespace {

using hphi::Spectrum;

const Spectrum kFiveLevels = Spectrum::from_values({0.32, 0.26, 0.19, 0.13, 0.10});

void expect_spectrum(const Spectrum& got, const std::vector<double>& want, double tol) {
  ASSERT_EQ(got.dim(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "at " << i;
}

TEST(Minimizer, FiveLevelStateSmallEps) {
  const auto r = hphi::mmm(kFiveLevels, 0.02);
  EXPECT_EQ(r.m_plus, 1u);
  EXPECT_EQ(r.m_minus, 1u);
  EXPECT_NEAR(r.gamma_plus, 0.30, 1e-15);
  EXPECT_NEAR(r.gamma_minus, 0.12, 1e-15);
  EXPECT_FALSE(r.reached_tau);
  expect_spectrum(r.output, {0.30, 0.26, 0.19, 0.13, 0.12}, 1e-15);
}

TEST(Minimizer, FiveLevelStatePastFirstKink) {
  expect_spectrum(hphi::mmm(kFiveLevels, 0.06).output, {0.26, 0.26, 0.19, 0.145, 0.145}, 1e-15);
  const auto r = hphi::mmm(kFiveLevels, 0.07);
  EXPECT_EQ(r.m_plus, 2u);
  EXPECT_EQ(r.m_minus, 2u);
  expect_spectrum(r.output, {0.255, 0.255, 0.19, 0.15, 0.15}, 1e-15);
}

TEST(Minimizer, SaturatesAtDistanceToUniform) {
  // The five-level state is 0.18 from the mixed state.
  for (double eps : {0.18, 0.2, 0.5, 1.0}) {
    const auto r = hphi::mmm(kFiveLevels, eps);
    EXPECT_TRUE(r.reached_tau);
    expect_spectrum(r.output, std::vector<double>(5, 0.2), 0.0);
  }
}

TEST(Minimizer, PureQubit) {
  const auto r = hphi::mmm(Spectrum::pure(2), 0.1);
  expect_spectrum(r.output, {0.9, 0.1}, 1e-15);
}

TEST(Minimizer, LevelsAcrossTwelveEntries) {
  const auto x = Spectrum::from_values(
      {0.17, 0.14, 0.11, 0.10, 0.09, 0.08, 0.07, 0.065, 0.05, 0.045, 0.04, 0.04});
  const auto r = hphi::mmm(x, 0.07);
  EXPECT_EQ(r.m_plus, 2u);
  EXPECT_EQ(r.m_minus, 4u);
  EXPECT_NEAR(r.gamma_plus, 0.12, 1e-15);
  EXPECT_NEAR(r.gamma_minus, 0.06125, 1e-15);
}

TEST(Minimizer, DimensionOneIsFixed) {
  const auto r = hphi::mmm(Spectrum::pure(1), 0.3);
  EXPECT_EQ(r.output[0], 1.0);
}

TEST(Minimizer, RejectsBadEps) {
  for (double eps : {0.0, -0.1, 1.5}) {
    try {
      hphi::mmm(kFiveLevels, eps);
      ADD_FAILURE() << eps;
    } catch (const hphi::Error& e) {
      EXPECT_EQ(e.kind(), hphi::ErrorKind::BadEpsilon);
    }
  }
}

TEST(DeltaStep, Examples) {
  EXPECT_NEAR(hphi::delta_step(kFiveLevels).value, 0.03, 1e-15);
  EXPECT_NEAR(hphi::delta_step(Spectrum::from_values({0.5, 0.5, 0.0})).value, 0.5, 1e-15);
  EXPECT_NEAR(hphi::delta_step(Spectrum::from_values({0.4, 0.4, 0.1, 0.1})).value, 0.6, 1e-15);
  EXPECT_THROW(hphi::delta_step(Spectrum::uniform(4)), hphi::Error);
  EXPECT_NEAR(hphi::delta_pair(kFiveLevels, Spectrum::pure(3 + 2)).value, 0.03, 1e-15);
}

TEST(DeltaStep, FirstStepMovesOnlyExtremeLevels) {
  const auto r = hphi::mmm(kFiveLevels, hphi::delta_step(kFiveLevels).value);
  expect_spectrum(r.output, {0.29, 0.26, 0.19, 0.13, 0.13}, 1e-15);
  const auto e = hphi::multiplicity_extremes(r.output);
  EXPECT_EQ(e.k_minus, 2u);
}

TEST(Semigroup, RejectsOversizedSplit) {
  EXPECT_THROW(hphi::check_split(0.6, 0.6), hphi::Error);
  EXPECT_NO_THROW(hphi::check_split(0.5, 0.5));
}

TEST(MajorizationPreserving, RejectsIncomparable) {
  try {
    hphi::check_majorization_preserving(Spectrum::pure(3), Spectrum::uniform(3), 0.1);
    ADD_FAILURE();
  } catch (const hphi::Error& e) {
    EXPECT_EQ(e.kind(), hphi::ErrorKind::NotComparable);
  }
}

// Random states, including ones with repeated levels, against the
// bisection water-filling reference.
TEST(MinimizerProperties, MatchesWaterFilling) {
  hphi::Rng rng({314});
  for (int t = 0; t < 2000; ++t) {
    const std::size_t d = 2 + rng.index(11);
    std::vector<double> v(d);
    for (double& e : v) e = rng.uniform() < 0.25 ? 0.5 : rng.exponential();
    double total = 0.0;
    for (double e : v) total += e;
    for (double& e : v) e /= total;
    const auto x = Spectrum::from_values(v);
    const double eps = 0.001 + 0.999 * rng.uniform();

    const auto got = hphi::mmm(x, eps).output;
    const auto want = hphi::testing::waterfill(std::vector<double>(x.begin(), x.end()), eps);
    expect_spectrum(got, want, 1e-12);
  }
}

TEST(MinimizerProperties, BallMembershipAndOrder) {
  hphi::Rng rng({11});
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = 2 + rng.index(9);
    const auto x = hphi::sample_spectrum(d, rng);
    const double eps = rng.open_uniform();
    const auto r = hphi::mmm(x, eps);
    EXPECT_LE(hphi::trace_distance(r.output, x), eps + 1e-12);
    EXPECT_TRUE(hphi::precedes(r.output, x));
    if (!r.reached_tau) {
      EXPECT_NEAR(hphi::trace_distance(r.output, x), eps, 1e-12);
    }
    // Anything else in the ball majorizes the minimizer.
    const auto w = hphi::sample_ball(x, eps, rng);
    EXPECT_TRUE(hphi::precedes(r.output, w));
  }
}

TEST(MinimizerProperties, SemigroupAndMonotonePath) {
  hphi::Rng rng({5});
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = 2 + rng.index(7);
    const auto x = hphi::sample_spectrum(d, rng);
    const double e1 = 0.5 * rng.open_uniform();
    const double e2 = 0.5 * rng.open_uniform();
    EXPECT_LE(hphi::semigroup_residual(x, e1, e2), 1e-12);
    EXPECT_TRUE(hphi::precedes(hphi::mmm(x, e1 + e2).output, hphi::mmm(x, e1).output));
  }
}

TEST(MinimizerProperties, PreservesMajorization) {
  hphi::Rng rng({8});
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = 2 + rng.index(7);
    const auto [x, y] = hphi::sample_majorized_pair(d, 1 + rng.index(4), rng);
    EXPECT_TRUE(hphi::check_majorization_preserving(x, y, rng.open_uniform()));
  }
}

}  // namespace
