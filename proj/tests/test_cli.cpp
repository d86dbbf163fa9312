#include <gtest/gtest.h>

#include <sstream>

#include "hphi/cli.hpp"

namespace {

using namespace hphi::cli;

const std::string kDir = HPHI_SAMPLE_STATES;

std::string run(int (*cmd)(const Options&, std::ostream&), const Options& o, int expect = kOk) {
  std::ostringstream out, err;
  const int code = guarded([&] { return cmd(o, out); }, err);
  EXPECT_EQ(code, expect) << err.str();
  return out.str();
}

TEST(Format, RealsAndSpectra) {
  EXPECT_EQ(format_real(-0.0), "0");
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_spectrum(hphi::Spectrum::from_values({0.25, 0.75})), "0.75,0.25");
}

TEST(Grid, Parsing) {
  const auto g = parse_grid("0.01:0.05:0.01");
  ASSERT_EQ(g.size(), 5u);
  EXPECT_DOUBLE_EQ(g.back(), 0.05);
  EXPECT_EQ(parse_grid("0.5:0.5:0.1").size(), 1u);
  for (const char* bad : {"0.1:0.2", "0:0.5:0.1", "0.5:0.1:0.1", "0.1:0.5:0", "0.1:2:0.1",
                          "a:b:c", "0.1:0.2:0.1:0.1"}) {
    try {
      parse_grid(bad);
      ADD_FAILURE() << bad;
    } catch (const hphi::Error& e) {
      EXPECT_EQ(e.kind(), hphi::ErrorKind::BadGrid) << bad;
    }
  }
}

TEST(Commands, MinimizeGolden) {
  Options o;
  o.state = kDir + "/five_levels.json";
  o.eps = 0.02;
  EXPECT_EQ(run(cmd_minimize, o),
            "m_plus: 1\nm_minus: 1\ngamma_plus: 0.3\ngamma_minus: 0.12\nreached_tau: false\n"
            "spectrum: 0.3,0.26,0.19,0.13,0.12\n");
}

TEST(Commands, MinimizeTwelveLevels) {
  Options o;
  o.state = kDir + "/twelve_levels.json";
  o.eps = 0.07;
  const auto text = run(cmd_minimize, o);
  EXPECT_NE(text.find("m_plus: 2\n"), std::string::npos);
  EXPECT_NE(text.find("m_minus: 4\n"), std::string::npos);
  EXPECT_NE(text.find("gamma_plus: 0.12\n"), std::string::npos);
  EXPECT_NE(text.find("gamma_minus: 0.06125\n"), std::string::npos);
}

TEST(Commands, EntropyOfFiveLevelState) {
  Options o;
  o.state = kDir + "/five_levels.json";
  o.family = "renyi";
  o.param = 0.5;
  EXPECT_EQ(run(cmd_entropy, o), "2.25956854328599\n");
  o.family = "von_neumann";
  o.param.reset();
  EXPECT_EQ(run(cmd_entropy, o), "2.20138566265668\n");
}

TEST(Commands, BoundUniformOnly) {
  Options o;
  o.family = "tsallis";
  o.param = 2.0;
  o.dim = 3;
  o.eps = 0.1;
  EXPECT_EQ(run(cmd_bound, o),
            "family: tsallis(2)\ndim: 3\neps: 0.1\nbranch: SubCritical\nbound: 0.185\n"
            "tight_witness: 0.9,0.05,0.05\n");
}

TEST(Commands, BoundTightPair) {
  Options o;
  o.state = kDir + "/pure4.json";
  o.state2 = kDir + "/witness4_eps03.json";
  o.eps = 0.3;
  const auto text = run(cmd_bound, o);
  EXPECT_NE(text.find("tight: true\n"), std::string::npos);
  EXPECT_NE(text.find("trace_distance: 0.3\n"), std::string::npos);
}

TEST(Commands, BoundErrors) {
  Options o;
  o.family = "renyi";
  o.param = 2.0;
  o.dim = 4;
  o.eps = 0.1;
  run(cmd_bound, o, kValidation);
  o.family = "von_neumann";
  o.param.reset();
  o.dim.reset();
  run(cmd_bound, o, kUsage);
  o.state = kDir + "/pure4.json";
  o.state2 = kDir + "/mixed3_matrix.json";
  run(cmd_bound, o, kValidation);
  o.state2 = kDir + "/witness4_eps03.json";
  run(cmd_bound, o, kValidation);  // distance 0.3 exceeds 0.1
}

TEST(Commands, SweepCsv) {
  Options o;
  o.dim = 4;
  o.eps_grid = "0.1:0.3:0.1";
  o.random_states = 5;
  std::istringstream lines(run(cmd_sweep, o));
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "eps,bound,local,family");
  int rows = 0, with_local = 0;
  double prev = 0.0;
  while (std::getline(lines, line)) {
    ++rows;
    const double eps = std::stod(line.substr(0, line.find(',')));
    EXPECT_GE(eps, prev);
    prev = eps;
    if (line.find(",,") == std::string::npos) ++with_local;
  }
  EXPECT_EQ(rows, 8);
  EXPECT_EQ(with_local, 5);
}

TEST(Commands, FlowCsv) {
  Options o;
  o.state = kDir + "/five_levels.json";
  o.eps_grid = "0.02:0.2:0.18";
  EXPECT_EQ(run(cmd_flow, o),
            "eps,l1,l2,l3,l4,l5\n0.02,0.3,0.26,0.19,0.13,0.12\n0.2,0.2,0.2,0.2,0.2,0.2\n");
}

TEST(Commands, Delta) {
  Options o;
  o.state = kDir + "/five_levels.json";
  EXPECT_EQ(run(cmd_delta, o), "delta: 0.03\n");
  o.state = kDir + "/mixed3_matrix.json";
  run(cmd_delta, o, kValidation);
}

TEST(Commands, MissingStateIsUsageError) {
  Options o;
  o.eps = 0.1;
  run(cmd_minimize, o, kUsage);
  o.state = kDir + "/does_not_exist.json";
  run(cmd_minimize, o, kValidation);
}

TEST(Verify, CounterexampleAndForcedFailure) {
  Options o;
  std::ostringstream out;
  EXPECT_EQ(cmd_verify("counterexample", o, out), kOk);
  EXPECT_NE(out.str().find("result: PASS"), std::string::npos);

  o.trials = 20;
  o.tol = -1.0;
  std::ostringstream bad;
  EXPECT_EQ(cmd_verify("semigroup", o, bad), kSuiteFailure);
  EXPECT_NE(bad.str().find("failure: "), std::string::npos);
}

}  // namespace
