#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "hphi/cli.hpp"

int main(int argc, char** argv) {
  using namespace hphi::cli;

  CLI::App app{"Entropy continuity bounds and the majorization-minimal state of an eps-ball"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  std::string suite;
  app.add_option("--state", o.state, "State file ({\"spectrum\":[...]} or {\"matrix\":{...}})");
  app.add_option("--state2", o.state2, "Second state file");
  app.add_option("--family", o.family, "von_neumann | renyi | tsallis")
      ->check(CLI::IsMember({"von_neumann", "renyi", "tsallis"}));
  app.add_option("--param", o.param, "Renyi alpha or Tsallis q");
  app.add_option("--dim", o.dim, "Hilbert-space dimension");
  app.add_option("--eps", o.eps, "Trace-distance radius in (0,1]");
  app.add_option("--eps-grid", o.eps_grid, "Grid start:stop:step");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--out", o.out, "Write output to this file instead of stdout");
  app.add_option("--random-states", o.random_states, "Random states for sweep scatter rows");
  app.add_option("--trials", o.trials, "Trials per suite configuration");
  app.add_option("--tol", o.tol, "Suite tolerance override");

  auto* entropy = app.add_subcommand("entropy", "Entropy of a state");
  auto* minimize = app.add_subcommand("minimize", "Majorization-minimal state in the eps-ball");
  auto* bound = app.add_subcommand("bound", "Uniform continuity bound, local bound, tightness");
  auto* sweep = app.add_subcommand("sweep", "CSV of the uniform bound over an eps grid");
  auto* flow = app.add_subcommand("flow", "CSV of the minimizer spectrum over an eps grid");
  auto* verify = app.add_subcommand("verify", "Run a randomized verification suite");
  auto* delta = app.add_subcommand("delta", "Step size delta(rho) or delta(rho, sigma)");
  verify->add_option("suite", suite, "Suite name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  std::ofstream file;
  if (o.out) {
    file.open(*o.out);
    if (!file) {
      std::cerr << "error: cannot open " << *o.out << '\n';
      return kValidation;
    }
  }
  std::ostream& out = o.out ? static_cast<std::ostream&>(file) : std::cout;
  const bool family_given = app.count("--family") > 0;

  return guarded(
      [&]() -> int {
        if (*entropy) return cmd_entropy(o, out);
        if (*minimize) return cmd_minimize(o, out);
        if (*bound) return cmd_bound(o, out);
        if (*sweep) return cmd_sweep(o, out);
        if (*flow) return cmd_flow(o, out);
        if (*verify) return cmd_verify(suite, o, out, family_given);
        if (*delta) return cmd_delta(o, out);
        throw UsageError("no subcommand");
      },
      std::cerr);
}
