#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "modspace/cli/commands.hpp"

int main(int argc, char** argv) {
  using modspace::cli::RunOptions;

  CLI::App app{"Fixed points of contractions in modular spaces"};
  app.require_subcommand(1);

  RunOptions opts;
  std::uint64_t seed = 0;
  std::string out;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config, "problem file (JSON)")->required();
    sub->add_option("--seed", seed, "override the configured seed");
    sub->add_option("--out", out, "override the output directory");
    sub->add_flag("--quiet", opts.quiet, "suppress progress output");
  };
  add_common(app.add_subcommand("check", "run the modular-axiom, Delta2 and Fatou checkers"));
  add_common(app.add_subcommand("solve", "verify the contraction and run Picard iteration"));
  add_common(app.add_subcommand("certificate", "build and verify the chain certificate"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : modspace::cli::kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--seed")) opts.seed = seed;
  if (sub->count("--out")) opts.out = out;
  return modspace::cli::run_command(sub->get_name(), opts, std::cout, std::cerr);
}
