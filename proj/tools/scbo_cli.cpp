#include <CLI11.hpp>

#include "scbo/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"SCBO: smoothing consensus-based optimization"};
  app.require_subcommand(1);

  scbo::cli::Options options;
  std::uint64_t seed = 0;
  bool have_seed = false;

  const std::vector<std::string> names = {
      "run",          "sweep",   "compare", "check-condition",
      "decay-probe",  "laplace", "spg-multistart"};
  const std::vector<std::string> descriptions = {
      "single optimization run from a config file",
      "success-rate sweep over N or beta",
      "paired SCBO-vs-CBO comparison under shared seeds",
      "evaluate the parameter condition and the error bound E(beta)",
      "pairwise-moment probes (continuous law and discrete two-particle decay)",
      "Laplace-principle estimate of f_min",
      "SPG descent from many uniform starts"};
  for (size_t i = 0; i < names.size(); ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
    sub->add_option("-c,--config", options.config_path, "experiment config (JSON)")
        ->required();
    sub->add_option("-o,--out", options.output_path,
                    "output path (default: config 'output' or $SCBO_OUT_DIR)");
    sub->add_option("--seed", seed, "override the config seed")
        ->each([&](const std::string&) { have_seed = true; });
    sub->add_option("-j,--workers", options.workers,
                    "worker threads (0 = machine parallelism)");
    sub->add_flag("-v,--verbose", options.verbosity, "more per-run output");
  }

  CLI11_PARSE(app, argc, argv);
  options.subcommand = app.get_subcommands().front()->get_name();
  if (have_seed) options.seed_override = seed;
  return scbo::cli::execute(options);
}
