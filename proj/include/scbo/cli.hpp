#ifndef SCBO_CLI_HPP
#define SCBO_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace scbo::cli {

// Exit codes used by the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;      // schema violation / bad config
inline constexpr int kExitUnknownId = 3;   // unknown benchmark id
inline constexpr int kExitIo = 4;          // unreadable config / unwritable output
inline constexpr int kExitDivergence = 5;  // a required run diverged

struct Options {
  std::string subcommand;  // run, sweep, compare, check-condition,
                           // decay-probe, laplace, spg-multistart
  std::string config_path;
  std::string output_path;  // optional; default derived from config + SCBO_OUT_DIR
  std::optional<std::uint64_t> seed_override;
  int workers = 0;  // 0 = machine parallelism
  int verbosity = 0;
};

// Dispatches to the library, writes JSON (and CSV for sweeps/comparisons)
// artifacts, prints one summary line per run/cell. Returns an exit code.
int execute(const Options& options);

}  // namespace scbo::cli

#endif
