#ifndef SCBO_BENCH_HPP
#define SCBO_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "scbo/dynamics.hpp"

namespace scbo {

// Normalized-gap success criterion: (|f - f_min|) / (f_max - f_min) < threshold.
bool run_success(double f_value, double f_min, double f_max, double threshold);

// A success-rate / solution-error sweep over particle counts or weights.
struct SweepSpec {
  std::vector<std::string> objective_ids;
  enum class Vary { N, beta } vary = Vary::N;
  std::vector<double> values;
  SolverConfig base;               // all non-varied fields
  SmootherKind smoother = SmootherKind::logexp;
  int dim = 2;
  double init_lo = -5.0, init_hi = 5.0;
  int runs_per_cell = 100;
  double success_threshold = 0.005;
  std::uint64_t base_seed = 0;

  void validate() const;
};

struct RunDigest {
  std::uint64_t seed = 0;
  double f_value = 0.0;
  double sol_err = 0.0;  // ||x_inf - x*||^2
  bool success = false;
  bool diverged = false;
  bool consensus_reached = false;
  double t_final = 0.0;
};

struct CellResult {
  std::string objective;
  double value = 0.0;   // the varied N or beta
  double rate = 0.0;    // successes / runs (divergent runs count as failures)
  double sol_err = 0.0; // mean over non-divergent runs
  double fun_val = 0.0;
  int n_divergent = 0;
  std::vector<RunDigest> per_run;
};

// Per-run seed = mix(base_seed, hash(objective id), value bits, run index),
// so adding cells or values never perturbs existing cells' streams.
std::uint64_t cell_run_seed(std::uint64_t base_seed, const std::string& objective,
                            double value, int run_index);

std::vector<CellResult> run_sweep(const SweepSpec& spec, int n_workers = 0);

struct ComparisonCell {
  CellResult scbo;
  CellResult cbo;
};

// Both steppers under identical per-run seeds (same init and noise draws).
std::vector<ComparisonCell> run_comparison(const SweepSpec& spec,
                                           int n_workers = 0);

// CSV with one row per cell, columns objective,vary,value,rate,fun-val,sol-err,
// divergent,runs (names per the table labels; see docs/schema.md).
void write_sweep_csv(std::ostream& os, const SweepSpec& spec,
                     std::span<const CellResult> cells);
void write_comparison_csv(std::ostream& os, const SweepSpec& spec,
                          std::span<const ComparisonCell> cells);

}  // namespace scbo

#endif
