#ifndef SCBO_BASELINE_HPP
#define SCBO_BASELINE_HPP

#include <cstdint>
#include <vector>

#include "scbo/objective.hpp"

namespace scbo {

// Smoothing projected gradient descent:
//   x_{k+1} = x_k - alpha1 grad_x f~(x_k, mu_k),   mu_{k+1} = alpha2 mu_k,
// alpha1 from Armijo backtracking on f~(., mu_k). Unconstrained, so the
// projection is vacuous.
struct SpgConfig {
  double alpha2 = 0.9;      // mu shrink factor, in (0, 1]
  double mu0 = 0.1;
  int max_iters = 5000;
  double armijo_c = 1e-4;   // sufficient-decrease constant, in (0, 1)
  double backtrack = 0.5;   // step shrink factor, in (0, 1)
  double grad_tol = 1e-8;   // stationarity stop

  void validate() const;
};

struct SpgReport {
  std::vector<double> x_final;
  double f_value = 0.0;
  int iterations = 0;
  double grad_norm = 0.0;
  bool line_search_failed = false;  // 60 halvings without sufficient decrease
  bool success = false;             // per the normalized-gap criterion
};

SpgReport spg_run(const ObjectiveSpec& objective, std::span<const double> x0,
                  const SpgConfig& cfg, double success_threshold = 0.005);

struct MultistartReport {
  std::vector<SpgReport> runs;
  std::vector<std::vector<double>> starts;
  int n_success = 0;
  double success_threshold = 0.0;
};

// n_starts uniform draws on the objective box, one SPG run each.
MultistartReport spg_multistart(const ObjectiveSpec& objective, int n_starts,
                                const SpgConfig& cfg, std::uint64_t seed,
                                double success_threshold = 0.005);

}  // namespace scbo

#endif
