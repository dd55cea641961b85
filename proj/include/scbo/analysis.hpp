#ifndef SCBO_ANALYSIS_HPP
#define SCBO_ANALYSIS_HPP

#include <cstdint>
#include <vector>

#include "scbo/dynamics.hpp"
#include "scbo/objective.hpp"

namespace scbo {

// Monte Carlo check of the exact pairwise-difference law
//   x^{ij}_l(t) = x^{ij}_l(0) exp(-(lambda + sigma^2/2) t + sigma W_l(t)),
// whose second moment is e^{-(2 lambda - sigma^2) t} x^{ij}_l(0)^2.
struct DecayProbe {
  double lambda = 1.0;
  double sigma = 1.0;
  std::vector<double> t_checkpoints;  // strictly increasing, positive
  int n_samples = 100000;
  std::uint64_t seed = 0;

  void validate() const;
};

struct MomentRow {
  double t = 0.0;
  double empirical = 0.0;
  double theoretical = 0.0;
  double std_error = 0.0;
};

std::vector<MomentRow> exact_pairwise_moment(const DecayProbe& probe,
                                             double init_diff);

// Two-particle D-SCBO systems on a constant objective: the empirical
// E[diff^2] after n steps against [e^{-2 lambda h} (1 + sigma^2 h)]^n.
struct DecayRow {
  long step = 0;
  double empirical = 0.0;
  double theoretical = 0.0;
  double std_error = 0.0;
};

struct DecayReport {
  double lambda = 0.0, sigma = 0.0, h = 0.0;
  double per_step_factor = 0.0;
  int n_seeds = 0;
  std::vector<DecayRow> rows;
};

// checkpoints must be nonempty, increasing step counts; n_seeds >= 500.
DecayReport verify_discrete_decay(const SolverConfig& cfg,
                                  std::span<const long> checkpoints,
                                  int n_seeds);

struct LaplacePoint {
  double beta = 0.0;
  double estimate = 0.0;   // -(1/beta) log mean e^{-beta f(x)}
  double std_error = 0.0;
};

// Box-uniform Monte Carlo estimate of -(1/beta) log E[e^{-beta f}] for each
// beta, one shared sample of size m for all betas, log-sum-exp stabilized.
// The sequence approaches f_min as beta grows.
std::vector<LaplacePoint> laplace_estimate(const ObjectiveSpec& objective,
                                           std::span<const double> betas,
                                           int m, std::uint64_t seed);

// Inputs of the parameter condition (left/right sides of the beta-form):
//   (e^{-mu0^{1-q} beta kappa} - eps) E[e^{beta (f~_min - f(x^in))}]
//     >= mu0^{1-q}/(1-q) beta kappa
//        + gamma (2 lambda + sigma^2) eta beta sum_l E[max_i (x^i_l(0) - xbar_l(0))^2]
// with f~_min = f_min - kappa mu_bar^{1-q}.
struct ConditionInput {
  double beta = 0.0, lambda = 0.0, sigma = 0.0, mu0 = 0.0;
  double kappa = 0.0, eta = 0.0, q = 0.0, mu_bar = 0.0;
  double gamma = 0.0;
  double epsilon = 0.0;  // in (0, e^{-mu0^{1-q} beta kappa})
  double f_min = 0.0;
  std::function<double(std::span<const double>)> f;  // objective of the run
  int n_particles = 0;           // N of the ensemble max-spread expectation
  std::vector<double> init_samples;  // M x d draws of x^in, row-major
  int dim = 0;

  void validate() const;
};

struct ConditionReport {
  double left = 0.0, right = 0.0;
  double left_se = 0.0, right_se = 0.0;
  bool satisfied = false;
  bool satisfied_with_margin = false;  // holds after 2-SE adversarial shift
  double e_beta = 0.0;                 // error bound E(beta)
  // itemized terms
  double exp_term = 0.0;       // E[e^{beta (f~_min - f(x^in))}]
  double mu_term = 0.0;        // mu0^{1-q}/(1-q) beta kappa
  double spread_term = 0.0;    // sum_l E[max_i (x^i_l - xbar_l)^2]
  double f_tilde_min = 0.0;
  int n_xin_samples = 0;
  int n_ensembles = 0;
};

ConditionReport check_condition(const ConditionInput& ci);

// The constructive epsilon choice for a target error delta:
//   eps = e^{-2 mu0^{1-q} beta kappa - beta delta}
//         / ( mu0^{1-q} beta kappa / (1-q) + e^{-mu0^{1-q} beta kappa - beta delta} )
double constructive_epsilon(double beta, double kappa, double q, double mu0,
                         double delta);

// Supremum over t of int_0^t e^{-(2 lambda - sigma^2) s} mu(s)^{-q-1} ds for
// the schedule mu(s) = mu0 e^{-alpha s}:
//   mu0^{-q-1} / (2 lambda - sigma^2 - (q+1) alpha).
// Requires (q+1) alpha < 2 lambda - sigma^2 (otherwise the integral diverges).
double gamma_bound(double lambda, double sigma, double alpha, double q,
                   double mu0);

}  // namespace scbo

#endif
