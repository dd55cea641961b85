#ifndef SCBO_OBJECTIVE_HPP
#define SCBO_OBJECTIVE_HPP

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "scbo/smoothing.hpp"

namespace scbo {

struct UnknownObjectiveError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A benchmark objective with known minimizer, search box, cached box maximum
// (used by the success criterion) and a certified smoothing family.
struct ObjectiveSpec {
  std::string id;
  int dim = 0;
  std::function<double(std::span<const double>)> f;
  SmoothingSpec smoother;
  double box_lo = 0.0, box_hi = 0.0;  // axis-aligned box [lo, hi]^dim
  std::vector<double> x_star;
  double f_min = 0.0;
  double f_max = 0.0;

  double success_ratio(double f_value) const {
    return std::abs(f_value - f_min) / (f_max - f_min);
  }
};

// f(x) = (1/10) sum_l [ |x_l| - cos(pi x_l) + 1 ]   on [-2, 2]^d,
// minimized at 0 with value 0. kappa/eta carried in closed form.
ObjectiveSpec build_example1(int dim, SmootherKind kind);

// Hessian-bound constant of example1's smoothing family, tight on (0, mu_bar]:
// ||hess_x f~(x, mu)||_2 <= (1/(2 mu) + pi^2)/10 <= example1_eta(mu_bar)/mu.
// The constant shrinks with the mu range, so condition checks over a schedule
// mu_t in (0, mu0] should pass example1_eta(mu0) rather than the box-wide
// declaration at mu_bar = 1.
double example1_eta(double mu_bar);

// The five nonsmooth test functions on [-5, 5]^d, all minimized at 0 with
// value 0. id in {"f1", ..., "f5"}. Every |x_l| occurrence (including inside
// the composites of f4 and f5) is replaced by the chosen smooth-abs; outer
// functions are left unchanged.
ObjectiveSpec build_benchmark(const std::string& id, int dim, SmootherKind kind);

// Registry over {"example1", "f1", ..., "f5"}; throws std::invalid_argument
// on unknown ids.
ObjectiveSpec make_objective(const std::string& id, int dim, SmootherKind kind);
std::vector<std::string> objective_ids();

// Empirical check of the declared (kappa, q) constants on a grid_resolution^d
// grid over the objective's box, at the given mu values (all must lie in (0, mu_bar]).
// Ratios are |f~ - f| / mu^{1-q} and |d f~/d mu| * mu^q; the check passes iff
// both worst cases are <= the declared kappa.
struct CertReport {
  double worst_value_ratio = 0.0;
  double worst_dmu_ratio = 0.0;
  double kappa_declared = 0.0;
  double q_declared = 0.0;
  bool pass = false;
};

CertReport certify_constants(const ObjectiveSpec& spec, int grid_resolution,
                             std::span<const double> mu_values);
// Convenience overload: mu_samples log-spaced values mu_bar * 10^{-k},
// k = 1..mu_samples.
CertReport certify_constants(const ObjectiveSpec& spec, int grid_resolution,
                             int mu_samples);

}  // namespace scbo

#endif
