#include "scbo/baseline.hpp"

#include <cmath>
#include <stdexcept>

#include "scbo/rng.hpp"

namespace scbo {

void SpgConfig::validate() const {
  if (!(alpha2 > 0.0 && alpha2 <= 1.0))
    throw std::invalid_argument("SpgConfig: alpha2 outside (0, 1]");
  if (!(mu0 > 0.0)) throw std::invalid_argument("SpgConfig: mu0 <= 0");
  if (max_iters < 1) throw std::invalid_argument("SpgConfig: max_iters < 1");
  if (!(armijo_c > 0.0 && armijo_c < 1.0))
    throw std::invalid_argument("SpgConfig: armijo_c outside (0, 1)");
  if (!(backtrack > 0.0 && backtrack < 1.0))
    throw std::invalid_argument("SpgConfig: backtrack outside (0, 1)");
  if (!(grad_tol > 0.0)) throw std::invalid_argument("SpgConfig: grad_tol <= 0");
}

SpgReport spg_run(const ObjectiveSpec& objective, std::span<const double> x0,
                  const SpgConfig& cfg, double success_threshold) {
  cfg.validate();
  for (double v : x0)
    if (!std::isfinite(v)) throw std::invalid_argument("spg_run: non-finite x0");
  if (static_cast<int>(x0.size()) != objective.dim)
    throw std::invalid_argument("spg_run: x0 dim mismatch");

  SpgReport rep;
  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> g(objective.dim), trial(objective.dim);
  double mu = cfg.mu0;

  for (int k = 0; k < cfg.max_iters; ++k) {
    objective.smoother.grad_x(x, mu, g);
    double g2 = 0.0;
    for (double v : g) g2 += v * v;
    rep.grad_norm = std::sqrt(g2);
    if (rep.grad_norm < cfg.grad_tol) break;

    const double fx = objective.smoother.value(x, mu);
    double step = 1.0;
    bool accepted = false;
    for (int half = 0; half < 60; ++half) {
      for (int l = 0; l < objective.dim; ++l) trial[l] = x[l] - step * g[l];
      if (objective.smoother.value(trial, mu) <= fx - cfg.armijo_c * step * g2) {
        accepted = true;
        break;
      }
      step *= cfg.backtrack;
    }
    if (!accepted) {
      rep.line_search_failed = true;
      break;
    }
    x = trial;
    mu *= cfg.alpha2;
    rep.iterations = k + 1;
  }

  rep.x_final = x;
  rep.f_value = objective.f(x);
  rep.success = objective.success_ratio(rep.f_value) < success_threshold;
  return rep;
}

MultistartReport spg_multistart(const ObjectiveSpec& objective, int n_starts,
                                const SpgConfig& cfg, std::uint64_t seed,
                                double success_threshold) {
  if (n_starts < 1) throw std::invalid_argument("spg_multistart: n_starts < 1");
  MultistartReport rep;
  rep.success_threshold = success_threshold;
  GaussianStream stream(seed);
  for (int r = 0; r < n_starts; ++r) {
    std::vector<double> x0(objective.dim);
    for (double& v : x0) v = stream.uniform(objective.box_lo, objective.box_hi);
    rep.starts.push_back(x0);
    rep.runs.push_back(spg_run(objective, x0, cfg, success_threshold));
    if (rep.runs.back().success) rep.n_success += 1;
  }
  return rep;
}

}  // namespace scbo
