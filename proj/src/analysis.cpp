#include "scbo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scbo {

namespace {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_and_se(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  double m = 0.0;
  for (double v : xs) m += v;
  m /= n;
  double s2 = 0.0;
  for (double v : xs) s2 += (v - m) * (v - m);
  return {m, xs.size() > 1 ? std::sqrt(s2 / (n - 1) / n) : 0.0};
}

}  // namespace

void DecayProbe::validate() const {
  if (!(lambda > 0.0)) throw std::invalid_argument("DecayProbe: lambda <= 0");
  if (!(sigma >= 0.0)) throw std::invalid_argument("DecayProbe: sigma < 0");
  if (n_samples < 1) throw std::invalid_argument("DecayProbe: n_samples < 1");
  double prev = 0.0;
  for (double t : t_checkpoints) {
    if (!(t >= prev) || (t == prev && t != 0.0))
      throw std::invalid_argument("DecayProbe: checkpoints must increase");
    prev = t;
  }
}

std::vector<MomentRow> exact_pairwise_moment(const DecayProbe& probe,
                                             double init_diff) {
  probe.validate();
  std::vector<MomentRow> rows;
  GaussianStream stream(probe.seed);
  const double drift = probe.lambda + 0.5 * probe.sigma * probe.sigma;
  std::vector<double> sq(probe.n_samples);
  for (double t : probe.t_checkpoints) {
    for (int k = 0; k < probe.n_samples; ++k) {
      const double w = std::sqrt(t) * stream.normal();  // W(t) ~ N(0, t)
      const double x = init_diff * std::exp(-drift * t + probe.sigma * w);
      sq[k] = x * x;
    }
    const MeanSe ms = mean_and_se(sq);
    rows.push_back({t, ms.mean,
                    std::exp(-(2.0 * probe.lambda - probe.sigma * probe.sigma) * t) *
                        init_diff * init_diff,
                    ms.se});
  }
  return rows;
}

DecayReport verify_discrete_decay(const SolverConfig& cfg,
                                  std::span<const long> checkpoints,
                                  int n_seeds) {
  if (n_seeds < 500)
    throw std::invalid_argument("verify_discrete_decay: n_seeds must be >= 500");
  if (checkpoints.empty())
    throw std::invalid_argument("verify_discrete_decay: no checkpoints");

  DecayReport rep;
  rep.lambda = cfg.lambda;
  rep.sigma = cfg.sigma;
  rep.h = cfg.h;
  rep.per_step_factor =
      std::exp(-2.0 * cfg.lambda * cfg.h) * (1.0 + cfg.sigma * cfg.sigma * cfg.h);
  rep.n_seeds = n_seeds;

  SolverConfig two = cfg;
  two.n_particles = 2;
  two.dim = 1;
  two.beta = cfg.beta;  // weights are equal on a constant objective anyway
  SmoothingSpec constant;
  constant.value = [](std::span<const double>, double) { return 1.0; };

  const long n_max = checkpoints.back();
  std::vector<std::vector<double>> samples(checkpoints.size(),
                                           std::vector<double>(n_seeds));
  for (int s = 0; s < n_seeds; ++s) {
    Ensemble ens;
    ens.n = 2;
    ens.dim = 1;
    ens.positions = {0.5, -0.5};  // unit initial difference
    ens.t = 0.0;
    ens.mu_t = two.mu0;
    NoiseSource noise(mix_seed(cfg.seed, {static_cast<std::uint64_t>(s)}),
                      NoiseMode::common, 2, 1);
    size_t next = 0;
    for (long n = 1; n <= n_max; ++n) {
      dscbo_step(ens, two, noise, constant);
      while (next < checkpoints.size() && checkpoints[next] == n) {
        const double d = ens.positions[0] - ens.positions[1];
        samples[next][s] = d * d;
        ++next;
      }
    }
  }
  for (size_t c = 0; c < checkpoints.size(); ++c) {
    const MeanSe ms = mean_and_se(samples[c]);
    rep.rows.push_back({checkpoints[c], ms.mean,
                        std::pow(rep.per_step_factor, double(checkpoints[c])),
                        ms.se});
  }
  return rep;
}

std::vector<LaplacePoint> laplace_estimate(const ObjectiveSpec& objective,
                                           std::span<const double> betas,
                                           int m, std::uint64_t seed) {
  double prev = 0.0;
  for (double b : betas) {
    if (!(b > prev))
      throw std::invalid_argument("laplace_estimate: betas must be positive increasing");
    prev = b;
  }
  if (m < 2) throw std::invalid_argument("laplace_estimate: m < 2");

  GaussianStream stream(seed);
  std::vector<double> fvals(m);
  std::vector<double> x(objective.dim);
  for (int k = 0; k < m; ++k) {
    for (double& v : x) v = stream.uniform(objective.box_lo, objective.box_hi);
    fvals[k] = objective.f(x);
  }
  const double fbest = *std::min_element(fvals.begin(), fvals.end());

  std::vector<LaplacePoint> out;
  std::vector<double> w(m);
  for (double beta : betas) {
    // log mean e^{-beta f} = -beta fbest + log mean e^{-beta (f - fbest)}
    double sum = 0.0;
    for (int k = 0; k < m; ++k) {
      w[k] = std::exp(-beta * (fvals[k] - fbest));
      sum += w[k];
    }
    const double mean = sum / m;
    const MeanSe ms = mean_and_se(w);
    out.push_back({beta, fbest - std::log(mean) / beta,
                   ms.se / (beta * mean)});  // delta method on log mean
  }
  return out;
}

void ConditionInput::validate() const {
  if (!(2.0 * lambda > sigma * sigma))
    throw std::invalid_argument("check_condition: requires 2 lambda > sigma^2");
  if (!(beta > 0.0)) throw std::invalid_argument("check_condition: beta <= 0");
  if (!(mu0 > 0.0) || !(mu_bar > 0.0) || !(kappa > 0.0))
    throw std::invalid_argument("check_condition: mu0, mu_bar, kappa must be > 0");
  if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("check_condition: q outside [0,1)");
  if (!(gamma > 0.0)) throw std::invalid_argument("check_condition: gamma <= 0");
  if (n_particles < 1) throw std::invalid_argument("check_condition: n_particles < 1");
  if (dim < 1 || init_samples.empty() ||
      init_samples.size() % static_cast<size_t>(dim) != 0)
    throw std::invalid_argument("check_condition: bad init_samples shape");
  if (!f) throw std::invalid_argument("check_condition: missing objective f");
  const double cap = std::exp(-std::pow(mu0, 1.0 - q) * beta * kappa);
  if (!(epsilon > 0.0 && epsilon < cap))
    throw std::invalid_argument(
        "check_condition: epsilon outside (0, e^{-mu0^{1-q} beta kappa})");
}

ConditionReport check_condition(const ConditionInput& ci) {
  ci.validate();
  ConditionReport rep;
  const size_t m = ci.init_samples.size() / static_cast<size_t>(ci.dim);
  const double a = std::pow(ci.mu0, 1.0 - ci.q) * ci.beta * ci.kappa;
  rep.f_tilde_min = ci.f_min - ci.kappa * std::pow(ci.mu_bar, 1.0 - ci.q);
  rep.n_xin_samples = static_cast<int>(m);

  std::vector<double> fvals(m);
  for (size_t r = 0; r < m; ++r)
    fvals[r] = ci.f({ci.init_samples.data() + r * ci.dim,
                     static_cast<size_t>(ci.dim)});

  // left side: (e^{-a} - eps) E[e^{beta (f~_min - f(x^in))}]
  std::vector<double> expv(m);
  for (size_t r = 0; r < m; ++r)
    expv[r] = std::exp(ci.beta * (rep.f_tilde_min - fvals[r]));
  const MeanSe e1 = mean_and_se(expv);
  rep.exp_term = e1.mean;
  const double lead = std::exp(-a) - ci.epsilon;
  rep.left = lead * e1.mean;
  rep.left_se = std::abs(lead) * e1.se;

  // right side: mu-schedule term plus the initial-spread term, the latter a
  // Monte Carlo mean over ensembles of n_particles rows chunked from the
  // i.i.d. x^in draws (initial data are i.i.d. copies of x^in).
  rep.mu_term = std::pow(ci.mu0, 1.0 - ci.q) / (1.0 - ci.q) * ci.beta * ci.kappa;
  const size_t n_ens = m / static_cast<size_t>(ci.n_particles);
  if (n_ens == 0)
    throw std::invalid_argument(
        "check_condition: need at least n_particles init samples");
  rep.n_ensembles = static_cast<int>(n_ens);
  std::vector<double> spread(n_ens);
  for (size_t g = 0; g < n_ens; ++g) {
    const double* block =
        ci.init_samples.data() + g * ci.n_particles * static_cast<size_t>(ci.dim);
    double total = 0.0;
    for (int l = 0; l < ci.dim; ++l) {
      double mean = 0.0;
      for (int i = 0; i < ci.n_particles; ++i) mean += block[i * ci.dim + l];
      mean /= ci.n_particles;
      double worst = 0.0;
      for (int i = 0; i < ci.n_particles; ++i) {
        const double dev = block[i * ci.dim + l] - mean;
        worst = std::max(worst, dev * dev);
      }
      total += worst;
    }
    spread[g] = total;
  }
  const MeanSe sp = mean_and_se(spread);
  rep.spread_term = sp.mean;
  const double coeff =
      ci.gamma * (2.0 * ci.lambda + ci.sigma * ci.sigma) * ci.eta * ci.beta;
  rep.right = rep.mu_term + coeff * sp.mean;
  rep.right_se = coeff * sp.se;

  rep.satisfied = rep.left >= rep.right;
  rep.satisfied_with_margin =
      rep.left - 2.0 * rep.left_se >= rep.right + 2.0 * rep.right_se;

  // E(beta) = -(1/beta) log E[e^{-beta f(x^in)}] - f_min - (1/beta) log eps,
  // log-sum-exp stabilized.
  const double fbest = *std::min_element(fvals.begin(), fvals.end());
  double sum = 0.0;
  for (double fv : fvals) sum += std::exp(-ci.beta * (fv - fbest));
  const double log_mean = -ci.beta * fbest + std::log(sum / double(m));
  rep.e_beta = -log_mean / ci.beta - ci.f_min - std::log(ci.epsilon) / ci.beta;
  return rep;
}

double constructive_epsilon(double beta, double kappa, double q, double mu0,
                         double delta) {
  const double a = std::pow(mu0, 1.0 - q) * beta * kappa;
  return std::exp(-2.0 * a - beta * delta) /
         (a / (1.0 - q) + std::exp(-a - beta * delta));
}

double gamma_bound(double lambda, double sigma, double alpha, double q,
                   double mu0) {
  if (!(2.0 * lambda > sigma * sigma))
    throw std::domain_error("gamma_bound: requires 2 lambda > sigma^2");
  const double rate = 2.0 * lambda - sigma * sigma - (q + 1.0) * alpha;
  if (!(rate > 0.0))
    throw std::domain_error(
        "gamma_bound: integral diverges, needs (q+1) alpha < 2 lambda - sigma^2");
  return std::pow(mu0, -(q + 1.0)) / rate;
}

}  // namespace scbo
