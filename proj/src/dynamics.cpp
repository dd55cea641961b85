#include "scbo/dynamics.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace scbo {

namespace {

constexpr double kDivergenceLimit = 1e8;

Ensemble init_ensemble(GaussianStream& stream, const SolverConfig& cfg,
                       const InitSpec& init) {
  Ensemble ens;
  ens.n = cfg.n_particles;
  ens.dim = cfg.dim;
  ens.positions.resize(static_cast<size_t>(ens.n) * ens.dim);
  for (double& v : ens.positions)
    v = init.kind == InitSpec::Kind::uniform_box
            ? stream.uniform(init.lo, init.hi)
            : init.mean + init.stddev * stream.normal();
  ens.t = 0.0;
  ens.mu_t = cfg.mu0;
  ens.step_index = 0;
  return ens;
}

// Core update shared by the smoothed and raw-objective steppers. fvals are
// the weight exponents at the current state.
void step_with_values(Ensemble& ens, const SolverConfig& cfg, NoiseSource& noise,
                      std::span<const double> fvals) {
  const std::vector<double> xs = consensus_point(ens, cfg.beta, fvals);
  const double contraction = std::exp(-cfg.lambda * cfg.h);
  const double s = cfg.sigma * std::sqrt(cfg.h);
  const std::span<const double> w = noise.step();
  const bool common = noise.mode() == NoiseMode::common;
  for (int i = 0; i < ens.n; ++i) {
    std::span<double> x = ens.particle(i);
    const double* wi = common ? w.data() : w.data() + static_cast<size_t>(i) * ens.dim;
    for (int l = 0; l < ens.dim; ++l) {
      const double xhat = xs[l] + contraction * (x[l] - xs[l]);
      x[l] = xhat - s * wi[l] * (xhat - xs[l]);
      if (!std::isfinite(x[l])) throw DivergenceError(ens.step_index);
    }
  }
  ens.step_index += 1;
  ens.t = ens.step_index * cfg.h;
  ens.mu_t = cfg.mu_at(ens.t);
}

}  // namespace

double SolverConfig::mu_at(double t) const { return mu0 * std::exp(-alpha * t); }

void SolverConfig::validate() const {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
  if (n_particles < 1) throw std::invalid_argument("n_particles must be >= 1");
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
  if (!(h > 0.0)) throw std::invalid_argument("h must be > 0");
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be > 0");
  if (!(mu0 > 0.0)) throw std::invalid_argument("mu0 must be > 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (!(consensus_tol > 0.0)) throw std::invalid_argument("consensus_tol must be > 0");
  if (trace_every < 1) throw std::invalid_argument("trace_every must be >= 1");
}

NoiseSource::NoiseSource(std::uint64_t seed, NoiseMode mode, int n_particles,
                         int dim)
    : NoiseSource(GaussianStream(seed), mode, n_particles, dim) {}

NoiseSource::NoiseSource(GaussianStream stream, NoiseMode mode, int n_particles,
                         int dim)
    : stream_(stream), mode_(mode), n_(n_particles), dim_(dim) {
  buffer_.resize(mode_ == NoiseMode::common
                     ? static_cast<size_t>(dim_)
                     : static_cast<size_t>(n_) * dim_);
}

std::span<const double> NoiseSource::step() {
  stream_.fill_normal(buffer_);
  return buffer_;
}

std::vector<double> consensus_point(const Ensemble& ens, double beta,
                                    std::span<const double> fvals) {
  double fmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < ens.n; ++i) {
    if (!std::isfinite(fvals[i]))
      throw std::runtime_error(
          "consensus_point: non-finite objective value at particle " +
          std::to_string(i));
    fmin = std::min(fmin, fvals[i]);
  }
  std::vector<double> out(ens.dim, 0.0);
  double wsum = 0.0;
  for (int i = 0; i < ens.n; ++i) {
    const double w = std::exp(-beta * (fvals[i] - fmin));  // max weight is 1
    wsum += w;
    const std::span<const double> x = ens.particle(i);
    for (int l = 0; l < ens.dim; ++l) out[l] += w * x[l];
  }
  if (!(wsum > 0.0))
    throw std::logic_error("consensus_point: weight sum vanished after shift");
  for (double& v : out) v /= wsum;
  return out;
}

std::vector<double> consensus_point(const Ensemble& ens, double beta,
                                    const SmoothingSpec& smoother) {
  std::vector<double> fvals(ens.n);
  for (int i = 0; i < ens.n; ++i)
    fvals[i] = smoother.value(ens.particle(i), ens.mu_t);
  return consensus_point(ens, beta, fvals);
}

void dscbo_step(Ensemble& ens, const SolverConfig& cfg, NoiseSource& noise,
                const SmoothingSpec& smoother) {
  std::vector<double> fvals(ens.n);
  for (int i = 0; i < ens.n; ++i)
    fvals[i] = smoother.value(ens.particle(i), ens.mu_t);
  step_with_values(ens, cfg, noise, fvals);
}

void cbo_step(Ensemble& ens, const SolverConfig& cfg, NoiseSource& noise,
              const std::function<double(std::span<const double>)>& f) {
  std::vector<double> fvals(ens.n);
  for (int i = 0; i < ens.n; ++i) fvals[i] = f(ens.particle(i));
  step_with_values(ens, cfg, noise, fvals);
}

double diameter(const Ensemble& ens) {
  double best = 0.0;
  for (int i = 0; i < ens.n; ++i) {
    const std::span<const double> xi = ens.particle(i);
    for (int j = i + 1; j < ens.n; ++j) {
      const std::span<const double> xj = ens.particle(j);
      double d2 = 0.0;
      for (int l = 0; l < ens.dim; ++l) {
        const double dl = xi[l] - xj[l];
        d2 += dl * dl;
      }
      best = std::max(best, d2);
    }
  }
  return std::sqrt(best);
}

RunReport run(const SolverConfig& cfg, const ObjectiveSpec& objective,
              const InitSpec& init, double success_threshold, Stepper stepper) {
  cfg.validate();
  if (cfg.dim != objective.dim)
    throw std::invalid_argument("run: config dim != objective dim");
  if (init.kind == InitSpec::Kind::uniform_box &&
      !init.allow_outside_objective_box &&
      (init.lo < objective.box_lo || init.hi > objective.box_hi))
    throw std::invalid_argument("run: init box outside objective box");

  const auto t0 = std::chrono::steady_clock::now();
  GaussianStream stream(cfg.seed);
  Ensemble ens = init_ensemble(stream, cfg, init);
  NoiseSource noise(stream, cfg.noise_mode, cfg.n_particles, cfg.dim);

  RunReport rep;
  rep.objective_id = objective.id;
  rep.objective = {objective.id,          objective.dim,
                   objective.box_lo,      objective.box_hi,
                   objective.f_min,       objective.f_max,
                   objective.smoother.kappa, objective.smoother.eta,
                   objective.smoother.q,  objective.smoother.mu_bar};
  rep.config = cfg;
  rep.stepper = stepper;
  rep.success_threshold = success_threshold;

  const double margin = 0.1 * (objective.box_hi - objective.box_lo);
  const double excursion_lo = objective.box_lo - margin;
  const double excursion_hi = objective.box_hi + margin;
  const long max_steps = static_cast<long>(std::ceil(cfg.t_max / cfg.h - 1e-9));

  auto sample_state = [&] {
    const double dia = diameter(ens);
    rep.diameter_trace.emplace_back(ens.t, dia);
    for (double v : ens.positions) {
      if (std::abs(v) > kDivergenceLimit) throw DivergenceError(ens.step_index);
      if (v < excursion_lo || v > excursion_hi) rep.excursion = true;
    }
    return dia;
  };

  sample_state();
  while (ens.step_index < max_steps) {
    if (stepper == Stepper::dscbo)
      dscbo_step(ens, cfg, noise, objective.smoother);
    else
      cbo_step(ens, cfg, noise, objective.f);
    if (ens.step_index % cfg.trace_every == 0 || ens.step_index == max_steps) {
      if (sample_state() < cfg.consensus_tol) {
        rep.consensus_reached = true;
        break;
      }
    }
  }

  rep.steps = ens.step_index;
  rep.t_final = ens.t;
  rep.x_inf = stepper == Stepper::dscbo
                  ? consensus_point(ens, cfg.beta, objective.smoother)
                  : [&] {
                      std::vector<double> fv(ens.n);
                      for (int i = 0; i < ens.n; ++i)
                        fv[i] = objective.f(ens.particle(i));
                      return consensus_point(ens, cfg.beta, fv);
                    }();
  rep.f_xinf = objective.f(rep.x_inf);
  rep.success = objective.success_ratio(rep.f_xinf) < success_threshold;
  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace scbo
