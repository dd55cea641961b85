#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "scbo/dynamics.hpp"

using namespace scbo;

namespace {

Ensemble make_ensemble(std::vector<double> positions, int dim, double mu = 1.0) {
  Ensemble ens;
  ens.dim = dim;
  ens.n = static_cast<int>(positions.size()) / dim;
  ens.positions = std::move(positions);
  ens.mu_t = mu;
  return ens;
}

SmoothingSpec identity_1d() {
  SmoothingSpec s;
  s.value = [](std::span<const double> x, double) { return x[0]; };
  return s;
}

}  // namespace

TEST_CASE("consensus point: beta = 0 is the arithmetic mean") {
  const Ensemble ens = make_ensemble({1.0, 2.0, 4.0, 8.0, -1.0, 0.0}, 2);
  const std::vector<double> fvals{3.0, 7.0, 11.0};
  const auto xs = consensus_point(ens, 0.0, fvals);
  CHECK(xs[0] == doctest::Approx((1.0 + 4.0 - 1.0) / 3.0).epsilon(1e-15));
  CHECK(xs[1] == doctest::Approx((2.0 + 8.0 + 0.0) / 3.0).epsilon(1e-15));
}

TEST_CASE("consensus point: identical particles are a fixed point") {
  const Ensemble ens = make_ensemble({0.7, -0.2, 0.7, -0.2, 0.7, -0.2}, 2);
  const std::vector<double> fvals{1.0, 5.0, 9.0};
  const auto xs = consensus_point(ens, 3.0, fvals);
  CHECK(xs[0] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(xs[1] == doctest::Approx(-0.2).epsilon(1e-15));
}

TEST_CASE("consensus point: three-particle hand oracle") {
  // positions (0,1,2), values (0,1,2), beta = 1:
  // (0 + e^-1 + 2 e^-2) / (1 + e^-1 + e^-2), frozen from direct evaluation
  const Ensemble ens = make_ensemble({0.0, 1.0, 2.0}, 1);
  const std::vector<double> fvals{0.0, 1.0, 2.0};
  const auto xs = consensus_point(ens, 1.0, fvals);
  CHECK(xs[0] == doctest::Approx(0.42478961739555856847).epsilon(1e-14));
}

TEST_CASE("consensus point: shift invariance and translation equivariance") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> pos(10), fv(10), fv_shift(10);
    for (auto& v : pos) v = u(rng);
    for (size_t i = 0; i < fv.size(); ++i) {
      fv[i] = u(rng);
      fv_shift[i] = fv[i] + 17.25;
    }
    const Ensemble ens = make_ensemble(pos, 1);
    const auto a = consensus_point(ens, 2.0, fv);
    const auto b = consensus_point(ens, 2.0, fv_shift);
    CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-12));

    std::vector<double> moved(pos);
    for (auto& v : moved) v += 5.0;
    const auto c = consensus_point(make_ensemble(moved, 1), 2.0, fv);
    CHECK(c[0] == doctest::Approx(a[0] + 5.0).epsilon(1e-12));
  }
}

TEST_CASE("consensus point: convex hull bound against the plain mean") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> pos(16), fv(8);
    for (auto& v : pos) v = u(rng);
    for (auto& v : fv) v = u(rng);
    const Ensemble ens = make_ensemble(pos, 2);
    const auto xs = consensus_point(ens, 3.0, fv);
    double mean0 = 0.0, mean1 = 0.0;
    for (int i = 0; i < 8; ++i) {
      mean0 += ens.particle(i)[0];
      mean1 += ens.particle(i)[1];
    }
    mean0 /= 8;
    mean1 /= 8;
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
      const double d0 = ens.particle(i)[0] - mean0;
      const double d1 = ens.particle(i)[1] - mean1;
      worst = std::max(worst, d0 * d0 + d1 * d1);
    }
    const double gap = (xs[0] - mean0) * (xs[0] - mean0) +
                       (xs[1] - mean1) * (xs[1] - mean1);
    CHECK(gap <= worst * (1.0 + 1e-12));
  }
}

TEST_CASE("consensus point: beta -> infinity selects the best particle") {
  const Ensemble ens = make_ensemble({-3.0, 0.5, 2.0, 9.0}, 1);
  const std::vector<double> fvals{4.0, 0.25, 7.0, 2.0};
  const auto xs = consensus_point(ens, 1e6, fvals);
  CHECK(xs[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("consensus point: huge values do not underflow to 0/0") {
  const Ensemble ens = make_ensemble({1.0, 2.0}, 1);
  const std::vector<double> fvals{1e5, 1e5 + 1.0};
  const auto xs = consensus_point(ens, 100.0, fvals);
  CHECK(std::isfinite(xs[0]));
  CHECK(xs[0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("consensus point: non-finite value names the particle") {
  const Ensemble ens = make_ensemble({1.0, 2.0, 3.0}, 1);
  const std::vector<double> fvals{0.0, std::nan(""), 1.0};
  CHECK_THROWS_WITH_AS(consensus_point(ens, 1.0, fvals),
                       doctest::Contains("particle 1"), std::runtime_error);
}

TEST_CASE("noise source: determinism and moments") {
  NoiseSource a(99, NoiseMode::common, 10, 3);
  NoiseSource b(99, NoiseMode::common, 10, 3);
  for (int step = 0; step < 5; ++step) {
    const auto wa = a.step();
    const auto wb = b.step();
    REQUIRE(wa.size() == 3);
    for (size_t i = 0; i < wa.size(); ++i) CHECK(wa[i] == wb[i]);
  }
  NoiseSource ind(99, NoiseMode::independent, 10, 3);
  CHECK(ind.step().size() == 30);

  // empirical mean/variance of 1e5 draws within 4 standard errors
  NoiseSource big(123, NoiseMode::common, 1, 1);
  const int n = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = big.step()[0];
    sum += w;
    sum2 += w * w;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(double(n)));
  CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("dscbo step: sigma = 0 contracts deviations by exactly e^{-lambda h}") {
  SolverConfig cfg;
  cfg.lambda = 1.3;
  cfg.sigma = 0.0;
  cfg.beta = 2.0;
  cfg.n_particles = 4;
  cfg.dim = 1;
  cfg.h = 0.01;
  Ensemble ens = make_ensemble({0.0, 1.0, 2.0, 5.0}, 1);
  NoiseSource noise(1, NoiseMode::common, 4, 1);
  const double before = ens.positions[3] - ens.positions[0];
  dscbo_step(ens, cfg, noise, identity_1d());
  const double after = ens.positions[3] - ens.positions[0];
  CHECK(after == doctest::Approx(std::exp(-0.013) * before).epsilon(1e-14));
  CHECK(ens.step_index == 1);
  CHECK(ens.t == doctest::Approx(0.01));
  CHECK(ens.mu_t == doctest::Approx(cfg.mu_at(0.01)).epsilon(1e-15));
}

TEST_CASE("dscbo step: single particle is a fixed point") {
  SolverConfig cfg;
  cfg.n_particles = 1;
  cfg.dim = 2;
  cfg.sigma = 1.0;
  Ensemble ens = make_ensemble({0.4, -0.9}, 2);
  NoiseSource noise(7, NoiseMode::common, 1, 2);
  SmoothingSpec s;
  s.value = [](std::span<const double> x, double) { return x[0] * x[0] + x[1]; };
  dscbo_step(ens, cfg, noise, s);
  CHECK(ens.positions[0] == 0.4);
  CHECK(ens.positions[1] == -0.9);
}

TEST_CASE("dscbo step: two-particle difference factor e^{-lambda h}(1 - sigma sqrt(h) w)") {
  SolverConfig cfg;
  cfg.lambda = 1.0;
  cfg.sigma = 1.0;
  cfg.h = 0.01;
  cfg.beta = 0.0;
  cfg.n_particles = 2;
  cfg.dim = 1;
  // capture the step's gaussian from an identically seeded source
  NoiseSource probe(55, NoiseMode::common, 2, 1);
  const double w = probe.step()[0];

  Ensemble ens = make_ensemble({0.3, -0.5}, 1);
  const double before = ens.positions[0] - ens.positions[1];
  NoiseSource noise(55, NoiseMode::common, 2, 1);
  dscbo_step(ens, cfg, noise, identity_1d());
  const double after = ens.positions[0] - ens.positions[1];
  const double factor = std::exp(-0.01) * (1.0 - 0.1 * w);
  CHECK(after == doctest::Approx(factor * before).epsilon(1e-13));
}

TEST_CASE("cbo step equals dscbo step when the smoother is the raw objective") {
  const auto f = [](std::span<const double> x) { return std::abs(x[0]) + x[1] * x[1]; };
  SmoothingSpec mu_free;
  mu_free.value = [f](std::span<const double> x, double) { return f(x); };
  SolverConfig cfg;
  cfg.n_particles = 5;
  cfg.dim = 2;
  cfg.beta = 7.0;
  std::vector<double> pos{0.1, 2.0, -1.0, 0.4, 3.0, -2.0, 0.0, 0.0, 1.5, 1.5};
  Ensemble a = make_ensemble(pos, 2);
  Ensemble b = make_ensemble(pos, 2);
  NoiseSource na(3, NoiseMode::common, 5, 2), nb(3, NoiseMode::common, 5, 2);
  for (int k = 0; k < 20; ++k) {
    dscbo_step(a, cfg, na, mu_free);
    cbo_step(b, cfg, nb, f);
  }
  for (size_t i = 0; i < pos.size(); ++i) CHECK(a.positions[i] == b.positions[i]);
}

TEST_CASE("run: deterministic linear contraction with sigma = beta = 0") {
  SolverConfig cfg;
  cfg.lambda = 1.0;
  cfg.sigma = 0.0;
  cfg.beta = 0.0;
  cfg.n_particles = 20;
  cfg.dim = 2;
  cfg.h = 0.01;
  cfg.t_max = 2.0;
  cfg.mu0 = 0.5;
  cfg.alpha = 0.1;
  cfg.seed = 17;
  cfg.trace_every = 25;
  const ObjectiveSpec obj = make_objective("example1", 2, SmootherKind::logexp);
  InitSpec init;
  init.lo = -2.0;
  init.hi = 2.0;
  const RunReport rep = run(cfg, obj, init);
  const double d0 = rep.diameter_trace.front().second;
  for (const auto& [t, d] : rep.diameter_trace) {
    const double expected = std::exp(-cfg.lambda * t) * d0;
    CHECK(oracle::rel_err(d, expected) < 1e-12);
  }
}

TEST_CASE("run: bit-identical reports for identical (cfg, objective, seed)") {
  SolverConfig cfg;
  cfg.n_particles = 30;
  cfg.dim = 2;
  cfg.beta = 40.0;
  cfg.t_max = 1.0;
  cfg.mu0 = 1.0;
  cfg.alpha = 0.9;
  cfg.seed = 2024;
  const ObjectiveSpec obj = make_objective("f1", 2, SmootherKind::logexp);
  InitSpec init;
  init.lo = -5.0;
  init.hi = 5.0;
  const RunReport a = run(cfg, obj, init);
  const RunReport b = run(cfg, obj, init);
  REQUIRE(a.x_inf.size() == b.x_inf.size());
  for (size_t l = 0; l < a.x_inf.size(); ++l) CHECK(a.x_inf[l] == b.x_inf[l]);
  CHECK(a.f_xinf == b.f_xinf);
  CHECK(a.steps == b.steps);
  REQUIRE(a.diameter_trace.size() == b.diameter_trace.size());
  for (size_t k = 0; k < a.diameter_trace.size(); ++k)
    CHECK(a.diameter_trace[k].second == b.diameter_trace[k].second);
}

TEST_CASE("run: cbo trajectory reproducible bit-exactly across runs") {
  SolverConfig cfg;
  cfg.n_particles = 100;
  cfg.dim = 2;
  cfg.beta = 40.0;
  cfg.sigma = 0.5;
  cfg.t_max = 1.0;
  cfg.seed = 91;
  const ObjectiveSpec obj = make_objective("f1", 2, SmootherKind::logexp);
  InitSpec init;
  init.lo = -5.0;
  init.hi = 5.0;
  const RunReport a = run(cfg, obj, init, 0.005, Stepper::cbo);
  const RunReport b = run(cfg, obj, init, 0.005, Stepper::cbo);
  CHECK(a.f_xinf == b.f_xinf);
  CHECK(a.x_inf == b.x_inf);
}

TEST_CASE("run: init box must sit inside the objective box unless overridden") {
  SolverConfig cfg;
  cfg.dim = 2;
  const ObjectiveSpec obj = make_objective("example1", 2, SmootherKind::logexp);
  InitSpec init;
  init.lo = -5.0;
  init.hi = 5.0;
  CHECK_THROWS_AS(run(cfg, obj, init), std::invalid_argument);
  init.allow_outside_objective_box = true;
  const RunReport rep = run(cfg, obj, init);
  CHECK(rep.excursion);  // particles start outside box + 10% margin
}

TEST_CASE("run: mu_t follows the schedule to machine precision") {
  SolverConfig cfg;
  cfg.n_particles = 3;
  cfg.dim = 1;
  cfg.t_max = 0.5;
  cfg.mu0 = 0.7;
  cfg.alpha = 1.3;
  const ObjectiveSpec obj = make_objective("example1", 1, SmootherKind::logexp);
  InitSpec init;
  init.lo = -1.0;
  init.hi = 1.0;
  GaussianStream stream(cfg.seed);
  Ensemble ens;
  ens.n = 3;
  ens.dim = 1;
  ens.positions = {stream.uniform(-1, 1), stream.uniform(-1, 1),
                   stream.uniform(-1, 1)};
  ens.mu_t = cfg.mu0;
  NoiseSource noise(stream, NoiseMode::common, 3, 1);
  for (int k = 0; k < 50; ++k) {
    dscbo_step(ens, cfg, noise, obj.smoother);
    CHECK(ens.mu_t == cfg.mu0 * std::exp(-cfg.alpha * ens.t));
  }
}

TEST_CASE("run: gaussian init option") {
  SolverConfig cfg;
  cfg.n_particles = 10;
  cfg.dim = 2;
  cfg.t_max = 0.5;
  cfg.seed = 6;
  const ObjectiveSpec obj = make_objective("f1", 2, SmootherKind::logexp);
  InitSpec init;
  init.kind = InitSpec::Kind::gaussian;
  init.mean = 1.0;
  init.stddev = 0.5;
  const RunReport rep = run(cfg, obj, init);
  CHECK(rep.steps == 50);
  CHECK(std::isfinite(rep.f_xinf));
}

TEST_CASE("run: divergence raises with the offending step index") {
  SolverConfig cfg;
  cfg.lambda = 0.01;
  cfg.sigma = 60.0;  // per-step factor (1 - 6 w) expands violently
  cfg.beta = 0.0;
  cfg.n_particles = 8;
  cfg.dim = 1;
  cfg.t_max = 50.0;
  cfg.trace_every = 1;
  cfg.seed = 3;
  const ObjectiveSpec obj = make_objective("example1", 1, SmootherKind::logexp);
  InitSpec init;
  init.lo = -2.0;
  init.hi = 2.0;
  CHECK_THROWS_AS(run(cfg, obj, init), DivergenceError);
}

TEST_CASE("discrete pairwise second-moment law (light Monte Carlo)") {
  // E[diff^2] after n steps = [e^{-2 lambda h} (1 + sigma^2 h)]^n diff0^2,
  // objective-independent; checked at 4.5 standard errors with 600 seeds.
  SolverConfig cfg;
  cfg.lambda = 1.0;
  cfg.sigma = 1.0;
  cfg.h = 0.01;
  cfg.beta = 3.0;
  const int n_steps = 60, n_seeds = 600;
  const ObjectiveSpec obj = make_objective("f2", 1, SmootherKind::logexp);
  double sum = 0.0, sum2 = 0.0;
  for (int s = 0; s < n_seeds; ++s) {
    Ensemble ens = make_ensemble({0.5, -0.5}, 1, cfg.mu0);
    NoiseSource noise(1000 + s, NoiseMode::common, 2, 1);
    SolverConfig two = cfg;
    two.n_particles = 2;
    two.dim = 1;
    for (int k = 0; k < n_steps; ++k) dscbo_step(ens, two, noise, obj.smoother);
    const double d = ens.positions[0] - ens.positions[1];
    sum += d * d;
    sum2 += d * d * d * d;
  }
  const double mean = sum / n_seeds;
  const double se = std::sqrt((sum2 / n_seeds - mean * mean) / n_seeds);
  const double theory =
      std::pow(std::exp(-2.0 * cfg.h) * (1.0 + cfg.h), double(n_steps));
  CHECK(std::abs(mean - theory) < 4.5 * se);
}
