#ifndef SCBO_DYNAMICS_HPP
#define SCBO_DYNAMICS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "scbo/objective.hpp"
#include "scbo/rng.hpp"

namespace scbo {

enum class NoiseMode { common, independent };

// All scalars of a solver run, including the mu-schedule mu_t = mu0 e^{-alpha t}.
struct SolverConfig {
  double lambda = 1.0;    // drift rate, > 0
  double sigma = 1.0;     // noise intensity, >= 0
  double beta = 30.0;     // exponential weight, >= 0
  int n_particles = 100;
  int dim = 2;
  double h = 0.01;        // time step
  double t_max = 20.0;    // horizon
  double mu0 = 1.0;       // initial smoothing parameter, in (0, mu_bar]
  double alpha = 0.9;     // schedule decay rate
  NoiseMode noise_mode = NoiseMode::common;
  std::uint64_t seed = 0;
  double consensus_tol = 1e-8;  // stopping diameter
  int trace_every = 10;         // steps between diameter checks / trace points

  // 2 lambda > sigma^2: the pairwise second moment contracts per unit time
  bool l2_contractive() const { return 2.0 * lambda > sigma * sigma; }
  double mu_at(double t) const;
  void validate() const;  // throws std::invalid_argument
};

// N x d particle state at one time index.
struct Ensemble {
  std::vector<double> positions;  // row-major, particle-major
  int n = 0;
  int dim = 0;
  double t = 0.0;
  double mu_t = 0.0;
  long step_index = 0;

  std::span<const double> particle(int i) const {
    return {positions.data() + static_cast<size_t>(i) * dim, static_cast<size_t>(dim)};
  }
  std::span<double> particle(int i) {
    return {positions.data() + static_cast<size_t>(i) * dim, static_cast<size_t>(dim)};
  }
};

// Per-step standard gaussian vectors: one d-vector shared by all particles in
// common mode, one per particle in independent mode (particle-major order).
class NoiseSource {
 public:
  NoiseSource(std::uint64_t seed, NoiseMode mode, int n_particles, int dim);
  NoiseSource(GaussianStream stream, NoiseMode mode, int n_particles, int dim);

  std::span<const double> step();
  NoiseMode mode() const { return mode_; }

 private:
  GaussianStream stream_;
  NoiseMode mode_;
  int n_, dim_;
  std::vector<double> buffer_;
};

struct InitSpec {
  enum class Kind { uniform_box, gaussian } kind = Kind::uniform_box;
  double lo = -1.0, hi = 1.0;       // uniform_box
  double mean = 0.0, stddev = 1.0;  // gaussian
  bool allow_outside_objective_box = false;
};

// Gibbs-weighted average of the particle positions, weights e^{-beta fvals[i]}.
// The minimum value is subtracted inside the exponent (shift invariance) so the
// weight sum is always >= 1. Throws on non-finite values, naming the particle.
std::vector<double> consensus_point(const Ensemble& ens, double beta,
                                    std::span<const double> fvals);
// Evaluates f~(x^i, mu_t) and delegates to the overload above.
std::vector<double> consensus_point(const Ensemble& ens, double beta,
                                    const SmoothingSpec& smoother);

struct DivergenceError : std::runtime_error {
  explicit DivergenceError(long step)
      : std::runtime_error("solver diverged at step " + std::to_string(step)),
        step_index(step) {}
  long step_index;
};

// One two-step update: xbar* from the current ensemble (used by both lines),
//   predictor  xhat^i   = xbar* + e^{-lambda h} (x^i - xbar*)
//   corrector  x^i_l    = xhat^i_l - sigma sqrt(h) w_l (xhat^i_l - xbar*_l)
// then t += h and mu_t is refreshed from the schedule.
void dscbo_step(Ensemble& ens, const SolverConfig& cfg, NoiseSource& noise,
                const SmoothingSpec& smoother);

// Same update with weights from the raw objective; mu is not consumed.
void cbo_step(Ensemble& ens, const SolverConfig& cfg, NoiseSource& noise,
              const std::function<double(std::span<const double>)>& f);

// Exact maximum pairwise euclidean distance, O(N^2 d).
double diameter(const Ensemble& ens);

enum class Stepper { dscbo, cbo };

// Constants of the objective a run was configured with, echoed into reports
// so artifacts are self-describing.
struct ObjectiveDigest {
  std::string id;
  int dim = 0;
  double box_lo = 0.0, box_hi = 0.0;
  double f_min = 0.0, f_max = 0.0;
  double kappa = 0.0, eta = 0.0, q = 0.0, mu_bar = 0.0;
};

struct RunReport {
  std::string objective_id;
  ObjectiveDigest objective;
  SolverConfig config;
  Stepper stepper = Stepper::dscbo;
  std::vector<double> x_inf;       // final consensus point
  double f_xinf = 0.0;
  bool success = false;            // (f - f_min)/(f_max - f_min) < threshold
  double success_threshold = 0.0;
  bool consensus_reached = false;  // diameter < consensus_tol before t_max
  bool excursion = false;          // particle left box + 10% margin
  long steps = 0;
  double t_final = 0.0;
  std::vector<std::pair<double, double>> diameter_trace;  // (t, diameter)
  double wall_time_s = 0.0;
};

// Full solve: uniform (or gaussian) init from the seeded stream, then
// dscbo_step (or cbo_step) until diameter < consensus_tol or t >= t_max.
// Divergence (any |coordinate| > 1e8) throws DivergenceError.
RunReport run(const SolverConfig& cfg, const ObjectiveSpec& objective,
              const InitSpec& init, double success_threshold = 0.005,
              Stepper stepper = Stepper::dscbo);

}  // namespace scbo

#endif
