#ifndef SCBO_SMOOTHING_HPP
#define SCBO_SMOOTHING_HPP

#include <functional>
#include <span>
#include <string>

namespace scbo {

// Smooth approximations of |s| with parameter mu > 0.
//
// logexp:  mu * ln(2 + e^{-s/mu} + e^{s/mu}),   |value - |s|| <= mu ln4
// sqrt:    sqrt(s^2 + 4 mu^2),                  |value - |s|| <= 2 mu
//
// Both are even, >= |s|, nondecreasing in mu, and C^inf for mu > 0.
enum class SmootherKind { logexp, sqrt };

SmootherKind smoother_from_string(const std::string& name);
std::string to_string(SmootherKind kind);

// Throws std::invalid_argument on non-finite s or mu <= 0.
double smooth_abs_logexp(double s, double mu);
double smooth_abs_sqrt(double s, double mu);

// d/ds and d/dmu of the two smoothers. Overflow-safe for |s|/mu large.
double smooth_abs_logexp_ds(double s, double mu);
double smooth_abs_logexp_dmu(double s, double mu);
double smooth_abs_sqrt_ds(double s, double mu);
double smooth_abs_sqrt_dmu(double s, double mu);

double smooth_abs(SmootherKind kind, double s, double mu);
double smooth_abs_ds(SmootherKind kind, double s, double mu);
double smooth_abs_dmu(SmootherKind kind, double s, double mu);

// Per-|s|-term constants of the error bounds above (q = 0 families):
// kappa_term bounds both |phi - |s||/mu and |d phi/d mu|.
double smooth_abs_kappa_term(SmootherKind kind);

// A smooth family f~(x, mu) approximating some f, with certified constants:
//   |f~(x,mu) - f(x)|      <= kappa mu^{1-q}
//   |d f~/d mu (x,mu)|     <= kappa mu^{-q}
//   ||hess_x f~(x,mu)||_2  <= eta mu^{-q-1}
// on the target box for mu in (0, mu_bar].
struct SmoothingSpec {
  std::function<double(std::span<const double>, double)> value;
  std::function<void(std::span<const double>, double, std::span<double>)> grad_x;
  std::function<double(std::span<const double>, double)> dmu;
  double kappa = 0.0;
  double eta = 0.0;
  double q = 0.0;
  double mu_bar = 1.0;
};

}  // namespace scbo

#endif
