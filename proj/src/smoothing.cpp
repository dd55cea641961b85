#include "scbo/smoothing.hpp"

#include <cmath>
#include <stdexcept>

namespace scbo {

namespace {

void check_inputs(double s, double mu) {
  if (!std::isfinite(s)) throw std::invalid_argument("smooth_abs: non-finite s");
  if (!(mu > 0.0) || !std::isfinite(mu))
    throw std::invalid_argument("smooth_abs: mu must be positive and finite");
}

}  // namespace

SmootherKind smoother_from_string(const std::string& name) {
  if (name == "logexp") return SmootherKind::logexp;
  if (name == "sqrt") return SmootherKind::sqrt;
  throw std::invalid_argument("unknown smoother kind: " + name);
}

std::string to_string(SmootherKind kind) {
  return kind == SmootherKind::logexp ? "logexp" : "sqrt";
}

// mu ln(2 + e^{-s/mu} + e^{s/mu}) rewritten around |s| so the exponentials
// only ever see non-positive arguments: 2 + 2 cosh(a) = e^a (1 + e^{-a})^2.
double smooth_abs_logexp(double s, double mu) {
  check_inputs(s, mu);
  const double a = std::abs(s) / mu;
  return std::abs(s) + 2.0 * mu * std::log1p(std::exp(-a));
}

// d/ds = tanh(s / (2 mu))
double smooth_abs_logexp_ds(double s, double mu) {
  check_inputs(s, mu);
  return std::tanh(s / (2.0 * mu));
}

// d/dmu = 2 ln(1 + e^{-a}) + 2 a e^{-a} / (1 + e^{-a}),  a = |s|/mu.
// Decreases from ln4 at s = 0 to 0 as a -> inf.
double smooth_abs_logexp_dmu(double s, double mu) {
  check_inputs(s, mu);
  const double a = std::abs(s) / mu;
  if (a > 745.0) return 0.0;  // a e^{-a} below double underflow
  const double t = std::exp(-a);
  return 2.0 * std::log1p(t) + 2.0 * a * t / (1.0 + t);
}

double smooth_abs_sqrt(double s, double mu) {
  check_inputs(s, mu);
  return std::sqrt(s * s + 4.0 * mu * mu);
}

double smooth_abs_sqrt_ds(double s, double mu) {
  check_inputs(s, mu);
  return s / std::sqrt(s * s + 4.0 * mu * mu);
}

double smooth_abs_sqrt_dmu(double s, double mu) {
  check_inputs(s, mu);
  return 4.0 * mu / std::sqrt(s * s + 4.0 * mu * mu);
}

double smooth_abs(SmootherKind kind, double s, double mu) {
  return kind == SmootherKind::logexp ? smooth_abs_logexp(s, mu)
                                      : smooth_abs_sqrt(s, mu);
}

double smooth_abs_ds(SmootherKind kind, double s, double mu) {
  return kind == SmootherKind::logexp ? smooth_abs_logexp_ds(s, mu)
                                      : smooth_abs_sqrt_ds(s, mu);
}

double smooth_abs_dmu(SmootherKind kind, double s, double mu) {
  return kind == SmootherKind::logexp ? smooth_abs_logexp_dmu(s, mu)
                                      : smooth_abs_sqrt_dmu(s, mu);
}

double smooth_abs_kappa_term(SmootherKind kind) {
  return kind == SmootherKind::logexp ? std::log(4.0) : 2.0;
}

}  // namespace scbo
