#include "scbo/objective.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace scbo {

namespace {

constexpr double kPi = std::numbers::pi;

double abs_sum(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

// Maximum of f over the box by dense grid search. Cached in ObjectiveSpec at
// construction; 401 points per axis for d <= 2, coarser above so the total
// stays bounded.
double grid_max(const std::function<double(std::span<const double>)>& f,
                int dim, double lo, double hi) {
  int per_axis = 401;
  double total = std::pow(401.0, dim);
  while (total > 2e7 && per_axis > 11) {
    per_axis = per_axis / 2 + 1;
    total = std::pow(static_cast<double>(per_axis), dim);
  }
  std::vector<double> x(dim, lo);
  std::vector<int> idx(dim, 0);
  const double step = (hi - lo) / (per_axis - 1);
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    for (int l = 0; l < dim; ++l) x[l] = lo + idx[l] * step;
    best = std::max(best, f(x));
    int l = 0;
    for (; l < dim; ++l) {
      if (++idx[l] < per_axis) break;
      idx[l] = 0;
    }
    if (l == dim) break;
  }
  return best;
}

// Separable objectives: max over the box is dim * (per-axis max).
double separable_max(const std::function<double(double)>& term, double lo,
                     double hi, int dim) {
  double best = -std::numeric_limits<double>::infinity();
  const int n = 401;
  for (int i = 0; i < n; ++i)
    best = std::max(best, term(lo + i * (hi - lo) / (n - 1)));
  return best * dim;
}

struct Constants {
  double kappa, eta;
};

// Certified constants for the shipped benchmarks, valid on the canonical box
// with mu_bar = 1. f1/f3/f4/example1 come from per-term bounds of the two
// smooth-abs families; f2/f5 at d = 2 are frozen from a 201^2-grid
// certification sweep over mu in {1, 0.5, 0.1, 0.01, 0.001} with a 1.5x
// margin, and fall back to coarse closed-form bounds for other dimensions.
Constants benchmark_constants(const std::string& id, int d, SmootherKind kind,
                              double mu_bar) {
  const double c = smooth_abs_kappa_term(kind);  // ln4 or 2
  const bool le = kind == SmootherKind::logexp;
  if (id == "f1")
    return {1.5 * c, 1.5 * (0.5 + 40.0 * kPi * kPi * mu_bar) / std::sqrt(double(d))};
  if (id == "f2") {
    if (d == 2) return le ? Constants{12.792219, 4.5103} : Constants{22.498011, 4.7903};
    const double bound = 5.0 + c * mu_bar;  // phi <= |s| + c mu on the box
    return {1.5 * c * d * (1.0 + std::pow(bound, d - 1)),
            1.5 * (0.5 * (1.0 + std::pow(bound, d - 1)) + mu_bar * d * d)};
  }
  if (id == "f3") {
    double harmonic = 0.0;
    for (int l = 1; l <= d; ++l) harmonic += 1.0 / l;
    return {1.5 * c * d / 4000.0, 1.5 * (1.0 / 8000.0 + mu_bar * (1.0 + harmonic))};
  }
  if (id == "f4") return {3.0 * std::sqrt(c), le ? 114.1790 : 114.1057};
  if (id == "f5") {
    if (d == 2) return le ? Constants{4.151207, 1.6328} : Constants{5.984033, 1.3524};
    return {1.5 * c * d * d, 1.5 * (1.0 + mu_bar) * d * d};
  }
  throw UnknownObjectiveError("unknown benchmark id: " + id);
}

}  // namespace

double example1_eta(double mu_bar) { return 0.05 + 0.1 * kPi * kPi * mu_bar; }

ObjectiveSpec build_example1(int dim, SmootherKind kind) {
  if (dim < 1) throw std::invalid_argument("build_example1: dim must be >= 1");
  ObjectiveSpec spec;
  spec.id = "example1";
  spec.dim = dim;
  spec.box_lo = -2.0;
  spec.box_hi = 2.0;
  spec.x_star.assign(dim, 0.0);
  spec.f_min = 0.0;

  spec.f = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += std::abs(v) - std::cos(kPi * v) + 1.0;
    return 0.1 * s;
  };
  spec.smoother.value = [kind](std::span<const double> x, double mu) {
    double s = 0.0;
    for (double v : x) s += smooth_abs(kind, v, mu) - std::cos(kPi * v) + 1.0;
    return 0.1 * s;
  };
  spec.smoother.grad_x = [kind](std::span<const double> x, double mu,
                                std::span<double> g) {
    for (size_t l = 0; l < x.size(); ++l)
      g[l] = 0.1 * (smooth_abs_ds(kind, x[l], mu) + kPi * std::sin(kPi * x[l]));
  };
  spec.smoother.dmu = [kind](std::span<const double> x, double mu) {
    double s = 0.0;
    for (double v : x) s += smooth_abs_dmu(kind, v, mu);
    return 0.1 * s;
  };
  spec.smoother.q = 0.0;
  spec.smoother.mu_bar = 1.0;
  spec.smoother.kappa = 0.1 * dim * smooth_abs_kappa_term(kind);
  spec.smoother.eta = example1_eta(spec.smoother.mu_bar);

  spec.f_max = separable_max(
      [](double s) { return 0.1 * (std::abs(s) - std::cos(kPi * s) + 1.0); },
      spec.box_lo, spec.box_hi, dim);
  return spec;
}

ObjectiveSpec build_benchmark(const std::string& id, int dim, SmootherKind kind) {
  if (dim < 1) throw std::invalid_argument("build_benchmark: dim must be >= 1");
  ObjectiveSpec spec;
  spec.id = id;
  spec.dim = dim;
  spec.box_lo = -5.0;
  spec.box_hi = 5.0;
  spec.x_star.assign(dim, 0.0);
  spec.f_min = 0.0;
  const double d = dim;

  if (id == "f1") {
    spec.f = [d](std::span<const double> x) {
      double s = 0.0;
      for (double v : x) s += std::abs(v) - 10.0 * std::cos(2.0 * kPi * v) + 10.0;
      return s / d;
    };
    spec.smoother.value = [d, kind](std::span<const double> x, double mu) {
      double s = 0.0;
      for (double v : x)
        s += smooth_abs(kind, v, mu) - 10.0 * std::cos(2.0 * kPi * v) + 10.0;
      return s / d;
    };
    spec.smoother.grad_x = [d, kind](std::span<const double> x, double mu,
                                     std::span<double> g) {
      for (size_t l = 0; l < x.size(); ++l)
        g[l] = (smooth_abs_ds(kind, x[l], mu) +
                20.0 * kPi * std::sin(2.0 * kPi * x[l])) / d;
    };
    spec.smoother.dmu = [d, kind](std::span<const double> x, double mu) {
      double s = 0.0;
      for (double v : x) s += smooth_abs_dmu(kind, v, mu);
      return s / d;
    };
    spec.f_max = separable_max(
        [d](double s) {
          return (std::abs(s) - 10.0 * std::cos(2.0 * kPi * s) + 10.0) / d;
        },
        spec.box_lo, spec.box_hi, dim);
  } else if (id == "f2") {
    spec.f = [](std::span<const double> x) {
      double s = 0.0, p = 1.0;
      for (double v : x) {
        s += std::abs(v);
        p *= std::abs(v);
      }
      return s + p;
    };
    spec.smoother.value = [kind](std::span<const double> x, double mu) {
      double s = 0.0, p = 1.0;
      for (double v : x) {
        const double ph = smooth_abs(kind, v, mu);
        s += ph;
        p *= ph;
      }
      return s + p;
    };
    spec.smoother.grad_x = [kind](std::span<const double> x, double mu,
                                  std::span<double> g) {
      double p = 1.0;
      for (double v : x) p *= smooth_abs(kind, v, mu);
      for (size_t l = 0; l < x.size(); ++l) {
        const double ph = smooth_abs(kind, x[l], mu);
        g[l] = smooth_abs_ds(kind, x[l], mu) * (1.0 + p / ph);
      }
    };
    spec.smoother.dmu = [kind](std::span<const double> x, double mu) {
      double p = 1.0;
      for (double v : x) p *= smooth_abs(kind, v, mu);
      double s = 0.0;
      for (double v : x) {
        const double ph = smooth_abs(kind, v, mu);
        s += smooth_abs_dmu(kind, v, mu) * (1.0 + p / ph);
      }
      return s;
    };
    if (dim <= 2) {
      spec.f_max = grid_max(spec.f, dim, spec.box_lo, spec.box_hi);
    } else {
      // monotone in every |x_l|: the maximum sits at a corner
      spec.f_max = d * 5.0 + std::pow(5.0, d);
    }
  } else if (id == "f3") {
    spec.f = [](std::span<const double> x) {
      double p = 1.0;
      for (size_t l = 0; l < x.size(); ++l)
        p *= std::cos(x[l] / std::sqrt(double(l + 1)));
      return abs_sum(x) / 4000.0 - p + 1.0;
    };
    spec.smoother.value = [kind](std::span<const double> x, double mu) {
      double s = 0.0, p = 1.0;
      for (size_t l = 0; l < x.size(); ++l) {
        s += smooth_abs(kind, x[l], mu);
        p *= std::cos(x[l] / std::sqrt(double(l + 1)));
      }
      return s / 4000.0 - p + 1.0;
    };
    spec.smoother.grad_x = [kind](std::span<const double> x, double mu,
                                  std::span<double> g) {
      const size_t n = x.size();
      for (size_t l = 0; l < n; ++l) {
        const double rl = std::sqrt(double(l + 1));
        double others = 1.0;
        for (size_t k = 0; k < n; ++k)
          if (k != l) others *= std::cos(x[k] / std::sqrt(double(k + 1)));
        g[l] = smooth_abs_ds(kind, x[l], mu) / 4000.0 +
               std::sin(x[l] / rl) / rl * others;
      }
    };
    spec.smoother.dmu = [kind](std::span<const double> x, double mu) {
      double s = 0.0;
      for (double v : x) s += smooth_abs_dmu(kind, v, mu);
      return s / 4000.0;
    };
    spec.f_max = grid_max(spec.f, dim, spec.box_lo, spec.box_hi);
  } else if (id == "f4") {
    spec.f = [d](std::span<const double> x) {
      double cs = 0.0;
      for (double v : x) cs += std::cos(2.0 * kPi * v);
      return 10.0 * (1.0 - std::exp(-0.2 * std::sqrt(abs_sum(x) / d))) +
             (std::exp(1.0) - std::exp(cs / d));
    };
    spec.smoother.value = [d, kind](std::span<const double> x, double mu) {
      double u = 0.0, cs = 0.0;
      for (double v : x) {
        u += smooth_abs(kind, v, mu);
        cs += std::cos(2.0 * kPi * v);
      }
      return 10.0 * (1.0 - std::exp(-0.2 * std::sqrt(u / d))) +
             (std::exp(1.0) - std::exp(cs / d));
    };
    spec.smoother.grad_x = [d, kind](std::span<const double> x, double mu,
                                     std::span<double> g) {
      double u = 0.0, cs = 0.0;
      for (double v : x) {
        u += smooth_abs(kind, v, mu);
        cs += std::cos(2.0 * kPi * v);
      }
      u /= d;
      const double eu = std::exp(-0.2 * std::sqrt(u)) / std::sqrt(u);
      const double ev = std::exp(cs / d);
      for (size_t l = 0; l < x.size(); ++l)
        g[l] = (eu * smooth_abs_ds(kind, x[l], mu) +
                2.0 * kPi * ev * std::sin(2.0 * kPi * x[l])) / d;
    };
    spec.smoother.dmu = [d, kind](std::span<const double> x, double mu) {
      double u = 0.0, du = 0.0;
      for (double v : x) {
        u += smooth_abs(kind, v, mu);
        du += smooth_abs_dmu(kind, v, mu);
      }
      u /= d;
      return std::exp(-0.2 * std::sqrt(u)) / std::sqrt(u) * du / d;
    };
    spec.smoother.q = 0.5;  // the sqrt composite degrades the mu rate
    spec.f_max = grid_max(spec.f, dim, spec.box_lo, spec.box_hi);
  } else if (id == "f5") {
    spec.f = [](std::span<const double> x) {
      double a = 0.0, r2 = 0.0, b = 0.0;
      for (double v : x) {
        const double sv = std::sin(v);
        a += sv * sv;
        r2 += v * v;
        const double sb = std::sin(std::sqrt(std::abs(v)));
        b += sb * sb;
      }
      return (a - std::exp(-r2)) * std::exp(-b) + 1.0;
    };
    spec.smoother.value = [kind](std::span<const double> x, double mu) {
      double a = 0.0, r2 = 0.0, b = 0.0;
      for (double v : x) {
        const double sv = std::sin(v);
        a += sv * sv;
        r2 += v * v;
        const double sb = std::sin(std::sqrt(smooth_abs(kind, v, mu)));
        b += sb * sb;
      }
      return (a - std::exp(-r2)) * std::exp(-b) + 1.0;
    };
    spec.smoother.grad_x = [kind](std::span<const double> x, double mu,
                                  std::span<double> g) {
      double a = 0.0, r2 = 0.0, b = 0.0;
      const size_t n = x.size();
      for (double v : x) {
        const double sv = std::sin(v);
        a += sv * sv;
        r2 += v * v;
        const double sb = std::sin(std::sqrt(smooth_abs(kind, v, mu)));
        b += sb * sb;
      }
      const double er = std::exp(-r2), eb = std::exp(-b);
      const double A = a - er;
      for (size_t l = 0; l < n; ++l) {
        const double da = std::sin(2.0 * x[l]) + 2.0 * x[l] * er;
        const double z = std::sqrt(smooth_abs(kind, x[l], mu));
        const double db = -std::sin(2.0 * z) / (2.0 * z) *
                          smooth_abs_ds(kind, x[l], mu);
        g[l] = (da + A * db) * eb;
      }
    };
    spec.smoother.dmu = [kind](std::span<const double> x, double mu) {
      double a = 0.0, r2 = 0.0, b = 0.0;
      for (double v : x) {
        const double sv = std::sin(v);
        a += sv * sv;
        r2 += v * v;
        const double sb = std::sin(std::sqrt(smooth_abs(kind, v, mu)));
        b += sb * sb;
      }
      double s = 0.0;
      for (double v : x) {
        const double z = std::sqrt(smooth_abs(kind, v, mu));
        s += std::sin(2.0 * z) / (2.0 * z) * smooth_abs_dmu(kind, v, mu);
      }
      return (a - std::exp(-r2)) * std::exp(-b) * (-s);
    };
    spec.f_max = grid_max(spec.f, dim, spec.box_lo, spec.box_hi);
  } else {
    throw UnknownObjectiveError("unknown benchmark id: " + id);
  }

  spec.smoother.mu_bar = 1.0;
  const Constants k = benchmark_constants(id, dim, kind, spec.smoother.mu_bar);
  spec.smoother.kappa = k.kappa;
  spec.smoother.eta = k.eta;
  return spec;
}

ObjectiveSpec make_objective(const std::string& id, int dim, SmootherKind kind) {
  if (id == "example1") return build_example1(dim, kind);
  return build_benchmark(id, dim, kind);
}

std::vector<std::string> objective_ids() {
  return {"example1", "f1", "f2", "f3", "f4", "f5"};
}

CertReport certify_constants(const ObjectiveSpec& spec, int grid_resolution,
                             std::span<const double> mu_values) {
  if (grid_resolution < 2)
    throw std::invalid_argument("certify_constants: grid_resolution < 2");
  if (std::pow(double(grid_resolution), spec.dim) > 2e7)
    throw std::invalid_argument("certify_constants: grid too large");
  for (double mu : mu_values)
    if (!(mu > 0.0) || mu > spec.smoother.mu_bar)
      throw std::invalid_argument("certify_constants: mu outside (0, mu_bar]");

  CertReport rep;
  rep.kappa_declared = spec.smoother.kappa;
  rep.q_declared = spec.smoother.q;
  const double q = spec.smoother.q;
  const double step = (spec.box_hi - spec.box_lo) / (grid_resolution - 1);
  std::vector<double> x(spec.dim, 0.0);
  std::vector<int> idx(spec.dim, 0);
  while (true) {
    for (int l = 0; l < spec.dim; ++l) x[l] = spec.box_lo + idx[l] * step;
    const double fx = spec.f(x);
    for (double mu : mu_values) {
      const double gap = std::abs(spec.smoother.value(x, mu) - fx);
      rep.worst_value_ratio =
          std::max(rep.worst_value_ratio, gap / std::pow(mu, 1.0 - q));
      rep.worst_dmu_ratio =
          std::max(rep.worst_dmu_ratio,
                   std::abs(spec.smoother.dmu(x, mu)) * std::pow(mu, q));
    }
    int l = 0;
    for (; l < spec.dim; ++l) {
      if (++idx[l] < grid_resolution) break;
      idx[l] = 0;
    }
    if (l == spec.dim) break;
  }
  // attained-equality bounds (e.g. the smooth-abs kink) sit exactly at
  // kappa; allow rounding-scale slack in the comparison
  const double cap = rep.kappa_declared * (1.0 + 1e-12);
  rep.pass = rep.worst_value_ratio <= cap && rep.worst_dmu_ratio <= cap;
  return rep;
}

CertReport certify_constants(const ObjectiveSpec& spec, int grid_resolution,
                             int mu_samples) {
  std::vector<double> mus;
  for (int k = 1; k <= mu_samples; ++k)
    mus.push_back(spec.smoother.mu_bar * std::pow(10.0, -k));
  return certify_constants(spec, grid_resolution, mus);
}

}  // namespace scbo
