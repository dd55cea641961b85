#include "scbo/bench.hpp"

#include <bit>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "scbo/parallel.hpp"

namespace scbo {

namespace {

CellResult run_cell(const SweepSpec& spec, const std::string& objective_id,
                    double value, Stepper stepper, int n_workers) {
  const ObjectiveSpec objective =
      make_objective(objective_id, spec.dim, spec.smoother);
  SolverConfig cfg = spec.base;
  cfg.dim = spec.dim;
  if (spec.vary == SweepSpec::Vary::N)
    cfg.n_particles = static_cast<int>(value);
  else
    cfg.beta = value;

  InitSpec init;
  init.kind = InitSpec::Kind::uniform_box;
  init.lo = spec.init_lo;
  init.hi = spec.init_hi;

  CellResult cell;
  cell.objective = objective_id;
  cell.value = value;
  cell.per_run.resize(spec.runs_per_cell);

  parallel_for(spec.runs_per_cell, n_workers, [&](int r) {
    SolverConfig rc = cfg;
    rc.seed = cell_run_seed(spec.base_seed, objective_id, value, r);
    RunDigest& digest = cell.per_run[r];
    digest.seed = rc.seed;
    try {
      const RunReport rep =
          run(rc, objective, init, spec.success_threshold, stepper);
      digest.f_value = rep.f_xinf;
      double err = 0.0;
      for (int l = 0; l < objective.dim; ++l) {
        const double dl = rep.x_inf[l] - objective.x_star[l];
        err += dl * dl;
      }
      digest.sol_err = err;
      digest.success = rep.success;
      digest.consensus_reached = rep.consensus_reached;
      digest.t_final = rep.t_final;
    } catch (const DivergenceError&) {
      digest.diverged = true;
    }
  });

  int n_success = 0, n_ok = 0;
  for (const RunDigest& d : cell.per_run) {
    if (d.diverged) {
      cell.n_divergent += 1;
      continue;
    }
    n_ok += 1;
    n_success += d.success ? 1 : 0;
    cell.sol_err += d.sol_err;
    cell.fun_val += d.f_value;
  }
  cell.rate = static_cast<double>(n_success) / spec.runs_per_cell;
  if (n_ok > 0) {
    cell.sol_err /= n_ok;
    cell.fun_val /= n_ok;
  }
  return cell;
}

}  // namespace

bool run_success(double f_value, double f_min, double f_max, double threshold) {
  return std::abs(f_value - f_min) / (f_max - f_min) < threshold;
}

void SweepSpec::validate() const {
  if (objective_ids.empty())
    throw std::invalid_argument("SweepSpec: no objectives");
  if (values.empty()) throw std::invalid_argument("SweepSpec: empty value list");
  if (runs_per_cell < 1)
    throw std::invalid_argument("SweepSpec: runs_per_cell < 1");
  if (!(success_threshold > 0.0))
    throw std::invalid_argument("SweepSpec: success_threshold <= 0");
  if (!(init_lo < init_hi)) throw std::invalid_argument("SweepSpec: bad init box");
  for (double v : values)
    if (vary == Vary::N && (v < 1.0 || v != std::floor(v)))
      throw std::invalid_argument("SweepSpec: N values must be positive integers");
}

std::uint64_t cell_run_seed(std::uint64_t base_seed, const std::string& objective,
                            double value, int run_index) {
  return mix_seed(base_seed,
                  {hash_string(objective), std::bit_cast<std::uint64_t>(value),
                   static_cast<std::uint64_t>(run_index)});
}

std::vector<CellResult> run_sweep(const SweepSpec& spec, int n_workers) {
  spec.validate();
  std::vector<CellResult> cells;
  for (const std::string& id : spec.objective_ids)
    for (double v : spec.values)
      cells.push_back(run_cell(spec, id, v, Stepper::dscbo, n_workers));
  return cells;
}

std::vector<ComparisonCell> run_comparison(const SweepSpec& spec, int n_workers) {
  spec.validate();
  std::vector<ComparisonCell> cells;
  for (const std::string& id : spec.objective_ids)
    for (double v : spec.values)
      cells.push_back({run_cell(spec, id, v, Stepper::dscbo, n_workers),
                       run_cell(spec, id, v, Stepper::cbo, n_workers)});
  return cells;
}

void write_sweep_csv(std::ostream& os, const SweepSpec& spec,
                     std::span<const CellResult> cells) {
  const char* vary = spec.vary == SweepSpec::Vary::N ? "N" : "beta";
  os << "objective,vary,value,rate,fun-val,sol-err,divergent,runs\n";
  for (const CellResult& c : cells)
    os << c.objective << ',' << vary << ',' << c.value << ',' << c.rate << ','
       << c.fun_val << ',' << c.sol_err << ',' << c.n_divergent << ','
       << spec.runs_per_cell << '\n';
}

void write_comparison_csv(std::ostream& os, const SweepSpec& spec,
                          std::span<const ComparisonCell> cells) {
  const char* vary = spec.vary == SweepSpec::Vary::N ? "N" : "beta";
  os << "objective,vary,value,method,rate,fun-val,sol-err,divergent,runs\n";
  for (const ComparisonCell& c : cells) {
    for (const auto* side : {&c.scbo, &c.cbo}) {
      os << side->objective << ',' << vary << ',' << side->value << ','
         << (side == &c.scbo ? "scbo" : "cbo") << ',' << side->rate << ','
         << side->fun_val << ',' << side->sol_err << ',' << side->n_divergent
         << ',' << spec.runs_per_cell << '\n';
    }
  }
}

}  // namespace scbo
