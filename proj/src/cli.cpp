#include "scbo/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "scbo/analysis.hpp"
#include "scbo/baseline.hpp"
#include "scbo/bench.hpp"
#include "scbo/serialize.hpp"

namespace scbo::cli {

namespace {

using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

const json& require(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError("missing config field: " + key);
  return j.at(key);
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad type for config field: " + key);
  }
}

void check_schema(const json& cfg, const std::string& subcommand) {
  if (get_or<int>(cfg, "schema_version", -1) != 1)
    throw ConfigError("config must declare schema_version 1");
  const std::string cmd = require(cfg, "command").get<std::string>();
  if (cmd != subcommand)
    throw ConfigError("config is for command '" + cmd + "', invoked as '" +
                      subcommand + "'");
}

ObjectiveSpec objective_from(const json& cfg) {
  const json& obj = require(cfg, "objective");
  return make_objective(require(obj, "id").get<std::string>(),
                        get_or<int>(obj, "dim", 2),
                        smoother_from_string(get_or<std::string>(obj, "smoother", "logexp")));
}

SolverConfig solver_from(const json& j) {
  SolverConfig cfg;
  cfg.lambda = get_or(j, "lambda", cfg.lambda);
  cfg.sigma = get_or(j, "sigma", cfg.sigma);
  cfg.beta = get_or(j, "beta", cfg.beta);
  cfg.n_particles = get_or(j, "n_particles", cfg.n_particles);
  cfg.dim = get_or(j, "dim", cfg.dim);
  cfg.h = get_or(j, "h", cfg.h);
  cfg.t_max = get_or(j, "t_max", cfg.t_max);
  cfg.mu0 = get_or(j, "mu0", cfg.mu0);
  cfg.alpha = get_or(j, "alpha", cfg.alpha);
  cfg.seed = get_or<std::uint64_t>(j, "seed", cfg.seed);
  cfg.consensus_tol = get_or(j, "consensus_tol", cfg.consensus_tol);
  cfg.trace_every = get_or(j, "trace_every", cfg.trace_every);
  const std::string mode = get_or<std::string>(j, "noise_mode", "common");
  if (mode != "common" && mode != "independent")
    throw ConfigError("noise_mode must be 'common' or 'independent'");
  cfg.noise_mode = mode == "common" ? NoiseMode::common : NoiseMode::independent;
  return cfg;
}

InitSpec init_from(const json& j) {
  InitSpec init;
  const std::string kind = get_or<std::string>(j, "kind", "uniform_box");
  if (kind == "uniform_box") {
    init.kind = InitSpec::Kind::uniform_box;
    init.lo = require(j, "lo").get<double>();
    init.hi = require(j, "hi").get<double>();
  } else if (kind == "gaussian") {
    init.kind = InitSpec::Kind::gaussian;
    init.mean = get_or(j, "mean", 0.0);
    init.stddev = require(j, "stddev").get<double>();
  } else {
    throw ConfigError("init kind must be 'uniform_box' or 'gaussian'");
  }
  init.allow_outside_objective_box =
      get_or(j, "allow_outside_objective_box", false);
  return init;
}

std::string resolve_output(const Options& options, const json& cfg,
                           const std::string& fallback_name) {
  if (!options.output_path.empty()) return options.output_path;
  if (cfg.contains("output")) return cfg.at("output").get<std::string>();
  const char* dir = std::getenv("SCBO_OUT_DIR");
  return (std::filesystem::path(dir ? dir : ".") / fallback_name).string();
}

void write_text(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write output file: " + path);
  out << text;
  if (!out.good()) throw IoError("failed writing output file: " + path);
}

SweepSpec sweep_from(const json& cfg, const Options& options) {
  SweepSpec spec;
  spec.objective_ids = require(cfg, "objectives").get<std::vector<std::string>>();
  const std::string vary = require(cfg, "vary").get<std::string>();
  if (vary == "N")
    spec.vary = SweepSpec::Vary::N;
  else if (vary == "beta")
    spec.vary = SweepSpec::Vary::beta;
  else
    throw ConfigError("vary must be 'N' or 'beta'");
  spec.values = require(cfg, "values").get<std::vector<double>>();
  spec.base = solver_from(require(cfg, "solver"));
  spec.smoother =
      smoother_from_string(get_or<std::string>(cfg, "smoother", "logexp"));
  spec.dim = get_or(cfg, "dim", 2);
  const json& init = require(cfg, "init");
  spec.init_lo = require(init, "lo").get<double>();
  spec.init_hi = require(init, "hi").get<double>();
  spec.runs_per_cell = get_or(cfg, "runs_per_cell", 100);
  spec.success_threshold = get_or(cfg, "success_threshold", 0.005);
  spec.base_seed = get_or<std::uint64_t>(cfg, "base_seed", 0);
  if (options.seed_override) spec.base_seed = *options.seed_override;
  spec.validate();
  // objective ids are validated eagerly so bad ids fail before any run
  for (const std::string& id : spec.objective_ids)
    make_objective(id, spec.dim, spec.smoother);
  return spec;
}

int cmd_run(const Options& options, const json& cfg) {
  const ObjectiveSpec objective = objective_from(cfg);
  SolverConfig solver = solver_from(require(cfg, "solver"));
  solver.dim = objective.dim;
  if (options.seed_override) solver.seed = *options.seed_override;
  const InitSpec init = init_from(require(cfg, "init"));
  const std::string stepper_name = get_or<std::string>(cfg, "stepper", "dscbo");
  if (stepper_name != "dscbo" && stepper_name != "cbo")
    throw ConfigError("stepper must be 'dscbo' or 'cbo'");
  const RunReport rep =
      run(solver, objective, init, get_or(cfg, "success_threshold", 0.005),
          stepper_name == "dscbo" ? Stepper::dscbo : Stepper::cbo);
  const std::string out = resolve_output(options, cfg, "run_report.json");
  write_text(out, to_json(rep).dump(2));
  std::cout << "run " << objective.id << ": f(x_inf)=" << rep.f_xinf
            << " success=" << (rep.success ? 1 : 0)
            << " steps=" << rep.steps << " t=" << rep.t_final << " -> " << out
            << "\n";
  return kExitOk;
}

int cmd_sweep(const Options& options, const json& cfg) {
  const SweepSpec spec = sweep_from(cfg, options);
  const std::vector<CellResult> cells = run_sweep(spec, options.workers);
  json out_json = {{"schema_version", 1},
                   {"kind", "sweep_report"},
                   {"vary", cfg.at("vary")},
                   {"base_seed", spec.base_seed},
                   {"runs_per_cell", spec.runs_per_cell},
                   {"t_max", spec.base.t_max},
                   {"consensus_tol", spec.base.consensus_tol},
                   {"cells", json::array()}};
  for (const CellResult& c : cells) out_json["cells"].push_back(to_json(c));
  const std::string out = resolve_output(options, cfg, "sweep_report.json");
  write_text(out, out_json.dump(2));
  std::ostringstream csv;
  write_sweep_csv(csv, spec, cells);
  const std::string csv_path =
      std::filesystem::path(out).replace_extension(".csv").string();
  write_text(csv_path, csv.str());
  for (const CellResult& c : cells)
    std::cout << "cell " << c.objective << " value=" << c.value
              << " rate=" << c.rate << " sol-err=" << c.sol_err
              << " fun-val=" << c.fun_val << " divergent=" << c.n_divergent
              << "\n";
  std::cout << "sweep -> " << out << ", " << csv_path << "\n";
  return kExitOk;
}

int cmd_compare(const Options& options, const json& cfg) {
  const SweepSpec spec = sweep_from(cfg, options);
  const std::vector<ComparisonCell> cells = run_comparison(spec, options.workers);
  json out_json = {{"schema_version", 1},
                   {"kind", "comparison_report"},
                   {"vary", cfg.at("vary")},
                   {"base_seed", spec.base_seed},
                   {"runs_per_cell", spec.runs_per_cell},
                   {"cells", json::array()}};
  for (const ComparisonCell& c : cells) out_json["cells"].push_back(to_json(c));
  const std::string out = resolve_output(options, cfg, "comparison_report.json");
  write_text(out, out_json.dump(2));
  std::ostringstream csv;
  write_comparison_csv(csv, spec, cells);
  const std::string csv_path =
      std::filesystem::path(out).replace_extension(".csv").string();
  write_text(csv_path, csv.str());
  for (const ComparisonCell& c : cells)
    std::cout << "cell " << c.scbo.objective << " value=" << c.scbo.value
              << " scbo rate=" << c.scbo.rate << " cbo rate=" << c.cbo.rate
              << "\n";
  std::cout << "compare -> " << out << ", " << csv_path << "\n";
  return kExitOk;
}

int cmd_check_condition(const Options& options, const json& cfg) {
  const ObjectiveSpec objective = objective_from(cfg);
  const json& cj = require(cfg, "condition");
  ConditionInput ci;
  ci.beta = require(cj, "beta").get<double>();
  ci.lambda = require(cj, "lambda").get<double>();
  ci.sigma = require(cj, "sigma").get<double>();
  ci.mu0 = require(cj, "mu0").get<double>();
  ci.kappa = get_or(cj, "kappa", objective.smoother.kappa);
  ci.eta = get_or(cj, "eta", objective.smoother.eta);
  ci.q = get_or(cj, "q", objective.smoother.q);
  ci.mu_bar = get_or(cj, "mu_bar", ci.mu0);  // mu_bar defaults to mu0
  const double alpha = require(cj, "alpha").get<double>();
  ci.gamma = cj.contains("gamma")
                 ? cj.at("gamma").get<double>()
                 : gamma_bound(ci.lambda, ci.sigma, alpha, ci.q, ci.mu0);
  ci.f_min = objective.f_min;
  ci.f = objective.f;
  ci.n_particles = require(cj, "n_particles").get<int>();
  ci.dim = objective.dim;
  ci.epsilon = cj.contains("epsilon")
                   ? cj.at("epsilon").get<double>()
                   : constructive_epsilon(ci.beta, ci.kappa, ci.q, ci.mu0,
                                       get_or(cj, "delta", 0.01));
  const int m = get_or(cj, "m_samples", 10000);
  const json& init = require(cj, "init");
  const double lo = require(init, "lo").get<double>();
  const double hi = require(init, "hi").get<double>();
  std::uint64_t seed = get_or<std::uint64_t>(cj, "seed", 0);
  if (options.seed_override) seed = *options.seed_override;
  GaussianStream stream(seed);
  ci.init_samples.resize(static_cast<size_t>(m) * ci.dim);
  for (double& v : ci.init_samples) v = stream.uniform(lo, hi);

  const ConditionReport rep = check_condition(ci);
  json out_json = to_json(rep);
  out_json["inputs"] = {{"beta", ci.beta},     {"lambda", ci.lambda},
                        {"sigma", ci.sigma},   {"mu0", ci.mu0},
                        {"kappa", ci.kappa},   {"eta", ci.eta},
                        {"q", ci.q},           {"mu_bar", ci.mu_bar},
                        {"gamma", ci.gamma},   {"epsilon", ci.epsilon},
                        {"n_particles", ci.n_particles},
                        {"m_samples", m},      {"seed", seed}};
  const std::string out = resolve_output(options, cfg, "condition_report.json");
  write_text(out, out_json.dump(2));
  std::cout << "check-condition: left=" << rep.left << " right=" << rep.right
            << " satisfied=" << (rep.satisfied ? 1 : 0)
            << " E(beta)=" << rep.e_beta << " -> " << out << "\n";
  return kExitOk;
}

int cmd_decay_probe(const Options& options, const json& cfg) {
  json out_json = {{"schema_version", 1}, {"kind", "decay_probe_report"}};
  if (cfg.contains("continuous")) {
    const json& pj = cfg.at("continuous");
    DecayProbe probe;
    probe.lambda = get_or(pj, "lambda", 1.0);
    probe.sigma = get_or(pj, "sigma", 1.0);
    probe.t_checkpoints = require(pj, "t_checkpoints").get<std::vector<double>>();
    probe.n_samples = get_or(pj, "n_samples", 100000);
    probe.seed = get_or<std::uint64_t>(pj, "seed", 0);
    if (options.seed_override) probe.seed = *options.seed_override;
    const auto rows = exact_pairwise_moment(probe, get_or(pj, "init_diff", 1.0));
    out_json["continuous"] = to_json(std::span<const MomentRow>(rows));
    for (const MomentRow& r : rows)
      std::cout << "pairwise t=" << r.t << " empirical=" << r.empirical
                << " theoretical=" << r.theoretical << "\n";
  }
  if (cfg.contains("discrete")) {
    const json& dj = cfg.at("discrete");
    SolverConfig sc;
    sc.lambda = get_or(dj, "lambda", 1.0);
    sc.sigma = get_or(dj, "sigma", 1.0);
    sc.h = get_or(dj, "h", 0.01);
    sc.seed = get_or<std::uint64_t>(dj, "seed", 0);
    if (options.seed_override) sc.seed = *options.seed_override;
    const auto checkpoints = require(dj, "checkpoints").get<std::vector<long>>();
    const DecayReport rep =
        verify_discrete_decay(sc, checkpoints, get_or(dj, "n_seeds", 2000));
    out_json["discrete"] = to_json(rep);
    for (const DecayRow& r : rep.rows)
      std::cout << "discrete n=" << r.step << " empirical=" << r.empirical
                << " theoretical=" << r.theoretical << " se=" << r.std_error
                << "\n";
  }
  if (!cfg.contains("continuous") && !cfg.contains("discrete"))
    throw ConfigError("decay-probe config needs 'continuous' and/or 'discrete'");
  const std::string out = resolve_output(options, cfg, "decay_probe.json");
  write_text(out, out_json.dump(2));
  std::cout << "decay-probe -> " << out << "\n";
  return kExitOk;
}

int cmd_laplace(const Options& options, const json& cfg) {
  const ObjectiveSpec objective = objective_from(cfg);
  const auto betas = require(cfg, "betas").get<std::vector<double>>();
  std::uint64_t seed = get_or<std::uint64_t>(cfg, "seed", 0);
  if (options.seed_override) seed = *options.seed_override;
  const auto points =
      laplace_estimate(objective, betas, get_or(cfg, "m_samples", 100000), seed);
  json out_json = {{"schema_version", 1},
                   {"kind", "laplace_report"},
                   {"objective", objective.id},
                   {"f_min", objective.f_min},
                   {"points", to_json(std::span<const LaplacePoint>(points))}};
  const std::string out = resolve_output(options, cfg, "laplace_report.json");
  write_text(out, out_json.dump(2));
  for (const LaplacePoint& p : points)
    std::cout << "laplace beta=" << p.beta << " estimate=" << p.estimate
              << " se=" << p.std_error << "\n";
  std::cout << "laplace -> " << out << "\n";
  return kExitOk;
}

int cmd_spg_multistart(const Options& options, const json& cfg) {
  const ObjectiveSpec objective = objective_from(cfg);
  SpgConfig spg;
  if (cfg.contains("spg")) {
    const json& sj = cfg.at("spg");
    spg.alpha2 = get_or(sj, "alpha2", spg.alpha2);
    spg.mu0 = get_or(sj, "mu0", spg.mu0);
    spg.max_iters = get_or(sj, "max_iters", spg.max_iters);
    spg.armijo_c = get_or(sj, "armijo_c", spg.armijo_c);
    spg.backtrack = get_or(sj, "backtrack", spg.backtrack);
    spg.grad_tol = get_or(sj, "grad_tol", spg.grad_tol);
  }
  std::uint64_t seed = get_or<std::uint64_t>(cfg, "seed", 0);
  if (options.seed_override) seed = *options.seed_override;
  const MultistartReport rep =
      spg_multistart(objective, get_or(cfg, "n_starts", 100), spg, seed,
                     get_or(cfg, "success_threshold", 0.005));
  const std::string out = resolve_output(options, cfg, "spg_multistart.json");
  write_text(out, to_json(rep).dump(2));
  std::cout << "spg-multistart " << objective.id << ": " << rep.n_success
            << "/" << rep.runs.size() << " successful starts -> " << out << "\n";
  return kExitOk;
}

}  // namespace

int execute(const Options& options) {
  try {
    const json cfg = load_config(options.config_path);
    check_schema(cfg, options.subcommand);
    if (options.subcommand == "run") return cmd_run(options, cfg);
    if (options.subcommand == "sweep") return cmd_sweep(options, cfg);
    if (options.subcommand == "compare") return cmd_compare(options, cfg);
    if (options.subcommand == "check-condition")
      return cmd_check_condition(options, cfg);
    if (options.subcommand == "decay-probe") return cmd_decay_probe(options, cfg);
    if (options.subcommand == "laplace") return cmd_laplace(options, cfg);
    if (options.subcommand == "spg-multistart")
      return cmd_spg_multistart(options, cfg);
    std::cerr << "error: unknown subcommand '" << options.subcommand << "'\n";
    return kExitConfig;
  } catch (const UnknownObjectiveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnknownId;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace scbo::cli
