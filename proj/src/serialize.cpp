#include "scbo/serialize.hpp"

namespace scbo {

using nlohmann::json;

json to_json(const SolverConfig& cfg) {
  return {{"lambda", cfg.lambda},
          {"sigma", cfg.sigma},
          {"beta", cfg.beta},
          {"n_particles", cfg.n_particles},
          {"dim", cfg.dim},
          {"h", cfg.h},
          {"t_max", cfg.t_max},
          {"mu0", cfg.mu0},
          {"alpha", cfg.alpha},
          {"noise_mode", cfg.noise_mode == NoiseMode::common ? "common" : "independent"},
          {"seed", cfg.seed},
          {"consensus_tol", cfg.consensus_tol},
          {"trace_every", cfg.trace_every},
          {"l2_contractive", cfg.l2_contractive()}};
}

json to_json(const RunReport& rep) {
  json trace = json::array();
  for (const auto& [t, d] : rep.diameter_trace) trace.push_back({t, d});
  return {{"schema_version", 1},
          {"kind", "run_report"},
          {"objective", rep.objective_id},
          {"objective_info",
           {{"id", rep.objective.id},
            {"dim", rep.objective.dim},
            {"box", {rep.objective.box_lo, rep.objective.box_hi}},
            {"f_min", rep.objective.f_min},
            {"f_max", rep.objective.f_max},
            {"kappa", rep.objective.kappa},
            {"eta", rep.objective.eta},
            {"q", rep.objective.q},
            {"mu_bar", rep.objective.mu_bar}}},
          {"stepper", rep.stepper == Stepper::dscbo ? "dscbo" : "cbo"},
          {"config", to_json(rep.config)},
          {"x_inf", rep.x_inf},
          {"f_xinf", rep.f_xinf},
          {"success", rep.success},
          {"success_threshold", rep.success_threshold},
          {"consensus_reached", rep.consensus_reached},
          {"excursion", rep.excursion},
          {"steps", rep.steps},
          {"t_final", rep.t_final},
          {"diameter_trace", trace},
          {"wall_time_s", rep.wall_time_s}};
}

json to_json(const CellResult& cell) {
  json runs = json::array();
  for (const RunDigest& d : cell.per_run)
    runs.push_back({{"seed", d.seed},
                    {"f_value", d.f_value},
                    {"sol_err", d.sol_err},
                    {"success", d.success},
                    {"diverged", d.diverged},
                    {"consensus_reached", d.consensus_reached},
                    {"t_final", d.t_final}});
  return {{"objective", cell.objective}, {"value", cell.value},
          {"rate", cell.rate},           {"fun-val", cell.fun_val},
          {"sol-err", cell.sol_err},     {"divergent", cell.n_divergent},
          {"per_run", runs}};
}

json to_json(const ComparisonCell& cell) {
  return {{"scbo", to_json(cell.scbo)}, {"cbo", to_json(cell.cbo)}};
}

json to_json(const ConditionReport& rep) {
  return {{"schema_version", 1},
          {"kind", "condition_report"},
          {"left", rep.left},
          {"right", rep.right},
          {"left_se", rep.left_se},
          {"right_se", rep.right_se},
          {"satisfied", rep.satisfied},
          {"satisfied_with_margin", rep.satisfied_with_margin},
          {"E_beta", rep.e_beta},
          {"terms",
           {{"exp_term", rep.exp_term},
            {"mu_term", rep.mu_term},
            {"spread_term", rep.spread_term},
            {"f_tilde_min", rep.f_tilde_min}}},
          {"n_xin_samples", rep.n_xin_samples},
          {"n_ensembles", rep.n_ensembles}};
}

json to_json(const DecayReport& rep) {
  json rows = json::array();
  for (const DecayRow& r : rep.rows)
    rows.push_back({{"step", r.step},
                    {"empirical", r.empirical},
                    {"theoretical", r.theoretical},
                    {"std_error", r.std_error}});
  return {{"schema_version", 1},
          {"kind", "decay_report"},
          {"lambda", rep.lambda},
          {"sigma", rep.sigma},
          {"h", rep.h},
          {"per_step_factor", rep.per_step_factor},
          {"n_seeds", rep.n_seeds},
          {"rows", rows}};
}

json to_json(std::span<const MomentRow> rows) {
  json out = json::array();
  for (const MomentRow& r : rows)
    out.push_back({{"t", r.t},
                   {"empirical", r.empirical},
                   {"theoretical", r.theoretical},
                   {"std_error", r.std_error}});
  return out;
}

json to_json(std::span<const LaplacePoint> points) {
  json out = json::array();
  for (const LaplacePoint& p : points)
    out.push_back({{"beta", p.beta},
                   {"estimate", p.estimate},
                   {"std_error", p.std_error}});
  return out;
}

json to_json(const SpgReport& rep) {
  return {{"x_final", rep.x_final},
          {"f_value", rep.f_value},
          {"iterations", rep.iterations},
          {"grad_norm", rep.grad_norm},
          {"line_search_failed", rep.line_search_failed},
          {"success", rep.success}};
}

json to_json(const MultistartReport& rep) {
  json runs = json::array();
  for (size_t i = 0; i < rep.runs.size(); ++i) {
    json r = to_json(rep.runs[i]);
    r["start"] = rep.starts[i];
    runs.push_back(r);
  }
  return {{"schema_version", 1},
          {"kind", "spg_multistart_report"},
          {"n_success", rep.n_success},
          {"success_threshold", rep.success_threshold},
          {"runs", runs}};
}

bool validate_run_report_json(const json& j) {
  for (const char* key :
       {"schema_version", "objective", "objective_info", "config", "x_inf",
        "f_xinf", "success", "consensus_reached", "steps", "t_final",
        "diameter_trace"})
    if (!j.contains(key)) return false;
  if (j["schema_version"] != 1) return false;
  const json& cfg = j["config"];
  for (const char* key : {"lambda", "sigma", "beta", "n_particles", "dim", "h",
                          "t_max", "mu0", "alpha", "seed"})
    if (!cfg.contains(key)) return false;
  for (const char* key : {"id", "dim", "box", "f_min", "f_max", "kappa", "eta",
                          "q", "mu_bar"})
    if (!j["objective_info"].contains(key)) return false;
  return j["x_inf"].is_array() &&
         j["x_inf"].size() == cfg["dim"].get<size_t>() &&
         j["diameter_trace"].is_array();
}

}  // namespace scbo
