#ifndef SCBO_SERIALIZE_HPP
#define SCBO_SERIALIZE_HPP

#include <json.hpp>

#include "scbo/analysis.hpp"
#include "scbo/baseline.hpp"
#include "scbo/bench.hpp"
#include "scbo/dynamics.hpp"

namespace scbo {

nlohmann::json to_json(const SolverConfig& cfg);
nlohmann::json to_json(const RunReport& rep);
nlohmann::json to_json(const CellResult& cell);
nlohmann::json to_json(const ComparisonCell& cell);
nlohmann::json to_json(const ConditionReport& rep);
nlohmann::json to_json(const DecayReport& rep);
nlohmann::json to_json(std::span<const MomentRow> rows);
nlohmann::json to_json(std::span<const LaplacePoint> points);
nlohmann::json to_json(const SpgReport& rep);
nlohmann::json to_json(const MultistartReport& rep);

// Schema checks for emitted artifacts (round-trip validation).
bool validate_run_report_json(const nlohmann::json& j);

}  // namespace scbo

#endif
