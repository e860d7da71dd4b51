#pragma once

#include <json.hpp>

#include "criskeq/data.hpp"
#include "criskeq/equivalence.hpp"
#include "criskeq/hazards.hpp"
#include "criskeq/likelihood.hpp"
#include "criskeq/nelson_aalen.hpp"
#include "criskeq/scenario.hpp"

namespace criskeq {

nlohmann::json to_json(const Intensity& spec);
Intensity intensity_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CompetingRisksModel& model);
CompetingRisksModel model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Sample& s);
Sample sample_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FitResult& fit);

// {d_hat, p_value, q_alpha, reject, B, B_effective, per_transition: [...],
//  replicates?: [...]} plus method/diagnostic fields.
nlohmann::json to_json(const TestResult& result, bool include_replicates = true);

nlohmann::json to_json(const StepFunction& step, const ConfidenceBand& band);

nlohmann::json to_json(const ScenarioTable& table);

}  // namespace criskeq
