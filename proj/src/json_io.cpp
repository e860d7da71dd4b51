#include "criskeq/json_io.hpp"

namespace criskeq {

using nlohmann::json;

json to_json(const Intensity& spec) {
    return json{{"family", family_name(spec.family)}, {"params", spec.params}};
}

Intensity intensity_from_json(const json& j) {
    Intensity spec;
    spec.family = family_from_string(j.at("family").get<std::string>());
    spec.params = j.at("params").get<std::vector<double>>();
    spec.validate();
    return spec;
}

json to_json(const CompetingRisksModel& model) {
    json transitions = json::array();
    for (const auto& tr : model.transitions) transitions.push_back(to_json(tr));
    return json{{"transitions", transitions}, {"horizon", model.horizon}};
}

CompetingRisksModel model_from_json(const json& j) {
    CompetingRisksModel model;
    model.horizon = j.at("horizon").get<double>();
    for (const auto& tr : j.at("transitions")) model.transitions.push_back(intensity_from_json(tr));
    model.validate();
    return model;
}

json to_json(const Sample& s) {
    json obs = json::array();
    for (const auto& o : s.observations) obs.push_back(json{{"time", o.time}, {"state", o.state}});
    return json{{"group", s.group}, {"k", s.k}, {"horizon", s.horizon}, {"observations", obs}};
}

Sample sample_from_json(const json& j) {
    Sample s;
    s.group = j.at("group").get<int>();
    s.k = j.at("k").get<int>();
    s.horizon = j.at("horizon").get<double>();
    for (const auto& o : j.at("observations"))
        s.observations.push_back({o.at("time").get<double>(), o.at("state").get<int>()});
    s.validate();
    return s;
}

json to_json(const FitResult& fit) {
    json out{{"model", to_json(fit.model)},
             {"log_lik", fit.log_lik},
             {"converged", fit.converged},
             {"iterations", fit.iterations},
             {"restarts_used", fit.restarts_used},
             {"degenerate_states", fit.degenerate_states}};
    if (fit.censoring) out["censoring"] = to_json(*fit.censoring);
    return out;
}

json to_json(const TestResult& result, bool include_replicates) {
    json per_transition = json::array();
    for (const auto& d : result.per_transition) {
        json entry{{"j", d.j}, {"d_j", d.d_j}, {"argmax_t", d.argmax_t}};
        if (d.p_value >= 0.0) {
            entry["p_value"] = d.p_value;
            entry["reject"] = d.reject;
        }
        per_transition.push_back(entry);
    }
    json out{{"method", result.method},
             {"d_hat", result.d_hat},
             {"p_value", result.p_value},
             {"q_alpha", result.q_alpha},
             {"reject", result.reject},
             {"B", result.b},
             {"B_effective", result.b_effective},
             {"per_transition", per_transition},
             {"constrained_used", result.constrained_used},
             {"fit1", to_json(result.fit1)},
             {"fit2", to_json(result.fit2)}};
    if (result.constrained_used) out["constrained_residual"] = result.constrained_residual;
    if (include_replicates && !result.replicates.empty()) out["replicates"] = result.replicates;
    return out;
}

json to_json(const StepFunction& step, const ConfidenceBand& band) {
    json points = json::array();
    for (std::size_t i = 0; i < step.times.size(); ++i) {
        points.push_back(json{{"t", step.times[i]},
                              {"estimate", step.values[i]},
                              {"variance", step.variances[i]},
                              {"lower", band.lower[i]},
                              {"upper", band.upper[i]}});
    }
    return json{{"points", points}};
}

json to_json(const ScenarioTable& table) {
    json cells = json::array();
    for (const auto& c : table.cells) {
        json cell{{"n1", c.n1},
                  {"n2", c.n2},
                  {"administrative", c.administrative},
                  {"censor_rate", c.censor_rate},
                  {"delta", c.delta},
                  {"datasets", c.datasets},
                  {"failures", c.failures},
                  {"rejection_rate", c.rejection_rate},
                  {"std_error", c.std_error},
                  {"mean_censored", c.mean_censored},
                  {"flagged", c.flagged}};
        if (c.rejection_rate_iup >= 0.0) cell["rejection_rate_iup"] = c.rejection_rate_iup;
        cells.push_back(cell);
    }
    return json{{"scenario", table.config.scenario},
                {"n_datasets", table.config.n_datasets},
                {"bootstrap", table.config.bootstrap},
                {"alpha", table.config.alpha},
                {"seed", table.config.seed},
                {"cells", cells}};
}

}  // namespace criskeq
