#pragma once

#include <string>
#include <vector>

#include "criskeq/hazards.hpp"

namespace criskeq {

// One possibly-censored record: observation time (days, > 0) and the state
// reached, where state 0 means censored.
struct Observation {
    double time = 0.0;
    int state = 0;
};

// One group's records plus the bookkeeping needed to interpret them.
struct Sample {
    int group = 1;                       // label, 1 or 2
    int k = 0;                           // number of competing states
    double horizon = 0.0;                // tau, days
    std::vector<Observation> observations;

    int n() const { return static_cast<int>(observations.size()); }
    void validate() const;
    // Administrative regimes additionally require every time <= tau.
    void check_administrative(double tau) const;
};

struct EventCounts {
    std::vector<int> events;   // d_j for j = 1..k (0-indexed by j-1)
    int censored = 0;
    double exposure = 0.0;     // sum over all observation times
};

EventCounts event_counts(const Sample& s);

// Censoring regime: a fixed study end tau, or a parametric censoring law
// specified by a hazard family (density g(t) = h(t) exp(-H(t))).
struct CensoringModel {
    enum class Kind { administrative, parametric };

    Kind kind = Kind::administrative;
    double tau = 0.0;      // administrative horizon; also the default study horizon
    Intensity law;         // parametric kind only

    static CensoringModel administrative(double tau) {
        CensoringModel c;
        c.kind = Kind::administrative;
        c.tau = tau;
        return c;
    }

    static CensoringModel parametric(Intensity law, double tau) {
        CensoringModel c;
        c.kind = Kind::parametric;
        c.law = std::move(law);
        c.tau = tau;
        return c;
    }

    bool is_administrative() const { return kind == Kind::administrative; }
    void validate() const;
};

// Reads `group,time,state` CSV (UTF-8, decimal point, one observation per
// row) and returns one validated Sample per group label found (ascending).
// Malformed rows are reported with their row number.
std::vector<Sample> ingest_csv(const std::string& path, int k, double horizon);

void write_csv(const std::string& path, const std::vector<Sample>& samples);

}  // namespace criskeq
