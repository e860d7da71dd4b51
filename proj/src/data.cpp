#include "criskeq/data.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace criskeq {

void Sample::validate() const {
    if (observations.empty()) throw std::invalid_argument("sample must be nonempty");
    if (k < 1) throw std::invalid_argument("sample needs k >= 1 competing states");
    if (group != 1 && group != 2) throw std::invalid_argument("group label must be 1 or 2");
    for (std::size_t i = 0; i < observations.size(); ++i) {
        const auto& o = observations[i];
        if (!(o.time > 0.0) || !std::isfinite(o.time))
            throw std::invalid_argument("nonpositive time at observation " + std::to_string(i + 1));
        if (o.state < 0 || o.state > k)
            throw std::invalid_argument("state " + std::to_string(o.state) + " out of range at observation " +
                                        std::to_string(i + 1));
    }
}

void Sample::check_administrative(double tau) const {
    for (std::size_t i = 0; i < observations.size(); ++i) {
        if (observations[i].time > tau * (1.0 + 1e-12))
            throw std::invalid_argument("observation " + std::to_string(i + 1) + " at t=" +
                                        std::to_string(observations[i].time) +
                                        " exceeds the administrative horizon " + std::to_string(tau));
    }
}

EventCounts event_counts(const Sample& s) {
    EventCounts c;
    c.events.assign(static_cast<std::size_t>(s.k), 0);
    for (const auto& o : s.observations) {
        c.exposure += o.time;
        if (o.state == 0) ++c.censored;
        else ++c.events[static_cast<std::size_t>(o.state - 1)];
    }
    return c;
}

void CensoringModel::validate() const {
    if (!(tau > 0.0)) throw std::invalid_argument("censoring model: tau must be > 0");
    if (kind == Kind::parametric) law.validate();
}

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void row_error(std::size_t row, const std::string& what) {
    throw std::invalid_argument(what + " at row " + std::to_string(row));
}

}  // namespace

std::vector<Sample> ingest_csv(const std::string& path, int k, double horizon) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    if (k < 1) throw std::invalid_argument("k must be >= 1");

    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("'" + path + "' is empty");
    if (strip(line) != "group,time,state")
        throw std::invalid_argument("'" + path + "': expected header 'group,time,state', got '" + strip(line) + "'");

    std::map<int, Sample> groups;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (strip(line).empty()) continue;

        std::stringstream ss(line);
        std::string g_tok, t_tok, s_tok, extra;
        if (!std::getline(ss, g_tok, ',') || !std::getline(ss, t_tok, ',') || !std::getline(ss, s_tok, ','))
            row_error(row, "malformed row (expected group,time,state)");
        if (std::getline(ss, extra, ',') && !strip(extra).empty())
            row_error(row, "malformed row (too many fields)");

        int group, state;
        double time;
        try {
            std::size_t pos;
            group = std::stoi(strip(g_tok), &pos);
            if (pos != strip(g_tok).size()) throw std::invalid_argument("");
            time = std::stod(strip(t_tok), &pos);
            if (pos != strip(t_tok).size()) throw std::invalid_argument("");
            state = std::stoi(strip(s_tok), &pos);
            if (pos != strip(s_tok).size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            row_error(row, "unparseable field");
        }

        if (group != 1 && group != 2) row_error(row, "unknown group label " + std::to_string(group));
        if (!(time > 0.0) || !std::isfinite(time)) row_error(row, "nonpositive time");
        if (state < 0 || state > k) row_error(row, "state " + std::to_string(state) + " out of range");

        Sample& s = groups[group];
        s.group = group;
        s.k = k;
        s.horizon = horizon;
        s.observations.push_back({time, state});
    }

    if (groups.empty()) throw std::invalid_argument("'" + path + "' contains no observations");
    std::vector<Sample> out;
    out.reserve(groups.size());
    for (auto& [label, sample] : groups) {
        sample.validate();
        out.push_back(std::move(sample));
    }
    return out;
}

void write_csv(const std::string& path, const std::vector<Sample>& samples) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << "group,time,state\n";
    out.precision(17);
    for (const auto& s : samples)
        for (const auto& o : s.observations)
            out << s.group << ',' << o.time << ',' << o.state << '\n';
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace criskeq
