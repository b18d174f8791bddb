#pragma once

#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dmgx/benchgen.hpp"
#include "dmgx/graph.hpp"
#include "dmgx/oracle.hpp"
#include "dmgx/pipeline.hpp"
#include "dmgx/sepsys.hpp"

namespace dmgx {

using nlohmann::json;

inline std::string scenario_tag(Scenario s) { return s == Scenario::DSep ? "d" : "sigma"; }

inline Scenario scenario_from_tag(const std::string& tag) {
    if (tag == "d") return Scenario::DSep;
    if (tag == "sigma") return Scenario::SigmaSep;
    throw std::invalid_argument("unknown scenario '" + tag + "' (expected d or sigma)");
}

// {"n": int, "directed": [[u,v],...], "bidirected": [[u,v],...]}, u<v for
// bidirected pairs on output; input pairs are canonicalized.
inline json dmg_to_json(const Dmg& g) {
    json j;
    j["n"] = g.node_count();
    j["directed"] = json::array();
    for (auto [u, v] : g.directed_edges()) j["directed"].push_back({u, v});
    j["bidirected"] = json::array();
    for (auto [u, v] : g.bidirected_edges()) j["bidirected"].push_back({u, v});
    return j;
}

inline Dmg dmg_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
        throw std::invalid_argument("graph json: missing integer field 'n'");
    Dmg g(j["n"].get<int>());
    auto read_pairs = [&](const char* key, auto&& add) {
        if (!j.contains(key)) return;
        if (!j[key].is_array()) throw std::invalid_argument(std::string("graph json: '") + key + "' must be an array");
        for (const auto& e : j[key]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
                throw std::invalid_argument(std::string("graph json: malformed pair in '") + key + "'");
            add(e[0].get<int>(), e[1].get<int>());
        }
    };
    read_pairs("directed", [&](int u, int v) { g.add_directed(u, v); });
    read_pairs("bidirected", [&](int u, int v) { g.add_bidirected(u, v); });
    return g;
}

/// DOT export: directed edges as `u -> v`, bidirected as
/// `u -> v [dir=both, style=dashed]` with u < v.
inline std::string dmg_to_dot(const Dmg& g, const std::string& name = "g") {
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    for (int v = 0; v < g.node_count(); ++v) out << "  " << v << ";\n";
    for (auto [u, v] : g.directed_edges()) out << "  " << u << " -> " << v << ";\n";
    for (auto [u, v] : g.bidirected_edges()) out << "  " << u << " -> " << v << " [dir=both, style=dashed];\n";
    out << "}\n";
    return out.str();
}

// {"kind": str, "M": int|null, "sets": [[ids]], "pairs": [[[ids],[ids]]]}
inline json system_to_json(const SeparatingSystem& sys) {
    json j;
    j["kind"] = system_kind_tag(sys.kind);
    j["M"] = sys.bound ? json(*sys.bound) : json(nullptr);
    j["sets"] = json::array();
    for (const auto& s : sys.sets) j["sets"].push_back(s);
    j["pairs"] = json::array();
    for (const auto& [a, b] : sys.pair_sets) j["pairs"].push_back({a, b});
    return j;
}

inline json log_to_json(const ExperimentLog& log) {
    json stages = json::object();
    for (Stage s : {Stage::Observational, Stage::Ancestry, Stage::DirectedEdges, Stage::NonAdjacent, Stage::Adjacent}) {
        json sets = json::array();
        json queries = json::array();
        for (const auto& r : log.records())
            if (r.stage == s) {
                sets.push_back(r.targets);
                queries.push_back(r.query_count);
            }
        if (sets.empty()) continue;
        stages[stage_tag(s)] = {{"experiments", sets},
                                {"queries", queries},
                                {"count", log.stage_count(s)},
                                {"max_size", log.stage_max_size(s)}};
    }
    return {{"stages", stages}, {"total_distinct", log.total_distinct_experiments()}};
}

inline json result_to_json(const PipelineResult& r) {
    json j;
    j["scenario"] = scenario_tag(r.scenario);
    j["M"] = r.bound ? json(*r.bound) : json(nullptr);
    j["recovered"] = dmg_to_json(r.recovered);
    j["undetermined"] = json::array();
    for (auto [u, v] : r.undetermined) j["undetermined"].push_back({u, v});
    j["coverage_complete"] = r.coverage_complete;
    j["stages"] = json::object();
    for (const auto& [tag, st] : r.stages)
        j["stages"][tag] = {{"count", st.count}, {"bound", st.bound_target}, {"max_size", st.max_size}};
    return j;
}

inline PipelineResult result_from_json(const json& j) {
    PipelineResult r{Dmg(0), {}, {}, true, Scenario::SigmaSep, std::nullopt};
    if (!j.is_object() || !j.contains("recovered")) throw std::invalid_argument("result json: missing 'recovered'");
    r.recovered = dmg_from_json(j["recovered"]);
    if (j.contains("scenario")) r.scenario = scenario_from_tag(j["scenario"].get<std::string>());
    if (j.contains("M") && !j["M"].is_null()) r.bound = j["M"].get<int>();
    if (j.contains("coverage_complete")) r.coverage_complete = j["coverage_complete"].get<bool>();
    if (j.contains("undetermined"))
        for (const auto& e : j["undetermined"]) r.undetermined.emplace_back(e[0].get<int>(), e[1].get<int>());
    if (j.contains("stages"))
        for (auto it = j["stages"].begin(); it != j["stages"].end(); ++it)
            r.stages[it.key()] = {it.value().value("count", 0), it.value().value("bound", 0),
                                  it.value().value("max_size", 0)};
    return r;
}

inline json report_to_json(const BoundsReport& rep) {
    json j;
    j["n"] = rep.n;
    j["chi_obs_greedy"] = rep.chi_obs_greedy;
    j["zeta_per_layer"] = rep.zeta_per_layer;
    j["sum_zeta"] = rep.sum_zeta;
    j["top_prefix_nodes"] = rep.top_prefix_nodes;
    j["cc"] = {{"value", rep.cc_value}, {"exact", rep.cc_exact}};
    j["chi_s"] = {{"value", rep.chi_s_value}, {"exact", rep.chi_s_exact}};
    j["skeleton_max_degree"] = rep.skeleton_max_degree;
    j["min_experiment_size_directed"] = rep.min_experiment_size_directed;
    j["min_experiments_directed"] = rep.min_experiments_directed;
    j["min_experiment_size_nonadjacent"] = rep.min_experiment_size_nonadjacent;
    j["min_experiments_nonadjacent"] = rep.min_experiments_nonadjacent;
    j["stages"] = json::object();
    for (const auto& line : rep.stages)
        j["stages"][line.stage] = {{"count", line.count}, {"bound", line.bound_target}, {"max_size", line.max_size}};
    return j;
}

inline std::string report_to_table(const BoundsReport& rep) {
    std::ostringstream out;
    out << "instance: n=" << rep.n << "  skeleton max degree=" << rep.skeleton_max_degree << "\n";
    out << "chi(obs, greedy)=" << rep.chi_obs_greedy << "  sum zeta=" << rep.sum_zeta << "  |T_top|="
        << rep.top_prefix_nodes << "\n";
    out << "cc(component graph)=" << rep.cc_value << (rep.cc_exact ? " (exact)" : " (greedy)")
        << "  chi_s(skeleton)=" << rep.chi_s_value << (rep.chi_s_exact ? " (exact)" : " (greedy)") << "\n";
    out << "lower bounds: directed max|I| >= " << rep.min_experiment_size_directed << ", directed count >= "
        << rep.min_experiments_directed << ", non-adjacent max|I| >= " << rep.min_experiment_size_nonadjacent
        << ", non-adjacent count >= " << rep.min_experiments_nonadjacent << "\n";
    out << std::left << std::setw(8) << "stage" << std::right << std::setw(8) << "count" << std::setw(8) << "bound"
        << std::setw(10) << "max|I|" << "\n";
    for (const auto& line : rep.stages)
        out << std::left << std::setw(8) << line.stage << std::right << std::setw(8) << line.count << std::setw(8)
            << line.bound_target << std::setw(10) << line.max_size << "\n";
    return out.str();
}

}  // namespace dmgx
