#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dmgx/graph.hpp"
#include "dmgx/separation.hpp"

namespace dmgx {

enum class Stage { Observational, Ancestry, DirectedEdges, NonAdjacent, Adjacent };

inline const char* stage_tag(Stage s) {
    switch (s) {
        case Stage::Observational: return "0";
        case Stage::Ancestry: return "1.1";
        case Stage::DirectedEdges: return "1.2";
        case Stage::NonAdjacent: return "2.1";
        case Stage::Adjacent: return "2.2";
    }
    return "?";
}

inline std::vector<int> normalize_targets(std::vector<int> targets) {
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    return targets;
}

struct ExperimentRecord {
    std::vector<int> targets;  // sorted, deduplicated
    Stage stage;
    long query_count = 0;
};

/// Append-only record of performed experiments. An intervention set is
/// registered once per stage even if queried many times; the per-stage count
/// of distinct sets is the metric compared against the design-size bounds.
class ExperimentLog {
public:
    using Handle = int;

    Handle register_experiment(std::vector<int> targets, Stage stage) {
        auto key = std::make_pair(stage, normalize_targets(std::move(targets)));
        auto it = index_.find(key);
        if (it != index_.end()) return it->second;
        Handle h = static_cast<Handle>(records_.size());
        records_.push_back({key.second, stage, 0});
        index_.emplace(std::move(key), h);
        return h;
    }

    bool is_registered(const std::vector<int>& targets) const {
        auto norm = normalize_targets(targets);
        for (const auto& r : records_)
            if (r.targets == norm) return true;
        return false;
    }

    void count_query(Handle h) { records_.at(static_cast<size_t>(h)).query_count++; }

    const std::vector<ExperimentRecord>& records() const { return records_; }

    const ExperimentRecord& record(Handle h) const { return records_.at(static_cast<size_t>(h)); }

    int stage_count(Stage s) const {
        int c = 0;
        for (const auto& r : records_)
            if (r.stage == s) ++c;
        return c;
    }

    int stage_max_size(Stage s) const {
        int m = 0;
        for (const auto& r : records_)
            if (r.stage == s) m = std::max<int>(m, static_cast<int>(r.targets.size()));
        return m;
    }

    int max_size() const {
        int m = 0;
        for (const auto& r : records_) m = std::max<int>(m, static_cast<int>(r.targets.size()));
        return m;
    }

    /// Number of distinct intervention sets across all stages.
    int total_distinct_experiments() const {
        std::vector<std::vector<int>> seen;
        for (const auto& r : records_)
            if (std::find(seen.begin(), seen.end(), r.targets) == seen.end()) seen.push_back(r.targets);
        return static_cast<int>(seen.size());
    }

private:
    std::vector<ExperimentRecord> records_;
    std::map<std::pair<Stage, std::vector<int>>, Handle> index_;
};

/// Structural floor on the experiment-size bound M: no bounded design can
/// work below max(|Pa({X,Y})| over all pairs, top-prefix size plus largest
/// top-layer SCC minus one).
inline int bounded_size_floor(const Dmg& g) {
    int floor_val = 0;
    for (int u = 0; u < g.node_count(); ++u)
        for (int v = u + 1; v < g.node_count(); ++v)
            floor_val = std::max<int>(floor_val, static_cast<int>(g.parents_of_set({u, v}).size()));
    SccLayering lay = scc_layering(g);
    if (lay.layer_count() > 0) {
        int top = lay.layer_count() - 1;
        floor_val = std::max(floor_val, lay.node_count_before(top) + lay.max_scc_size(top) - 1);
    }
    return floor_val;
}

/// Stand-in for the interventional distributions of a ground-truth graph:
/// answers conditional-independence and do-see queries graphically under the
/// configured scenario and meters experiment usage. The truth is private;
/// callers learn about it only through queries (plus the sanctioned
/// trusted-mode observational shortcut).
class InterventionalOracle {
public:
    using Handle = ExperimentLog::Handle;

    InterventionalOracle(Dmg truth, Scenario scenario) : truth_(std::move(truth)), scenario_(scenario) {}

    int node_count() const { return truth_.node_count(); }
    Scenario scenario() const { return scenario_; }
    const ExperimentLog& log() const { return log_; }

    Handle register_experiment(const std::vector<int>& targets, Stage stage) {
        for (int v : targets)
            if (v < 0 || v >= truth_.node_count()) throw std::out_of_range("register_experiment: target out of range");
        return log_.register_experiment(targets, stage);
    }

    /// Dependence of X and Y given Z under the experiment held by `h`.
    bool ci_query(Handle h, int x, int y, const std::vector<int>& z) {
        const auto& rec = log_.record(h);
        log_.count_query(h);
        Dmg cut = intervene(truth_, rec.targets);
        return !is_r_separated(cut, x, y, normalize_targets(z), scenario_);
    }

    /// Same, addressed by target set; the set must have been registered.
    bool ci_query(const std::vector<int>& targets, int x, int y, const std::vector<int>& z) {
        return ci_query(find_registered(targets), x, y, z);
    }

    /// Do-see test for a directed pair (X,Y): compares the conditional of Y
    /// given X under do(I) with the conditional of Y under do(I' = I ∪ {X})
    /// as the two experiments prescribe. Graphically the answer is membership
    /// of [X,Y] in the bidirected set when (Y,X) is absent, and an
    /// uninformative constant `true` when both directions are present.
    bool do_see_query(Handle h, Handle h_prime, int x, int y) {
        const auto& rec = log_.record(h);
        const auto& rec_p = log_.record(h_prime);
        check_do_see(rec.targets, rec_p.targets, x, y);
        log_.count_query(h);
        log_.count_query(h_prime);
        if (truth_.has_directed(y, x)) return true;
        return truth_.has_bidirected(x, y);
    }

    bool do_see_query(const std::vector<int>& targets, const std::vector<int>& targets_prime, int x, int y) {
        return do_see_query(find_registered(targets), find_registered(targets_prime), x, y);
    }

    /// Whether M clears the structural floor for bounded designs.
    bool bound_feasible(int m) const { return m >= bounded_size_floor(truth_); }

    /// Trusted-mode shortcut for the observational stage: computes the
    /// observational graph directly from the truth. Registers the null
    /// experiment so usage is still metered.
    UGraph observational_shortcut() {
        Handle h = log_.register_experiment({}, Stage::Observational);
        log_.count_query(h);
        return observational_graph(truth_, scenario_);
    }

private:
    Handle find_registered(const std::vector<int>& targets) const {
        auto norm = normalize_targets(targets);
        for (int h = static_cast<int>(log_.records().size()) - 1; h >= 0; --h)
            if (log_.records()[static_cast<size_t>(h)].targets == norm) return h;
        throw std::invalid_argument("oracle query on unregistered experiment");
    }

    void check_do_see(const std::vector<int>& i_set, const std::vector<int>& i_prime, int x, int y) const {
        if (x < 0 || x >= truth_.node_count() || y < 0 || y >= truth_.node_count() || x == y)
            throw std::invalid_argument("do_see_query: bad endpoints");
        if (!truth_.has_directed(x, y))
            throw std::invalid_argument("do_see_query: (X,Y) is not a directed edge of the truth");
        auto in = [](const std::vector<int>& s, int v) { return detail::contains_sorted(s, v); };
        std::vector<int> pa = truth_.parents_of_set({x, y});
        for (int p : pa) {
            if (p != x && p != y && !in(i_set, p))
                throw std::invalid_argument("do_see_query: I misses a parent of {X,Y}");
            if (p != y && !in(i_prime, p))
                throw std::invalid_argument("do_see_query: I' misses a parent of {X,Y}");
        }
        if (in(i_set, x) || in(i_set, y)) throw std::invalid_argument("do_see_query: I must exclude X and Y");
        if (!in(i_prime, x)) throw std::invalid_argument("do_see_query: I' must contain X");
        if (in(i_prime, y)) throw std::invalid_argument("do_see_query: I' must exclude Y");
    }

    Dmg truth_;
    Scenario scenario_;
    ExperimentLog log_;
};

}  // namespace dmgx
