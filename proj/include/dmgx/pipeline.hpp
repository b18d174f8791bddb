#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dmgx/graph.hpp"
#include "dmgx/oracle.hpp"
#include "dmgx/separation.hpp"
#include "dmgx/sepsys.hpp"

namespace dmgx {

enum class CoverStrategy { Exact, Greedy, Randomized };
enum class StrongColoringStrategy { Exact, Greedy };
enum class Step0Mode { Auto, Faithful, TrustedOracle };

struct PipelineConfig {
    Scenario scenario = Scenario::SigmaSep;
    std::optional<int> bound;  // experiment-size bound M; empty = unbounded
    CoverStrategy cover = CoverStrategy::Exact;
    std::uint64_t cover_seed = 0;
    StrongColoringStrategy strong_coloring = StrongColoringStrategy::Exact;
    Step0Mode step0 = Step0Mode::Auto;
    int faithful_limit = 10;  // largest n for exhaustive-Z observational recovery
};

struct StageStats {
    int count = 0;
    int bound_target = 0;
    int max_size = 0;
};

struct PipelineResult {
    Dmg recovered;
    std::vector<std::pair<int, int>> undetermined;
    std::map<std::string, StageStats> stages;
    bool coverage_complete = true;
    Scenario scenario = Scenario::SigmaSep;
    std::optional<int> bound;
};

struct AncestryResult {
    Dmg hypothesis;  // directed graph with edges X -> learned descendants
    std::vector<std::vector<int>> descendant_sets;
    std::vector<std::vector<int>> sccs;
    int bound_target = 0;
};

struct NonAdjacentResult {
    std::vector<std::pair<int, int>> edges;
    bool coverage_complete = true;
    int bound_target = 0;
};

struct AdjacentResult {
    std::vector<std::pair<int, int>> single_adjacent;
    std::vector<std::pair<int, int>> undetermined;
    int bound_target = 0;
};

/// Learns the observational graph through the null experiment: a pair gets an
/// edge iff no conditioning set renders it independent. Faithful mode asks
/// the oracle about every subset exhaustively; trusted mode uses the oracle's
/// inducing-path shortcut.
inline UGraph step0_observational(InterventionalOracle& oracle, const PipelineConfig& config) {
    const int n = oracle.node_count();
    Step0Mode mode = config.step0;
    if (mode == Step0Mode::Auto)
        mode = n <= config.faithful_limit ? Step0Mode::Faithful : Step0Mode::TrustedOracle;
    if (mode == Step0Mode::TrustedOracle) return oracle.observational_shortcut();
    if (n > config.faithful_limit)
        throw std::invalid_argument("step0_observational: faithful mode exceeds its node guard");

    auto h = oracle.register_experiment({}, Stage::Observational);
    UGraph out(n);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            std::vector<int> others;
            for (int w = 0; w < n; ++w)
                if (w != u && w != v) others.push_back(w);
            bool separable = false;
            for (std::uint32_t mask = 0; mask < (1u << others.size()) && !separable; ++mask) {
                std::vector<int> z;
                for (size_t b = 0; b < others.size(); ++b)
                    if (mask & (1u << b)) z.push_back(others[b]);
                if (!oracle.ci_query(h, u, v, z)) separable = true;
            }
            if (!separable) out.add_edge(u, v);
        }
    }
    return out;
}

/// Learns every node's descendant set and the SCCs. Unbounded mode colors the
/// observational graph and uses a colored separating system, restricting
/// candidates to observational neighbors; bounded mode uses an
/// (n,M)-separating system over all candidates.
inline AncestryResult step11_learn_ancestry(InterventionalOracle& oracle, const UGraph* obs,
                                            const PipelineConfig& config) {
    const int n = oracle.node_count();
    SeparatingSystem sys{SystemKind::Colored, std::nullopt, {}, {}};
    int target = 0;
    if (config.bound) {
        sys = nm_separating_system(n, *config.bound);
        target = nm_system_target(n, *config.bound);
    } else {
        if (obs == nullptr) throw std::invalid_argument("step11_learn_ancestry: unbounded mode needs the observational graph");
        Coloring coloring = greedy_vertex_coloring(*obs);
        sys = colored_separating_system(coloring, n);
        int bits = 0;
        while ((1 << bits) < std::max(coloring.color_count, 1)) ++bits;
        target = 2 * bits;
    }
    std::vector<InterventionalOracle::Handle> handles;
    for (const auto& set : sys.sets) handles.push_back(oracle.register_experiment(set, Stage::Ancestry));

    AncestryResult out{Dmg(n), {}, {}, target};
    for (int x = 0; x < n; ++x) {
        std::vector<int> learned;
        for (size_t s = 0; s < sys.sets.size(); ++s) {
            if (!detail::contains_sorted(sys.sets[s], x)) continue;
            const std::vector<int>* candidates = nullptr;
            std::vector<int> everyone;
            if (config.bound) {
                for (int y = 0; y < n; ++y)
                    if (y != x) everyone.push_back(y);
                candidates = &everyone;
            } else {
                candidates = &obs->neighbors(x);
            }
            for (int y : *candidates)
                if (oracle.ci_query(handles[s], x, y, {})) detail::insert_sorted(learned, y);
        }
        for (int y : learned) out.hypothesis.add_directed(x, y);
    }
    for (int x = 0; x < n; ++x) out.descendant_sets.push_back(reachable(out.hypothesis, x, Direction::Descendants));
    out.sccs = scc_decompose(out.hypothesis);
    return out;
}

/// Learns the exact directed edge set using a layered-SCC separating system:
/// for each node, one designated experiment isolates it from all of its
/// possible parents and marginal dependence picks out the true ones.
inline Dmg step12_learn_directed(InterventionalOracle& oracle, const SccLayering& lay,
                                 const PipelineConfig& config) {
    const int n = oracle.node_count();
    SeparatingSystem sys = config.bound ? ancestral_separating_system_bounded(lay, *config.bound)
                                        : ancestral_separating_system(lay);
    std::vector<InterventionalOracle::Handle> handles;
    for (const auto& set : sys.sets) handles.push_back(oracle.register_experiment(set, Stage::DirectedEdges));

    Dmg dhat(n);
    for (int k = 0; k < lay.layer_count(); ++k) {
        const std::vector<int> before = lay.nodes_before(k);
        for (const auto& scc : lay.layers[static_cast<size_t>(k)]) {
            for (int x : scc) {
                std::vector<int> required = before;
                for (int v : scc)
                    if (v != x) detail::insert_sorted(required, v);
                int found = -1;
                for (size_t s = 0; s < sys.sets.size(); ++s) {
                    if (detail::contains_sorted(sys.sets[s], x)) continue;
                    bool covers = true;
                    for (int v : required)
                        if (!detail::contains_sorted(sys.sets[s], v)) {
                            covers = false;
                            break;
                        }
                    if (covers) {
                        found = static_cast<int>(s);
                        break;
                    }
                }
                if (found < 0) throw std::runtime_error("step12_learn_directed: separating-system lookup failed");
                for (int y : required)
                    if (oracle.ci_query(handles[static_cast<size_t>(found)], x, y, {})) dhat.add_directed(y, x);
            }
        }
    }
    return dhat;
}

/// Learns the bidirected edges between pairs with no directed edge. With an
/// exact or greedy cover every such pair is covered; the randomized cover may
/// miss pairs, which is reported through `coverage_complete`.
inline NonAdjacentResult step21_learn_nonadjacent(InterventionalOracle& oracle, const Dmg& dhat,
                                                  const PipelineConfig& config) {
    const int n = oracle.node_count();
    UGraph uc = component_graph(dhat);
    CliqueCover cover;
    int target = 0;
    switch (config.cover) {
        case CoverStrategy::Exact:
            cover = edge_clique_cover_exact(uc);
            target = static_cast<int>(cover.cliques.size());
            break;
        case CoverStrategy::Greedy:
            cover = edge_clique_cover_greedy(uc);
            target = static_cast<int>(cover.cliques.size());
            break;
        case CoverStrategy::Randomized:
            cover = edge_clique_cover_randomized(dhat, config.cover_seed);
            target = static_cast<int>(randomized_cover_rounds(n, directed_skeleton(dhat).max_degree()));
            break;
    }
    SeparatingSystem sys = config.bound ? nonadjacent_separating_system_bounded(dhat, cover, *config.bound)
                                        : nonadjacent_separating_system(dhat, cover);
    if (config.bound) target = bounded_nonadjacent_target(dhat, cover, *config.bound, n);
    std::vector<InterventionalOracle::Handle> handles;
    for (const auto& set : sys.sets) handles.push_back(oracle.register_experiment(set, Stage::NonAdjacent));

    NonAdjacentResult out;
    out.bound_target = target;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (dhat.has_directed(u, v) || dhat.has_directed(v, u)) continue;
            std::vector<int> pa = dhat.parents_of_set({u, v});
            int found = -1;
            for (size_t s = 0; s < sys.sets.size(); ++s) {
                if (detail::contains_sorted(sys.sets[s], u) || detail::contains_sorted(sys.sets[s], v)) continue;
                bool covers = true;
                for (int p : pa)
                    if (!detail::contains_sorted(sys.sets[s], p)) {
                        covers = false;
                        break;
                    }
                if (covers) {
                    found = static_cast<int>(s);
                    break;
                }
            }
            if (found < 0) {
                if (config.cover == CoverStrategy::Randomized) {
                    out.coverage_complete = false;
                    continue;
                }
                throw std::runtime_error("step21_learn_nonadjacent: separating-system lookup failed");
            }
            if (oracle.ci_query(handles[static_cast<size_t>(found)], u, v, pa)) out.edges.emplace_back(u, v);
        }
    }
    return out;
}

/// Learns the bidirected edges on singly-directed pairs through do-see tests;
/// doubly-directed pairs are reported undetermined.
inline AdjacentResult step22_learn_adjacent(InterventionalOracle& oracle, const Dmg& dhat,
                                            const PipelineConfig& config) {
    const int n = oracle.node_count();
    UGraph skel = directed_skeleton(dhat);
    StrongEdgeColoring sec = config.strong_coloring == StrongColoringStrategy::Exact
                                 ? strong_edge_coloring_exact(skel)
                                 : strong_edge_coloring_greedy(skel);
    SeparatingSystem sys = config.bound ? adjacent_separating_system_bounded(dhat, sec, *config.bound)
                                        : adjacent_separating_system(dhat, sec);
    AdjacentResult out;
    if (config.bound)
        out.bound_target = bounded_adjacent_target(dhat, sec, *config.bound, n);
    else if (config.strong_coloring == StrongColoringStrategy::Exact)
        out.bound_target = 2 * sec.class_count();
    else {
        const int d = skel.max_degree();
        out.bound_target = 4 * d * d;
    }
    std::vector<std::pair<InterventionalOracle::Handle, InterventionalOracle::Handle>> handles;
    for (const auto& [i_set, i_prime] : sys.pair_sets)
        handles.emplace_back(oracle.register_experiment(i_set, Stage::Adjacent),
                             oracle.register_experiment(i_prime, Stage::Adjacent));

    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (x == y || !dhat.has_directed(x, y)) continue;
            if (dhat.has_directed(y, x)) {
                if (x < y) out.undetermined.emplace_back(x, y);
                continue;
            }
            std::vector<int> pa = dhat.parents_of_set({x, y});
            int found = -1;
            for (size_t s = 0; s < sys.pair_sets.size(); ++s) {
                const auto& [i_set, i_prime] = sys.pair_sets[s];
                bool ok = !detail::contains_sorted(i_set, x) && !detail::contains_sorted(i_set, y) &&
                          detail::contains_sorted(i_prime, x) && !detail::contains_sorted(i_prime, y);
                for (int p : pa) {
                    if (!ok) break;
                    if (p != x && p != y && !detail::contains_sorted(i_set, p)) ok = false;
                    if (p != y && !detail::contains_sorted(i_prime, p)) ok = false;
                }
                if (ok) {
                    found = static_cast<int>(s);
                    break;
                }
            }
            if (found < 0) throw std::runtime_error("step22_learn_adjacent: separating-system lookup failed");
            if (oracle.do_see_query(handles[static_cast<size_t>(found)].first,
                                    handles[static_cast<size_t>(found)].second, x, y)) {
                out.single_adjacent.emplace_back(std::min(x, y), std::max(x, y));
            }
        }
    }
    std::sort(out.single_adjacent.begin(), out.single_adjacent.end());
    std::sort(out.undetermined.begin(), out.undetermined.end());
    return out;
}

/// Runs the full discovery procedure and assembles the recovered graph
/// (directed edges plus the identifiable bidirected edges) together with
/// per-stage experiment statistics.
inline PipelineResult discover(InterventionalOracle& oracle, const PipelineConfig& config) {
    const int n = oracle.node_count();
    if (config.bound) {
        if (*config.bound < 1) throw std::invalid_argument("discover: M must be positive");
        if (!oracle.bound_feasible(*config.bound))
            throw std::invalid_argument("discover: M is below the structural floor for this instance");
    }

    PipelineResult result{Dmg(n), {}, {}, true, config.scenario, config.bound};

    std::optional<UGraph> obs;
    if (!config.bound) obs = step0_observational(oracle, config);

    AncestryResult anc = step11_learn_ancestry(oracle, obs ? &*obs : nullptr, config);
    SccLayering lay = scc_layering(anc.hypothesis);

    Dmg dhat = step12_learn_directed(oracle, lay, config);
    const int step12_target =
        config.bound ? bounded_ancestral_target(lay, *config.bound, n) : lay.sum_max_scc_sizes();

    NonAdjacentResult non_adj = step21_learn_nonadjacent(oracle, dhat, config);
    AdjacentResult adj = step22_learn_adjacent(oracle, dhat, config);

    for (auto [u, v] : dhat.directed_edges()) result.recovered.add_directed(u, v);
    for (auto [u, v] : non_adj.edges) result.recovered.add_bidirected(u, v);
    for (auto [u, v] : adj.single_adjacent) result.recovered.add_bidirected(u, v);
    result.undetermined = adj.undetermined;
    result.coverage_complete = non_adj.coverage_complete;

    const ExperimentLog& log = oracle.log();
    auto stat = [&](Stage s, int target) {
        return StageStats{log.stage_count(s), target, log.stage_max_size(s)};
    };
    if (!config.bound) result.stages["0"] = stat(Stage::Observational, 1);
    result.stages["1.1"] = stat(Stage::Ancestry, anc.bound_target);
    result.stages["1.2"] = stat(Stage::DirectedEdges, step12_target);
    result.stages["2.1"] = stat(Stage::NonAdjacent, non_adj.bound_target);
    result.stages["2.2"] = stat(Stage::Adjacent, adj.bound_target);

    if (config.bound && log.max_size() > *config.bound)
        throw std::runtime_error("discover: an experiment exceeded the size bound M");
    return result;
}

}  // namespace dmgx
