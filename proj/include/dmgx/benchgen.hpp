#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dmgx/graph.hpp"
#include "dmgx/oracle.hpp"
#include "dmgx/pipeline.hpp"
#include "dmgx/rand.hpp"
#include "dmgx/separation.hpp"
#include "dmgx/sepsys.hpp"

namespace dmgx {

struct GenSpec {
    int n = 0;
    double p_directed = 0.0;
    double p_bidirected = 0.0;
    int force_cycles = 0;  // extra directed cycles injected on top
    std::uint64_t seed = 0;
};

/// Seeded random DMG: each ordered pair draws a directed edge, each unordered
/// pair a bidirected edge, then optional extra directed cycles are injected.
inline Dmg random_dmg(const GenSpec& spec) {
    if (spec.n < 0) throw std::invalid_argument("random_dmg: negative node count");
    if (spec.p_directed < 0 || spec.p_directed > 1 || spec.p_bidirected < 0 || spec.p_bidirected > 1)
        throw std::invalid_argument("random_dmg: probabilities must lie in [0,1]");
    Rng rng(spec.seed);
    Dmg g(spec.n);
    for (int u = 0; u < spec.n; ++u)
        for (int v = 0; v < spec.n; ++v)
            if (u != v && rng.flip(spec.p_directed)) g.add_directed(u, v);
    for (int u = 0; u < spec.n; ++u)
        for (int v = u + 1; v < spec.n; ++v)
            if (rng.flip(spec.p_bidirected)) g.add_bidirected(u, v);
    for (int c = 0; c < spec.force_cycles && spec.n >= 2; ++c) {
        int len = 2 + rng.next_below(std::min(spec.n, 4) - 1);
        std::vector<int> nodes;
        while (static_cast<int>(nodes.size()) < len) {
            int v = rng.next_below(spec.n);
            if (std::find(nodes.begin(), nodes.end(), v) == nodes.end()) nodes.push_back(v);
        }
        for (size_t i = 0; i < nodes.size(); ++i) g.add_directed(nodes[i], nodes[(i + 1) % nodes.size()]);
    }
    return g;
}

/// Hard layered instance: complete bidirectional digraph plus full
/// confounding inside every SCC, and every earlier-layer node points at (and
/// confounds) every later-layer node. Layer sizes follow the argument; the
/// first layer must hold exactly one SCC.
inline Dmg dense_layered_dmg(const std::vector<std::vector<int>>& layer_scc_sizes) {
    if (layer_scc_sizes.empty()) throw std::invalid_argument("dense_layered_dmg: no layers");
    if (layer_scc_sizes.front().size() != 1)
        throw std::invalid_argument("dense_layered_dmg: first layer must hold exactly one SCC");
    int n = 0;
    for (const auto& layer : layer_scc_sizes) {
        if (layer.empty()) throw std::invalid_argument("dense_layered_dmg: empty layer");
        for (int s : layer) {
            if (s <= 0) throw std::invalid_argument("dense_layered_dmg: SCC sizes must be positive");
            n += s;
        }
    }
    Dmg g(n);
    std::vector<std::vector<int>> layer_nodes;
    int next = 0;
    for (const auto& layer : layer_scc_sizes) {
        std::vector<int> nodes_here;
        for (int s : layer) {
            std::vector<int> scc;
            for (int i = 0; i < s; ++i) scc.push_back(next++);
            for (size_t i = 0; i < scc.size(); ++i)
                for (size_t j = i + 1; j < scc.size(); ++j) {
                    g.add_directed(scc[i], scc[j]);
                    g.add_directed(scc[j], scc[i]);
                    g.add_bidirected(scc[i], scc[j]);
                }
            nodes_here.insert(nodes_here.end(), scc.begin(), scc.end());
        }
        for (const auto& earlier : layer_nodes)
            for (int y : earlier)
                for (int x : nodes_here) {
                    g.add_directed(y, x);
                    g.add_bidirected(y, x);
                }
        layer_nodes.push_back(std::move(nodes_here));
    }
    return g;
}

/// Adds a bidirected edge between every pair; the directed part is untouched.
inline Dmg fully_confounded(const Dmg& g) {
    Dmg out(g.node_count());
    for (auto [u, v] : g.directed_edges()) out.add_directed(u, v);
    for (int u = 0; u < g.node_count(); ++u)
        for (int v = u + 1; v < g.node_count(); ++v) out.add_bidirected(u, v);
    return out;
}

struct EquivalenceWitness {
    size_t experiment_index = 0;
    int x = 0;
    int y = 0;
    std::vector<int> z;
};

/// Brute-force equality of the r-independence models of two graphs under
/// every listed experiment: all pairs, all conditioning sets, both intervened
/// graphs. Conditioning sets are scanned by ascending cardinality and the
/// first disagreement is reported as a witness.
inline bool markov_equivalent(const Dmg& g1, const Dmg& g2, const std::vector<std::vector<int>>& experiments,
                              Scenario sc, EquivalenceWitness* witness = nullptr, int node_limit = 7) {
    if (g1.node_count() != g2.node_count())
        throw std::invalid_argument("markov_equivalent: node counts differ");
    const int n = g1.node_count();
    if (n > node_limit) throw std::runtime_error("markov_equivalent: graph exceeds node limit");
    for (size_t e = 0; e < experiments.size(); ++e) {
        Dmg cut1 = intervene(g1, experiments[e]);
        Dmg cut2 = intervene(g2, experiments[e]);
        for (int x = 0; x < n; ++x) {
            for (int y = x + 1; y < n; ++y) {
                std::vector<int> others;
                for (int w = 0; w < n; ++w)
                    if (w != x && w != y) others.push_back(w);
                std::vector<std::uint32_t> masks;
                for (std::uint32_t m = 0; m < (1u << others.size()); ++m) masks.push_back(m);
                std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
                    return std::popcount(a) < std::popcount(b);
                });
                for (std::uint32_t mask : masks) {
                    std::vector<int> z;
                    for (size_t b = 0; b < others.size(); ++b)
                        if (mask & (1u << b)) z.push_back(others[b]);
                    if (is_r_separated(cut1, x, y, z, sc) != is_r_separated(cut2, x, y, z, sc)) {
                        if (witness) *witness = {e, x, y, z};
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

struct StageLine {
    std::string stage;
    int count = 0;
    int bound_target = 0;
    int max_size = 0;
};

/// Structural quantities and lower-bound thresholds of an instance next to
/// the per-stage usage of a pipeline run.
struct BoundsReport {
    int n = 0;
    int chi_obs_greedy = 0;             // greedy chromatic number of the observational graph
    std::vector<int> zeta_per_layer;    // largest SCC size per layer
    int sum_zeta = 0;
    int top_prefix_nodes = 0;           // |T_top|_n
    int cc_value = 0;                   // edge clique cover number of the component graph
    bool cc_exact = false;
    int chi_s_value = 0;                // strong chromatic index of the skeleton
    bool chi_s_exact = false;
    int skeleton_max_degree = 0;
    int min_experiment_size_directed = 0;     // |T_top|_n + zeta_top - 1
    int min_experiments_directed = 0;         // sum_k zeta_k
    int min_experiment_size_nonadjacent = 0;  // max |Pa({X,Y})| over confounded non-adjacent pairs
    int min_experiments_nonadjacent = 0;      // cc of the component graph
    std::vector<StageLine> stages;
};

inline BoundsReport bounds_report(const Dmg& g, const PipelineResult& result) {
    BoundsReport rep;
    rep.n = g.node_count();
    UGraph obs = observational_graph(g, result.scenario);
    rep.chi_obs_greedy = greedy_vertex_coloring(obs).color_count;
    SccLayering lay = scc_layering(g);
    for (int k = 0; k < lay.layer_count(); ++k) rep.zeta_per_layer.push_back(lay.max_scc_size(k));
    rep.sum_zeta = lay.sum_max_scc_sizes();
    if (lay.layer_count() > 0) {
        const int top = lay.layer_count() - 1;
        rep.top_prefix_nodes = lay.node_count_before(top);
        rep.min_experiment_size_directed = rep.top_prefix_nodes + lay.max_scc_size(top) - 1;
    }
    rep.min_experiments_directed = rep.sum_zeta;

    UGraph uc = component_graph(g);
    try {
        rep.cc_value = static_cast<int>(edge_clique_cover_exact(uc).cliques.size());
        rep.cc_exact = true;
    } catch (const std::runtime_error&) {
        rep.cc_value = static_cast<int>(edge_clique_cover_greedy(uc).cliques.size());
        rep.cc_exact = false;
    }
    rep.min_experiments_nonadjacent = rep.cc_value;

    UGraph skel = directed_skeleton(g);
    rep.skeleton_max_degree = skel.max_degree();
    try {
        rep.chi_s_value = strong_edge_coloring_exact(skel).class_count();
        rep.chi_s_exact = true;
    } catch (const std::runtime_error&) {
        rep.chi_s_value = strong_edge_coloring_greedy(skel).class_count();
        rep.chi_s_exact = false;
    }

    for (auto [u, v] : classify_bidirected(g).non_adjacent)
        rep.min_experiment_size_nonadjacent =
            std::max<int>(rep.min_experiment_size_nonadjacent, static_cast<int>(g.parents_of_set({u, v}).size()));

    for (const auto& [tag, st] : result.stages) rep.stages.push_back({tag, st.count, st.bound_target, st.max_size});
    return rep;
}

}  // namespace dmgx
