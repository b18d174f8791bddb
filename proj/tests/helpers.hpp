#pragma once

#include <utility>
#include <vector>

#include "dmgx/benchgen.hpp"
#include "dmgx/graph.hpp"

namespace tests {

using dmgx::Dmg;

using Pairs = std::vector<std::pair<int, int>>;

inline Dmg make_dmg(int n, const Pairs& directed, const Pairs& bidirected = {}) {
    return Dmg(n, directed, bidirected);
}

// Five nodes: 0 -> 1 -> 2 <-> 3 <- 4. The pair (0,4) is blocked by {} under
// both criteria, and by {2,3} (the whole two-cycle) only under d: the path
// entering the cycle at 2 and leaving 3 backwards is sigma-open because both
// conditioned non-colliders keep their tails inside the SCC.
inline Dmg chain_with_cycle() {
    return make_dmg(5, {{0, 1}, {1, 2}, {2, 3}, {3, 2}, {4, 3}});
}

// Four nodes: 0 -> 2, 2 -> 1, 2 -> 3, [1,2]. The path 0 -> 2 <-> 1 is an
// inducing path for the pair (0,1) because 2 is an ancestor of 1.
inline Dmg small_confounded() {
    return make_dmg(4, {{0, 2}, {2, 1}, {2, 3}}, {{1, 2}});
}

// Five nodes with SCC {1,2,3}: [0,2], 2 <-> 3, 1 <-> 3 double edges, 4 -> 3.
// The pair (0,1) is inseparable only under sigma.
inline Dmg cyclic_confounded() {
    return make_dmg(5, {{2, 3}, {3, 2}, {1, 3}, {3, 1}, {4, 3}}, {{0, 2}});
}

// Seven nodes: root two-cycle {0,1}, 2 below it, 3 below 2, and the
// three-cycle {4,5,6} below 2. Layers: [{0,1}], [{2}], [{3},{4,5,6}].
inline Dmg layered_seven() {
    return make_dmg(7, {{0, 1}, {1, 0}, {0, 2}, {2, 3}, {2, 4}, {4, 5}, {5, 6}, {6, 4}});
}

// Six-node DAG whose component graph has minimum edge clique cover
// {{0,5},{0,4},{1,4},{1,2,3,5}} of size 4 and whose skeleton has strong
// chromatic index 5.
inline Dmg dag_six() {
    return make_dmg(6, {{0, 1}, {0, 2}, {0, 3}, {2, 4}, {3, 4}, {4, 5}});
}

inline std::vector<Dmg> random_corpus(int count, int min_n, int max_n, std::uint64_t seed0 = 1) {
    std::vector<Dmg> out;
    const double p_dir[] = {0.15, 0.25, 0.35};
    const double p_bi[] = {0.1, 0.2, 0.3};
    std::uint64_t seed = seed0;
    while (static_cast<int>(out.size()) < count) {
        for (int n = min_n; n <= max_n && static_cast<int>(out.size()) < count; ++n) {
            dmgx::GenSpec spec;
            spec.n = n;
            spec.p_directed = p_dir[seed % 3];
            spec.p_bidirected = p_bi[(seed / 3) % 3];
            spec.seed = seed;
            out.push_back(dmgx::random_dmg(spec));
            ++seed;
        }
    }
    return out;
}

inline Dmg drop_back_edges(const Dmg& g) {  // keeps u->v only for u<v: a DAG
    Dmg out(g.node_count());
    for (auto [u, v] : g.directed_edges())
        if (u < v) out.add_directed(u, v);
    for (auto [u, v] : g.bidirected_edges()) out.add_bidirected(u, v);
    return out;
}

inline std::vector<std::vector<int>> subsets_of(const std::vector<int>& pool) {
    std::vector<std::vector<int>> out;
    for (std::uint32_t mask = 0; mask < (1u << pool.size()); ++mask) {
        std::vector<int> s;
        for (size_t b = 0; b < pool.size(); ++b)
            if (mask & (1u << b)) s.push_back(pool[b]);
        out.push_back(std::move(s));
    }
    return out;
}

inline std::vector<int> others(int n, int x, int y) {
    std::vector<int> out;
    for (int w = 0; w < n; ++w)
        if (w != x && w != y) out.push_back(w);
    return out;
}

}  // namespace tests
