#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dmgx/graph.hpp"
#include "dmgx/rand.hpp"

namespace dmgx {

enum class SystemKind { Colored, NM, SccLayered, NonAdjacent, Adjacent };

inline const char* system_kind_tag(SystemKind k) {
    switch (k) {
        case SystemKind::Colored: return "colored";
        case SystemKind::NM: return "nm";
        case SystemKind::SccLayered: return "scc_anc";
        case SystemKind::NonAdjacent: return "non_adjacent";
        case SystemKind::Adjacent: return "adjacent";
    }
    return "?";
}

/// An ordered family of intervention sets. Adjacent-kind systems carry
/// (I, I') pairs instead of plain sets. When `bound` is present every member
/// set has size <= bound.
struct SeparatingSystem {
    SystemKind kind;
    std::optional<int> bound;
    std::vector<std::vector<int>> sets;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> pair_sets;
};

// ---------------------------------------------------------------------------
// Vertex coloring and the colored separating system
// ---------------------------------------------------------------------------

struct Coloring {
    std::vector<int> color;  // node -> color id, ids dense from 0
    int color_count = 0;
};

/// Ascending node order, smallest free color; proper with at most
/// max_degree+1 colors.
inline Coloring greedy_vertex_coloring(const UGraph& u) {
    Coloring out;
    out.color.assign(static_cast<size_t>(u.node_count()), -1);
    for (int v = 0; v < u.node_count(); ++v) {
        std::vector<char> taken(static_cast<size_t>(u.max_degree()) + 2, 0);
        for (int w : u.neighbors(v))
            if (out.color[w] >= 0 && out.color[w] < static_cast<int>(taken.size())) taken[out.color[w]] = 1;
        int c = 0;
        while (taken[c]) ++c;
        out.color[v] = c;
        out.color_count = std::max(out.color_count, c + 1);
    }
    if (u.node_count() == 0) out.color_count = 0;
    return out;
}

/// For every ordered pair of differently colored nodes, some set contains the
/// first but not the second. Each color gets a distinct binary codeword of
/// length ceil(log2(chi)); per bit the 1-class and the 0-class are emitted,
/// so the family has at most 2*ceil(log2(chi)) sets.
inline SeparatingSystem colored_separating_system(const Coloring& coloring, int n) {
    if (static_cast<int>(coloring.color.size()) != n)
        throw std::invalid_argument("colored_separating_system: coloring size mismatch");
    SeparatingSystem sys{SystemKind::Colored, std::nullopt, {}, {}};
    int chi = coloring.color_count;
    if (chi <= 1) return sys;  // nothing to separate
    int bits = 0;
    while ((1 << bits) < chi) ++bits;
    for (int b = 0; b < bits; ++b) {
        std::vector<int> ones, zeros;
        for (int v = 0; v < n; ++v)
            ((coloring.color[v] >> b) & 1 ? ones : zeros).push_back(v);
        if (!ones.empty()) sys.sets.push_back(std::move(ones));
        if (!zeros.empty()) sys.sets.push_back(std::move(zeros));
    }
    return sys;
}

// ---------------------------------------------------------------------------
// (n,M)-separating system
// ---------------------------------------------------------------------------

namespace detail {

// Balanced digit code: digit c of x is the prefix sum (mod a) of the base-a
// digits of x up to position c. Labels stay distinct and within any aligned
// block of a consecutive integers each position runs through all a values
// once, so every (position, value) class holds at most ceil(n/a) nodes.
inline int balanced_digit(int x, int position, int a) {
    int sum = 0;
    int rest = x;
    for (int j = 0; j <= position; ++j) {
        sum += rest % a;
        rest /= a;
    }
    return sum % a;
}

}  // namespace detail

/// Separation of every ordered pair with all sets of size <= M; at most
/// ceil(n/M)*ceil(log_{ceil(n/M)} n) sets. ceil(n/M) is clamped to >= 2 so
/// the construction stays defined when M >= n.
inline SeparatingSystem nm_separating_system(int n, int m_bound) {
    if (m_bound < 1) throw std::invalid_argument("nm_separating_system: M must be positive");
    SeparatingSystem sys{SystemKind::NM, m_bound, {}, {}};
    if (n <= 1) return sys;
    const int a = std::max(2, (n + m_bound - 1) / m_bound);
    int digits = 0;
    long long cap = 1;
    while (cap < n) {
        cap *= a;
        ++digits;
    }
    for (int c = 0; c < digits; ++c) {
        std::vector<std::vector<int>> classes(static_cast<size_t>(a));
        for (int x = 0; x < n; ++x) classes[detail::balanced_digit(x, c, a)].push_back(x);
        for (auto& cls : classes)
            if (!cls.empty()) sys.sets.push_back(std::move(cls));
    }
    return sys;
}

/// Element-count target of the (n,M) construction.
inline int nm_system_target(int n, int m_bound) {
    if (n <= 1) return 0;
    const int a = std::max(2, (n + m_bound - 1) / m_bound);
    int digits = 0;
    long long cap = 1;
    while (cap < n) {
        cap *= a;
        ++digits;
    }
    return a * digits;
}

// ---------------------------------------------------------------------------
// Layered-SCC (ancestral) separating system
// ---------------------------------------------------------------------------

/// For every SCC S at layer k and every X in S there is a set containing all
/// earlier-layer nodes plus S minus X, and excluding X. One set per
/// (layer, within-SCC index): exactly sum_k max_scc_size(k) sets.
inline SeparatingSystem ancestral_separating_system(const SccLayering& lay) {
    SeparatingSystem sys{SystemKind::SccLayered, std::nullopt, {}, {}};
    for (int k = 0; k < lay.layer_count(); ++k) {
        const std::vector<int> before = lay.nodes_before(k);
        const int zeta = lay.max_scc_size(k);
        for (int i = 1; i <= zeta; ++i) {
            std::vector<int> set = before;
            for (const auto& scc : lay.layers[static_cast<size_t>(k)]) {
                if (static_cast<int>(scc.size()) < i) continue;
                for (int idx = 0; idx < static_cast<int>(scc.size()); ++idx)
                    if (idx != i - 1) detail::insert_sorted(set, scc[idx]);
            }
            sys.sets.push_back(std::move(set));
        }
    }
    return sys;
}

/// Bounded variant: layers below the top reuse the unbounded construction
/// (their sets are smaller than the top prefix, hence under M); the top
/// layer's SCCs are packed first-fit by decreasing size into groups whose
/// total weight sum(|S|-1) fits M minus the prefix size, and the per-index
/// construction runs per group with the prefix prepended. Duplicate sets are
/// dropped.
inline SeparatingSystem ancestral_separating_system_bounded(const SccLayering& lay, int m_bound) {
    SeparatingSystem sys{SystemKind::SccLayered, m_bound, {}, {}};
    if (lay.layer_count() == 0) return sys;
    const int top = lay.layer_count() - 1;
    const std::vector<int> prefix = lay.nodes_before(top);
    const int prefix_n = static_cast<int>(prefix.size());
    const int zeta_top = lay.max_scc_size(top);
    if (m_bound < prefix_n + zeta_top - 1)
        throw std::invalid_argument("ancestral_separating_system_bounded: M below the structural floor");

    for (int k = 0; k < top; ++k) {
        const std::vector<int> before = lay.nodes_before(k);
        for (int i = 1; i <= lay.max_scc_size(k); ++i) {
            std::vector<int> set = before;
            for (const auto& scc : lay.layers[static_cast<size_t>(k)]) {
                if (static_cast<int>(scc.size()) < i) continue;
                for (int idx = 0; idx < static_cast<int>(scc.size()); ++idx)
                    if (idx != i - 1) detail::insert_sorted(set, scc[idx]);
            }
            sys.sets.push_back(std::move(set));
        }
    }

    // pack top-layer SCCs: weight |S|-1, capacity M - |prefix|
    const int capacity = m_bound - prefix_n;
    std::vector<std::vector<int>> sccs = lay.layers[static_cast<size_t>(top)];
    std::stable_sort(sccs.begin(), sccs.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    std::vector<std::vector<std::vector<int>>> groups;
    std::vector<int> group_weight;
    for (auto& scc : sccs) {
        const int w = static_cast<int>(scc.size()) - 1;
        bool placed = false;
        for (size_t gi = 0; gi < groups.size(); ++gi) {
            if (group_weight[gi] + w <= capacity) {
                groups[gi].push_back(scc);
                group_weight[gi] += w;
                placed = true;
                break;
            }
        }
        if (!placed) {
            groups.push_back({scc});
            group_weight.push_back(w);
        }
    }
    for (const auto& group : groups) {
        int gmax = 0;
        for (const auto& scc : group) gmax = std::max<int>(gmax, static_cast<int>(scc.size()));
        for (int i = 1; i <= gmax; ++i) {
            std::vector<int> set = prefix;
            for (const auto& scc : group) {
                if (static_cast<int>(scc.size()) < i) continue;
                for (int idx = 0; idx < static_cast<int>(scc.size()); ++idx)
                    if (idx != i - 1) detail::insert_sorted(set, scc[idx]);
            }
            sys.sets.push_back(std::move(set));
        }
    }

    std::vector<std::vector<int>> dedup;
    for (auto& s : sys.sets)
        if (std::find(dedup.begin(), dedup.end(), s) == dedup.end()) dedup.push_back(std::move(s));
    sys.sets = std::move(dedup);
    return sys;
}

/// Element-count allowance of the bounded layered construction; the floor
/// term is clamped at zero (it goes negative when the top layer is a single
/// SCC).
inline int bounded_ancestral_target(const SccLayering& lay, int m_bound, int n) {
    if (lay.layer_count() == 0) return 0;
    const int top = lay.layer_count() - 1;
    const int prefix_n = lay.node_count_before(top);
    const int zeta = lay.max_scc_size(top);
    const int den = m_bound - prefix_n - zeta + 2;
    const int num = n - prefix_n - zeta - 1;
    int extra = 0;
    if (den > 0 && num > 0) extra = num / den;
    return lay.sum_max_scc_sizes() + zeta * extra;
}

// ---------------------------------------------------------------------------
// Edge clique covers
// ---------------------------------------------------------------------------

struct CliqueCover {
    std::vector<std::vector<int>> cliques;
};

/// Take an uncovered edge, extend it to a maximal clique preferring vertices
/// that cover the most still-uncovered edges. Always a valid cover.
inline CliqueCover edge_clique_cover_greedy(const UGraph& u) {
    CliqueCover out;
    auto edges = u.edges();
    std::map<std::pair<int, int>, bool> covered;
    for (auto e : edges) covered[e] = false;
    auto is_covered = [&](int a, int b) { return covered[{std::min(a, b), std::max(a, b)}]; };
    for (auto [a, b] : edges) {
        if (is_covered(a, b)) continue;
        std::vector<int> clique{a, b};
        std::vector<int> cand;
        for (int w : u.neighbors(a))
            if (w != b && u.has_edge(w, b)) cand.push_back(w);
        while (!cand.empty()) {
            int best = -1, best_gain = -1;
            for (int w : cand) {
                int gain = 0;
                for (int c : clique)
                    if (!is_covered(w, c)) ++gain;
                if (gain > best_gain) {
                    best_gain = gain;
                    best = w;
                }
            }
            clique.push_back(best);
            std::vector<int> next;
            for (int w : cand)
                if (w != best && u.has_edge(w, best)) next.push_back(w);
            cand = std::move(next);
        }
        std::sort(clique.begin(), clique.end());
        for (size_t i = 0; i < clique.size(); ++i)
            for (size_t j = i + 1; j < clique.size(); ++j) covered[{clique[i], clique[j]}] = true;
        out.cliques.push_back(std::move(clique));
    }
    return out;
}

namespace detail {

inline void maximal_cliques_with(const UGraph& u, std::vector<int> r, std::vector<int> p,
                                 std::vector<int> x, std::vector<std::vector<int>>& out) {
    if (p.empty() && x.empty()) {
        std::sort(r.begin(), r.end());
        out.push_back(std::move(r));
        return;
    }
    // pivot on the candidate with most neighbors in P
    int pivot = -1, best = -1;
    for (int cand : p) {
        int cnt = 0;
        for (int w : p)
            if (u.has_edge(cand, w)) ++cnt;
        if (cnt > best) {
            best = cnt;
            pivot = cand;
        }
    }
    for (int cand : x) {
        int cnt = 0;
        for (int w : p)
            if (u.has_edge(cand, w)) ++cnt;
        if (cnt > best) {
            best = cnt;
            pivot = cand;
        }
    }
    std::vector<int> branch;
    for (int v : p)
        if (pivot < 0 || !u.has_edge(pivot, v)) branch.push_back(v);
    for (int v : branch) {
        std::vector<int> r2 = r;
        r2.push_back(v);
        std::vector<int> p2, x2;
        for (int w : p)
            if (u.has_edge(v, w)) p2.push_back(w);
        for (int w : x)
            if (u.has_edge(v, w)) x2.push_back(w);
        maximal_cliques_with(u, std::move(r2), std::move(p2), std::move(x2), out);
        p.erase(std::find(p.begin(), p.end(), v));
        x.push_back(v);
    }
}

struct EccSolver {
    const UGraph& u;
    std::vector<std::pair<int, int>> edges;
    std::map<std::pair<int, int>, int> edge_idx;
    std::uint64_t full = 0;
    int best = 0;
    std::vector<std::vector<int>> best_cover;
    std::unordered_map<std::uint64_t, int> seen;
    std::map<int, std::vector<std::pair<std::vector<int>, std::uint64_t>>> branch_cache;

    explicit EccSolver(const UGraph& graph) : u(graph) {
        edges = u.edges();
        for (size_t i = 0; i < edges.size(); ++i) {
            edge_idx[edges[i]] = static_cast<int>(i);
            full |= std::uint64_t(1) << i;
        }
    }

    std::uint64_t clique_mask(const std::vector<int>& c) const {
        std::uint64_t m = 0;
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = i + 1; j < c.size(); ++j)
                m |= std::uint64_t(1) << edge_idx.at({c[i], c[j]});
        return m;
    }

    bool co_cliquable(int e, int f) const {
        std::vector<int> s{edges[e].first, edges[e].second, edges[f].first, edges[f].second};
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (size_t i = 0; i < s.size(); ++i)
            for (size_t j = i + 1; j < s.size(); ++j)
                if (!u.has_edge(s[i], s[j])) return false;
        return true;
    }

    int lower_bound(std::uint64_t covered) const {
        std::vector<int> witnesses;
        for (size_t e = 0; e < edges.size(); ++e) {
            if (covered & (std::uint64_t(1) << e)) continue;
            bool ok = true;
            for (int w : witnesses)
                if (co_cliquable(static_cast<int>(e), w)) {
                    ok = false;
                    break;
                }
            if (ok) witnesses.push_back(static_cast<int>(e));
        }
        return static_cast<int>(witnesses.size());
    }

    const std::vector<std::pair<std::vector<int>, std::uint64_t>>& branches(int e) {
        auto it = branch_cache.find(e);
        if (it != branch_cache.end()) return it->second;
        auto [a, b] = edges[static_cast<size_t>(e)];
        std::vector<int> p;
        for (int w : u.neighbors(a))
            if (w != b && u.has_edge(w, b)) p.push_back(w);
        std::vector<std::vector<int>> cliques;
        if (p.empty())
            cliques.push_back({a, b});
        else {
            maximal_cliques_with(u, {a, b}, std::move(p), {}, cliques);
            std::sort(cliques.begin(), cliques.end());
        }
        auto& entry = branch_cache[e];
        for (auto& c : cliques) entry.emplace_back(c, clique_mask(c));
        return entry;
    }

    void solve(std::uint64_t covered, std::vector<std::vector<int>>& chosen) {
        if (covered == full) {
            if (static_cast<int>(chosen.size()) < best) {
                best = static_cast<int>(chosen.size());
                best_cover = chosen;
            }
            return;
        }
        int count = static_cast<int>(chosen.size());
        if (count + lower_bound(covered) >= best) return;
        auto it = seen.find(covered);
        if (it != seen.end() && it->second <= count) return;
        seen[covered] = count;
        int e = 0;
        while (covered & (std::uint64_t(1) << e)) ++e;
        for (const auto& [clique, mask] : branches(e)) {
            chosen.push_back(clique);
            solve(covered | mask, chosen);
            chosen.pop_back();
        }
    }
};

}  // namespace detail

/// Minimum-cardinality edge clique cover via branch and bound over uncovered
/// edges with maximal-clique branching. Guarded to desk scale.
inline CliqueCover edge_clique_cover_exact(const UGraph& u, int max_nodes = 14, int max_edges = 60) {
    if (u.node_count() > max_nodes || u.edge_count() > max_edges)
        throw std::runtime_error("edge_clique_cover_exact: instance exceeds size guard");
    CliqueCover greedy = edge_clique_cover_greedy(u);
    if (u.edge_count() == 0) return {};
    detail::EccSolver solver(u);
    solver.best = static_cast<int>(greedy.cliques.size());
    solver.best_cover = greedy.cliques;
    std::vector<std::vector<int>> chosen;
    solver.solve(0, chosen);
    return {solver.best_cover};
}

/// Randomized cover from independent-set sampling: floor(4e^2 (d+1)^2 ln n)
/// rounds, each keeping every node with probability 1/(d+1) and pruning to an
/// independent set of the directed skeleton (a clique of the component
/// graph). May leave edges uncovered with probability at most 1/n^2.
inline CliqueCover edge_clique_cover_randomized(const Dmg& g, std::uint64_t seed) {
    CliqueCover out;
    const int n = g.node_count();
    if (n <= 1) return out;
    UGraph skel = directed_skeleton(g);
    const int d = skel.max_degree();
    const double rounds_exact = 4.0 * std::exp(2.0) * (d + 1.0) * (d + 1.0) * std::log(static_cast<double>(n));
    const long rounds = static_cast<long>(std::floor(rounds_exact));
    const double keep_p = 1.0 / (d + 1.0);
    Rng rng(seed);
    for (long t = 0; t < rounds; ++t) {
        std::vector<char> in_w(static_cast<size_t>(n), 0);
        for (int v = 0; v < n; ++v) in_w[v] = rng.flip(keep_p) ? 1 : 0;
        std::vector<int> clique;
        for (int v = 0; v < n; ++v) {
            if (!in_w[v]) continue;
            bool isolated = true;
            for (int w : skel.neighbors(v))
                if (in_w[w]) {
                    isolated = false;
                    break;
                }
            if (isolated) clique.push_back(v);
        }
        out.cliques.push_back(std::move(clique));
    }
    return out;
}

inline long randomized_cover_rounds(int n, int skeleton_max_degree) {
    if (n <= 1) return 0;
    return static_cast<long>(
        std::floor(4.0 * std::exp(2.0) * (skeleton_max_degree + 1.0) * (skeleton_max_degree + 1.0) *
                   std::log(static_cast<double>(n))));
}

// ---------------------------------------------------------------------------
// Non-adjacent separating system
// ---------------------------------------------------------------------------

namespace detail {

inline void check_clique_independent(const Dmg& g, const UGraph& skel, const std::vector<int>& clique) {
    for (size_t i = 0; i < clique.size(); ++i)
        for (size_t j = i + 1; j < clique.size(); ++j)
            if (skel.has_edge(clique[i], clique[j]))
                throw std::invalid_argument("non-adjacent system: clique not independent in the directed skeleton");
    (void)g;
}

}  // namespace detail

/// One set per clique of the cover: the union of directed parents of the
/// clique members. For every pair inside a covered clique the set contains
/// Pa({X,Y}) and excludes X and Y.
inline SeparatingSystem nonadjacent_separating_system(const Dmg& g, const CliqueCover& cover) {
    UGraph skel = directed_skeleton(g);
    SeparatingSystem sys{SystemKind::NonAdjacent, std::nullopt, {}, {}};
    for (const auto& clique : cover.cliques) {
        detail::check_clique_independent(g, skel, clique);
        sys.sets.push_back(g.parents_of_set(clique));
    }
    return sys;
}

/// Bounded variant: per clique, the unordered pairs are first-fit binned so
/// every bin's joint parent set stays within M; one set per bin.
inline SeparatingSystem nonadjacent_separating_system_bounded(const Dmg& g, const CliqueCover& cover, int m_bound) {
    UGraph skel = directed_skeleton(g);
    SeparatingSystem sys{SystemKind::NonAdjacent, m_bound, {}, {}};
    for (const auto& clique : cover.cliques) {
        detail::check_clique_independent(g, skel, clique);
        std::vector<std::vector<int>> bins;
        for (size_t i = 0; i < clique.size(); ++i)
            for (size_t j = i + 1; j < clique.size(); ++j) {
                std::vector<int> pp = g.parents_of_set({clique[i], clique[j]});
                if (static_cast<int>(pp.size()) > m_bound)
                    throw std::invalid_argument("nonadjacent_separating_system_bounded: M below a pair's parent count");
                bool placed = false;
                for (auto& bin : bins) {
                    std::vector<int> merged = bin;
                    for (int p : pp) detail::insert_sorted(merged, p);
                    if (static_cast<int>(merged.size()) <= m_bound) {
                        bin = std::move(merged);
                        placed = true;
                        break;
                    }
                }
                if (!placed) bins.push_back(std::move(pp));
            }
        for (auto& bin : bins) sys.sets.push_back(std::move(bin));
    }
    std::vector<std::vector<int>> dedup;
    for (auto& s : sys.sets)
        if (std::find(dedup.begin(), dedup.end(), s) == dedup.end()) dedup.push_back(std::move(s));
    sys.sets = std::move(dedup);
    return sys;
}

/// Element-count allowance of the bounded non-adjacent construction for a
/// given cover (summands clamped at zero).
inline int bounded_nonadjacent_target(const Dmg& g, const CliqueCover& cover, int m_bound, int n) {
    int total = 0;
    for (const auto& clique : cover.cliques) {
        const long long sz = static_cast<long long>(clique.size());
        const long long pairs = sz * (sz - 1) / 2;
        if (pairs == 0) continue;
        int max_pa = 0;
        for (size_t i = 0; i < clique.size(); ++i)
            for (size_t j = i + 1; j < clique.size(); ++j)
                max_pa = std::max<int>(max_pa, static_cast<int>(g.parents_of_set({clique[i], clique[j]}).size()));
        const long long den = m_bound + 1 - max_pa;
        const long long num = (pairs - 1) * (n - sz);
        int extra = 0;
        if (den > 0 && num > 0) extra = static_cast<int>(num / den);
        total += 1 + extra;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Strong edge coloring and the adjacent separating system
// ---------------------------------------------------------------------------

struct StrongEdgeColoring {
    std::vector<std::vector<std::pair<int, int>>> classes;  // per color, edges (u<v)

    int class_count() const { return static_cast<int>(classes.size()); }
};

namespace detail {

inline bool edges_conflict(const UGraph& u, std::pair<int, int> e, std::pair<int, int> f) {
    auto [a, b] = e;
    auto [c, d] = f;
    if (a == c || a == d || b == c || b == d) return true;
    return u.has_edge(a, c) || u.has_edge(a, d) || u.has_edge(b, c) || u.has_edge(b, d);
}

struct SecSolver {
    const std::vector<std::vector<int>>& conflict;
    int m;
    int best;
    std::vector<int> best_color;
    std::vector<int> color;

    SecSolver(const std::vector<std::vector<int>>& cg, int ub)
        : conflict(cg), m(static_cast<int>(cg.size())), best(ub), color(cg.size(), -1) {}

    int pick() const {
        int chosen = -1, sat = -1, deg = -1;
        for (int e = 0; e < m; ++e) {
            if (color[e] != -1) continue;
            std::vector<char> around(static_cast<size_t>(best) + 1, 0);
            int s = 0;
            for (int f : conflict[static_cast<size_t>(e)])
                if (color[f] != -1 && !around[color[f]]) {
                    around[color[f]] = 1;
                    ++s;
                }
            int dg = static_cast<int>(conflict[static_cast<size_t>(e)].size());
            if (s > sat || (s == sat && dg > deg)) {
                sat = s;
                deg = dg;
                chosen = e;
            }
        }
        return chosen;
    }

    void solve(int colored, int used) {
        if (used >= best) return;
        if (colored == m) {
            best = used;
            best_color = color;
            return;
        }
        int e = pick();
        std::vector<char> taken(static_cast<size_t>(used) + 2, 0);
        for (int f : conflict[static_cast<size_t>(e)])
            if (color[f] != -1) taken[color[f]] = 1;
        for (int c = 0; c <= used && c < best; ++c) {
            if (c < static_cast<int>(taken.size()) && taken[c]) continue;
            color[e] = c;
            solve(colored + 1, std::max(used, c + 1));
            color[e] = -1;
        }
    }
};

}  // namespace detail

/// Edges in ascending order, smallest color unused within distance one.
inline StrongEdgeColoring strong_edge_coloring_greedy(const UGraph& u) {
    auto edges = u.edges();
    std::vector<int> color(edges.size(), -1);
    int used = 0;
    for (size_t e = 0; e < edges.size(); ++e) {
        std::vector<char> taken(edges.size() + 1, 0);
        for (size_t f = 0; f < e; ++f)
            if (detail::edges_conflict(u, edges[e], edges[f])) taken[color[f]] = 1;
        int c = 0;
        while (taken[c]) ++c;
        color[e] = c;
        used = std::max(used, c + 1);
    }
    StrongEdgeColoring out;
    out.classes.resize(static_cast<size_t>(used));
    for (size_t e = 0; e < edges.size(); ++e) out.classes[color[e]].push_back(edges[e]);
    return out;
}

/// Minimum strong edge coloring via branch and bound on the edge conflict
/// graph; classes normalized by smallest member edge. Guarded to desk scale.
inline StrongEdgeColoring strong_edge_coloring_exact(const UGraph& u, int max_edges = 40) {
    auto edges = u.edges();
    const int m = static_cast<int>(edges.size());
    if (m > max_edges) throw std::runtime_error("strong_edge_coloring_exact: instance exceeds size guard");
    if (m == 0) return {};
    std::vector<std::vector<int>> conflict(static_cast<size_t>(m));
    for (int e = 0; e < m; ++e)
        for (int f = e + 1; f < m; ++f)
            if (detail::edges_conflict(u, edges[e], edges[f])) {
                conflict[e].push_back(f);
                conflict[f].push_back(e);
            }
    StrongEdgeColoring greedy = strong_edge_coloring_greedy(u);
    // any vertex's incident edges are pairwise conflicting
    int lb = 0;
    for (int v = 0; v < u.node_count(); ++v) lb = std::max(lb, u.degree(v));
    if (greedy.class_count() <= lb) return greedy;

    detail::SecSolver solver(conflict, greedy.class_count());
    solver.solve(0, 0);
    if (solver.best_color.empty()) return greedy;
    StrongEdgeColoring out;
    out.classes.resize(static_cast<size_t>(solver.best));
    for (int e = 0; e < m; ++e) out.classes[solver.best_color[e]].push_back(edges[static_cast<size_t>(e)]);
    std::sort(out.classes.begin(), out.classes.end());
    return out;
}

namespace detail {

inline void check_strong_coloring(const UGraph& skel, const StrongEdgeColoring& sec) {
    std::map<std::pair<int, int>, int> seen;
    for (const auto& cls : sec.classes)
        for (auto [a, b] : cls) {
            if (a >= b || !skel.has_edge(a, b))
                throw std::invalid_argument("adjacent system: coloring references a non-edge");
            if (seen.count({a, b})) throw std::invalid_argument("adjacent system: edge colored twice");
            seen[{a, b}] = 1;
        }
    if (static_cast<int>(seen.size()) != skel.edge_count())
        throw std::invalid_argument("adjacent system: coloring does not cover every edge");
    for (const auto& cls : sec.classes)
        for (size_t i = 0; i < cls.size(); ++i)
            for (size_t j = i + 1; j < cls.size(); ++j)
                if (edges_conflict(skel, cls[i], cls[j]))
                    throw std::invalid_argument("adjacent system: class violates the strong condition");
}

struct AdjacentPieces {
    std::vector<int> endpoints;  // N: sorted endpoints of the edge set
    std::vector<int> tails;      // T: tail per edge (smaller id for double edges)
};

inline AdjacentPieces adjacent_pieces(const Dmg& g, const std::vector<std::pair<int, int>>& edge_set) {
    AdjacentPieces out;
    for (auto [a, b] : edge_set) {
        insert_sorted(out.endpoints, a);
        insert_sorted(out.endpoints, b);
        const bool ab = g.has_directed(a, b);
        const bool ba = g.has_directed(b, a);
        int tail;
        if (ab && !ba)
            tail = a;
        else if (ba && !ab)
            tail = b;
        else if (ab && ba)
            tail = std::min(a, b);
        else
            throw std::invalid_argument("adjacent system: skeleton edge without a directed edge");
        insert_sorted(out.tails, tail);
    }
    return out;
}

inline std::pair<std::vector<int>, std::vector<int>> adjacent_pair_sets(const Dmg& g, const AdjacentPieces& p) {
    std::vector<int> base;
    for (int v : g.parents_of_set(p.endpoints))
        if (!contains_sorted(p.endpoints, v)) base.push_back(v);
    std::vector<int> with_tails = base;
    for (int t : p.tails) insert_sorted(with_tails, t);
    return {base, with_tails};
}

}  // namespace detail

/// Per color class: I = Pa(endpoints) minus the endpoints, I' = I plus the
/// tail nodes. For every singly-directed pair (X,Y) whose skeleton edge sits
/// in the class, I covers Pa({X,Y})\{X,Y} without touching X,Y and I' adds X.
inline SeparatingSystem adjacent_separating_system(const Dmg& g, const StrongEdgeColoring& sec) {
    UGraph skel = directed_skeleton(g);
    detail::check_strong_coloring(skel, sec);
    SeparatingSystem sys{SystemKind::Adjacent, std::nullopt, {}, {}};
    for (const auto& cls : sec.classes) {
        if (cls.empty()) continue;
        sys.pair_sets.push_back(detail::adjacent_pair_sets(g, detail::adjacent_pieces(g, cls)));
    }
    return sys;
}

/// Bounded variant: edges of each class are first-fit binned so that the
/// larger emitted set I' of every bin stays within M.
inline SeparatingSystem adjacent_separating_system_bounded(const Dmg& g, const StrongEdgeColoring& sec, int m_bound) {
    UGraph skel = directed_skeleton(g);
    detail::check_strong_coloring(skel, sec);
    SeparatingSystem sys{SystemKind::Adjacent, m_bound, {}, {}};
    for (const auto& cls : sec.classes) {
        std::vector<std::vector<std::pair<int, int>>> bins;
        for (auto edge : cls) {
            if (static_cast<int>(g.parents_of_set({edge.first, edge.second}).size()) > m_bound)
                throw std::invalid_argument("adjacent_separating_system_bounded: M below a pair's parent count");
            bool placed = false;
            for (auto& bin : bins) {
                auto trial = bin;
                trial.push_back(edge);
                auto sets = detail::adjacent_pair_sets(g, detail::adjacent_pieces(g, trial));
                if (static_cast<int>(sets.second.size()) <= m_bound) {
                    bin = std::move(trial);
                    placed = true;
                    break;
                }
            }
            if (!placed) bins.push_back({edge});
        }
        for (const auto& bin : bins)
            sys.pair_sets.push_back(detail::adjacent_pair_sets(g, detail::adjacent_pieces(g, bin)));
    }
    std::vector<std::pair<std::vector<int>, std::vector<int>>> dedup;
    for (auto& ps : sys.pair_sets)
        if (std::find(dedup.begin(), dedup.end(), ps) == dedup.end()) dedup.push_back(std::move(ps));
    sys.pair_sets = std::move(dedup);
    return sys;
}

/// Element-count allowance of the bounded adjacent construction (counts both
/// sets of every bin; summands clamped at zero).
inline int bounded_adjacent_target(const Dmg& g, const StrongEdgeColoring& sec, int m_bound, int n) {
    int total = 0;
    for (const auto& cls : sec.classes) {
        if (cls.empty()) continue;
        int max_pa = 0;
        for (auto [a, b] : cls)
            max_pa = std::max<int>(max_pa, static_cast<int>(g.parents_of_set({a, b}).size()));
        const long long den = m_bound + 1 - max_pa;
        const long long num = (static_cast<long long>(cls.size()) - 1) * (n - 2 * static_cast<long long>(cls.size()));
        int extra = 0;
        if (den > 0 && num > 0) extra = static_cast<int>(num / den);
        total += 2 * (1 + extra);
    }
    return total;
}

}  // namespace dmgx
