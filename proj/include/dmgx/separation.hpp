#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dmgx/graph.hpp"

namespace dmgx {

/// Which separation criterion governs conditional independence. DSep is the
/// classical rule; SigmaSep additionally lets a conditioned non-collider pass
/// when its outgoing path edges stay inside its own SCC, the sound rule for
/// cyclic models.
enum class Scenario { DSep, SigmaSep };

namespace detail {

// Arrival mark of a walk state. Head: the traversed edge points at the node.
// TailIn/TailOut: the edge leaves the node, with the other endpoint inside /
// outside the node's SCC (the sigma rules need that distinction).
enum class Mark : unsigned char { Head, TailIn, TailOut };

// Reachability over walk states (node, arrival mark). `pass(v, m, leaving_tail, w)`
// decides whether the walk may continue through intermediate node v (arrived
// with mark m) towards w via an edge whose end at v is a tail (leaving_tail)
// or a head. The endpoints x and y themselves are unconstrained.
template <typename PassFn>
bool walk_reaches(const Dmg& g, const std::vector<int>& scc, int x, int y, PassFn&& pass) {
    const int n = g.node_count();
    std::vector<unsigned char> visited(static_cast<size_t>(n) * 3, 0);
    std::vector<std::pair<int, Mark>> queue;
    bool reached = false;
    auto push = [&](int w, Mark m) {
        if (w == y) {
            reached = true;
            return;
        }
        size_t idx = static_cast<size_t>(w) * 3 + static_cast<size_t>(m);
        if (!visited[idx]) {
            visited[idx] = 1;
            queue.emplace_back(w, m);
        }
    };

    for (int w : g.children(x)) push(w, Mark::Head);
    for (int w : g.parents(x))  // edge (w,x) traversed backwards: tail at w
        push(w, scc[w] == scc[x] ? Mark::TailIn : Mark::TailOut);
    for (int w : g.siblings(x)) push(w, Mark::Head);

    for (size_t qi = 0; qi < queue.size() && !reached; ++qi) {
        auto [v, m] = queue[qi];
        for (int w : g.children(v)) {  // edge (v,w): tail at v, head at w
            if (!pass(v, m, true, w)) continue;
            push(w, Mark::Head);
            if (reached) break;
        }
        if (reached) break;
        for (int w : g.parents(v)) {  // edge (w,v) backwards: head at v, tail at w
            if (!pass(v, m, false, w)) continue;
            push(w, scc[w] == scc[v] ? Mark::TailIn : Mark::TailOut);
            if (reached) break;
        }
        if (reached) break;
        for (int w : g.siblings(v)) {  // [v,w]: head at both ends
            if (!pass(v, m, false, w)) continue;
            push(w, Mark::Head);
            if (reached) break;
        }
    }
    return reached;
}

inline void check_query_nodes(const Dmg& g, int x, int y, const std::vector<int>& z) {
    if (x < 0 || x >= g.node_count() || y < 0 || y >= g.node_count())
        throw std::out_of_range("separation query: endpoint out of range");
    if (x == y) throw std::invalid_argument("separation query: endpoints must differ");
    for (int v : z) {
        if (v < 0 || v >= g.node_count()) throw std::out_of_range("separation query: conditioning node out of range");
        if (v == x || v == y) throw std::invalid_argument("separation query: conditioning set overlaps endpoints");
    }
}

}  // namespace detail

/// True iff every path between x and y is r-blocked by z. Fast walk-state
/// reachability: a collider passes iff it is an ancestor of z ∪ {x,y}; a
/// non-collider passes iff it is outside z, except under SigmaSep where a
/// conditioned non-collider also passes when each of its tail edges on the
/// walk stays inside its SCC.
inline bool is_r_separated(const Dmg& g, int x, int y, const std::vector<int>& z, Scenario sc) {
    detail::check_query_nodes(g, x, y, z);
    std::vector<char> in_z(g.node_count(), 0);
    for (int v : z) in_z[v] = 1;
    std::vector<int> anchor = z;
    anchor.push_back(x);
    anchor.push_back(y);
    const std::vector<char> anc = ancestor_mask(g, anchor);
    const std::vector<int> scc = scc_ids(g);
    const bool sigma = sc == Scenario::SigmaSep;

    auto pass = [&](int v, detail::Mark m, bool leaving_tail, int w) {
        const bool collider = (m == detail::Mark::Head) && !leaving_tail;
        if (collider) return anc[v] != 0;
        if (!in_z[v]) return true;
        if (!sigma) return false;
        if (m == detail::Mark::TailOut) return false;
        if (leaving_tail && scc[w] != scc[v]) return false;
        return true;
    };
    return !detail::walk_reaches(g, scc, x, y, pass);
}

namespace detail {

enum class EdgeKind : unsigned char { Fwd, Bwd, Bi };  // (p,q), (q,p), [p,q] along the path

struct PathEnumerator {
    const Dmg& g;
    std::vector<int> nodes;
    std::vector<EdgeKind> kinds;
    std::vector<char> used;

    template <typename Visit>
    bool run(int x, int y, Visit&& visit) {  // visit returns true to stop
        nodes = {x};
        kinds.clear();
        used.assign(static_cast<size_t>(g.node_count()), 0);
        used[x] = 1;
        return extend(y, visit);
    }

    template <typename Visit>
    bool extend(int y, Visit&& visit) {
        int v = nodes.back();
        if (v == y) return visit(nodes, kinds);
        for (int w = 0; w < g.node_count(); ++w) {
            if (used[w]) continue;
            for (EdgeKind k : {EdgeKind::Fwd, EdgeKind::Bwd, EdgeKind::Bi}) {
                bool present = k == EdgeKind::Fwd   ? g.has_directed(v, w)
                               : k == EdgeKind::Bwd ? g.has_directed(w, v)
                                                    : g.has_bidirected(v, w);
                if (!present) continue;
                nodes.push_back(w);
                kinds.push_back(k);
                used[w] = 1;
                if (extend(y, visit)) return true;
                used[w] = 0;
                kinds.pop_back();
                nodes.pop_back();
            }
        }
        return false;
    }
};

}  // namespace detail

/// Reference oracle: enumerates every simple path between x and y and applies
/// the blocking clauses verbatim. Intended for small graphs; throws when the
/// node count exceeds `node_limit`.
inline bool brute_force_separated(const Dmg& g, int x, int y, const std::vector<int>& z, Scenario sc,
                                  int node_limit = 7) {
    if (g.node_count() > node_limit)
        throw std::runtime_error("brute_force_separated: graph exceeds node limit " + std::to_string(node_limit));
    detail::check_query_nodes(g, x, y, z);
    std::vector<char> in_z(g.node_count(), 0);
    for (int v : z) in_z[v] = 1;
    std::vector<int> anchor = z;
    anchor.push_back(x);
    anchor.push_back(y);
    const std::vector<char> anc = ancestor_mask(g, anchor);
    const std::vector<int> scc = scc_ids(g);
    const bool sigma = sc == Scenario::SigmaSep;

    auto blocked = [&](const std::vector<int>& nodes, const std::vector<detail::EdgeKind>& kinds) {
        for (size_t i = 1; i + 1 < nodes.size(); ++i) {
            int v = nodes[i];
            const bool head_left = kinds[i - 1] != detail::EdgeKind::Bwd;   // arrowhead at v from the left edge
            const bool head_right = kinds[i] != detail::EdgeKind::Fwd;      // arrowhead at v from the right edge
            if (head_left && head_right) {
                if (!anc[v]) return true;
            } else if (in_z[v]) {
                if (!sigma) return true;
                const bool tail_left_exits = kinds[i - 1] == detail::EdgeKind::Bwd && scc[nodes[i - 1]] != scc[v];
                const bool tail_right_exits = kinds[i] == detail::EdgeKind::Fwd && scc[nodes[i + 1]] != scc[v];
                if (tail_left_exits || tail_right_exits) return true;
            }
        }
        return false;
    };

    detail::PathEnumerator en{g, {}, {}, {}};
    bool found_open = en.run(x, y, [&](const std::vector<int>& nodes, const std::vector<detail::EdgeKind>& kinds) {
        return !blocked(nodes, kinds);
    });
    return !found_open;
}

/// True iff an r-inducing path between x and y exists: every collider on the
/// path is an ancestor of {x,y}; in DSep mode every interior vertex must be a
/// collider, in SigmaSep mode interior non-colliders are allowed when their
/// tail edges on the path stay inside their SCC.
inline bool has_inducing_path(const Dmg& g, int x, int y, Scenario sc) {
    detail::check_query_nodes(g, x, y, {});
    const std::vector<char> anc = ancestor_mask(g, {x, y});
    const std::vector<int> scc = scc_ids(g);
    const bool sigma = sc == Scenario::SigmaSep;

    auto pass = [&](int v, detail::Mark m, bool leaving_tail, int w) {
        const bool collider = (m == detail::Mark::Head) && !leaving_tail;
        if (collider) return anc[v] != 0;
        if (!sigma) return false;
        if (m == detail::Mark::TailOut) return false;
        if (leaving_tail && scc[w] != scc[v]) return false;
        return true;
    };
    return detail::walk_reaches(g, scc, x, y, pass);
}

/// Undirected graph with an edge wherever no conditioning set can separate
/// the pair; a supergraph of the skeleton.
inline UGraph observational_graph(const Dmg& g, Scenario sc) {
    UGraph out(g.node_count());
    for (int u = 0; u < g.node_count(); ++u)
        for (int v = u + 1; v < g.node_count(); ++v)
            if (has_inducing_path(g, u, v, sc)) out.add_edge(u, v);
    return out;
}

}  // namespace dmgx
