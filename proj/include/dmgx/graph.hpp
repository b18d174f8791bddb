#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dmgx {

using NodeId = int;

namespace detail {

inline void insert_sorted(std::vector<int>& v, int x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
}

inline bool contains_sorted(const std::vector<int>& v, int x) {
    return std::binary_search(v.begin(), v.end(), x);
}

}  // namespace detail

/// Undirected simple graph over nodes 0..n-1. No self-loops, edges stored
/// canonically (u < v) with sorted adjacency lists.
class UGraph {
public:
    explicit UGraph(int n) : n_(n), adj_(static_cast<size_t>(std::max(n, 0))) {
        if (n < 0) throw std::invalid_argument("UGraph: negative node count");
    }

    int node_count() const { return n_; }

    void add_edge(int u, int v) {
        check(u);
        check(v);
        if (u == v) throw std::invalid_argument("UGraph: self-loop");
        detail::insert_sorted(adj_[u], v);
        detail::insert_sorted(adj_[v], u);
    }

    bool has_edge(int u, int v) const {
        check(u);
        check(v);
        if (u == v) return false;
        return detail::contains_sorted(adj_[u], v);
    }

    const std::vector<int>& neighbors(int v) const {
        check(v);
        return adj_[v];
    }

    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    int max_degree() const {
        int d = 0;
        for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u)
            for (int v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    int edge_count() const { return static_cast<int>(edges().size()); }

    bool operator==(const UGraph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

private:
    void check(int v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("UGraph: node " + std::to_string(v) + " out of range");
    }

    int n_;
    std::vector<std::vector<int>> adj_;
};

/// Directed mixed graph: directed edges (X,Y) plus bidirected edges [X,Y]
/// modelling latent confounders. No self-loops in either set. Bidirected
/// edges are stored canonically (smaller id first); membership queries are
/// symmetric. Adjacency lists are kept sorted so every traversal is
/// deterministic.
class Dmg {
public:
    explicit Dmg(int n)
        : n_(n),
          children_(static_cast<size_t>(std::max(n, 0))),
          parents_(static_cast<size_t>(std::max(n, 0))),
          siblings_(static_cast<size_t>(std::max(n, 0))) {
        if (n < 0) throw std::invalid_argument("Dmg: negative node count");
    }

    Dmg(int n, const std::vector<std::pair<int, int>>& directed,
        const std::vector<std::pair<int, int>>& bidirected)
        : Dmg(n) {
        for (auto [u, v] : directed) add_directed(u, v);
        for (auto [u, v] : bidirected) add_bidirected(u, v);
    }

    int node_count() const { return n_; }

    void add_directed(int u, int v) {
        check(u);
        check(v);
        if (u == v) throw std::invalid_argument("Dmg: directed self-loop");
        detail::insert_sorted(children_[u], v);
        detail::insert_sorted(parents_[v], u);
    }

    void add_bidirected(int u, int v) {
        check(u);
        check(v);
        if (u == v) throw std::invalid_argument("Dmg: bidirected self-loop");
        detail::insert_sorted(siblings_[u], v);
        detail::insert_sorted(siblings_[v], u);
    }

    bool has_directed(int u, int v) const {
        check(u);
        check(v);
        return detail::contains_sorted(children_[u], v);
    }

    bool has_bidirected(int u, int v) const {
        check(u);
        check(v);
        return detail::contains_sorted(siblings_[u], v);
    }

    const std::vector<int>& children(int v) const {
        check(v);
        return children_[v];
    }

    const std::vector<int>& parents(int v) const {
        check(v);
        return parents_[v];
    }

    const std::vector<int>& siblings(int v) const {
        check(v);
        return siblings_[v];
    }

    /// Parents of a node set, i.e. the union of the members' parents.
    std::vector<int> parents_of_set(const std::vector<int>& nodes) const {
        std::vector<int> out;
        for (int v : nodes)
            for (int p : parents(v)) detail::insert_sorted(out, p);
        return out;
    }

    std::vector<std::pair<int, int>> directed_edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u)
            for (int v : children_[u]) out.emplace_back(u, v);
        return out;
    }

    std::vector<std::pair<int, int>> bidirected_edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u)
            for (int v : siblings_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    int directed_edge_count() const { return static_cast<int>(directed_edges().size()); }
    int bidirected_edge_count() const { return static_cast<int>(bidirected_edges().size()); }

    bool operator==(const Dmg& o) const {
        return n_ == o.n_ && children_ == o.children_ && siblings_ == o.siblings_;
    }

private:
    void check(int v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("Dmg: node " + std::to_string(v) + " out of range");
    }

    int n_;
    std::vector<std::vector<int>> children_;
    std::vector<std::vector<int>> parents_;
    std::vector<std::vector<int>> siblings_;
};

/// Bidirected edges split by how the endpoints are connected in the directed
/// part: neither direction / exactly one direction / both directions.
struct BidirectedClasses {
    std::vector<std::pair<int, int>> non_adjacent;
    std::vector<std::pair<int, int>> single_adjacent;
    std::vector<std::pair<int, int>> double_adjacent;
};

inline BidirectedClasses classify_bidirected(const Dmg& g) {
    BidirectedClasses out;
    for (auto [u, v] : g.bidirected_edges()) {
        bool uv = g.has_directed(u, v);
        bool vu = g.has_directed(v, u);
        if (!uv && !vu)
            out.non_adjacent.emplace_back(u, v);
        else if (uv && vu)
            out.double_adjacent.emplace_back(u, v);
        else
            out.single_adjacent.emplace_back(u, v);
    }
    return out;
}

/// Drops every bidirected edge, keeping the directed part.
inline Dmg strip_bidirected(const Dmg& g) {
    Dmg out(g.node_count());
    for (auto [u, v] : g.directed_edges()) out.add_directed(u, v);
    return out;
}

/// Keeps only bidirected edges between pairs with no directed edge.
inline Dmg strip_adjacent_bidirected(const Dmg& g) {
    Dmg out = strip_bidirected(g);
    for (auto [u, v] : classify_bidirected(g).non_adjacent) out.add_bidirected(u, v);
    return out;
}

/// Drops bidirected edges between doubly-directed pairs only.
inline Dmg strip_double_adjacent_bidirected(const Dmg& g) {
    Dmg out = strip_bidirected(g);
    auto cls = classify_bidirected(g);
    for (auto [u, v] : cls.non_adjacent) out.add_bidirected(u, v);
    for (auto [u, v] : cls.single_adjacent) out.add_bidirected(u, v);
    return out;
}

enum class Direction { Descendants, Ancestors };

/// Closure of {x} under directed edges; always contains x itself.
inline std::vector<int> reachable(const Dmg& g, int x, Direction dir) {
    if (x < 0 || x >= g.node_count()) throw std::out_of_range("reachable: node out of range");
    std::vector<char> seen(g.node_count(), 0);
    std::vector<int> stack{x};
    seen[x] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        const auto& next = dir == Direction::Descendants ? g.children(v) : g.parents(v);
        for (int w : next)
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    std::vector<int> out;
    for (int v = 0; v < g.node_count(); ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

/// Ancestor closure of a node set as a membership mask (includes the set).
inline std::vector<char> ancestor_mask(const Dmg& g, const std::vector<int>& nodes) {
    std::vector<char> seen(g.node_count(), 0);
    std::vector<int> stack;
    for (int v : nodes) {
        if (v < 0 || v >= g.node_count()) throw std::out_of_range("ancestor_mask: node out of range");
        if (!seen[v]) {
            seen[v] = 1;
            stack.push_back(v);
        }
    }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int p : g.parents(v))
            if (!seen[p]) {
                seen[p] = 1;
                stack.push_back(p);
            }
    }
    return seen;
}

/// Hard intervention: removes incoming directed edges of targets and every
/// bidirected edge incident to a target. Outgoing directed edges survive.
inline Dmg intervene(const Dmg& g, const std::vector<int>& targets) {
    std::vector<char> hit(g.node_count(), 0);
    for (int v : targets) {
        if (v < 0 || v >= g.node_count()) throw std::out_of_range("intervene: target out of range");
        hit[v] = 1;
    }
    Dmg out(g.node_count());
    for (auto [u, v] : g.directed_edges())
        if (!hit[v]) out.add_directed(u, v);
    for (auto [u, v] : g.bidirected_edges())
        if (!hit[u] && !hit[v]) out.add_bidirected(u, v);
    return out;
}

/// Strongly connected components via Tarjan, normalized: members sorted, the
/// components ordered by smallest member.
inline std::vector<std::vector<int>> scc_decompose(const Dmg& g) {
    const int n = g.node_count();
    std::vector<int> index(n, -1), low(n, 0), stack;
    std::vector<char> on_stack(n, 0);
    std::vector<std::vector<int>> comps;
    int counter = 0;

    // iterative DFS to keep deep graphs out of the call stack
    struct Frame {
        int v;
        size_t child;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& ch = g.children(f.v);
            if (f.child < ch.size()) {
                int w = ch[f.child++];
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    std::vector<int> comp;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp.push_back(w);
                    } while (w != f.v);
                    std::sort(comp.begin(), comp.end());
                    comps.push_back(std::move(comp));
                }
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            }
        }
    }
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

/// Node -> index of its SCC in scc_decompose order.
inline std::vector<int> scc_ids(const Dmg& g) {
    auto comps = scc_decompose(g);
    std::vector<int> id(g.node_count(), -1);
    for (size_t c = 0; c < comps.size(); ++c)
        for (int v : comps[c]) id[v] = static_cast<int>(c);
    return id;
}

/// Undirected edge [X,Y] iff some directed edge connects X and Y.
inline UGraph directed_skeleton(const Dmg& g) {
    UGraph out(g.node_count());
    for (auto [u, v] : g.directed_edges())
        if (!out.has_edge(u, v)) out.add_edge(u, v);
    return out;
}

/// Complement of the directed skeleton: edge iff neither direction exists.
inline UGraph component_graph(const Dmg& g) {
    UGraph skel = directed_skeleton(g);
    UGraph out(g.node_count());
    for (int u = 0; u < g.node_count(); ++u)
        for (int v = u + 1; v < g.node_count(); ++v)
            if (!skel.has_edge(u, v)) out.add_edge(u, v);
    return out;
}

/// SCCs grouped into layers by longest path (in edges) from any source SCC of
/// the condensation DAG. Layer 0 holds the SCCs with no SCC-ancestor; the
/// parents of any node at layer k lie inside its own SCC or in layers < k.
struct SccLayering {
    std::vector<std::vector<std::vector<int>>> layers;

    int layer_count() const { return static_cast<int>(layers.size()); }

    /// Size of the largest SCC in the given layer.
    int max_scc_size(int layer) const {
        int m = 0;
        for (const auto& s : layers.at(static_cast<size_t>(layer))) m = std::max<int>(m, static_cast<int>(s.size()));
        return m;
    }

    /// Nodes of all layers strictly before `layer`, sorted.
    std::vector<int> nodes_before(int layer) const {
        std::vector<int> out;
        for (int k = 0; k < layer; ++k)
            for (const auto& s : layers.at(static_cast<size_t>(k))) out.insert(out.end(), s.begin(), s.end());
        std::sort(out.begin(), out.end());
        return out;
    }

    int node_count_before(int layer) const { return static_cast<int>(nodes_before(layer).size()); }

    int sum_max_scc_sizes() const {
        int s = 0;
        for (int k = 0; k < layer_count(); ++k) s += max_scc_size(k);
        return s;
    }
};

inline SccLayering scc_layering(const Dmg& g) {
    auto comps = scc_decompose(g);
    auto id = scc_ids(g);
    const int c = static_cast<int>(comps.size());
    // condensation in-edges per component
    std::vector<std::vector<int>> preds(c);
    for (auto [u, v] : g.directed_edges())
        if (id[u] != id[v]) detail::insert_sorted(preds[id[v]], id[u]);
    // longest-path layering; components are already in a reverse-topological
    // friendly order only by accident, so iterate until fixpoint (c is small)
    std::vector<int> layer(c, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < c; ++i)
            for (int p : preds[i])
                if (layer[i] < layer[p] + 1) {
                    layer[i] = layer[p] + 1;
                    changed = true;
                }
    }
    int depth = 0;
    for (int i = 0; i < c; ++i) depth = std::max(depth, layer[i] + 1);
    SccLayering out;
    out.layers.resize(static_cast<size_t>(std::max(depth, 0)));
    for (int i = 0; i < c; ++i) out.layers[layer[i]].push_back(comps[i]);
    for (auto& l : out.layers)
        std::sort(l.begin(), l.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

}  // namespace dmgx
