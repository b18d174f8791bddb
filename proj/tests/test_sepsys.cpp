#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dmgx/sepsys.hpp"
#include "helpers.hpp"

using namespace dmgx;
using tests::make_dmg;

namespace {

UGraph complete_ugraph(int n) {
    UGraph u(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) u.add_edge(i, j);
    return u;
}

// every ordered pair of differently colored nodes has a set containing the
// first and excluding the second
bool separates_colored(const SeparatingSystem& sys, const Coloring& col, int n) {
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y || col.color[x] == col.color[y]) continue;
            bool ok = false;
            for (const auto& s : sys.sets)
                if (detail::contains_sorted(s, x) && !detail::contains_sorted(s, y)) {
                    ok = true;
                    break;
                }
            if (!ok) return false;
        }
    return true;
}

bool separates_all_ordered(const SeparatingSystem& sys, int n) {
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            bool ok = false;
            for (const auto& s : sys.sets)
                if (detail::contains_sorted(s, x) && !detail::contains_sorted(s, y)) {
                    ok = true;
                    break;
                }
            if (!ok) return false;
        }
    return true;
}

// every SCC member has a set covering the earlier layers plus its SCC
// siblings while excluding the member itself
bool satisfies_ancestral_property(const SeparatingSystem& sys, const SccLayering& lay) {
    for (int k = 0; k < lay.layer_count(); ++k) {
        std::vector<int> before = lay.nodes_before(k);
        for (const auto& scc : lay.layers[k]) {
            for (int x : scc) {
                std::vector<int> required = before;
                for (int v : scc)
                    if (v != x) detail::insert_sorted(required, v);
                bool ok = false;
                for (const auto& s : sys.sets) {
                    if (detail::contains_sorted(s, x)) continue;
                    bool covers = true;
                    for (int v : required)
                        if (!detail::contains_sorted(s, v)) {
                            covers = false;
                            break;
                        }
                    if (covers) {
                        ok = true;
                        break;
                    }
                }
                if (!ok) return false;
            }
        }
    }
    return true;
}

bool satisfies_nonadjacent_property(const SeparatingSystem& sys, const Dmg& g, const CliqueCover& cover) {
    for (const auto& clique : cover.cliques)
        for (size_t i = 0; i < clique.size(); ++i)
            for (size_t j = i + 1; j < clique.size(); ++j) {
                int u = clique[i], v = clique[j];
                std::vector<int> pa = g.parents_of_set({u, v});
                bool ok = false;
                for (const auto& s : sys.sets) {
                    if (detail::contains_sorted(s, u) || detail::contains_sorted(s, v)) continue;
                    bool covers = true;
                    for (int p : pa)
                        if (!detail::contains_sorted(s, p)) {
                            covers = false;
                            break;
                        }
                    if (covers) {
                        ok = true;
                        break;
                    }
                }
                if (!ok) return false;
            }
    return true;
}

bool satisfies_adjacent_property(const SeparatingSystem& sys, const Dmg& g) {
    for (int x = 0; x < g.node_count(); ++x)
        for (int y = 0; y < g.node_count(); ++y) {
            if (x == y || !g.has_directed(x, y) || g.has_directed(y, x)) continue;
            std::vector<int> pa = g.parents_of_set({x, y});
            bool ok = false;
            for (const auto& [i_set, i_prime] : sys.pair_sets) {
                bool fine = !detail::contains_sorted(i_set, x) && !detail::contains_sorted(i_set, y) &&
                            detail::contains_sorted(i_prime, x) && !detail::contains_sorted(i_prime, y);
                for (int p : pa) {
                    if (!fine) break;
                    if (p != x && p != y && !detail::contains_sorted(i_set, p)) fine = false;
                    if (p != y && !detail::contains_sorted(i_prime, p)) fine = false;
                }
                if (fine) {
                    ok = true;
                    break;
                }
            }
            if (!ok) return false;
        }
    return true;
}

int max_set_size(const SeparatingSystem& sys) {
    size_t m = 0;
    for (const auto& s : sys.sets) m = std::max(m, s.size());
    for (const auto& [a, b] : sys.pair_sets) m = std::max({m, a.size(), b.size()});
    return static_cast<int>(m);
}

}  // namespace

TEST_CASE("greedy vertex coloring") {
    UGraph empty(4);
    Coloring c = greedy_vertex_coloring(empty);
    CHECK(c.color == std::vector<int>{0, 0, 0, 0});
    CHECK(c.color_count == 1);

    CHECK(greedy_vertex_coloring(complete_ugraph(4)).color_count == 4);

    for (const auto& g : tests::random_corpus(25, 2, 9)) {
        UGraph u = directed_skeleton(g);
        Coloring col = greedy_vertex_coloring(u);
        for (auto [a, b] : u.edges()) CHECK(col.color[a] != col.color[b]);
        CHECK(col.color_count <= u.max_degree() + 1);
    }
}

TEST_CASE("colored separating system") {
    UGraph empty(3);
    CHECK(colored_separating_system(greedy_vertex_coloring(empty), 3).sets.empty());

    // two colors: the two classes themselves
    UGraph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    Coloring col = greedy_vertex_coloring(path);
    REQUIRE(col.color_count == 2);
    SeparatingSystem sys = colored_separating_system(col, 3);
    REQUIRE(sys.sets.size() == 2);
    CHECK(((sys.sets[0] == std::vector<int>{1} && sys.sets[1] == std::vector<int>{0, 2}) ||
           (sys.sets[0] == std::vector<int>{0, 2} && sys.sets[1] == std::vector<int>{1})));

    // greedy coloring of the confounded example's observational graph gives
    // classes {0,3},{1},{2}; the system stays within 2*ceil(log2 chi) = 4
    UGraph obs = observational_graph(tests::small_confounded(), Scenario::SigmaSep);
    Coloring col4 = greedy_vertex_coloring(obs);
    CHECK(col4.color_count == 3);
    CHECK(col4.color == std::vector<int>{0, 1, 2, 0});
    SeparatingSystem sys4 = colored_separating_system(col4, 4);
    CHECK(sys4.sets.size() <= 4);
    CHECK(separates_colored(sys4, col4, 4));

    for (const auto& g : tests::random_corpus(20, 2, 9)) {
        UGraph u = directed_skeleton(g);
        Coloring c = greedy_vertex_coloring(u);
        SeparatingSystem s = colored_separating_system(c, g.node_count());
        CHECK(separates_colored(s, c, g.node_count()));
        int bits = 0;
        while ((1 << bits) < c.color_count) ++bits;
        CHECK(static_cast<int>(s.sets.size()) <= 2 * bits);
    }
}

TEST_CASE("nm separating system") {
    CHECK_THROWS_AS(nm_separating_system(4, 0), std::invalid_argument);

    SeparatingSystem two = nm_separating_system(2, 1);
    std::vector<std::vector<int>> two_sets = two.sets;
    std::sort(two_sets.begin(), two_sets.end());
    CHECK(two_sets == std::vector<std::vector<int>>{{0}, {1}});

    SeparatingSystem four = nm_separating_system(4, 2);
    CHECK(four.sets.size() == 4);  // ceil(4/2)*ceil(log2 4)
    for (const auto& s : four.sets) CHECK(s.size() <= 2);
    CHECK(separates_all_ordered(four, 4));

    for (int n = 2; n <= 9; ++n) {
        for (int m = 1; m < n; ++m) {
            SeparatingSystem sys = nm_separating_system(n, m);
            CHECK(separates_all_ordered(sys, n));
            const int a = std::max(2, (n + m - 1) / m);
            for (const auto& s : sys.sets) {
                CHECK(static_cast<int>(s.size()) <= (n + a - 1) / a);
                CHECK(static_cast<int>(s.size()) <= m);
            }
            CHECK(static_cast<int>(sys.sets.size()) <= nm_system_target(n, m));
        }
        // M >= n stays defined through the clamp
        SeparatingSystem big = nm_separating_system(n, n + 1);
        CHECK(separates_all_ordered(big, n));
    }
}

TEST_CASE("ancestral separating system reproduces the seven-node family") {
    SccLayering lay = scc_layering(tests::layered_seven());
    SeparatingSystem sys = ancestral_separating_system(lay);
    std::vector<std::vector<int>> expected{{1}, {0}, {0, 1}, {0, 1, 2, 5, 6}, {0, 1, 2, 4, 6}, {0, 1, 2, 4, 5}};
    CHECK(sys.sets == expected);
    CHECK(static_cast<int>(sys.sets.size()) == lay.sum_max_scc_sizes());
    CHECK(satisfies_ancestral_property(sys, lay));
}

TEST_CASE("ancestral separating system on an antichain is the null experiment") {
    Dmg g(3);
    SccLayering lay = scc_layering(g);
    SeparatingSystem sys = ancestral_separating_system(lay);
    CHECK(sys.sets == std::vector<std::vector<int>>{{}});
}

TEST_CASE("ancestral separating system property holds on random graphs") {
    for (const auto& g : tests::random_corpus(30, 2, 8)) {
        SccLayering lay = scc_layering(g);
        SeparatingSystem sys = ancestral_separating_system(lay);
        CHECK(static_cast<int>(sys.sets.size()) == lay.sum_max_scc_sizes());
        CHECK(satisfies_ancestral_property(sys, lay));
    }
}

TEST_CASE("bounded ancestral separating system") {
    SccLayering seven = scc_layering(tests::layered_seven());
    CHECK_THROWS_AS(ancestral_separating_system_bounded(seven, 4), std::invalid_argument);  // floor is 3+3-1=5

    // M >= n reproduces the unbounded construction
    SeparatingSystem unbounded = ancestral_separating_system(seven);
    SeparatingSystem wide = ancestral_separating_system_bounded(seven, 7);
    CHECK(wide.sets == unbounded.sets);

    SeparatingSystem tight = ancestral_separating_system_bounded(seven, 5);
    CHECK(max_set_size(tight) <= 5);
    CHECK(satisfies_ancestral_property(tight, seven));

    for (const auto& g : tests::random_corpus(30, 2, 8)) {
        SccLayering lay = scc_layering(g);
        const int top = lay.layer_count() - 1;
        const int floor_val = lay.node_count_before(top) + lay.max_scc_size(top) - 1;
        for (int m = std::max(floor_val, 1); m <= g.node_count(); ++m) {
            SeparatingSystem sys = ancestral_separating_system_bounded(lay, m);
            CHECK(max_set_size(sys) <= m);
            CHECK(satisfies_ancestral_property(sys, lay));
            CHECK(static_cast<int>(sys.sets.size()) <= bounded_ancestral_target(lay, m, g.node_count()));
        }
    }
}

TEST_CASE("exact edge clique cover") {
    UGraph triangle = complete_ugraph(3);
    CHECK(edge_clique_cover_exact(triangle).cliques.size() == 1);

    UGraph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK(edge_clique_cover_exact(path).cliques.size() == 2);

    CHECK(edge_clique_cover_exact(UGraph(4)).cliques.empty());

    // the six-node instance has cover number 4
    UGraph uc = component_graph(tests::dag_six());
    CHECK(edge_clique_cover_exact(uc).cliques.size() == 4);

    CHECK_THROWS_AS(edge_clique_cover_exact(complete_ugraph(3), 2, 60), std::runtime_error);
}

TEST_CASE("greedy edge clique cover") {
    CHECK(edge_clique_cover_greedy(complete_ugraph(4)).cliques.size() == 1);
    CHECK(edge_clique_cover_greedy(UGraph(5)).cliques.empty());

    for (const auto& g : tests::random_corpus(25, 2, 8)) {
        UGraph uc = component_graph(g);
        CliqueCover cover = edge_clique_cover_greedy(uc);
        std::map<std::pair<int, int>, bool> covered;
        for (const auto& c : cover.cliques)
            for (size_t i = 0; i < c.size(); ++i)
                for (size_t j = i + 1; j < c.size(); ++j) {
                    CHECK(uc.has_edge(c[i], c[j]));  // cliques are cliques
                    covered[{c[i], c[j]}] = true;
                }
        for (auto e : uc.edges()) CHECK(covered.count(e) == 1);  // and they cover
        CHECK(cover.cliques.size() >= edge_clique_cover_exact(uc).cliques.size());
    }
}

TEST_CASE("randomized edge clique cover") {
    // d = 0: every sampled set survives whole, and one round covers K_n
    Dmg no_directed = make_dmg(4, {}, {{0, 1}});
    CliqueCover cover = edge_clique_cover_randomized(no_directed, 7);
    CHECK(static_cast<long>(cover.cliques.size()) == randomized_cover_rounds(4, 0));
    for (const auto& c : cover.cliques) CHECK(c == std::vector<int>{0, 1, 2, 3});

    // reproducibility
    Dmg g = tests::dag_six();
    CliqueCover a = edge_clique_cover_randomized(g, 42);
    CliqueCover b = edge_clique_cover_randomized(g, 42);
    CHECK(a.cliques == b.cliques);
    CliqueCover c = edge_clique_cover_randomized(g, 43);
    CHECK(a.cliques != c.cliques);

    // emitted sets are independent in the skeleton
    UGraph skel = directed_skeleton(g);
    for (const auto& clique : a.cliques)
        for (size_t i = 0; i < clique.size(); ++i)
            for (size_t j = i + 1; j < clique.size(); ++j) CHECK(!skel.has_edge(clique[i], clique[j]));

    // per-round success lower bound used by the round count
    for (int d = 0; d <= 10; ++d) {
        double p = 1.0 / (d + 1);
        double per_round = p * p * std::pow(1.0 - p, 2.0 * d);
        CHECK(per_round >= 1.0 / (std::exp(2.0) * (d + 1.0) * (d + 1.0)));
    }
}

TEST_CASE("non-adjacent separating system") {
    // edge-free directed part: one clique covering everything, parents empty
    Dmg edgeless(3);
    CliqueCover whole{{{0, 1, 2}}};
    SeparatingSystem sys = nonadjacent_separating_system(edgeless, whole);
    CHECK(sys.sets == std::vector<std::vector<int>>{{}});

    // the six-node instance: cover cliques map to these parent sets
    Dmg g = tests::dag_six();
    CliqueCover cover{{{0, 5}, {0, 4}, {1, 4}, {1, 2, 3, 5}}};
    SeparatingSystem paper = nonadjacent_separating_system(g, cover);
    std::vector<std::vector<int>> got = paper.sets;
    std::sort(got.begin(), got.end());
    std::vector<std::vector<int>> expected{{0, 2, 3}, {0, 4}, {2, 3}, {4}};
    std::sort(expected.begin(), expected.end());
    CHECK(got == expected);
    CHECK(satisfies_nonadjacent_property(paper, g, cover));

    // a clique touching a directed edge is rejected
    CliqueCover bad{{{0, 1}}};
    CHECK_THROWS_AS(nonadjacent_separating_system(g, bad), std::invalid_argument);

    for (const auto& r : tests::random_corpus(20, 2, 8)) {
        UGraph uc = component_graph(r);
        CliqueCover exact = edge_clique_cover_exact(uc);
        SeparatingSystem s = nonadjacent_separating_system(r, exact);
        CHECK(s.sets.size() == exact.cliques.size());
        CHECK(satisfies_nonadjacent_property(s, r, exact));
    }
}

TEST_CASE("bounded non-adjacent separating system") {
    for (const auto& r : tests::random_corpus(25, 3, 8)) {
        UGraph uc = component_graph(r);
        CliqueCover cover = edge_clique_cover_exact(uc);
        int floor_val = 0;
        for (const auto& c : cover.cliques)
            for (size_t i = 0; i < c.size(); ++i)
                for (size_t j = i + 1; j < c.size(); ++j)
                    floor_val = std::max<int>(floor_val, static_cast<int>(r.parents_of_set({c[i], c[j]}).size()));
        for (int m = std::max(floor_val, 1); m <= r.node_count(); ++m) {
            SeparatingSystem sys = nonadjacent_separating_system_bounded(r, cover, m);
            CHECK(max_set_size(sys) <= m);
            CHECK(satisfies_nonadjacent_property(sys, r, cover));
            CHECK(static_cast<int>(sys.sets.size()) <= bounded_nonadjacent_target(r, cover, m, r.node_count()));
        }
        if (floor_val > 0) CHECK_THROWS_AS(nonadjacent_separating_system_bounded(r, cover, floor_val - 1),
                                           std::invalid_argument);
        // a wide bound reproduces the unbounded parent sets
        SeparatingSystem wide = nonadjacent_separating_system_bounded(r, cover, r.node_count());
        SeparatingSystem unbounded = nonadjacent_separating_system(r, cover);
        for (const auto& c : cover.cliques) {
            if (c.size() < 2) continue;
            CHECK(std::find(wide.sets.begin(), wide.sets.end(), r.parents_of_set(c)) != wide.sets.end());
        }
        (void)unbounded;
    }
}

TEST_CASE("strong edge coloring") {
    UGraph single(2);
    single.add_edge(0, 1);
    CHECK(strong_edge_coloring_greedy(single).class_count() == 1);
    CHECK(strong_edge_coloring_exact(single).class_count() == 1);

    UGraph star(4);  // all edges share node 0: three classes
    star.add_edge(0, 1);
    star.add_edge(0, 2);
    star.add_edge(0, 3);
    CHECK(strong_edge_coloring_greedy(star).class_count() == 3);
    CHECK(strong_edge_coloring_exact(star).class_count() == 3);

    // the six-node instance's skeleton needs exactly five classes
    UGraph skel = directed_skeleton(tests::dag_six());
    CHECK(strong_edge_coloring_exact(skel).class_count() == 5);

    CHECK_THROWS_AS(strong_edge_coloring_exact(complete_ugraph(6), 10), std::runtime_error);

    for (const auto& g : tests::random_corpus(25, 2, 8)) {
        UGraph u = directed_skeleton(g);
        StrongEdgeColoring greedy = strong_edge_coloring_greedy(u);
        const int d = u.max_degree();
        if (d > 0) CHECK(greedy.class_count() <= 2 * d * d);
        for (const auto& cls : greedy.classes)
            for (size_t i = 0; i < cls.size(); ++i)
                for (size_t j = i + 1; j < cls.size(); ++j) CHECK(!detail::edges_conflict(u, cls[i], cls[j]));
        StrongEdgeColoring exact = strong_edge_coloring_exact(u);
        CHECK(exact.class_count() <= greedy.class_count());
        for (const auto& cls : exact.classes)
            for (size_t i = 0; i < cls.size(); ++i)
                for (size_t j = i + 1; j < cls.size(); ++j) CHECK(!detail::edges_conflict(u, cls[i], cls[j]));
    }
}

TEST_CASE("adjacent separating system") {
    // single directed edge: I is empty, I' holds the tail
    Dmg one = make_dmg(2, {{0, 1}});
    SeparatingSystem sys = adjacent_separating_system(one, strong_edge_coloring_exact(directed_skeleton(one)));
    REQUIRE(sys.pair_sets.size() == 1);
    CHECK(sys.pair_sets[0].first.empty());
    CHECK(sys.pair_sets[0].second == std::vector<int>{0});

    // collider chain 0 -> 1 <- 2 with singleton classes
    Dmg chain = make_dmg(3, {{0, 1}, {2, 1}});
    StrongEdgeColoring manual;
    manual.classes = {{{0, 1}}, {{1, 2}}};
    SeparatingSystem csys = adjacent_separating_system(chain, manual);
    REQUIRE(csys.pair_sets.size() == 2);
    CHECK(csys.pair_sets[0].first == std::vector<int>{2});
    CHECK(csys.pair_sets[0].second == std::vector<int>{0, 2});
    CHECK(csys.pair_sets[1].first == std::vector<int>{0});
    CHECK(csys.pair_sets[1].second == std::vector<int>{0, 2});
    CHECK(satisfies_adjacent_property(csys, chain));

    // malformed colorings are rejected
    StrongEdgeColoring missing;
    missing.classes = {{{0, 1}}};
    CHECK_THROWS_AS(adjacent_separating_system(chain, missing), std::invalid_argument);
    StrongEdgeColoring merged;
    merged.classes = {{{0, 1}, {1, 2}}};
    CHECK_THROWS_AS(adjacent_separating_system(chain, merged), std::invalid_argument);

    for (const auto& g : tests::random_corpus(25, 2, 8)) {
        UGraph skel = directed_skeleton(g);
        StrongEdgeColoring sec = strong_edge_coloring_exact(skel);
        SeparatingSystem s = adjacent_separating_system(g, sec);
        CHECK(s.pair_sets.size() == static_cast<size_t>(sec.class_count()));
        CHECK(satisfies_adjacent_property(s, g));
    }
}

TEST_CASE("bounded adjacent separating system") {
    for (const auto& g : tests::random_corpus(25, 3, 8)) {
        UGraph skel = directed_skeleton(g);
        StrongEdgeColoring sec = strong_edge_coloring_exact(skel);
        int floor_val = 0;
        for (auto [u, v] : skel.edges())
            floor_val = std::max<int>(floor_val, static_cast<int>(g.parents_of_set({u, v}).size()));
        for (int m = std::max(floor_val, 1); m <= g.node_count(); ++m) {
            SeparatingSystem sys = adjacent_separating_system_bounded(g, sec, m);
            CHECK(max_set_size(sys) <= m);
            CHECK(satisfies_adjacent_property(sys, g));
            CHECK(2 * static_cast<int>(sys.pair_sets.size()) <= bounded_adjacent_target(g, sec, m, g.node_count()));
        }
        // a single-edge class yields exactly one pair
        if (skel.edge_count() == 1 && floor_val <= g.node_count()) {
            SeparatingSystem sys = adjacent_separating_system_bounded(g, sec, std::max(floor_val, 1));
            CHECK(sys.pair_sets.size() == 1);
        }
        // wide bound matches the unbounded construction
        SeparatingSystem wide = adjacent_separating_system_bounded(g, sec, g.node_count());
        SeparatingSystem unbounded = adjacent_separating_system(g, sec);
        for (const auto& ps : unbounded.pair_sets)
            CHECK(std::find(wide.pair_sets.begin(), wide.pair_sets.end(), ps) != wide.pair_sets.end());
    }
}

namespace {

// test-side minimality oracles, deliberately plain

void all_maximal_cliques(const UGraph& u, std::vector<std::vector<int>>& out) {
    std::vector<int> p;
    for (int v = 0; v < u.node_count(); ++v)
        if (u.degree(v) > 0) p.push_back(v);
    if (p.empty()) return;
    detail::maximal_cliques_with(u, {}, p, {}, out);
}

bool some_subset_covers(const UGraph& u, const std::vector<std::vector<int>>& cliques, size_t k, size_t start,
                        std::vector<const std::vector<int>*>& chosen) {
    if (chosen.size() == k) {
        for (auto [a, b] : u.edges()) {
            bool covered = false;
            for (const auto* c : chosen)
                if (detail::contains_sorted(*c, a) && detail::contains_sorted(*c, b)) covered = true;
            if (!covered) return false;
        }
        return true;
    }
    for (size_t i = start; i < cliques.size(); ++i) {
        chosen.push_back(&cliques[i]);
        if (some_subset_covers(u, cliques, k, i + 1, chosen)) return true;
        chosen.pop_back();
    }
    return false;
}

bool colorable_with(const UGraph& u, const std::vector<std::pair<int, int>>& edges, std::vector<int>& color,
                    size_t idx, int k) {
    if (idx == edges.size()) return true;
    for (int c = 0; c < k; ++c) {
        bool ok = true;
        for (size_t f = 0; f < idx; ++f)
            if (color[f] == c && detail::edges_conflict(u, edges[idx], edges[f])) ok = false;
        if (!ok) continue;
        color[idx] = c;
        if (colorable_with(u, edges, color, idx + 1, k)) return true;
    }
    color[idx] = -1;
    return false;
}

}  // namespace

TEST_CASE("exact clique cover is minimal against exhaustive search") {
    for (const auto& g : tests::random_corpus(20, 3, 6)) {
        UGraph uc = component_graph(g);
        size_t best = edge_clique_cover_exact(uc).cliques.size();
        if (uc.edge_count() == 0) {
            CHECK(best == 0);
            continue;
        }
        std::vector<std::vector<int>> cliques;
        all_maximal_cliques(uc, cliques);
        std::sort(cliques.begin(), cliques.end());
        if (best > 0) {
            std::vector<const std::vector<int>*> chosen;
            CHECK_FALSE(some_subset_covers(uc, cliques, best - 1, 0, chosen));
            chosen.clear();
            CHECK(some_subset_covers(uc, cliques, best, 0, chosen));
        }
    }
}

TEST_CASE("exact strong edge coloring is minimal against exhaustive search") {
    for (const auto& g : tests::random_corpus(20, 3, 6)) {
        UGraph skel = directed_skeleton(g);
        if (skel.edge_count() == 0 || skel.edge_count() > 9) continue;
        int best = strong_edge_coloring_exact(skel).class_count();
        auto edges = skel.edges();
        std::vector<int> color(edges.size(), -1);
        CHECK(colorable_with(skel, edges, color, 0, best));
        if (best > 1) {
            std::fill(color.begin(), color.end(), -1);
            CHECK_FALSE(colorable_with(skel, edges, color, 0, best - 1));
        }
    }
}
