#include "graph_entropy/graph.hpp"
#include "graph_entropy/graph_io.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace graph_entropy;

namespace {

VertexSet vs(std::initializer_list<int> one_based)
{
    VertexSet s;
    for (int v : one_based)
        s.insert(v - 1);
    return s;
}

Graph g1()
{
    return Graph::from_edges(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {5, 6}, {5, 0}, {5, 1}, {6, 3}});
}

}  // namespace

TEST_CASE("vertex set basics", "[graph]")
{
    VertexSet s = vs({1, 3, 5});
    CHECK(s.size() == 3);
    CHECK(s.contains(2));
    CHECK_FALSE(s.contains(1));
    CHECK(to_string(s) == "{1,3,5}");
    CHECK((s - vs({3})) == vs({1, 5}));
    CHECK(s.front() == 0);
    CHECK(s.back() == 4);
    CHECK(VertexSet::range(64).size() == 64);
}

TEST_CASE("undirected graphs store symmetric arcs", "[graph]")
{
    Graph c5 = cycle_graph(5);
    CHECK(c5.is_undirected());
    CHECK(c5.is_symmetric());
    CHECK(c5.edge_count() == 5);
    CHECK(c5.arc_count() == 10);
    CHECK_THROWS_AS(c5.add_arc(0, 2), std::logic_error);
    CHECK_THROWS(Graph(65));
}

TEST_CASE("induced subgraph", "[graph]")
{
    Graph c5 = cycle_graph(5);
    CHECK(induced_subgraph(c5, c5.vertices()).graph == c5);
    auto p = induced_subgraph(c5, vs({1, 2, 3}));
    CHECK(p.graph == path_graph(3));
    CHECK(p.original == std::vector<int>{0, 1, 2});
    CHECK(induced_subgraph(g1(), vs({1, 2, 3, 4, 5})).graph == c5);
    CHECK_THROWS_AS(induced_subgraph(c5, vs({6})), std::out_of_range);
}

TEST_CASE("bipartite view", "[graph]")
{
    Graph c5 = cycle_graph(5);
    CHECK(bipartite_induced(c5, vs({1}), vs({2})).edges == std::vector<std::pair<int, int>>{{0, 1}});
    CHECK(bipartite_induced(c5, vs({1}), vs({3})).edges.empty());
    auto b = bipartite_induced(g1(), vs({6, 7}), vs({1, 2, 3, 4, 5}));
    std::vector<std::pair<int, int>> expect = {{5, 0}, {5, 1}, {6, 3}};
    CHECK(b.edges == expect);
    CHECK_THROWS_AS(bipartite_induced(c5, vs({1, 2}), vs({2})), std::invalid_argument);
    CHECK_THROWS_AS(bipartite_induced(cycle_graph(3).as_directed(), vs({1}), vs({2})),
                    std::invalid_argument);
}

TEST_CASE("bipartite edges split the induced edge count", "[graph][property]")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Graph g = oracle::random_graph(rng, 8, 0.5);
        VertexSet s(rng() & 0xff), t(rng() & 0xff);
        t = t - s;
        auto b = bipartite_induced(g, s, t);
        int inner = induced_subgraph(g, s).graph.edge_count() + induced_subgraph(g, t).graph.edge_count();
        CHECK(static_cast<int>(b.edges.size()) + inner == induced_subgraph(g, s | t).graph.edge_count());
    }
}

TEST_CASE("neighbourhoods", "[graph]")
{
    Graph c5 = cycle_graph(5);
    CHECK(neighborhood(c5, vs({1})) == vs({2, 5}));
    CHECK(neighborhood(c5, VertexSet{}).empty());
    CHECK(neighborhood(g1(), vs({6})) == vs({1, 2, 7}));

    Graph d(3, GraphKind::Directed);
    d.add_arc(0, 1);
    d.add_arc(2, 1);
    CHECK(neighborhood(d, vs({2})) == vs({1, 3}));
    CHECK(neighborhood(d, vs({1})).empty());
}

TEST_CASE("c(S)", "[graph]")
{
    Graph star = star_graph(3);
    CHECK(co_neighborhood_set(star, vs({1})) == vs({2, 3, 4}));
    CHECK(co_neighborhood_set(cycle_graph(5), vs({2})).empty());
    // N(v2) = {v1, v3, v6}, so only a vertex whose neighbours all lie in
    // {v1, v3} qualifies; v2 is the only candidate and it sees v6.
    CHECK(co_neighborhood_set(g1(), vs({1, 3})).empty());
    CHECK(co_neighborhood_set(g1(), vs({1, 3, 6})) == vs({2}));
    CHECK_THROWS_AS(co_neighborhood_set(star, VertexSet{}), std::invalid_argument);
}

TEST_CASE("c(S) is always independent", "[graph][property]")
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        Graph g = oracle::random_graph(rng, 7, 0.4);
        VertexSet s(rng() & 0x7f);
        if (s.empty())
            continue;
        CHECK(is_independent(g, co_neighborhood_set(g, s)));
    }
}

TEST_CASE("I-reduction examples", "[graph]")
{
    Graph path(3, GraphKind::Directed);
    path.add_arc(0, 1);
    path.add_arc(1, 2);
    Graph r = i_reduction(path, vs({2}));
    CHECK(r.order() == 2);
    CHECK(r.arcs() == std::vector<std::pair<int, int>>{{0, 1}});

    Graph c5 = cycle_graph(5);
    CHECK(i_reduction(c5, VertexSet{}) == c5);

    // Through v1: v2 -> v5, v5 -> v2, and loops on both endpoints.
    Graph red = i_reduction(c5.as_directed(), vs({1}));
    CHECK(red == oracle::i_reduction(c5.as_directed(), 1));
    CHECK(red.has_edge(0, 3));
    CHECK(red.has_loop(0));
    CHECK(red.has_loop(3));
    CHECK(red.arc_count() == 6 + 2 + 2);

    CHECK_THROWS_AS(i_reduction(c5, vs({1, 2})), std::invalid_argument);
}

TEST_CASE("I-reduction agrees with the path oracle", "[graph][property]")
{
    std::mt19937 rng(21);
    int checked = 0;
    while (checked < 200) {
        Graph g = oracle::random_digraph(rng, 6, 0.3);
        std::uint64_t I = rng() & 0x3f;
        if (!is_acyclic(g, VertexSet(I)))
            continue;
        Graph got = i_reduction(g, VertexSet(I));
        CHECK(got.as_directed() == oracle::i_reduction(g, I));
        ++checked;
    }
}

TEST_CASE("I-reduction keeps cycles that avoid I", "[graph][property]")
{
    std::mt19937 rng(8);
    for (int trial = 0; trial < 150; ++trial) {
        Graph g = oracle::random_digraph(rng, 6, 0.35);
        std::uint64_t I = rng() & 0x3f;
        if (!is_acyclic(g, VertexSet(I)))
            continue;
        Graph r = i_reduction(g, VertexSet(I));
        std::vector<int> map;
        for (int v = 0; v < 6; ++v)
            if (!((I >> v) & 1U))
                map.push_back(v);
        // Every arc between surviving vertices is kept, so every cycle avoiding I is too.
        for (std::size_t a = 0; a < map.size(); ++a)
            for (std::size_t b = 0; b < map.size(); ++b)
                if (g.has_arc(map[a], map[b]))
                    CHECK(r.has_arc(static_cast<int>(a), static_cast<int>(b)));
    }
}

TEST_CASE("loops, unions, complements, acyclicity", "[graph]")
{
    CHECK(loops(cycle_graph(5)).empty());
    Graph c5 = cycle_graph(5);
    Graph comp = complement(c5);
    CHECK(comp.edge_count() == 5);
    CHECK(oracle::canonical_bits(comp) == oracle::canonical_bits(c5));
    Graph u = disjoint_union(c5, complete_graph(2));
    CHECK(u.order() == 7);
    CHECK(u.edge_count() == 6);
    CHECK(components(u).size() == 2);

    Graph d(3, GraphKind::Directed);
    d.add_arc(0, 1);
    d.add_arc(1, 2);
    CHECK(is_acyclic(d));
    d.add_arc(2, 0);
    CHECK_FALSE(is_acyclic(d));
    CHECK_FALSE(is_acyclic(path_graph(2)));
    Graph l(1, GraphKind::Directed);
    l.add_arc(0, 0);
    CHECK(loops(l) == vs({1}));
    CHECK_FALSE(is_acyclic(l));
}

TEST_CASE("graph text formats", "[graph][io]")
{
    Graph c5 = parse_graph("5; 1-2,2-3,3-4,4-5,5-1");
    CHECK(c5 == cycle_graph(5));
    CHECK(render_graph(c5, GraphFormat::EdgeList) == "5; 1-2,1-5,2-3,3-4,4-5");

    Graph l = parse_graph("2; 1->1, 1->2");
    CHECK(!l.is_undirected());
    CHECK(l.has_loop(0));
    CHECK(l.has_arc(0, 1));
    CHECK_FALSE(l.has_arc(1, 0));

    Graph d = parse_graph("D~{");
    CHECK(d.order() == 5);
    CHECK(parse_graph(render_graph(d, GraphFormat::Graph6)) == d);
    CHECK(parse_graph(">>graph6<<D~{") == d);

    CHECK(render_graph(cycle_graph(5), GraphFormat::Graph6) == "Dhc");
    CHECK(parse_graph("Dhc") == cycle_graph(5));

    CHECK_THROWS_AS(parse_graph("5; 1-7"), std::invalid_argument);
    CHECK_THROWS_AS(parse_graph("x; 1-2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_graph("D~"), std::invalid_argument);
    CHECK_THROWS_AS(parse_graph("5; 1-2,,2-3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_graph("~??~"), std::invalid_argument);
    CHECK_THROWS_AS(render_graph(l, GraphFormat::Graph6), std::invalid_argument);
    CHECK_THROWS_AS(render_graph(l, GraphFormat::EdgeList), std::invalid_argument);
}

TEST_CASE("formats round-trip on random graphs", "[graph][io][property]")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        int n = static_cast<int>(rng() % 13);
        Graph g = oracle::random_graph(rng, n, 0.4);
        for (auto f : {GraphFormat::Graph6, GraphFormat::EdgeList})
            CHECK(parse_graph(render_graph(g, f), f) == g);
        Graph d = oracle::random_digraph(rng, n, 0.3, 0.2);
        CHECK(parse_graph(render_graph(d, GraphFormat::ArcList), GraphFormat::ArcList) == d);
    }
}
