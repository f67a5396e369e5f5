#pragma once

#include "graph_entropy/vertex_set.hpp"

#include <utility>
#include <vector>

namespace graph_entropy {

enum class GraphKind { Directed, Undirected };

/// A digraph on vertices 0..n-1 (n <= 64) with loops allowed. Undirected
/// graphs are the symmetric case: an edge uv is the arc pair (u,v), (v,u).
/// Rows are kept for both out- and in-neighbourhoods.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n, GraphKind kind = GraphKind::Undirected);

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);
    static Graph from_arcs(int n, const std::vector<std::pair<int, int>>& arcs);

    int order() const { return n_; }
    GraphKind kind() const { return kind_; }
    bool is_undirected() const { return kind_ == GraphKind::Undirected; }
    VertexSet vertices() const { return VertexSet::range(n_); }

    /// Undirected: adds the edge. Directed: adds both arcs.
    void add_edge(int u, int v);
    /// Directed graphs only.
    void add_arc(int u, int v);
    void remove_edge(int u, int v);
    void remove_arc(int u, int v);

    bool has_arc(int u, int v) const { return out_[check(u)].contains(check(v)); }
    bool has_loop(int v) const { return has_arc(v, v); }
    /// True when both (u,v) and (v,u) are arcs.
    bool has_edge(int u, int v) const { return has_arc(u, v) && has_arc(v, u); }

    VertexSet out_neighbors(int v) const { return out_[check(v)]; }
    VertexSet in_neighbors(int v) const { return in_[check(v)]; }
    /// Neighbours through mutual arcs, loops excluded.
    VertexSet mutual_neighbors(int v) const
    {
        return (out_[check(v)] & in_[v]) - VertexSet::single(v);
    }

    int arc_count() const;
    /// Undirected graphs: number of edges, loops counted once.
    int edge_count() const;
    std::vector<std::pair<int, int>> edges() const;
    std::vector<std::pair<int, int>> arcs() const;

    /// Relation is symmetric.
    bool is_symmetric() const;
    /// Reinterpret as a directed graph with the same arc relation.
    Graph as_directed() const;

    /// Throws std::out_of_range when s contains vertices >= n.
    void check_subset(VertexSet s) const;

    bool operator==(const Graph& o) const
    {
        return n_ == o.n_ && kind_ == o.kind_ && out_ == o.out_;
    }

private:
    int check(int v) const;

    int n_ = 0;
    GraphKind kind_ = GraphKind::Undirected;
    std::vector<VertexSet> out_;
    std::vector<VertexSet> in_;
};

/// D[S] relabelled densely in increasing order; original[i] is the host
/// label of new vertex i.
struct InducedSubgraph {
    Graph graph;
    std::vector<int> original;
};

/// G[S, T] for disjoint S, T; edges are (s, t) pairs in host labels.
struct BipartiteView {
    VertexSet left;
    VertexSet right;
    std::vector<std::pair<int, int>> edges;

    VertexSet neighbors_of_left(int a) const;
    VertexSet neighbors_of_right(int b) const;
    VertexSet neighborhood_of_left(VertexSet a) const;
};

InducedSubgraph induced_subgraph(const Graph& g, VertexSet s);
/// D - S.
InducedSubgraph remove_vertices(const Graph& g, VertexSet s);

/// Throws std::invalid_argument for overlapping sets or a directed host.
BipartiteView bipartite_induced(const Graph& g, VertexSet s, VertexSet t);

/// N(S): union of in-neighbourhoods (the open neighbourhood when undirected).
VertexSet neighborhood(const Graph& g, VertexSet s);

/// c(S) = {v outside S : N(v) within S}. Throws on empty S.
VertexSet co_neighborhood_set(const Graph& g, VertexSet s);

/// D^{-I}: deletes I and adds an arc u->v whenever u, i1, ..., ik, v is a
/// directed path through I (u == v gives a loop). Surviving vertices keep
/// their relative order. Throws std::invalid_argument if D[I] has a cycle.
Graph i_reduction(const Graph& g, VertexSet i);

VertexSet loops(const Graph& g);
Graph disjoint_union(const Graph& a, const Graph& b);
/// Loop-free complement.
Graph complement(const Graph& g);
/// No directed cycle; loops and undirected edges are cycles.
bool is_acyclic(const Graph& g);
bool is_acyclic(const Graph& g, VertexSet s);
/// Weakly connected components, each listed by its lowest vertex first.
std::vector<VertexSet> components(const Graph& g);
bool is_independent(const Graph& g, VertexSet s);
/// Pairwise mutual arcs (loops ignored).
bool is_clique(const Graph& g, VertexSet s);

// Named graphs.
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph path_graph(int n);
Graph empty_graph(int n);
Graph star_graph(int leaves);

}  // namespace graph_entropy
