#include "graph_entropy/graph.hpp"

#include <stdexcept>
#include <string>

namespace graph_entropy {

std::string to_string(VertexSet s)
{
    std::string out = "{";
    bool first = true;
    for (int v : s) {
        if (!first)
            out += ',';
        out += std::to_string(v + 1);
        first = false;
    }
    return out + "}";
}

Graph::Graph(int n, GraphKind kind) : n_(n), kind_(kind), out_(n), in_(n)
{
    if (n < 0 || n > max_vertices)
        throw std::invalid_argument("graph order " + std::to_string(n) + " outside 0.." +
                                    std::to_string(max_vertices));
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges)
{
    Graph g(n, GraphKind::Undirected);
    for (auto [u, v] : edges)
        g.add_edge(u, v);
    return g;
}

Graph Graph::from_arcs(int n, const std::vector<std::pair<int, int>>& arcs)
{
    Graph g(n, GraphKind::Directed);
    for (auto [u, v] : arcs)
        g.add_arc(u, v);
    return g;
}

int Graph::check(int v) const
{
    if (v < 0 || v >= n_)
        throw std::out_of_range("vertex " + std::to_string(v) + " outside 0.." +
                                std::to_string(n_ - 1));
    return v;
}

void Graph::check_subset(VertexSet s) const
{
    if (!s.is_subset_of(vertices()))
        throw std::out_of_range("vertex set " + to_string(s) + " exceeds graph order " +
                                std::to_string(n_));
}

void Graph::add_edge(int u, int v)
{
    check(u);
    check(v);
    out_[u].insert(v);
    in_[v].insert(u);
    out_[v].insert(u);
    in_[u].insert(v);
}

void Graph::add_arc(int u, int v)
{
    if (is_undirected())
        throw std::logic_error("add_arc on an undirected graph; use add_edge");
    check(u);
    check(v);
    out_[u].insert(v);
    in_[v].insert(u);
}

void Graph::remove_edge(int u, int v)
{
    check(u);
    check(v);
    out_[u].erase(v);
    in_[v].erase(u);
    out_[v].erase(u);
    in_[u].erase(v);
}

void Graph::remove_arc(int u, int v)
{
    if (is_undirected())
        throw std::logic_error("remove_arc on an undirected graph; use remove_edge");
    check(u);
    check(v);
    out_[u].erase(v);
    in_[v].erase(u);
}

int Graph::arc_count() const
{
    int total = 0;
    for (auto row : out_)
        total += row.size();
    return total;
}

int Graph::edge_count() const
{
    return static_cast<int>(edges().size());
}

std::vector<std::pair<int, int>> Graph::edges() const
{
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
        for (int v : out_[u])
            if (u <= v && has_arc(v, u))
                out.emplace_back(u, v);
    return out;
}

std::vector<std::pair<int, int>> Graph::arcs() const
{
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
        for (int v : out_[u])
            out.emplace_back(u, v);
    return out;
}

bool Graph::is_symmetric() const
{
    return out_ == in_;
}

Graph Graph::as_directed() const
{
    Graph g = *this;
    g.kind_ = GraphKind::Directed;
    return g;
}

VertexSet BipartiteView::neighbors_of_left(int a) const
{
    VertexSet out;
    for (auto [s, t] : edges)
        if (s == a)
            out.insert(t);
    return out;
}

VertexSet BipartiteView::neighbors_of_right(int b) const
{
    VertexSet out;
    for (auto [s, t] : edges)
        if (t == b)
            out.insert(s);
    return out;
}

VertexSet BipartiteView::neighborhood_of_left(VertexSet a) const
{
    VertexSet out;
    for (auto [s, t] : edges)
        if (a.contains(s))
            out.insert(t);
    return out;
}

InducedSubgraph induced_subgraph(const Graph& g, VertexSet s)
{
    g.check_subset(s);
    InducedSubgraph res{Graph(s.size(), g.kind()), s.to_vector()};
    std::vector<int> index(g.order(), -1);
    for (std::size_t i = 0; i < res.original.size(); ++i)
        index[res.original[i]] = static_cast<int>(i);
    for (int u : s)
        for (int v : g.out_neighbors(u) & s) {
            if (g.is_undirected()) {
                if (u <= v)
                    res.graph.add_edge(index[u], index[v]);
            } else {
                res.graph.add_arc(index[u], index[v]);
            }
        }
    return res;
}

InducedSubgraph remove_vertices(const Graph& g, VertexSet s)
{
    g.check_subset(s);
    return induced_subgraph(g, g.vertices() - s);
}

BipartiteView bipartite_induced(const Graph& g, VertexSet s, VertexSet t)
{
    g.check_subset(s);
    g.check_subset(t);
    if (!g.is_undirected())
        throw std::invalid_argument("bipartite view requires an undirected graph");
    if (s.intersects(t))
        throw std::invalid_argument("bipartite sides " + to_string(s) + " and " + to_string(t) +
                                    " overlap");
    BipartiteView view{s, t, {}};
    for (int u : s)
        for (int v : g.out_neighbors(u) & t)
            view.edges.emplace_back(u, v);
    return view;
}

VertexSet neighborhood(const Graph& g, VertexSet s)
{
    g.check_subset(s);
    VertexSet out;
    for (int v : s)
        out |= g.in_neighbors(v);
    return out;
}

VertexSet co_neighborhood_set(const Graph& g, VertexSet s)
{
    g.check_subset(s);
    if (s.empty())
        throw std::invalid_argument("c(S) is defined for nonempty S only");
    VertexSet out;
    for (int v : g.vertices() - s)
        if (g.in_neighbors(v).is_subset_of(s))
            out.insert(v);
    return out;
}

Graph i_reduction(const Graph& g, VertexSet i)
{
    g.check_subset(i);
    if (!is_acyclic(g, i))
        throw std::invalid_argument("I-reduction needs an acyclic set; " + to_string(i) +
                                    " induces a cycle");
    const VertexSet keep = g.vertices() - i;
    const std::vector<int> kept = keep.to_vector();
    std::vector<int> index(g.order(), -1);
    for (std::size_t k = 0; k < kept.size(); ++k)
        index[kept[k]] = static_cast<int>(k);

    std::vector<VertexSet> reach(g.order());
    for (int u : keep) {
        VertexSet targets = g.out_neighbors(u) & keep;
        VertexSet frontier = g.out_neighbors(u) & i;
        VertexSet seen = frontier;
        while (!frontier.empty()) {
            int x = frontier.front();
            frontier.erase(x);
            targets |= g.out_neighbors(x) & keep;
            VertexSet fresh = (g.out_neighbors(x) & i) - seen;
            seen |= fresh;
            frontier |= fresh;
        }
        reach[u] = targets;
    }

    bool symmetric = true;
    for (int u : keep)
        for (int v : reach[u])
            symmetric = symmetric && reach[v].contains(u);

    Graph out(static_cast<int>(kept.size()),
              g.is_undirected() && symmetric ? GraphKind::Undirected : GraphKind::Directed);
    for (int u : keep)
        for (int v : reach[u]) {
            if (out.is_undirected()) {
                if (u <= v)
                    out.add_edge(index[u], index[v]);
            } else {
                out.add_arc(index[u], index[v]);
            }
        }
    return out;
}

VertexSet loops(const Graph& g)
{
    VertexSet out;
    for (int v = 0; v < g.order(); ++v)
        if (g.has_loop(v))
            out.insert(v);
    return out;
}

Graph disjoint_union(const Graph& a, const Graph& b)
{
    const bool undirected = a.is_undirected() && b.is_undirected();
    Graph g(a.order() + b.order(), undirected ? GraphKind::Undirected : GraphKind::Directed);
    auto copy = [&](const Graph& src, int offset) {
        for (auto [u, v] : src.arcs()) {
            if (undirected) {
                if (u <= v)
                    g.add_edge(u + offset, v + offset);
            } else {
                g.add_arc(u + offset, v + offset);
            }
        }
    };
    copy(a, 0);
    copy(b, a.order());
    return g;
}

Graph complement(const Graph& g)
{
    Graph c(g.order(), g.kind());
    for (int u = 0; u < g.order(); ++u)
        for (int v = 0; v < g.order(); ++v) {
            if (u == v || g.has_arc(u, v))
                continue;
            if (g.is_undirected()) {
                if (u < v)
                    c.add_edge(u, v);
            } else {
                c.add_arc(u, v);
            }
        }
    return c;
}

bool is_acyclic(const Graph& g, VertexSet s)
{
    g.check_subset(s);
    // Repeatedly strip vertices without in-arcs from inside s.
    VertexSet left = s;
    bool progress = true;
    while (progress && !left.empty()) {
        progress = false;
        for (int v : left)
            if (!g.in_neighbors(v).intersects(left)) {
                left.erase(v);
                progress = true;
            }
    }
    return left.empty();
}

bool is_acyclic(const Graph& g)
{
    return is_acyclic(g, g.vertices());
}

std::vector<VertexSet> components(const Graph& g)
{
    std::vector<VertexSet> out;
    VertexSet unseen = g.vertices();
    while (!unseen.empty()) {
        VertexSet comp = VertexSet::single(unseen.front());
        VertexSet frontier = comp;
        while (!frontier.empty()) {
            int v = frontier.front();
            frontier.erase(v);
            VertexSet fresh = (g.out_neighbors(v) | g.in_neighbors(v)) - comp;
            comp |= fresh;
            frontier |= fresh;
        }
        out.push_back(comp);
        unseen -= comp;
    }
    return out;
}

bool is_independent(const Graph& g, VertexSet s)
{
    for (int v : s)
        if ((g.out_neighbors(v) & s).size() != 0)
            return false;
    return true;
}

bool is_clique(const Graph& g, VertexSet s)
{
    for (int v : s)
        if (!(s - VertexSet::single(v)).is_subset_of(g.mutual_neighbors(v)))
            return false;
    return true;
}

Graph cycle_graph(int n)
{
    Graph g(n);
    for (int i = 0; i < n; ++i)
        g.add_edge(i, (i + 1) % n);
    return g;
}

Graph complete_graph(int n)
{
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            g.add_edge(u, v);
    return g;
}

Graph path_graph(int n)
{
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i)
        g.add_edge(i, i + 1);
    return g;
}

Graph empty_graph(int n)
{
    return Graph(n);
}

Graph star_graph(int leaves)
{
    Graph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i)
        g.add_edge(0, i);
    return g;
}

}  // namespace graph_entropy
