#include "graph_entropy/structure.hpp"

#include <algorithm>
#include <stdexcept>

namespace graph_entropy {

namespace {

Json vertex_list(VertexSet s)
{
    Json out = Json::array();
    for (int v : s)
        out.push_back(v + 1);
    return out;
}

Json pair_list(const std::vector<std::pair<int, int>>& pairs)
{
    Json out = Json::array();
    for (auto [a, b] : pairs)
        out.push_back(Json::array({a + 1, b + 1}));
    return out;
}

BipartiteView restrict_view(const BipartiteView& b, VertexSet left, VertexSet right)
{
    BipartiteView out{left, right, {}};
    for (auto e : b.edges)
        if (left.contains(e.first) && right.contains(e.second))
            out.edges.push_back(e);
    return out;
}

}  // namespace

BipartiteMatching bipartite_max_matching(const BipartiteView& b)
{
    std::vector<int> mate_of_right(max_vertices, -1);
    std::vector<VertexSet> adj(max_vertices);
    for (auto [s, t] : b.edges)
        adj[s].insert(t);

    auto augment = [&](auto&& self, int a, VertexSet& visited) -> bool {
        for (int t : adj[a]) {
            if (visited.contains(t))
                continue;
            visited.insert(t);
            if (mate_of_right[t] == -1 || self(self, mate_of_right[t], visited)) {
                mate_of_right[t] = a;
                return true;
            }
        }
        return false;
    };
    for (int a : b.left) {
        VertexSet visited;
        augment(augment, a, visited);
    }

    BipartiteMatching out;
    for (int t : b.right)
        if (mate_of_right[t] != -1)
            out.emplace_back(mate_of_right[t], t);
    std::sort(out.begin(), out.end());
    return out;
}

SaturatingWitness find_saturating_subset(const BipartiteView& b)
{
    if (b.left.intersects(b.right))
        throw std::invalid_argument("bipartite sides overlap");
    if (b.right.empty() || b.left.size() < b.right.size())
        throw std::invalid_argument("saturating subset needs |A| >= |B| >= 1");
    if (b.edges.empty())
        throw std::invalid_argument("saturating subset needs a nonempty bipartite graph");

    BipartiteView view = b;
    for (;;) {
        BipartiteMatching m = bipartite_max_matching(view);
        const VertexSet reach = view.neighborhood_of_left(view.left);
        if (static_cast<int>(m.size()) == reach.size())
            return {view.left, m, reach};

        // Alternating-path closure from the unmatched left vertices.
        std::vector<int> mate_of_right(max_vertices, -1);
        VertexSet matched_left;
        for (auto [a, t] : m) {
            mate_of_right[t] = a;
            matched_left.insert(a);
        }
        VertexSet x = view.left - matched_left;
        VertexSet frontier = x;
        while (!frontier.empty()) {
            int a = frontier.front();
            frontier.erase(a);
            for (int t : view.neighbors_of_left(a)) {
                int partner = mate_of_right[t];
                if (partner != -1 && !x.contains(partner)) {
                    x.insert(partner);
                    frontier.insert(partner);
                }
            }
        }
        const VertexSet nx = view.neighborhood_of_left(x);
        if (nx.empty())
            return {x, {}, {}};
        view = restrict_view(view, x, nx);
    }
}

bool validate_saturating_witness(const BipartiteView& b, const SaturatingWitness& w)
{
    if (w.a_prime.empty() || !w.a_prime.is_subset_of(b.left))
        return false;
    if (w.saturated != b.neighborhood_of_left(w.a_prime))
        return false;
    VertexSet used_left, used_right;
    for (auto e : w.matching) {
        if (std::find(b.edges.begin(), b.edges.end(), e) == b.edges.end())
            return false;
        if (!w.a_prime.contains(e.first) || !w.saturated.contains(e.second))
            return false;
        if (used_left.contains(e.first) || used_right.contains(e.second))
            return false;
        used_left.insert(e.first);
        used_right.insert(e.second);
    }
    return used_right == w.saturated;
}

std::optional<Decomposition> decomposition_for(const Graph& g, VertexSet s)
{
    VertexSet c = co_neighborhood_set(g, s);
    if (c.size() < s.size())
        return std::nullopt;
    BipartiteView view = bipartite_induced(g, c, s);
    BipartiteMatching m = bipartite_max_matching(view);
    if (static_cast<int>(m.size()) != s.size())
        return std::nullopt;
    Decomposition d;
    d.s = s;
    d.matching = std::move(m);
    d.c_s = c;
    d.d_s = c | s;
    d.remainder = remove_vertices(g, d.d_s);
    return d;
}

std::optional<Decomposition> find_reducible_set(const Graph& g, int cap)
{
    if (!g.is_undirected() || !loops(g).empty())
        throw std::invalid_argument("reducible-set search needs a simple graph");
    const int n = g.order();
    if (n > cap)
        throw std::invalid_argument("reducible-set search on " + std::to_string(n) +
                                    " vertices exceeds the cap of " + std::to_string(cap));
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (int k = 1; k <= n; ++k) {
        // Gosper's hack: k-subsets in increasing numeric order.
        std::uint64_t s = (std::uint64_t{1} << k) - 1;
        while (s < limit) {
            if (auto d = decomposition_for(g, VertexSet(s)))
                return d;
            std::uint64_t lo = s & (~s + 1);
            std::uint64_t hi = s + lo;
            s = (((hi ^ s) >> 2) / lo) | hi;
        }
    }
    return std::nullopt;
}

bool validate_decomposition(const Graph& g, const Decomposition& d)
{
    if (d.s.empty() || !d.s.is_subset_of(g.vertices()))
        return false;
    const VertexSet c = co_neighborhood_set(g, d.s);
    if (c != d.c_s || d.d_s != (c | d.s) || !is_independent(g, c))
        return false;
    VertexSet used_c, used_s;
    for (auto [ci, si] : d.matching) {
        if (!c.contains(ci) || !d.s.contains(si) || !g.has_edge(ci, si))
            return false;
        if (used_c.contains(ci) || used_s.contains(si))
            return false;
        used_c.insert(ci);
        used_s.insert(si);
    }
    if (used_s != d.s)
        return false;
    InducedSubgraph rest = remove_vertices(g, d.d_s);
    return rest.graph == d.remainder.graph && rest.original == d.remainder.original;
}

CandidateReport certify_entropy_minimal_candidate(const Graph& g, int cap)
{
    CandidateReport r;
    r.reducible = find_reducible_set(g, cap);
    r.max_matching = max_matching(g);
    const VertexSet m = r.max_matching.matched;
    if (m.empty()) {
        r.c_of_m = g.vertices();
        r.c_of_m_small = false;
    } else {
        r.c_of_m = co_neighborhood_set(g, m);
        r.c_of_m_small = r.c_of_m.size() < m.size();
        if (!r.c_of_m_small) {
            BipartiteView view = bipartite_induced(g, r.c_of_m, m);
            if (!view.edges.empty()) {
                r.bipartite_witness = find_saturating_subset(view);
                if (!r.bipartite_witness->saturated.empty())
                    r.derived = decomposition_for(g, r.bipartite_witness->saturated);
            }
        }
    }
    r.candidate = !r.reducible && r.c_of_m_small;
    return r;
}

EntropyBracket apply_decomposition(const Graph& g, const Decomposition& d,
                                   const EntropyBracket& remainder)
{
    if (!validate_decomposition(g, d))
        throw std::invalid_argument("decomposition does not validate against the graph");

    // Reducing c(S) closes every s_i -> c_i -> s_i into a loop, and the loop
    // vertices S then leave exactly G - d(S).
    Graph reduced = i_reduction(g, d.c_s);
    const std::vector<int> kept = (g.vertices() - d.c_s).to_vector();
    VertexSet s_in_reduced;
    for (std::size_t k = 0; k < kept.size(); ++k)
        if (d.s.contains(kept[k]))
            s_in_reduced.insert(static_cast<int>(k));
    if (!s_in_reduced.is_subset_of(loops(reduced)))
        throw std::logic_error("reduction of c(S) did not loop every vertex of S");
    Graph stripped = remove_vertices(reduced, s_in_reduced).graph;
    if (stripped.order() != d.remainder.graph.order() ||
        stripped.arcs() != d.remainder.graph.arcs())
        throw std::logic_error("reduced graph minus S differs from G - d(S)");

    const int k = d.s.size();
    EntropyBracket b;
    b.lower = remainder.lower + k;
    b.upper = remainder.upper + k;
    b.lower_tag = LowerTag::CodeExtension;
    b.upper_tag = UpperTag::IReduction;
    b.lower_witness = {{"S", vertex_list(d.s)},
                       {"matching", pair_list(d.matching)},
                       {"remainder_vertices", Json::array()},
                       {"remainder", to_json(remainder)}};
    for (int v : d.remainder.original)
        b.lower_witness["remainder_vertices"].push_back(v + 1);
    b.upper_witness = {{"reduced_set", vertex_list(d.c_s)}, {"looped", vertex_list(d.s)}};
    return b;
}

Json to_json(const SaturatingWitness& w)
{
    return {{"a_prime", vertex_list(w.a_prime)},
            {"matching", pair_list(w.matching)},
            {"saturated", vertex_list(w.saturated)}};
}

Json to_json(const Decomposition& d)
{
    Json rest = Json::array();
    for (int v : d.remainder.original)
        rest.push_back(v + 1);
    return {{"S", vertex_list(d.s)},
            {"c_S", vertex_list(d.c_s)},
            {"d_S", vertex_list(d.d_s)},
            {"matching", pair_list(d.matching)},
            {"remainder_vertices", rest}};
}

Json to_json(const CandidateReport& r)
{
    Json out;
    out["candidate"] = r.candidate;
    out["reducible"] = r.reducible ? to_json(*r.reducible) : Json(nullptr);
    out["matched_vertices"] = vertex_list(r.max_matching.matched);
    out["c_of_m"] = vertex_list(r.c_of_m);
    out["c_of_m_size"] = r.c_of_m.size();
    out["m_size"] = r.max_matching.matched.size();
    out["c_of_m_smaller"] = r.c_of_m_small;
    out["bipartite_witness"] = r.bipartite_witness ? to_json(*r.bipartite_witness) : Json(nullptr);
    out["derived_decomposition"] = r.derived ? to_json(*r.derived) : Json(nullptr);
    return out;
}

}  // namespace graph_entropy
