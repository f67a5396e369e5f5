#include "graph_entropy/bounds.hpp"

#include "graph_entropy/structure.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
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

bool clique_order(VertexSet a, VertexSet b)
{
    auto va = a.to_vector(), vb = b.to_vector();
    return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
}

}  // namespace

Rational CliqueFamily::total_weight() const
{
    Rational sum;
    for (const auto& w : weights)
        sum += w;
    return sum;
}

Matching max_matching(const Graph& g)
{
    const int n = g.order();
    std::vector<std::vector<int>> adj(n);
    for (int v = 0; v < n; ++v)
        adj[v] = g.mutual_neighbors(v).to_vector();

    std::vector<int> match(n, -1), parent(n), base(n);
    std::vector<char> used(n), blossom(n);

    auto lca = [&](int a, int b) {
        std::vector<char> seen(n, 0);
        for (;;) {
            a = base[a];
            seen[a] = 1;
            if (match[a] == -1)
                break;
            a = parent[match[a]];
        }
        for (;;) {
            b = base[b];
            if (seen[b])
                return b;
            b = parent[match[b]];
        }
    };
    auto mark_path = [&](int v, int b, int child) {
        while (base[v] != b) {
            blossom[base[v]] = blossom[base[match[v]]] = 1;
            parent[v] = child;
            child = match[v];
            v = parent[match[v]];
        }
    };
    auto find_path = [&](int root) {
        std::fill(used.begin(), used.end(), 0);
        std::fill(parent.begin(), parent.end(), -1);
        std::iota(base.begin(), base.end(), 0);
        used[root] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int to : adj[v]) {
                if (base[v] == base[to] || match[v] == to)
                    continue;
                if (to == root || (match[to] != -1 && parent[match[to]] != -1)) {
                    int cur = lca(v, to);
                    std::fill(blossom.begin(), blossom.end(), 0);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (int i = 0; i < n; ++i)
                        if (blossom[base[i]]) {
                            base[i] = cur;
                            if (!used[i]) {
                                used[i] = 1;
                                q.push(i);
                            }
                        }
                } else if (parent[to] == -1) {
                    parent[to] = v;
                    if (match[to] == -1)
                        return to;
                    used[match[to]] = 1;
                    q.push(match[to]);
                }
            }
        }
        return -1;
    };

    for (int v = 0; v < n; ++v) {
        if (match[v] != -1)
            continue;
        int u = find_path(v);
        while (u != -1) {
            int pv = parent[u], next = match[pv];
            match[u] = pv;
            match[pv] = u;
            u = next;
        }
    }

    Matching m;
    for (int v = 0; v < n; ++v)
        if (match[v] > v) {
            m.edges.emplace_back(v, match[v]);
            m.matched.insert(v);
            m.matched.insert(match[v]);
        }
    return m;
}

CliqueFamily maximal_cliques(const Graph& g)
{
    const int n = g.order();
    std::vector<VertexSet> nbr(n);
    for (int v = 0; v < n; ++v)
        nbr[v] = g.mutual_neighbors(v);

    CliqueFamily out;
    auto expand = [&](auto&& self, VertexSet r, VertexSet p, VertexSet x) -> void {
        if (p.empty() && x.empty()) {
            out.cliques.push_back(r);
            return;
        }
        int pivot = -1, best = -1;
        for (int u : p | x) {
            int deg = (p & nbr[u]).size();
            if (deg > best) {
                best = deg;
                pivot = u;
            }
        }
        for (int v : p - nbr[pivot]) {
            self(self, r | VertexSet::single(v), p & nbr[v], x & nbr[v]);
            p.erase(v);
            x.insert(v);
        }
    };
    expand(expand, VertexSet{}, g.vertices(), VertexSet{});
    if (n == 0)
        out.cliques.clear();
    std::sort(out.cliques.begin(), out.cliques.end(), clique_order);
    return out;
}

std::pair<int, CliqueFamily> clique_cover_number(const Graph& g)
{
    const CliqueFamily maximal = maximal_cliques(g);
    const int n = g.order();
    int max_size = 1;
    for (auto c : maximal.cliques)
        max_size = std::max(max_size, c.size());

    // Initial incumbent: greedy, lowest uncovered vertex, largest gain first.
    std::vector<VertexSet> best;
    {
        VertexSet uncovered = g.vertices();
        while (!uncovered.empty()) {
            int v = uncovered.front();
            VertexSet pick;
            int gain = -1;
            for (auto c : maximal.cliques)
                if (c.contains(v) && (c & uncovered).size() > gain) {
                    gain = (c & uncovered).size();
                    pick = c;
                }
            best.push_back(pick);
            uncovered -= pick;
        }
    }

    std::vector<VertexSet> chosen;
    auto search = [&](auto&& self, VertexSet uncovered) -> void {
        if (uncovered.empty()) {
            if (chosen.size() < best.size())
                best = chosen;
            return;
        }
        int need = (uncovered.size() + max_size - 1) / max_size;
        if (static_cast<int>(chosen.size()) + need >= static_cast<int>(best.size()))
            return;
        int v = uncovered.front();
        std::vector<VertexSet> options;
        for (auto c : maximal.cliques)
            if (c.contains(v))
                options.push_back(c);
        std::stable_sort(options.begin(), options.end(), [&](VertexSet a, VertexSet b) {
            return (a & uncovered).size() > (b & uncovered).size();
        });
        for (auto c : options) {
            chosen.push_back(c);
            self(self, uncovered - c);
            chosen.pop_back();
        }
    };
    if (n > 0)
        search(search, g.vertices());

    CliqueFamily cover;
    cover.cliques = best;
    return {static_cast<int>(best.size()), cover};
}

LinearProgram fractional_cover_lp(const Graph& g, const CliqueFamily& cliques)
{
    LinearProgram lp(cliques.cliques.size(), Sense::Minimize);
    for (std::size_t k = 0; k < cliques.cliques.size(); ++k) {
        std::string name = "w";
        for (int v : cliques.cliques[k])
            name += "_" + std::to_string(v + 1);
        lp.set_var_name(k, name);
        lp.set_objective_coeff(k, 1);
    }
    for (int v = 0; v < g.order(); ++v) {
        std::vector<LpTerm> terms;
        for (std::size_t k = 0; k < cliques.cliques.size(); ++k)
            if (cliques.cliques[k].contains(v))
                terms.push_back({k, Rational(1)});
        lp.add_constraint(std::move(terms), Relation::GreaterEqual, 1,
                          "cover_v" + std::to_string(v + 1));
    }
    return lp;
}

FractionalCover fractional_clique_cover_number(const Graph& g)
{
    CliqueFamily maximal = maximal_cliques(g);
    FractionalCover out;
    out.lp = fractional_cover_lp(g, maximal);
    out.solution = solve(out.lp);
    if (out.solution.status != LpStatus::Optimal || !verify_certificates(out.lp, out.solution))
        throw std::logic_error("fractional clique cover program failed to certify");
    out.value = out.solution.objective;
    for (std::size_t k = 0; k < maximal.cliques.size(); ++k)
        if (sgn(out.solution.primal[k]) != 0) {
            out.weights.cliques.push_back(maximal.cliques[k]);
            out.weights.weights.push_back(out.solution.primal[k]);
        }
    return out;
}

bool validate_fractional_cover(const Graph& g, const CliqueFamily& family)
{
    if (family.weights.size() != family.cliques.size())
        return false;
    for (std::size_t k = 0; k < family.cliques.size(); ++k) {
        if (sgn(family.weights[k]) < 0 || !family.cliques[k].is_subset_of(g.vertices()) ||
            !is_clique(g, family.cliques[k]))
            return false;
    }
    for (int v = 0; v < g.order(); ++v) {
        Rational covered;
        for (std::size_t k = 0; k < family.cliques.size(); ++k)
            if (family.cliques[k].contains(v))
                covered += family.weights[k];
        if (covered < 1)
            return false;
    }
    return true;
}

namespace {

// Minimum vertex cover of the loop-free symmetric part, branching on a
// maximum-degree vertex: either it is in the cover or all its neighbours are.
VertexSet min_vertex_cover(const Graph& g, VertexSet alive_init)
{
    VertexSet best = alive_init;
    auto search = [&](auto&& self, VertexSet alive, VertexSet chosen) -> void {
        if (chosen.size() >= best.size())
            return;
        int pick = -1, deg = 0;
        for (int v : alive) {
            int d = (g.mutual_neighbors(v) & alive).size();
            if (d > deg) {
                deg = d;
                pick = v;
            }
        }
        if (pick < 0) {
            best = chosen;
            return;
        }
        if (chosen.size() + 1 >= best.size())
            return;
        self(self, alive - VertexSet::single(pick), chosen | VertexSet::single(pick));
        VertexSet nb = g.mutual_neighbors(pick) & alive;
        self(self, alive - nb - VertexSet::single(pick), chosen | nb);
    };
    search(search, alive_init, VertexSet{});
    return best;
}

// Vertices of a shortest directed cycle inside `alive`, empty if acyclic.
VertexSet shortest_cycle(const Graph& g, VertexSet alive)
{
    VertexSet best;
    int best_len = 0;
    std::vector<int> parent(g.order());
    for (int s : alive) {
        std::fill(parent.begin(), parent.end(), -1);
        std::vector<int> dist(g.order(), -1);
        std::queue<int> q;
        dist[s] = 0;
        q.push(s);
        bool found = false;
        while (!q.empty() && !found) {
            int v = q.front();
            q.pop();
            if (best_len && dist[v] + 1 >= best_len)
                break;
            for (int w : g.out_neighbors(v) & alive) {
                if (w == s) {
                    VertexSet cyc;
                    for (int x = v; x != -1; x = parent[x])
                        cyc.insert(x);
                    best = cyc;
                    best_len = dist[v] + 1;
                    found = true;
                    break;
                }
                if (dist[w] == -1) {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    q.push(w);
                }
            }
        }
    }
    return best;
}

VertexSet min_feedback_set(const Graph& g)
{
    VertexSet best = g.vertices();
    auto search = [&](auto&& self, VertexSet alive, VertexSet chosen) -> void {
        if (chosen.size() >= best.size())
            return;
        VertexSet cycle = shortest_cycle(g, alive);
        if (cycle.empty()) {
            best = chosen;
            return;
        }
        if (chosen.size() + 1 >= best.size())
            return;
        for (int v : cycle)
            self(self, alive - VertexSet::single(v), chosen | VertexSet::single(v));
    };
    search(search, g.vertices(), VertexSet{});
    return best;
}

}  // namespace

std::pair<int, VertexSet> transversal_number(const Graph& g)
{
    VertexSet witness;
    if (g.is_undirected()) {
        VertexSet forced = loops(g);
        witness = forced | min_vertex_cover(g, g.vertices() - forced);
    } else {
        witness = min_feedback_set(g);
    }
    return {witness.size(), witness};
}

LinearProgram shannon_lp(const Graph& g)
{
    const int n = g.order();
    if (n > 20)
        throw std::invalid_argument("Shannon program with 2^" + std::to_string(n) +
                                    " variables is out of reach");
    const std::size_t subsets = std::size_t{1} << n;
    const std::uint64_t full = VertexSet::range(n).bits();
    LinearProgram lp(subsets, Sense::Maximize);
    for (std::size_t s = 0; s < subsets; ++s) {
        std::string name = "h_";
        for (int v = 0; v < n; ++v)
            name += ((s >> v) & 1U) ? '1' : '0';
        lp.set_var_name(s, name);
    }
    lp.set_objective_coeff(full, 1);
    lp.add_constraint(std::vector<LpTerm>{{0, Rational(1)}}, Relation::Equal, 0, "empty");
    for (int v = 0; v < n; ++v)
        lp.add_constraint(std::vector<LpTerm>{{std::size_t{1} << v, Rational(1)}}, Relation::LessEqual, 1,
                          "unit_v" + std::to_string(v + 1));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const std::uint64_t bi = std::uint64_t{1} << i, bj = std::uint64_t{1} << j;
            const std::uint64_t rest = full & ~(bi | bj);
            // Enumerate every S within rest.
            std::uint64_t s = 0;
            do {
                lp.add_constraint({{s | bi, Rational(1)},
                                   {s | bj, Rational(1)},
                                   {s | bi | bj, Rational(-1)},
                                   {s, Rational(-1)}},
                                  Relation::GreaterEqual, 0,
                                  "sub_" + std::to_string(i + 1) + "_" + std::to_string(j + 1) +
                                      "_" + lp.var_name(s).substr(2));
                s = (s - rest) & rest;
            } while (s != 0);
        }
    for (int i = 0; i < n; ++i)
        lp.add_constraint({{full, Rational(1)}, {full & ~(std::uint64_t{1} << i), Rational(-1)}},
                          Relation::GreaterEqual, 0, "mono_v" + std::to_string(i + 1));
    for (int v = 0; v < n; ++v) {
        VertexSet nb = g.in_neighbors(v);
        if (nb.contains(v))
            continue;  // h(N(v) + v) = h(N(v)) holds identically
        lp.add_constraint({{(nb | VertexSet::single(v)).bits(), Rational(1)},
                           {nb.bits(), Rational(-1)}},
                          Relation::Equal, 0, "func_v" + std::to_string(v + 1));
    }
    return lp;
}

ShannonBound shannon_entropy(const Graph& g, int cap)
{
    if (g.order() > cap)
        throw std::invalid_argument("Shannon bound on " + std::to_string(g.order()) +
                                    " vertices exceeds the cap of " + std::to_string(cap) +
                                    "; raise it with --shannon-cap");
    ShannonBound out;
    LinearProgram lp = shannon_lp(g);
    out.solution = solve(lp);
    if (out.solution.status != LpStatus::Optimal || !verify_certificates(lp, out.solution))
        throw std::logic_error("Shannon program failed to certify");
    out.theta = out.solution.objective;
    out.h = out.solution.primal;
    if (!validate_entropic_point(g, out.h))
        throw std::logic_error("Shannon optimum violates the polymatroid constraints");
    return out;
}

bool validate_entropic_point(const Graph& g, const std::vector<Rational>& h)
{
    const int n = g.order();
    const std::size_t subsets = std::size_t{1} << n;
    if (h.size() != subsets)
        return false;
    for (int v = 0; v < n; ++v)
        if (h[std::size_t{1} << v] > 1)
            return false;
    // Monotonicity over every S within T.
    for (std::size_t t = 0; t < subsets; ++t) {
        std::size_t s = t;
        for (;;) {
            if (h[s] > h[t])
                return false;
            if (s == 0)
                break;
            s = (s - 1) & t;
        }
    }
    Rational lhs, rhs;
    for (std::size_t s = 0; s < subsets; ++s)
        for (std::size_t t = s + 1; t < subsets; ++t) {
            lhs = h[s | t] + h[s & t];
            rhs = h[s] + h[t];
            if (lhs > rhs)
                return false;
        }
    for (int v = 0; v < n; ++v) {
        VertexSet nb = g.in_neighbors(v);
        if (h[(nb | VertexSet::single(v)).bits()] != h[nb.bits()])
            return false;
    }
    return true;
}

VertexSet functional_closure(const Graph& g, VertexSet s)
{
    g.check_subset(s);
    VertexSet cl = s;
    bool grew = true;
    while (grew) {
        grew = false;
        for (int v : g.vertices() - cl)
            if (g.in_neighbors(v).is_subset_of(cl)) {
                cl.insert(v);
                grew = true;
            }
    }
    return cl;
}

std::string to_string(LowerTag t)
{
    switch (t) {
    case LowerTag::Matching: return "matching";
    case LowerTag::CliqueCover: return "clique-cover";
    case LowerTag::FractionalCliqueCover: return "fractional-clique-cover";
    case LowerTag::LoopReduction: return "loop-reduction";
    case LowerTag::UnionAdditivity: return "union-additivity";
    case LowerTag::CodeExtension: return "code-extension";
    }
    return "unknown";
}

std::string to_string(UpperTag t)
{
    switch (t) {
    case UpperTag::Transversal: return "transversal";
    case UpperTag::ShannonLp: return "shannon-lp";
    case UpperTag::IReduction: return "i-reduction";
    case UpperTag::LoopReduction: return "loop-reduction";
    case UpperTag::UnionAdditivity: return "union-additivity";
    }
    return "unknown";
}

Json to_json(const CliqueFamily& f)
{
    Json out = Json::array();
    for (std::size_t k = 0; k < f.cliques.size(); ++k) {
        if (f.weighted())
            out.push_back({{"clique", vertex_list(f.cliques[k])}, {"weight", to_string(f.weights[k])}});
        else
            out.push_back(vertex_list(f.cliques[k]));
    }
    return out;
}

Json to_json(const Matching& m)
{
    Json out = Json::array();
    for (auto [u, v] : m.edges)
        out.push_back(Json::array({u + 1, v + 1}));
    return out;
}

Json to_json(const EntropyBracket& b)
{
    Json lower = {{"tag", to_string(b.lower_tag)}};
    for (auto& [k, v] : b.lower_witness.items())
        lower[k] = v;
    Json upper = {{"tag", to_string(b.upper_tag)}};
    for (auto& [k, v] : b.upper_witness.items())
        upper[k] = v;
    return {{"lower", to_string(b.lower)},
            {"upper", to_string(b.upper)},
            {"exact", b.exact()},
            {"lower_witness", lower},
            {"upper_witness", upper}};
}

EntropyBracket bracket_from_json(const Json& j)
{
    auto witness = [](const Json& w) {
        Json out = Json::object();
        for (auto& [k, v] : w.items())
            if (k != "tag")
                out[k] = v;
        return out;
    };
    auto tag_of = [](const std::string& name, auto first, auto last) {
        for (int t = static_cast<int>(first); t <= static_cast<int>(last); ++t)
            if (to_string(static_cast<decltype(first)>(t)) == name)
                return static_cast<decltype(first)>(t);
        throw std::invalid_argument("unknown bound tag '" + name + "'");
    };
    try {
        EntropyBracket b;
        b.lower = parse_rational(j.at("lower").get<std::string>());
        b.upper = parse_rational(j.at("upper").get<std::string>());
        b.lower_tag = tag_of(j.at("lower_witness").at("tag").get<std::string>(), LowerTag::Matching,
                             LowerTag::CodeExtension);
        b.upper_tag = tag_of(j.at("upper_witness").at("tag").get<std::string>(),
                             UpperTag::Transversal, UpperTag::UnionAdditivity);
        b.lower_witness = witness(j.at("lower_witness"));
        b.upper_witness = witness(j.at("upper_witness"));
        return b;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed bracket JSON: ") + e.what());
    }
}

namespace {

EntropyBracket component_bracket_keeping(const Graph& g, const BracketOptions& opts,
                                         std::optional<ShannonBound>* keep)
{
    const int n = g.order();
    EntropyBracket b;

    Matching m = max_matching(g);
    b.lower = m.size();
    b.lower_tag = LowerTag::Matching;
    b.lower_witness = {{"nu", m.size()}, {"edges", to_json(m)}};

    auto [cc, cover] = clique_cover_number(g);
    if (Rational(n - cc) > b.lower) {
        b.lower = n - cc;
        b.lower_tag = LowerTag::CliqueCover;
        b.lower_witness = {{"cc", cc}, {"cliques", to_json(cover)}};
    }

    FractionalCover frac = fractional_clique_cover_number(g);
    if (!validate_fractional_cover(g, frac.weights))
        throw std::logic_error("fractional clique cover weights fail re-validation");
    Rational frac_bound = n - frac.value;
    if (frac_bound > b.lower) {
        b.lower = frac_bound;
        b.lower_tag = LowerTag::FractionalCliqueCover;
        b.lower_witness = {{"kappa_f", to_string(frac.value)}, {"weights", to_json(frac.weights)}};
    }

    auto [tau, fvs] = transversal_number(g);
    if (functional_closure(g, fvs) != g.vertices())
        throw std::logic_error("feedback set does not determine every vertex");
    b.upper = tau;
    b.upper_tag = UpperTag::Transversal;
    b.upper_witness = {{"tau", tau}, {"feedback_set", vertex_list(fvs)}};

    if (b.lower == b.upper && opts.lazy_shannon)
        return b;

    if (n > opts.shannon_cap) {
        if (b.lower == b.upper)
            return b;
        throw std::invalid_argument("component on " + std::to_string(n) +
                                    " vertices needs the Shannon bound, which is capped at " +
                                    std::to_string(opts.shannon_cap) +
                                    " vertices; raise it with --shannon-cap");
    }
    ShannonBound sh = shannon_entropy(g, opts.shannon_cap);
    if (keep)
        *keep = sh;
    if (sh.theta < b.upper) {
        b.upper = sh.theta;
        b.upper_tag = UpperTag::ShannonLp;
        b.upper_witness = {{"theta", to_string(sh.theta)},
                           {"certificate", "primal-dual verified"},
                           {"pivots", sh.solution.pivots}};
    }
    if (opts.use_decomposition && b.lower < b.upper && g.is_undirected() && loops(g).empty() &&
        n <= default_reducible_cap) {
        if (auto d = find_reducible_set(g)) {
            EntropyBracket via = apply_decomposition(g, *d, entropy_bracket(d->remainder.graph, opts));
            if (via.lower > b.lower) {
                b.lower = via.lower;
                b.lower_tag = via.lower_tag;
                b.lower_witness = via.lower_witness;
            }
            if (via.upper < b.upper) {
                b.upper = via.upper;
                b.upper_tag = via.upper_tag;
                b.upper_witness = via.upper_witness;
            }
        }
    }
    if (b.lower > b.upper)
        throw std::logic_error("entropy bracket inverted; a bound is unsound");
    return b;
}

}  // namespace

EntropyBracket component_bracket(const Graph& g, const BracketOptions& opts)
{
    return component_bracket_keeping(g, opts, nullptr);
}

EntropyBracket entropy_bracket(const Graph& g, const BracketOptions& opts)
{
    const VertexSet l = loops(g);
    if (!l.empty()) {
        InducedSubgraph rest = remove_vertices(g, l);
        EntropyBracket inner = entropy_bracket(rest.graph, opts);
        EntropyBracket b;
        b.lower = inner.lower + l.size();
        b.upper = inner.upper + l.size();
        b.lower_tag = LowerTag::LoopReduction;
        b.upper_tag = UpperTag::LoopReduction;
        Json payload = {{"loops", vertex_list(l)}, {"rest", to_json(inner)}};
        b.lower_witness = payload;
        b.upper_witness = {{"loops", vertex_list(l)}};
        return b;
    }

    auto comps = components(g);
    if (comps.size() == 1)
        return component_bracket(g, opts);

    EntropyBracket b;
    b.lower_tag = LowerTag::UnionAdditivity;
    b.upper_tag = UpperTag::UnionAdditivity;
    Json parts = Json::array();
    for (auto comp : comps) {
        InducedSubgraph sub = induced_subgraph(g, comp);
        EntropyBracket part = component_bracket(sub.graph, opts);
        b.lower += part.lower;
        b.upper += part.upper;
        parts.push_back({{"vertices", vertex_list(comp)}, {"bracket", to_json(part)}});
    }
    b.lower_witness = {{"components", parts}};
    b.upper_witness = {{"components", comps.size()}};
    return b;
}

GraphBounds compute_bounds(const Graph& g, const BracketOptions& opts)
{
    GraphBounds out;
    out.matching = max_matching(g);
    std::tie(out.cc, out.cover) = clique_cover_number(g);
    out.fractional = fractional_clique_cover_number(g);
    std::tie(out.tau, out.tau_witness) = transversal_number(g);
    if (loops(g).empty() && components(g).size() == 1)
        out.bracket = component_bracket_keeping(g, opts, &out.shannon);
    else
        out.bracket = entropy_bracket(g, opts);
    if (!out.shannon && g.order() <= opts.shannon_cap && !(opts.lazy_shannon && out.bracket.exact()))
        out.shannon = shannon_entropy(g, opts.shannon_cap);
    return out;
}

}  // namespace graph_entropy
