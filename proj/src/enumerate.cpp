#include "graph_entropy/enumerate.hpp"

#include "graph_entropy/graph_io.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace graph_entropy {

namespace {

int pair_count(int n)
{
    return n * (n - 1) / 2;
}

// Cells of the coarsest equitable partition, numbered by sorted signature.
std::vector<int> equitable_cells(const std::vector<std::uint64_t>& adj)
{
    const int n = static_cast<int>(adj.size());
    std::vector<int> cell(n, 0);
    int cells = 1;
    while (true) {
        std::vector<std::vector<int>> sig(n);
        for (int v = 0; v < n; ++v) {
            sig[v].assign(cells + 1, 0);
            sig[v][0] = cell[v];
            for (int u = 0; u < n; ++u)
                if ((adj[v] >> u) & 1U)
                    ++sig[v][1 + cell[u]];
        }
        std::vector<std::vector<int>> distinct = sig;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (int v = 0; v < n; ++v)
            cell[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) -
                                       distinct.begin());
        if (static_cast<int>(distinct.size()) == cells)
            return cell;
        cells = static_cast<int>(distinct.size());
    }
}

struct CanonSearch {
    int n;
    int m;
    const std::vector<std::uint64_t>& adj;
    std::vector<std::vector<int>> members;  // per position, candidate vertices
    std::vector<int> order;
    std::uint64_t used = 0;
    std::uint64_t best = 0;
    bool have = false;

    void run(int p, std::uint64_t cur)
    {
        if (p == n) {
            if (!have || cur > best) {
                best = cur;
                have = true;
            }
            return;
        }
        const int len = (p + 1) * p / 2;
        for (int v : members[p]) {
            if ((used >> v) & 1U)
                continue;
            std::uint64_t next = cur;
            for (int i = 0; i < p; ++i)
                next = (next << 1) | ((adj[order[i]] >> v) & 1U);
            if (have && next < (best >> (m - len)))
                continue;
            order[p] = v;
            used |= std::uint64_t{1} << v;
            run(p + 1, next);
            used &= ~(std::uint64_t{1} << v);
        }
    }
};

std::string bracket_variant(const BracketOptions& o)
{
    return std::string(o.lazy_shannon ? "l" : "f") + (o.use_decomposition ? "d" : "p") +
           std::to_string(o.shannon_cap);
}

std::optional<EntropyBracket> cache_load(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in)
        return std::nullopt;
    try {
        Json j = Json::parse(in);
        return bracket_from_json(j.at("bracket"));
    } catch (const std::exception&) {
        return std::nullopt;  // unreadable entries are recomputed and overwritten
    }
}

void cache_store(const std::filesystem::path& file, const CanonicalForm& f, const EntropyBracket& b)
{
    Json j = {{"graph6", render_graph(f.graph(), GraphFormat::Graph6)},
              {"n", f.n},
              {"bracket", to_json(b)}};
    std::ostringstream tid;
    tid << std::this_thread::get_id();
    auto tmp = file;
    tmp += ".tmp" + tid.str();
    {
        std::ofstream out(tmp);
        out << j.dump() << '\n';
    }
    std::filesystem::rename(tmp, file);
}

std::string graph6_of(const CanonicalForm& f)
{
    return render_graph(f.graph(), GraphFormat::Graph6);
}

bool strictly_between(const Rational& v, const Rational& lo, const Rational& hi)
{
    return lo < v && v < hi;
}

}  // namespace

Graph CanonicalForm::graph() const
{
    Graph g(n);
    const int m = pair_count(n);
    int k = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++k)
            if ((bits >> (m - 1 - k)) & 1U)
                g.add_edge(i, j);
    return g;
}

std::string CanonicalForm::key() const
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "n%d-%llx", n, static_cast<unsigned long long>(bits));
    return buf;
}

CanonicalForm canonical_form(const Graph& g)
{
    const int n = g.order();
    if (n > canonical_cap)
        throw std::invalid_argument("canonical form supports at most " +
                                    std::to_string(canonical_cap) + " vertices, got " +
                                    std::to_string(n));
    if (!g.is_symmetric() || !loops(g).empty())
        throw std::invalid_argument("canonical form requires a simple undirected graph");

    std::vector<std::uint64_t> adj(n);
    for (int v = 0; v < n; ++v)
        adj[v] = g.out_neighbors(v).bits();
    std::vector<int> cell = equitable_cells(adj);

    CanonSearch s{n, pair_count(n), adj, {}, std::vector<int>(n, 0)};
    std::vector<int> by_cell(n);
    for (int v = 0; v < n; ++v)
        by_cell[v] = v;
    std::stable_sort(by_cell.begin(), by_cell.end(),
                     [&](int a, int b) { return cell[a] < cell[b]; });
    for (int p = 0; p < n; ++p) {
        std::vector<int> same;
        for (int v = 0; v < n; ++v)
            if (cell[v] == cell[by_cell[p]])
                same.push_back(v);
        s.members.push_back(std::move(same));
    }
    s.run(0, 0);
    return {n, s.best};
}

bool is_connected(const Graph& g)
{
    return components(g).size() <= 1;
}

std::vector<Graph> enumerate_graphs(int n, bool connected_only, int cap)
{
    if (n < 0 || n > cap)
        throw std::invalid_argument("enumeration order " + std::to_string(n) + " outside 0.." +
                                    std::to_string(cap) + "; raise the cap explicitly");
    if (cap > canonical_cap)
        throw std::invalid_argument("enumeration cap exceeds the canonical-form limit of " +
                                    std::to_string(canonical_cap));

    std::vector<CanonicalForm> level{CanonicalForm{0, 0}};
    for (int k = 1; k <= n; ++k) {
        std::set<CanonicalForm> next;
        for (const auto& f : level) {
            Graph base = f.graph();
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (k - 1)); ++mask) {
                Graph h(k);
                for (auto [u, v] : base.edges())
                    h.add_edge(u, v);
                for (int u = 0; u < k - 1; ++u)
                    if ((mask >> u) & 1U)
                        h.add_edge(u, k - 1);
                next.insert(canonical_form(h));
            }
        }
        level.assign(next.begin(), next.end());
    }

    std::vector<Graph> out;
    for (const auto& f : level) {
        Graph g = f.graph();
        if (!connected_only || is_connected(g))
            out.push_back(std::move(g));
    }
    return out;
}

std::optional<std::size_t> ValueSurvey::find(const CanonicalForm& f) const
{
    auto it = std::lower_bound(records.begin(), records.end(), f,
                               [](const SurveyRecord& r, const CanonicalForm& x) { return r.form < x; });
    if (it == records.end() || it->form != f)
        return std::nullopt;
    return static_cast<std::size_t>(it - records.begin());
}

std::vector<std::size_t> ValueSurvey::connected_witnesses(const Rational& v) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < records.size(); ++i)
        if (records[i].connected && records[i].bracket.exact() && records[i].bracket.lower == v)
            out.push_back(i);
    return out;
}

ValueSurvey survey_entropy_values(int n_max, const SurveyOptions& opts)
{
    if (n_max < 1 || n_max > opts.cap)
        throw std::invalid_argument("survey order " + std::to_string(n_max) + " outside 1.." +
                                    std::to_string(opts.cap) + "; raise the cap explicitly");

    std::vector<CanonicalForm> conn;
    for (int k = 1; k <= n_max; ++k)
        for (const auto& g : enumerate_graphs(k, true, opts.cap))
            conn.push_back(canonical_form(g));

    if (opts.cache_dir)
        std::filesystem::create_directories(*opts.cache_dir);
    const std::string variant = bracket_variant(opts.bracket);

    std::vector<EntropyBracket> brackets(conn.size());
    std::atomic<std::size_t> next{0}, done{0}, hits{0};
    std::mutex report;
    std::exception_ptr failure;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < conn.size();) {
            try {
                std::optional<EntropyBracket> b;
                std::filesystem::path file;
                if (opts.cache_dir) {
                    file = *opts.cache_dir / (conn[i].key() + "-" + variant + ".json");
                    b = cache_load(file);
                    if (b)
                        ++hits;
                }
                if (!b) {
                    b = entropy_bracket(conn[i].graph(), opts.bracket);
                    if (opts.cache_dir)
                        cache_store(file, conn[i], *b);
                }
                brackets[i] = std::move(*b);
            } catch (...) {
                std::lock_guard lock(report);
                if (!failure)
                    failure = std::current_exception();
                next = conn.size();
            }
            std::size_t d = ++done;
            if (opts.progress) {
                std::lock_guard lock(report);
                opts.progress(d, conn.size());
            }
        }
    };
    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    ValueSurvey s;
    s.n_max = n_max;
    s.connected_only = opts.connected_only;
    s.cache_hits = hits;

    std::vector<SurveyRecord> recs;
    for (std::size_t i = 0; i < conn.size(); ++i)
        recs.push_back({conn[i], true, brackets[i], {}});

    if (!opts.connected_only) {
        // Multisets of two or more connected classes, indices nondecreasing.
        std::vector<std::size_t> pick;
        auto compose = [&](auto&& self, std::size_t from, int room) -> void {
            if (pick.size() >= 2) {
                Graph g(0);
                EntropyBracket b;
                b.lower_tag = LowerTag::UnionAdditivity;
                b.upper_tag = UpperTag::UnionAdditivity;
                Json parts = Json::array();
                for (auto idx : pick) {
                    g = disjoint_union(g, conn[idx].graph());
                    b.lower += brackets[idx].lower;
                    b.upper += brackets[idx].upper;
                    parts.push_back(graph6_of(conn[idx]));
                }
                b.lower_witness = {{"components", parts}};
                b.upper_witness = {{"components", parts}};
                recs.push_back({canonical_form(g), false, std::move(b), pick});
            }
            for (std::size_t idx = from; idx < conn.size(); ++idx) {
                if (conn[idx].n > room)
                    continue;
                pick.push_back(idx);
                self(self, idx, room - conn[idx].n);
                pick.pop_back();
            }
        };
        compose(compose, 0, n_max);
    }

    // Connected indices in `parts` refer to positions in conn; remap after sorting.
    std::vector<std::size_t> perm(recs.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        perm[i] = i;
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t a, std::size_t b) { return recs[a].form < recs[b].form; });
    std::vector<std::size_t> where(recs.size());
    for (std::size_t k = 0; k < perm.size(); ++k)
        where[perm[k]] = k;
    for (std::size_t k = 0; k < perm.size(); ++k) {
        SurveyRecord r = recs[perm[k]];
        for (auto& p : r.parts)
            p = where[p];
        s.records.push_back(std::move(r));
    }

    std::set<Rational> values;
    for (std::size_t i = 0; i < s.records.size(); ++i) {
        if (s.records[i].bracket.exact())
            values.insert(s.records[i].bracket.lower);
        else
            s.unresolved.push_back(i);
    }
    s.values.assign(values.begin(), values.end());
    return s;
}

Graph wheel_graph(unsigned mask)
{
    if (mask >= 32)
        throw std::invalid_argument("wheel neighbourhood mask must lie in 0..31");
    Graph g = cycle_graph(5);
    Graph out(6);
    for (auto [u, v] : g.edges())
        out.add_edge(u, v);
    for (int i = 0; i < 5; ++i)
        if ((mask >> i) & 1U)
            out.add_edge(5, i);
    return out;
}

Graph g_family(int index)
{
    static const std::vector<std::vector<std::pair<int, int>>> extra = {
        {{6, 1}, {6, 2}, {7, 4}},
        {{6, 1}, {6, 3}, {7, 2}},
        {{6, 1}, {6, 3}, {7, 4}},
        {{6, 1}, {6, 3}, {7, 2}, {7, 4}},
        {{6, 1}, {7, 2}},
        {{6, 1}, {7, 3}},
    };
    if (index < 1 || index > 6)
        throw std::invalid_argument("G-family index must lie in 1..6");
    std::vector<std::pair<int, int>> edges = {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {6, 7}};
    for (auto e : extra[index - 1])
        edges.push_back(e);
    Graph g(7);
    for (auto [u, v] : edges)
        g.add_edge(u - 1, v - 1);
    return g;
}

CheckReport verify_wheel_lemma(const BracketOptions& opts)
{
    CheckReport r;
    Json cases = Json::array();
    for (unsigned mask = 0; mask < 32; ++mask) {
        bool run3 = false;
        for (int i = 0; i < 5; ++i)
            run3 = run3 || (((mask >> i) & 1U) && ((mask >> ((i + 1) % 5)) & 1U) &&
                            ((mask >> ((i + 2) % 5)) & 1U));
        Rational expected = mask == 0 ? Rational(5, 2) : run3 ? Rational(7, 2) : Rational(3);
        EntropyBracket b = entropy_bracket(wheel_graph(mask), opts);
        bool ok = b.exact() && b.lower == expected;
        r.passed = r.passed && ok;
        Json nbrs = Json::array();
        for (int i = 0; i < 5; ++i)
            if ((mask >> i) & 1U)
                nbrs.push_back(i + 1);
        cases.push_back({{"neighbourhood", nbrs},
                         {"expected", to_string(expected)},
                         {"lower", to_string(b.lower)},
                         {"upper", to_string(b.upper)},
                         {"passed", ok}});
    }
    r.details = {{"suite", "wheel"}, {"passed", r.passed}, {"cases", cases}};
    return r;
}

CheckReport verify_g_family(const BracketOptions& opts)
{
    CheckReport r;
    Json graphs = Json::array();
    Graph base = disjoint_union(cycle_graph(5), complete_graph(2));
    EntropyBracket base_bracket = entropy_bracket(base, opts);

    for (int i = 1; i <= 6; ++i) {
        Graph g = g_family(i);
        GraphBounds gb = compute_bounds(g, opts);
        const EntropyBracket& b = gb.bracket;
        Json entry = {{"graph", "G" + std::to_string(i)},
                      {"edges", render_graph(g, GraphFormat::EdgeList)},
                      {"kappa_f", to_string(gb.fractional.value)},
                      {"theta", gb.shannon ? Json(to_string(gb.shannon->theta)) : Json(nullptr)},
                      {"bracket", to_json(b)}};
        bool ok;
        if (i == 1) {
            ok = b.exact() && b.lower == Rational(11, 3) && gb.fractional.value == Rational(10, 3) &&
                 b.lower_tag == LowerTag::FractionalCliqueCover &&
                 b.upper_tag == UpperTag::ShannonLp;

            // Published weight list for G1 and the total printed beside it.
            CliqueFamily stated;
            for (auto c : {std::vector<int>{1, 2, 6}, {3, 4}, {4, 5}, {4, 7}}) {
                VertexSet s;
                for (int v : c)
                    s.insert(v - 1);
                stated.cliques.push_back(s);
                stated.weights.push_back(Rational(1, 3));
            }
            for (auto c : {std::vector<int>{1, 5}, {2, 3}, {6, 7}}) {
                VertexSet s;
                for (int v : c)
                    s.insert(v - 1);
                stated.cliques.push_back(s);
                stated.weights.push_back(Rational(2, 3));
            }
            const Rational stated_total(10, 13);
            const bool feasible = validate_fractional_cover(g, stated);
            const Rational sum = stated.total_weight();
            const bool consistent = sum == stated_total;
            entry["stated_weights"] = to_json(stated);
            entry["stated_weights_feasible"] = feasible;
            entry["stated_weights_sum"] = to_string(sum);
            entry["stated_kappa_f"] = to_string(stated_total);
            entry["stated_kappa_f_consistent"] = consistent;
            if (!consistent)
                entry["flag"] = "printed kappa_f " + to_string(stated_total) +
                                " disagrees with its own weight list, which sums to " +
                                to_string(sum) + " (the LP optimum is " +
                                to_string(gb.fractional.value) + ")";
            ok = ok && feasible && sum == gb.fractional.value && !consistent;
        } else {
            bool spanning = true;
            for (auto [u, v] : base.edges())
                spanning = spanning && g.has_edge(u, v);
            entry["c5_plus_k2_lower"] = to_string(base_bracket.lower);
            entry["c5_plus_k2_spanning"] = spanning;
            ok = b.exact() && b.lower == Rational(7, 2) && spanning &&
                 base_bracket.lower == Rational(7, 2);
        }
        entry["passed"] = ok;
        r.passed = r.passed && ok;
        graphs.push_back(std::move(entry));
    }
    r.details = {{"suite", "gfamily"}, {"passed", r.passed}, {"graphs", graphs}};
    return r;
}

CheckReport verify_small_theorems(const ValueSurvey& survey)
{
    CheckReport r;
    const Rational one(1), two(2), five_halves(5, 2), three(3), seven_halves(7, 2),
        eleven_thirds(11, 3), four(4);
    const std::vector<Rational> expected = {0, one, two, five_halves, three, seven_halves,
                                            eleven_thirds, four};
    auto allowed_3_4 = [&](const Rational& v) { return v == seven_halves || v == eleven_thirds; };

    Json counterexamples = Json::array();
    Json bad_upper_range = Json::array();
    Json open_brackets = Json::array();
    Json bad_open = Json::array();
    for (std::size_t i = 0; i < survey.records.size(); ++i) {
        const auto& rec = survey.records[i];
        const auto& b = rec.bracket;
        Json item = {{"graph6", graph6_of(rec.form)},
                     {"lower", to_string(b.lower)},
                     {"upper", to_string(b.upper)}};
        if (b.exact()) {
            const Rational& v = b.lower;
            if (strictly_between(v, one, two) || strictly_between(v, two, five_halves) ||
                strictly_between(v, five_halves, three))
                counterexamples.push_back(item);
            if (strictly_between(v, three, four) && !allowed_3_4(v))
                bad_upper_range.push_back(item);
        } else {
            open_brackets.push_back(item);
            if (strictly_between(b.lower, three, four) && !allowed_3_4(b.lower) && b.upper < four)
                bad_open.push_back(item);
        }
    }

    std::vector<Rational> in_range;
    for (const auto& v : survey.values)
        if (v <= four)
            in_range.push_back(v);
    Json value_set = Json::array();
    for (const auto& v : in_range)
        value_set.push_back(to_string(v));

    bool set_ok;
    if (survey.n_max >= 7 && !survey.connected_only) {
        set_ok = in_range == expected;
    } else {
        set_ok = std::all_of(in_range.begin(), in_range.end(), [&](const Rational& v) {
            return std::find(expected.begin(), expected.end(), v) != expected.end();
        });
    }

    auto unique_witness = [&](const Rational& v, const Graph& target, int needed_order) {
        auto w = survey.connected_witnesses(v);
        Json names = Json::array();
        for (auto i : w)
            names.push_back(graph6_of(survey.records[i].form));
        bool ok = survey.n_max < needed_order ||
                  (w.size() == 1 && survey.records[w[0]].form == canonical_form(target));
        return std::pair{ok, Json{{"value", to_string(v)},
                                  {"expected", graph6_of(canonical_form(target))},
                                  {"witnesses", names},
                                  {"passed", ok}}};
    };
    auto [c5_ok, c5_json] = unique_witness(five_halves, cycle_graph(5), 5);
    auto [g1_ok, g1_json] = unique_witness(eleven_thirds, g_family(1), 7);

    r.passed = counterexamples.empty() && bad_upper_range.empty() && bad_open.empty() && set_ok &&
               c5_ok && g1_ok;
    Json expected_json = Json::array();
    for (const auto& v : expected)
        expected_json.push_back(to_string(v));
    r.details = {{"suite", "theorem2"},
                 {"passed", r.passed},
                 {"n_max", survey.n_max},
                 {"graphs", survey.records.size()},
                 {"value_set", value_set},
                 {"expected_value_set", expected_json},
                 {"value_set_ok", set_ok},
                 {"gap_counterexamples", counterexamples},
                 {"unexpected_values_3_4", bad_upper_range},
                 {"open_brackets", open_brackets},
                 {"open_brackets_in_forbidden_range", bad_open},
                 {"pentagon_witness", c5_json},
                 {"g1_witness", g1_json}};
    return r;
}

Json to_json(const CanonicalForm& f)
{
    return {{"n", f.n}, {"graph6", graph6_of(f)}, {"key", f.key()}};
}

Json to_json(const ValueSurvey& s)
{
    std::size_t connected = 0;
    Json graphs = Json::array();
    for (const auto& r : s.records) {
        connected += r.connected ? 1 : 0;
        graphs.push_back({{"graph6", graph6_of(r.form)},
                          {"n", r.form.n},
                          {"connected", r.connected},
                          {"lower", to_string(r.bracket.lower)},
                          {"upper", to_string(r.bracket.upper)},
                          {"exact", r.bracket.exact()}});
    }
    Json values = Json::array();
    Json witnesses = Json::object();
    for (const auto& v : s.values) {
        values.push_back(to_string(v));
        Json w = Json::array();
        for (auto i : s.connected_witnesses(v))
            w.push_back(graph6_of(s.records[i].form));
        witnesses[to_string(v)] = w;
    }
    Json unresolved = Json::array();
    for (auto i : s.unresolved)
        unresolved.push_back(graphs[i]);
    return {{"n_max", s.n_max},
            {"connected_only", s.connected_only},
            {"graph_count", s.records.size()},
            {"connected_count", connected},
            {"values", values},
            {"connected_witnesses", witnesses},
            {"unresolved", unresolved},
            {"graphs", graphs}};
}

}  // namespace graph_entropy
