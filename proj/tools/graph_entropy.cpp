#include "graph_entropy/bounds.hpp"
#include "graph_entropy/enumerate.hpp"
#include "graph_entropy/graph_io.hpp"
#include "graph_entropy/guessing.hpp"
#include "graph_entropy/lp.hpp"
#include "graph_entropy/structure.hpp"

#include <CLI11.hpp>

#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <stdexcept>

using namespace graph_entropy;

namespace {

constexpr const char* version = "0.1.0";

// Thrown for failed checks inside a report; maps to exit code 1.
struct AssertionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputOptions {
    std::string path;
    std::string format;
};

Graph load_graph(const InputOptions& in)
{
    std::string text;
    if (in.path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream f(in.path);
        if (!f)
            throw std::invalid_argument("cannot read graph file '" + in.path +
                                        "'; pass a readable path or '-' for stdin");
        text.assign(std::istreambuf_iterator<char>(f), {});
    }
    // '#' starts a comment line.
    std::string body;
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);)
        if (line.find_first_not_of(" \t\r") != std::string::npos &&
            line[line.find_first_not_of(" \t\r")] != '#')
            body += line + "\n";
    if (in.format.empty())
        return parse_graph(body);
    auto fmt = parse_format_name(in.format);
    if (!fmt)
        throw std::invalid_argument("unknown format '" + in.format +
                                    "'; use graph6, edge-list or arc-list");
    return parse_graph(body, *fmt);
}

Json describe(const Graph& g)
{
    Json out = {{"n", g.order()}, {"directed", !g.is_undirected()}};
    if (g.is_symmetric()) {
        out["edges"] = render_graph(g, GraphFormat::EdgeList);
        if (loops(g).empty())
            out["graph6"] = render_graph(g, GraphFormat::Graph6);
    } else {
        out["arcs"] = render_graph(g, GraphFormat::ArcList);
    }
    return out;
}

bool matching_valid(const Graph& g, const Matching& m)
{
    VertexSet seen;
    for (auto [u, v] : m.edges) {
        if (u == v || !g.has_arc(u, v) || !g.has_arc(v, u) || seen.contains(u) || seen.contains(v))
            return false;
        seen.insert(u);
        seen.insert(v);
    }
    return seen == m.matched;
}

Json report(const std::string& command, Json input, Json result)
{
    return {{"command", command}, {"version", version}, {"input", std::move(input)},
            {"result", std::move(result)}};
}

Json run_bounds(const Graph& g, const BracketOptions& opts, std::string& summary)
{
    GraphBounds b = compute_bounds(g, opts);
    if (!matching_valid(g, b.matching))
        throw AssertionFailure("maximum matching failed re-validation");
    if (!validate_fractional_cover(g, b.fractional.weights))
        throw AssertionFailure("fractional clique cover failed re-validation");
    if (b.shannon && !verify_certificates(shannon_lp(g), b.shannon->solution))
        throw AssertionFailure("Shannon LP certificates failed re-validation");

    Json fvs = Json::array();
    for (int v : b.tau_witness)
        fvs.push_back(v + 1);
    Json theta = b.shannon ? Json(to_string(b.shannon->theta)) : Json(nullptr);
    Json result = {{"nu", b.matching.size()},
                   {"cc", b.cc},
                   {"kappa_f", to_string(b.fractional.value)},
                   {"tau", b.tau},
                   {"theta", theta},
                   {"bracket",
                    {{"lower", to_string(b.bracket.lower)},
                     {"upper", to_string(b.bracket.upper)},
                     {"exact", b.bracket.exact()}}},
                   {"witnesses",
                    {{"matching", to_json(b.matching)},
                     {"clique_cover", to_json(b.cover)},
                     {"fractional_cover", to_json(b.fractional.weights)},
                     {"feedback_set", fvs},
                     {"lower", to_json(b.bracket)["lower_witness"]},
                     {"upper", to_json(b.bracket)["upper_witness"]}}}};
    summary = "H in [" + to_string(b.bracket.lower) + ", " + to_string(b.bracket.upper) + "]" +
              (b.bracket.exact() ? " (exact)" : "");
    return result;
}

Json run_guess(const Graph& g, int q, std::uint64_t cap, std::string& summary)
{
    auto [value, code] = max_guessing(g, q, cap);
    if (!validate_code(code))
        throw AssertionFailure("fixed-point code failed re-validation");
    Json words = Json::array();
    for (const auto& w : code.words)
        words.push_back(to_string(w));
    summary = "gamma = " + value.expression() + " ~ " + std::to_string(value.approx());
    return {{"q", q},
            {"code_size", value.code_size},
            {"guessing_number", value.expression()},
            {"code", words},
            {"optimal", value.optimal}};
}

Json run_reduce(const Graph& g, std::string& summary)
{
    auto d = find_reducible_set(g);
    if (!d) {
        summary = "no reducible set";
        return {{"reducible", false}, {"S", nullptr}, {"matching", nullptr},
                {"remainder_graph6", nullptr}};
    }
    if (!validate_decomposition(g, *d))
        throw AssertionFailure("decomposition failed re-validation");
    Json dj = to_json(*d);
    summary = "reducible: S = " + to_string(d->s) + ", remainder has " +
              std::to_string(d->remainder.graph.order()) + " vertices";
    return {{"reducible", true},
            {"S", dj["S"]},
            {"c_S", dj["c_S"]},
            {"matching", dj["matching"]},
            {"remainder_vertices", dj["remainder_vertices"]},
            {"remainder_graph6", render_graph(d->remainder.graph, GraphFormat::Graph6)}};
}

Json run_minimal_check(const Graph& g, std::string& summary)
{
    CandidateReport r = certify_entropy_minimal_candidate(g);
    if (r.reducible && !validate_decomposition(g, *r.reducible))
        throw AssertionFailure("decomposition failed re-validation");
    summary = r.candidate ? "entropy-minimal candidate" : "not a candidate";
    return to_json(r);
}

std::string lp_dump(const Graph& g, const std::string& which, int shannon_cap)
{
    LinearProgram lp;
    if (which == "shannon") {
        if (g.order() > shannon_cap)
            throw std::invalid_argument("Shannon LP on " + std::to_string(g.order()) +
                                        " vertices exceeds the cap of " +
                                        std::to_string(shannon_cap) +
                                        "; raise it with --shannon-cap");
        lp = shannon_lp(g);
    } else if (which == "fractional-cover") {
        lp = fractional_cover_lp(g, maximal_cliques(g));
    } else {
        throw std::invalid_argument("unknown LP '" + which + "'; use shannon or fractional-cover");
    }
    LpSolution sol = solve(lp);
    if (sol.status == LpStatus::Optimal && !verify_certificates(lp, sol))
        throw AssertionFailure("LP certificates failed re-validation");
    std::ostringstream os;
    os << "\\ variables: " << lp.num_vars() << "\n";
    os << "\\ constraints: " << lp.num_rows() << "\n";
    if (sol.status == LpStatus::Optimal)
        os << "\\ optimum: " << to_string(sol.objective) << "\n";
    write_lp_text(os, lp);
    return os.str();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Certified bounds on the entropy and guessing numbers of small graphs"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);

    InputOptions input;
    BracketOptions bopts;
    bool lazy = false, decompose = false;
    int q = 2;
    std::uint64_t word_cap = default_word_cap;
    std::string which;
    int n_max = 7;
    bool connected = false;
    std::string cache;
    int jobs = 1;
    std::string suite;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--graph", input.path, "graph file, or - for stdin")->required();
        sub->add_option("--format", input.format, "graph6 | edge-list | arc-list (default: detect)");
    };
    auto add_bracket = [&](CLI::App* sub) {
        sub->add_option("--shannon-cap", bopts.shannon_cap, "largest component given to the Shannon LP")
            ->check(CLI::Range(1, 16));
        sub->add_flag("--lazy", lazy, "skip the Shannon LP when combinatorial bounds already meet");
        sub->add_flag("--decompose", decompose, "shortcut open brackets through a reducible set");
    };
    auto add_survey = [&](CLI::App* sub) {
        sub->add_option("--n", n_max, "largest order surveyed")->check(CLI::Range(1, 11));
        sub->add_option("--cache", cache, "bracket cache directory (default: $GRAPH_ENTROPY_CACHE)");
        sub->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));
    };

    auto* bounds = app.add_subcommand("bounds", "all bounds and the entropy bracket");
    add_input(bounds);
    add_bracket(bounds);
    auto* guess = app.add_subcommand("guess", "exact q-guessing number by maximum clique");
    add_input(guess);
    guess->add_option("--q", q, "alphabet size")->check(CLI::Range(2, 255));
    guess->add_option("--cap", word_cap, "largest q^n word count searched");
    auto* reduce = app.add_subcommand("reduce", "search for a reducible set S");
    add_input(reduce);
    auto* minimal = app.add_subcommand("minimal-check", "entropy-minimality candidate report");
    add_input(minimal);
    auto* survey = app.add_subcommand("survey", "collapsed entropy values over all small graphs");
    add_survey(survey);
    add_bracket(survey);
    survey->add_flag("--connected", connected, "connected graphs only");
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite, "wheel | gfamily | theorem2")
        ->required()
        ->check(CLI::IsMember({"wheel", "gfamily", "theorem2"}));
    add_survey(verify);
    add_bracket(verify);
    auto* dump = app.add_subcommand("lp-dump", "print the LP the bounds are read from");
    add_input(dump);
    dump->add_option("--which", which, "shannon | fractional-cover")
        ->required()
        ->check(CLI::IsMember({"shannon", "fractional-cover"}));
    dump->add_option("--shannon-cap", bopts.shannon_cap, "largest graph given to the Shannon LP");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    bopts.lazy_shannon = lazy;
    bopts.use_decomposition = decompose;
    if (cache.empty())
        if (const char* env = std::getenv("GRAPH_ENTROPY_CACHE"))
            cache = env;
    const bool tty = isatty(STDERR_FILENO);
    const auto start = std::chrono::steady_clock::now();
    std::string summary;
    int code = 0;

    try {
        auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        Json out;
        if (name == "lp-dump") {
            std::cout << lp_dump(load_graph(input), which, bopts.shannon_cap);
        } else if (name == "bounds") {
            Graph g = load_graph(input);
            out = report(name, describe(g), run_bounds(g, bopts, summary));
        } else if (name == "guess") {
            Graph g = load_graph(input);
            out = report(name, describe(g), run_guess(g, q, word_cap, summary));
        } else if (name == "reduce") {
            Graph g = load_graph(input);
            out = report(name, describe(g), run_reduce(g, summary));
        } else if (name == "minimal-check") {
            Graph g = load_graph(input);
            out = report(name, describe(g), run_minimal_check(g, summary));
        } else {
            SurveyOptions so;
            so.connected_only = connected;
            so.jobs = jobs;
            so.bracket = bopts;
            if (!sub->count("--lazy"))
                so.bracket.lazy_shannon = true;
            if (!sub->count("--decompose"))
                so.bracket.use_decomposition = true;
            if (!cache.empty())
                so.cache_dir = cache;
            if (tty)
                so.progress = [](std::size_t done, std::size_t total) {
                    std::cerr << "\rbracketing connected classes " << done << "/" << total
                              << std::flush;
                    if (done == total)
                        std::cerr << "\n";
                };
            Json params = {{"n_max", n_max}};
            if (name == "survey") {
                params["connected_only"] = connected;
                ValueSurvey s = survey_entropy_values(n_max, so);
                out = report(name, params, to_json(s));
                summary = std::to_string(s.records.size()) + " graphs, " +
                          std::to_string(s.values.size()) + " collapsed values, " +
                          std::to_string(s.unresolved.size()) + " open brackets";
            } else {
                CheckReport r;
                if (suite == "wheel") {
                    r = verify_wheel_lemma(bopts);
                    params = Json::object();
                } else if (suite == "gfamily") {
                    r = verify_g_family(bopts);
                    params = Json::object();
                } else {
                    so.connected_only = false;
                    r = verify_small_theorems(survey_entropy_values(n_max, so));
                }
                out = report(name + " " + suite, params, r.details);
                summary = suite + (r.passed ? ": PASS" : ": FAIL");
                code = r.passed ? 0 : 1;
            }
        }
        if (!out.is_null())
            std::cout << out.dump(2) << "\n";
    } catch (const AssertionFailure& e) {
        std::cerr << "assertion failed: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const std::invalid_argument*>(&e)) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        std::cerr << "assertion failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (tty && !summary.empty()) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::cerr << summary << "  [" << ms << " ms]\n";
    }
    return code;
}
