#pragma once

#include "graph_entropy/graph.hpp"
#include "graph_entropy/lp.hpp"
#include "graph_entropy/rational.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace graph_entropy {

using Json = nlohmann::ordered_json;

/// Cliques of a host graph (mutual arcs for digraphs), optionally weighted.
struct CliqueFamily {
    std::vector<VertexSet> cliques;
    std::vector<Rational> weights;  // empty, or one weight per clique

    bool weighted() const { return !weights.empty(); }
    Rational total_weight() const;
};

struct Matching {
    std::vector<std::pair<int, int>> edges;  // u < v
    VertexSet matched;
    int size() const { return static_cast<int>(edges.size()); }
};

/// Maximum matching over mutual arcs (Edmonds' blossom algorithm).
Matching max_matching(const Graph& g);

/// All inclusion-maximal cliques (Bron-Kerbosch with pivoting), sorted by
/// their sorted vertex lists. Isolated vertices are singleton cliques.
CliqueFamily maximal_cliques(const Graph& g);

/// Minimum number of cliques covering V, with a cover of maximal cliques.
std::pair<int, CliqueFamily> clique_cover_number(const Graph& g);

struct FractionalCover {
    Rational value;
    CliqueFamily weights;  // maximal cliques with their LP weights (zeros dropped)
    LinearProgram lp;
    LpSolution solution;
};
LinearProgram fractional_cover_lp(const Graph& g, const CliqueFamily& cliques);
FractionalCover fractional_clique_cover_number(const Graph& g);
/// Nonnegative weights and every vertex covered with total weight >= 1.
bool validate_fractional_cover(const Graph& g, const CliqueFamily& family);

/// Minimum feedback vertex set (minimum vertex cover for undirected graphs).
std::pair<int, VertexSet> transversal_number(const Graph& g);

struct ShannonBound {
    Rational theta;
    std::vector<Rational> h;  // indexed by subset bitmask
    LpSolution solution;
};
inline constexpr int default_shannon_cap = 10;
/// Elemental polymatroid inequalities plus h(v) <= 1 and the functional
/// equalities h(N(v) + v) = h(N(v)); variable h_S for every subset S.
LinearProgram shannon_lp(const Graph& g);
/// Throws std::invalid_argument when g has more than `cap` vertices.
ShannonBound shannon_entropy(const Graph& g, int cap = default_shannon_cap);
/// Re-checks h against the unreduced constraint families: h(v) <= 1,
/// monotonicity over all pairs S within T, submodularity over all pairs S, T,
/// and the functional equalities.
bool validate_entropic_point(const Graph& g, const std::vector<Rational>& h);
/// Smallest superset of S closed under adding any v whose in-neighbourhood
/// it contains. For a feedback vertex set F the closure is V, and every
/// feasible h then has h(V) = h(F) <= |F|; this is the certificate that
/// Theta <= tau.
VertexSet functional_closure(const Graph& g, VertexSet s);

enum class LowerTag {
    Matching,
    CliqueCover,
    FractionalCliqueCover,
    LoopReduction,
    UnionAdditivity,
    CodeExtension,
};
enum class UpperTag {
    Transversal,
    ShannonLp,
    IReduction,
    LoopReduction,
    UnionAdditivity,
};
std::string to_string(LowerTag t);
std::string to_string(UpperTag t);

struct EntropyBracket {
    Rational lower;
    Rational upper;
    LowerTag lower_tag = LowerTag::Matching;
    UpperTag upper_tag = UpperTag::Transversal;
    Json lower_witness = Json::object();
    Json upper_witness = Json::object();

    bool exact() const { return lower == upper; }
};

struct BracketOptions {
    int shannon_cap = default_shannon_cap;
    /// Skip the Shannon program when the combinatorial bounds already meet.
    bool lazy_shannon = false;
    /// Shortcut reducible components through the c(S) decomposition.
    bool use_decomposition = false;
};

/// Per-parameter values for a graph plus its entropy bracket.
struct GraphBounds {
    Matching matching;
    int cc = 0;
    CliqueFamily cover;
    FractionalCover fractional;
    int tau = 0;
    VertexSet tau_witness;
    std::optional<ShannonBound> shannon;
    EntropyBracket bracket;
};

/// Strips loops, splits into weakly connected components, then bounds each
/// component by max(nu, n - cc, n - kappa_f) from below and min(tau, Theta)
/// from above.
EntropyBracket entropy_bracket(const Graph& g, const BracketOptions& opts = {});

/// Bracket of a loop-free connected graph, no reductions applied.
EntropyBracket component_bracket(const Graph& g, const BracketOptions& opts = {});

/// Every parameter on the graph as given, plus entropy_bracket(g).
GraphBounds compute_bounds(const Graph& g, const BracketOptions& opts = {});

Json to_json(const CliqueFamily& f);
Json to_json(const Matching& m);
Json to_json(const EntropyBracket& b);
/// Inverse of to_json(EntropyBracket); throws std::invalid_argument.
EntropyBracket bracket_from_json(const Json& j);

}  // namespace graph_entropy
