#pragma once

#include "graph_entropy/bounds.hpp"
#include "graph_entropy/graph.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace graph_entropy {

/// Matching edges as (left, right) pairs in host labels.
using BipartiteMatching = std::vector<std::pair<int, int>>;

/// Maximum matching by augmenting paths, lowest labels tried first.
BipartiteMatching bipartite_max_matching(const BipartiteView& b);

/// A nonempty A' within the left side whose view G[A', N(A')] has a
/// matching saturating N(A').
struct SaturatingWitness {
    VertexSet a_prime;
    BipartiteMatching matching;
    VertexSet saturated;  // N(A')
};

/// Constructive form of the saturating-subset lemma: requires
/// |left| >= |right| >= 1 and at least one edge. If a matching saturates
/// N(left) the whole left side is returned; otherwise the alternating-path
/// set X from unmatched left vertices has |N(X)| < |X| and |N(X)| below the
/// right side's size, and the search recurses into G[X, N(X)].
/// Throws std::invalid_argument when the preconditions fail.
SaturatingWitness find_saturating_subset(const BipartiteView& b);

/// Matching lies in G[A', N(A')], is a matching, and covers N(A') exactly.
bool validate_saturating_witness(const BipartiteView& b, const SaturatingWitness& w);

/// S with a matching c_i s_i from c(S) saturating S, and G - d(S).
struct Decomposition {
    VertexSet s;
    std::vector<std::pair<int, int>> matching;  // (c_i, s_i)
    VertexSet c_s;
    VertexSet d_s;
    InducedSubgraph remainder;
};

inline constexpr int default_reducible_cap = 16;

/// Searches nonempty S by increasing size, then lexicographically by bitmask,
/// for G[c(S), S] having an S-saturating matching. Requires a simple graph.
std::optional<Decomposition> find_reducible_set(const Graph& g, int cap = default_reducible_cap);

/// Recomputes c(S), d(S) and the remainder and re-checks the matching.
bool validate_decomposition(const Graph& g, const Decomposition& d);

/// Decomposition for a given S, if G[c(S), S] has an S-saturating matching.
std::optional<Decomposition> decomposition_for(const Graph& g, VertexSet s);

struct CandidateReport {
    std::optional<Decomposition> reducible;
    Matching max_matching;
    VertexSet c_of_m;  // c(M) for M the matched vertices
    bool c_of_m_small = false;  // |c(M)| < |M|
    std::optional<SaturatingWitness> bipartite_witness;  // when |c(M)| >= |M|
    std::optional<Decomposition> derived;  // S = N(A') from the witness
    bool candidate = false;
};

/// Necessary conditions for entropy-minimality: no reducible set, and the
/// unmatched side of a maximum matching smaller than the matched side.
CandidateReport certify_entropy_minimal_candidate(const Graph& g,
                                                  int cap = default_reducible_cap);

/// Shifts the remainder's bracket by |S|. The upper side is re-derived by
/// reducing c(S) (which puts a loop on every vertex of S) and stripping the
/// loops; the lower side is the code extension over the matching. Throws
/// std::invalid_argument when the decomposition does not validate.
EntropyBracket apply_decomposition(const Graph& g, const Decomposition& d,
                                   const EntropyBracket& remainder);

Json to_json(const SaturatingWitness& w);
Json to_json(const Decomposition& d);
Json to_json(const CandidateReport& r);

}  // namespace graph_entropy
