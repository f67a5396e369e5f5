#pragma once

#include "graph_entropy/bounds.hpp"
#include "graph_entropy/graph.hpp"

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace graph_entropy {

/// Upper-triangle adjacency bits in graph6 order (pairs (i, j), i < j, j
/// outer), first pair in the most significant position, maximised over the
/// labelings allowed by an equitable degree partition.
struct CanonicalForm {
    int n = 0;
    std::uint64_t bits = 0;

    auto operator<=>(const CanonicalForm&) const = default;
    Graph graph() const;
    std::string key() const;  // "n<n>-<hex bits>"
};

inline constexpr int canonical_cap = 11;
inline constexpr int default_enumeration_cap = 7;

/// Simple undirected graphs only; throws std::invalid_argument beyond
/// canonical_cap vertices or on loops and asymmetric relations.
CanonicalForm canonical_form(const Graph& g);
bool is_connected(const Graph& g);

/// One representative per isomorphism class on exactly n vertices, each
/// already in canonical labelling, sorted by canonical form.
std::vector<Graph> enumerate_graphs(int n, bool connected_only,
                                    int cap = default_enumeration_cap);

struct SurveyRecord {
    CanonicalForm form;
    bool connected = false;
    EntropyBracket bracket;
    std::vector<std::size_t> parts;  // indices of connected records, for unions
};

struct ValueSurvey {
    int n_max = 0;
    bool connected_only = false;
    std::vector<SurveyRecord> records;  // by order, then canonical form
    std::vector<Rational> values;       // distinct collapsed values, ascending
    std::vector<std::size_t> unresolved;
    std::size_t cache_hits = 0;

    std::optional<std::size_t> find(const CanonicalForm& f) const;
    /// Connected records whose bracket collapsed at v.
    std::vector<std::size_t> connected_witnesses(const Rational& v) const;
};

struct SurveyOptions {
    bool connected_only = false;
    std::optional<std::filesystem::path> cache_dir;
    int jobs = 1;
    int cap = default_enumeration_cap;
    BracketOptions bracket{default_shannon_cap, true, true};
    std::function<void(std::size_t done, std::size_t total)> progress;
};

/// Brackets every connected class on at most n_max vertices (cached by
/// canonical form), then composes each disconnected class from its parts.
ValueSurvey survey_entropy_values(int n_max, const SurveyOptions& opts = {});

/// Pentagon v1..v5 plus v6 joined to `mask` (bit i for v(i+1)).
Graph wheel_graph(unsigned mask);
/// The seven-vertex graphs G1..G6: pentagon, edge v6v7, and the listed
/// connections.
Graph g_family(int index);

struct CheckReport {
    bool passed = true;
    Json details = Json::object();
};

CheckReport verify_wheel_lemma(const BracketOptions& opts = {});
CheckReport verify_g_family(const BracketOptions& opts = {});
/// Collapsed values in (1,2), (2,5/2), (5/2,3) are counterexamples; values in
/// (3,4) must be 7/2 or 11/3; the value set within [0,4] must be the eight
/// expected ones with C5 and G1 the only connected 5/2 and 11/3 witnesses.
CheckReport verify_small_theorems(const ValueSurvey& survey);

Json to_json(const CanonicalForm& f);
Json to_json(const ValueSurvey& s);

}  // namespace graph_entropy
