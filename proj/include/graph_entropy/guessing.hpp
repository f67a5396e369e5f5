#pragma once

#include "graph_entropy/bounds.hpp"
#include "graph_entropy/graph.hpp"
#include "graph_entropy/structure.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace graph_entropy {

using Word = std::vector<std::uint8_t>;

/// A set of q-ary words realisable as fixed points of some f whose
/// interaction graph lies inside `host`.
struct GuessingCode {
    int q = 2;
    Graph host;
    std::vector<Word> words;  // sorted, distinct
};

/// gamma(D, q) = log_q(code_size).
struct GuessingValue {
    int q = 2;
    std::uint64_t code_size = 0;
    bool optimal = false;

    std::string expression() const;  // "log_q(m)"
    double approx() const;
};

inline constexpr std::uint64_t default_word_cap = 4096;

/// Words x ~ y when, for every vertex v, agreeing on N-(v) forces x_v = y_v.
/// Word i has digit v equal to (i / q^v) % q.
class CompatibilityGraph {
public:
    CompatibilityGraph(const Graph& g, int q, std::uint64_t cap = default_word_cap);

    int q() const { return q_; }
    int length() const { return n_; }
    std::size_t size() const { return adj_.size(); }
    bool adjacent(std::size_t a, std::size_t b) const
    {
        return (adj_[a][b / 64] >> (b % 64)) & 1U;
    }
    const std::vector<std::uint64_t>& row(std::size_t a) const { return adj_[a]; }
    Word word(std::size_t index) const;
    std::size_t edge_count() const;

private:
    int q_;
    int n_;
    std::vector<std::vector<std::uint64_t>> adj_;
};

/// Exact pairwise test shared by the compatibility graph and validate_code.
bool words_compatible(const Graph& g, const Word& x, const Word& y);

/// Maximum clique of the compatibility graph (greedy-colouring
/// branch-and-bound). Throws std::invalid_argument when q^n exceeds cap.
std::pair<GuessingValue, GuessingCode> max_guessing(const Graph& g, int q,
                                                    std::uint64_t cap = default_word_cap);

/// Pairwise compatibility of every pair of words. Throws
/// std::invalid_argument for words of the wrong length or alphabet.
bool validate_code(const GuessingCode& code);

/// Lifts a code for G - d(S) to G: each old word is extended by every
/// choice of q^|S| values on the matched pairs (x_{s_i} = x_{c_i}), with
/// unmatched vertices of c(S) fixed to 0. Throws on an invalid code or
/// decomposition.
GuessingCode extend_code(const GuessingCode& base, const Decomposition& d, const Graph& g);

std::string to_string(const Word& w);

}  // namespace graph_entropy
