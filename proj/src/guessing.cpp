#include "graph_entropy/guessing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace graph_entropy {

namespace {

std::uint64_t word_count(int n, int q, std::uint64_t cap)
{
    if (q < 2)
        throw std::invalid_argument("alphabet size q must be at least 2");
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
        total *= static_cast<std::uint64_t>(q);
        if (total > cap)
            throw std::invalid_argument("q^n = " + std::to_string(q) + "^" + std::to_string(n) +
                                        " words exceed the cap of " + std::to_string(cap) +
                                        "; raise it with --cap");
    }
    return total;
}

// Distinct positions of x and y are compatible when each one sees another
// distinct position among its in-neighbours.
bool diff_compatible(const Graph& g, VertexSet diff)
{
    for (int v : diff)
        if (!g.in_neighbors(v).intersects(diff))
            return false;
    return true;
}

}  // namespace

std::string GuessingValue::expression() const
{
    return "log_" + std::to_string(q) + "(" + std::to_string(code_size) + ")";
}

double GuessingValue::approx() const
{
    return std::log(static_cast<double>(code_size)) / std::log(static_cast<double>(q));
}

std::string to_string(const Word& w)
{
    std::string s;
    for (auto d : w)
        s.push_back(static_cast<char>(d < 10 ? '0' + d : 'a' + d - 10));
    return s;
}

bool words_compatible(const Graph& g, const Word& x, const Word& y)
{
    VertexSet diff;
    for (int v = 0; v < g.order(); ++v)
        if (x[v] != y[v])
            diff.insert(v);
    return diff_compatible(g, diff);
}

CompatibilityGraph::CompatibilityGraph(const Graph& g, int q, std::uint64_t cap)
    : q_(q), n_(g.order())
{
    const std::uint64_t total = word_count(n_, q, cap);
    const std::size_t blocks = (total + 63) / 64;
    adj_.assign(total, std::vector<std::uint64_t>(blocks, 0));

    std::vector<Word> words(total);
    for (std::size_t i = 0; i < total; ++i)
        words[i] = word(i);
    for (std::size_t a = 0; a < total; ++a)
        for (std::size_t b = a + 1; b < total; ++b) {
            VertexSet diff;
            for (int v = 0; v < n_; ++v)
                if (words[a][v] != words[b][v])
                    diff.insert(v);
            if (diff_compatible(g, diff)) {
                adj_[a][b / 64] |= std::uint64_t{1} << (b % 64);
                adj_[b][a / 64] |= std::uint64_t{1} << (a % 64);
            }
        }
}

Word CompatibilityGraph::word(std::size_t index) const
{
    Word w(n_);
    for (int v = 0; v < n_; ++v) {
        w[v] = static_cast<std::uint8_t>(index % q_);
        index /= q_;
    }
    return w;
}

std::size_t CompatibilityGraph::edge_count() const
{
    std::size_t total = 0;
    for (const auto& r : adj_)
        for (auto b : r)
            total += std::popcount(b);
    return total / 2;
}

std::pair<GuessingValue, GuessingCode> max_guessing(const Graph& g, int q, std::uint64_t cap)
{
    CompatibilityGraph cg(g, q, cap);
    const std::size_t total = cg.size();
    const std::size_t blocks = (total + 63) / 64;
    using Bits = std::vector<std::uint64_t>;

    std::vector<std::size_t> best;
    std::vector<std::size_t> current;

    // Greedy colouring of the candidate set in index order; vertices come
    // back ordered by colour with the colour count as an upper bound.
    auto colour_sort = [&](const Bits& p, std::vector<std::size_t>& order,
                           std::vector<int>& bound) {
        order.clear();
        bound.clear();
        Bits uncoloured = p;
        int colour = 0;
        bool any = true;
        while (any) {
            any = false;
            Bits q_bits = uncoloured;
            ++colour;
            for (std::size_t blk = 0; blk < blocks; ++blk) {
                while (q_bits[blk]) {
                    std::size_t v = blk * 64 + std::countr_zero(q_bits[blk]);
                    q_bits[blk] &= q_bits[blk] - 1;
                    uncoloured[v / 64] &= ~(std::uint64_t{1} << (v % 64));
                    const Bits& nv = cg.row(v);
                    for (std::size_t k = blk; k < blocks; ++k)
                        q_bits[k] &= ~nv[k];
                    order.push_back(v);
                    bound.push_back(colour);
                    any = true;
                }
            }
        }
    };

    auto expand = [&](auto&& self, Bits p) -> void {
        std::vector<std::size_t> order;
        std::vector<int> bound;
        colour_sort(p, order, bound);
        for (std::size_t k = order.size(); k-- > 0;) {
            if (current.size() + static_cast<std::size_t>(bound[k]) <= best.size())
                return;
            std::size_t v = order[k];
            current.push_back(v);
            Bits next(blocks);
            bool nonempty = false;
            const Bits& nv = cg.row(v);
            for (std::size_t blk = 0; blk < blocks; ++blk) {
                next[blk] = p[blk] & nv[blk];
                nonempty = nonempty || next[blk];
            }
            if (!nonempty) {
                if (current.size() > best.size())
                    best = current;
            } else {
                self(self, std::move(next));
            }
            current.pop_back();
            p[v / 64] &= ~(std::uint64_t{1} << (v % 64));
        }
    };

    Bits all(blocks, 0);
    for (std::size_t v = 0; v < total; ++v)
        all[v / 64] |= std::uint64_t{1} << (v % 64);
    expand(expand, all);

    GuessingCode code{q, g, {}};
    for (auto idx : best)
        code.words.push_back(cg.word(idx));
    std::sort(code.words.begin(), code.words.end());
    if (!validate_code(code))
        throw std::logic_error("maximum clique is not a fixed-point code");
    GuessingValue value{q, code.words.size(), true};
    return {value, std::move(code)};
}

bool validate_code(const GuessingCode& code)
{
    const int n = code.host.order();
    for (const auto& w : code.words) {
        if (static_cast<int>(w.size()) != n)
            throw std::invalid_argument("word '" + to_string(w) + "' has length " +
                                        std::to_string(w.size()) + ", expected " +
                                        std::to_string(n));
        for (auto d : w)
            if (d >= code.q)
                throw std::invalid_argument("word '" + to_string(w) + "' uses a symbol outside [" +
                                            std::to_string(code.q) + "]");
    }
    for (std::size_t a = 0; a < code.words.size(); ++a)
        for (std::size_t b = a + 1; b < code.words.size(); ++b) {
            if (code.words[a] == code.words[b])
                continue;
            if (!words_compatible(code.host, code.words[a], code.words[b]))
                return false;
        }
    return true;
}

GuessingCode extend_code(const GuessingCode& base, const Decomposition& d, const Graph& g)
{
    if (!validate_decomposition(g, d))
        throw std::invalid_argument("decomposition does not validate against the graph");
    if (!(base.host == d.remainder.graph))
        throw std::invalid_argument("base code is not over G - d(S)");
    if (!validate_code(base))
        throw std::invalid_argument("base code is not a fixed-point code");

    const int n = g.order();
    const int k = static_cast<int>(d.matching.size());
    std::uint64_t choices = 1;
    for (int i = 0; i < k; ++i)
        choices *= static_cast<std::uint64_t>(base.q);

    GuessingCode out{base.q, g, {}};
    out.words.reserve(base.words.size() * choices);
    for (const auto& w : base.words) {
        Word x(n, 0);
        for (std::size_t i = 0; i < d.remainder.original.size(); ++i)
            x[d.remainder.original[i]] = w[i];
        for (std::uint64_t c = 0; c < choices; ++c) {
            std::uint64_t rest = c;
            for (auto [ci, si] : d.matching) {
                auto sym = static_cast<std::uint8_t>(rest % base.q);
                rest /= base.q;
                x[ci] = sym;
                x[si] = sym;
            }
            out.words.push_back(x);
        }
    }
    std::sort(out.words.begin(), out.words.end());
    if (!validate_code(out))
        throw std::logic_error("extended code fails validation");
    return out;
}

}  // namespace graph_entropy
