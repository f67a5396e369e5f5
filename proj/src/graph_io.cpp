#include "graph_entropy/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>
#include <vector>

namespace graph_entropy {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(const std::string& what)
{
    throw std::invalid_argument(what);
}

int parse_int(std::string_view s, const char* what)
{
    s = trim(s);
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        fail(std::string("malformed ") + what + " '" + std::string(s) + "'");
    return value;
}

Graph parse_graph6(std::string_view text)
{
    constexpr std::string_view header = ">>graph6<<";
    if (text.starts_with(header))
        text.remove_prefix(header.size());
    if (text.empty())
        fail("graph6: empty input");
    for (char c : text)
        if (c < 63 || c > 126)
            fail("graph6: byte " + std::to_string(static_cast<int>(static_cast<unsigned char>(c))) +
                 " outside the printable range 63..126");

    std::size_t pos = 0;
    long n = 0;
    if (text[0] != 126) {
        n = text[0] - 63;
        pos = 1;
    } else {
        if (text.size() < 4 || text[1] == 126)
            fail("graph6: malformed header (orders above 258047 are not supported)");
        n = ((text[1] - 63L) << 12) | ((text[2] - 63L) << 6) | (text[3] - 63L);
        pos = 4;
    }
    if (n > max_vertices)
        fail("graph6: order " + std::to_string(n) + " exceeds the vertex limit of " +
             std::to_string(max_vertices));

    const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
    const std::size_t bytes = (bits + 5) / 6;
    if (text.size() - pos != bytes)
        fail("graph6: expected " + std::to_string(bytes) + " data bytes for order " +
             std::to_string(n) + ", found " + std::to_string(text.size() - pos));

    Graph g(static_cast<int>(n));
    std::size_t k = 0;
    auto bit = [&](std::size_t idx) { return ((text[pos + idx / 6] - 63) >> (5 - idx % 6)) & 1; };
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++k)
            if (bit(k))
                g.add_edge(i, j);
    for (; k < bytes * 6; ++k)
        if (bit(k))
            fail("graph6: nonzero padding bits");
    return g;
}

std::string render_graph6(const Graph& g)
{
    if (!g.is_symmetric())
        fail("graph6 cannot express an asymmetric relation; use the arc-list format");
    if (!loops(g).empty())
        fail("graph6 cannot express loops; use the edge-list format");
    const int n = g.order();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        out.push_back(126);
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
    int acc = 0, used = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_arc(i, j) ? 1 : 0);
            if (++used == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = used = 0;
            }
        }
    if (used > 0)
        out.push_back(static_cast<char>((acc << (6 - used)) + 63));
    return out;
}

// "n; a<sep>b, ..." with one-based labels.
Graph parse_pair_list(std::string_view text, std::string_view sep, bool directed)
{
    const char* fmt = directed ? "arc list" : "edge list";
    auto semi = text.find(';');
    if (semi == std::string_view::npos)
        fail(std::string(fmt) + ": missing 'n;' header");
    const int n = parse_int(text.substr(0, semi), "vertex count");
    if (n < 0 || n > max_vertices)
        fail(std::string(fmt) + ": order " + std::to_string(n) + " outside 0.." +
             std::to_string(max_vertices));
    Graph g(n, directed ? GraphKind::Directed : GraphKind::Undirected);

    std::string_view body = trim(text.substr(semi + 1));
    while (!body.empty()) {
        auto comma = body.find(',');
        std::string_view item = trim(body.substr(0, comma));
        body = comma == std::string_view::npos ? std::string_view{} : trim(body.substr(comma + 1));
        if (item.empty())
            fail(std::string(fmt) + ": empty entry");
        auto at = item.find(sep);
        if (at == std::string_view::npos)
            fail(std::string(fmt) + ": entry '" + std::string(item) + "' lacks '" +
                 std::string(sep) + "'");
        int u = parse_int(item.substr(0, at), "vertex index");
        int v = parse_int(item.substr(at + sep.size()), "vertex index");
        if (u < 1 || u > n || v < 1 || v > n)
            fail(std::string(fmt) + ": vertex index in '" + std::string(item) + "' outside 1.." +
                 std::to_string(n));
        if (directed)
            g.add_arc(u - 1, v - 1);
        else
            g.add_edge(u - 1, v - 1);
    }
    return g;
}

}  // namespace

std::string to_string(GraphFormat f)
{
    switch (f) {
    case GraphFormat::Graph6: return "graph6";
    case GraphFormat::EdgeList: return "edge-list";
    case GraphFormat::ArcList: return "arc-list";
    }
    return "unknown";
}

std::optional<GraphFormat> parse_format_name(std::string_view name)
{
    if (name == "graph6" || name == "g6")
        return GraphFormat::Graph6;
    if (name == "edge-list" || name == "edges")
        return GraphFormat::EdgeList;
    if (name == "arc-list" || name == "arcs")
        return GraphFormat::ArcList;
    return std::nullopt;
}

GraphFormat detect_format(std::string_view text)
{
    if (text.find("->") != std::string_view::npos)
        return GraphFormat::ArcList;
    if (text.find(';') != std::string_view::npos)
        return GraphFormat::EdgeList;
    return GraphFormat::Graph6;
}

Graph parse_graph(std::string_view text, GraphFormat format)
{
    text = trim(text);
    switch (format) {
    case GraphFormat::Graph6: return parse_graph6(text);
    case GraphFormat::EdgeList: return parse_pair_list(text, "-", false);
    case GraphFormat::ArcList: return parse_pair_list(text, "->", true);
    }
    fail("unknown graph format");
}

Graph parse_graph(std::string_view text)
{
    return parse_graph(text, detect_format(text));
}

std::string render_graph(const Graph& g, GraphFormat format)
{
    if (format == GraphFormat::Graph6)
        return render_graph6(g);

    std::vector<std::pair<int, int>> pairs;
    std::string sep;
    if (format == GraphFormat::EdgeList) {
        if (!g.is_symmetric())
            fail("edge list cannot express an asymmetric relation; use the arc-list format");
        pairs = g.edges();
        sep = "-";
    } else {
        pairs = g.arcs();
        sep = "->";
    }
    std::string out = std::to_string(g.order()) + ";";
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        out += k == 0 ? " " : ",";
        out += std::to_string(pairs[k].first + 1) + sep + std::to_string(pairs[k].second + 1);
    }
    return out;
}

}  // namespace graph_entropy
