#pragma once

#include "graph_entropy/graph.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace graph_entropy {

/// graph6 for simple undirected graphs; "n; u-v,..." edge lists (1-indexed,
/// loops allowed); "n; u->v,..." arc lists for digraphs.
enum class GraphFormat { Graph6, EdgeList, ArcList };

std::string to_string(GraphFormat f);
std::optional<GraphFormat> parse_format_name(std::string_view name);

/// Arc list if the text contains "->", edge list if it contains ';',
/// graph6 otherwise.
GraphFormat detect_format(std::string_view text);

/// Throws std::invalid_argument on malformed input or vertex indices beyond
/// the declared order or the 64-vertex limit.
Graph parse_graph(std::string_view text, GraphFormat format);
Graph parse_graph(std::string_view text);

/// Canonical rendering: parse_graph(render_graph(g, f), f) == g. Throws
/// std::invalid_argument when g cannot be expressed in the format (graph6
/// rejects loops and asymmetric relations; edge lists reject asymmetry).
std::string render_graph(const Graph& g, GraphFormat format);

}  // namespace graph_entropy
