#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "bootlab/graph.hpp"

namespace bootlab {

enum class GraphFormat { text, json };

/// Text: header line "n m", then m lines "u v". Lines whose first
/// non-blank character is '#' are comments and may appear anywhere.
/// JSON: {"n": N, "edges": [[u, v], ...]}.
///
/// Readers build a simple graph unless the edge list contains a self-loop or
/// a repeated pair, in which case a multigraph is built. Writers emit edges
/// in Graph::edges() order, so write(read(x)) == x for any file this library
/// wrote.
Graph read_graph(std::istream& in, GraphFormat format);
void write_graph(std::ostream& out, const Graph& g, GraphFormat format);

Graph parse_graph(std::string_view text, GraphFormat format);
std::string format_graph(const Graph& g, GraphFormat format);

/// Chooses JSON when the first non-blank character is '{'.
Graph load_graph(const std::filesystem::path& path);
void save_graph(const std::filesystem::path& path, const Graph& g, GraphFormat format);

GraphFormat parse_graph_format(std::string_view name);

}  // namespace bootlab
