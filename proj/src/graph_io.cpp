#include "bootlab/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

namespace bootlab {
namespace {

GraphMode infer_mode(std::vector<Edge> edges) {
  for (auto& [u, v] : edges) {
    if (u == v) return GraphMode::multi;
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  return std::adjacent_find(edges.begin(), edges.end()) == edges.end() ? GraphMode::simple : GraphMode::multi;
}

Vertex parse_vertex(long long value, std::size_t line_no) {
  if (value < 0 || value > static_cast<long long>(UINT32_MAX)) {
    throw GraphError("line " + std::to_string(line_no) + ": vertex id " + std::to_string(value) + " out of range");
  }
  return static_cast<Vertex>(value);
}

Graph read_text(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<Edge> edges;

  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long a = 0;
    long long b = 0;
    if (!(fields >> a >> b)) throw GraphError("line " + std::to_string(line_no) + ": expected two integers");
    std::string rest;
    if (fields >> rest) throw GraphError("line " + std::to_string(line_no) + ": trailing content '" + rest + "'");
    if (!have_header) {
      if (a < 0 || b < 0) throw GraphError("line " + std::to_string(line_no) + ": negative header value");
      n = static_cast<std::size_t>(a);
      m = static_cast<std::size_t>(b);
      edges.reserve(m);
      have_header = true;
    } else {
      edges.emplace_back(parse_vertex(a, line_no), parse_vertex(b, line_no));
    }
  }
  if (!have_header) throw GraphError("missing 'n m' header line");
  if (edges.size() != m) {
    throw GraphError("header declares " + std::to_string(m) + " edges but " + std::to_string(edges.size()) +
                     " were listed");
  }
  return Graph::build(n, edges, infer_mode(edges));
}

Graph read_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw GraphError(std::string("invalid graph JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges")) {
    throw GraphError("graph JSON needs fields \"n\" and \"edges\"");
  }
  const auto n = doc.at("n").get<long long>();
  if (n < 0) throw GraphError("graph JSON: negative n");
  std::vector<Edge> edges;
  std::size_t index = 0;
  for (const auto& pair : doc.at("edges")) {
    ++index;
    if (!pair.is_array() || pair.size() != 2) throw GraphError("graph JSON: edge " + std::to_string(index) + " is not a pair");
    edges.emplace_back(parse_vertex(pair[0].get<long long>(), index), parse_vertex(pair[1].get<long long>(), index));
  }
  return Graph::build(static_cast<std::size_t>(n), edges, infer_mode(edges));
}

}  // namespace

Graph read_graph(std::istream& in, GraphFormat format) {
  return format == GraphFormat::json ? read_json(in) : read_text(in);
}

void write_graph(std::ostream& out, const Graph& g, GraphFormat format) {
  const auto edges = g.edges();
  if (format == GraphFormat::text) {
    out << g.num_vertices() << ' ' << edges.size() << '\n';
    for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
    return;
  }
  // Hand-written so the layout is stable: one line, no spaces.
  out << "{\"n\":" << g.num_vertices() << ",\"edges\":[";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) out << ',';
    out << '[' << edges[i].first << ',' << edges[i].second << ']';
  }
  out << "]}\n";
}

Graph parse_graph(std::string_view text, GraphFormat format) {
  std::istringstream in{std::string(text)};
  return read_graph(in, format);
}

std::string format_graph(const Graph& g, GraphFormat format) {
  std::ostringstream out;
  write_graph(out, g, format);
  return out.str();
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphError("cannot open graph file " + path.string());
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  auto first = text.find_first_not_of(" \t\r\n");
  const bool json = first != std::string::npos && text[first] == '{';
  return parse_graph(text, json ? GraphFormat::json : GraphFormat::text);
}

void save_graph(const std::filesystem::path& path, const Graph& g, GraphFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GraphError("cannot write graph file " + path.string());
  write_graph(out, g, format);
}

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "text") return GraphFormat::text;
  if (name == "json") return GraphFormat::json;
  throw GraphError("unknown graph format '" + std::string(name) + "' (expected text or json)");
}

}  // namespace bootlab
