#include "codecap/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "codecap/errors.hpp"

namespace codecap {

GraphFileFormat graph_format_from_string(const std::string& s) {
  if (s == "auto") return GraphFileFormat::auto_detect;
  if (s == "edgelist") return GraphFileFormat::edgelist;
  if (s == "dimacs") return GraphFileFormat::dimacs;
  throw ValidationError("unknown graph format \"" + s +
                        "\" (expected auto, edgelist, or dimacs)");
}

std::string to_string(GraphFileFormat f) {
  switch (f) {
    case GraphFileFormat::auto_detect:
      return "auto";
    case GraphFileFormat::edgelist:
      return "edgelist";
    case GraphFileFormat::dimacs:
      return "dimacs";
  }
  return "auto";
}

namespace {

[[noreturn]] void fail(const std::string& origin, std::size_t line,
                       const std::string& what) {
  throw ParseError(origin + ":" + std::to_string(line) + ": " + what);
}

struct Line {
  std::string text;
  std::size_t number = 0;
};

std::vector<Line> significant_lines(const std::string& text, bool skip_hash) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (skip_hash && line[start] == '#') continue;
    out.push_back({line, number});
  }
  return out;
}

void add_checked_edge(SimpleGraph& g, long long u, long long v,
                      const std::string& origin, std::size_t line) {
  const auto n = static_cast<long long>(g.n());
  if (u < 0 || u >= n || v < 0 || v >= n)
    fail(origin, line,
         "vertex out of range for a graph on " + std::to_string(n) +
             " vertices");
  if (u == v) fail(origin, line, "self-loop is not allowed");
  if (g.adjacent(static_cast<std::size_t>(u), static_cast<std::size_t>(v)))
    fail(origin, line, "duplicate edge");
  g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
}

SimpleGraph parse_edgelist(const std::string& text, const std::string& origin) {
  const std::vector<Line> lines = significant_lines(text, true);
  if (lines.empty()) throw ParseError(origin + ":1: empty edge-list file");

  std::istringstream head(lines[0].text);
  long long n = 0;
  std::string extra;
  if (!(head >> n) || (head >> extra))
    fail(origin, lines[0].number, "expected the vertex count alone");
  if (n < 1) fail(origin, lines[0].number, "vertex count must be positive");

  SimpleGraph g(static_cast<std::size_t>(n));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i].text);
    long long u = 0, v = 0;
    if (!(row >> u >> v) || (row >> extra))
      fail(origin, lines[i].number, "expected an edge \"u v\"");
    add_checked_edge(g, u, v, origin, lines[i].number);
  }
  return g;
}

SimpleGraph parse_dimacs(const std::string& text, const std::string& origin) {
  const std::vector<Line> lines = significant_lines(text, false);
  bool have_header = false;
  long long n = 0;
  SimpleGraph g(1);
  std::string extra;

  for (const Line& ln : lines) {
    std::istringstream row(ln.text);
    std::string tag;
    row >> tag;
    if (tag == "c") continue;
    if (tag == "p") {
      if (have_header) fail(origin, ln.number, "second \"p\" header");
      std::string kind;
      long long m = 0;
      if (!(row >> kind >> n >> m) || (row >> extra))
        fail(origin, ln.number, "expected \"p edge <n> <m>\"");
      if (kind != "edge" && kind != "edges" && kind != "col")
        fail(origin, ln.number, "unsupported problem type \"" + kind + "\"");
      if (n < 1) fail(origin, ln.number, "vertex count must be positive");
      g = SimpleGraph(static_cast<std::size_t>(n));
      have_header = true;
      continue;
    }
    if (tag == "e") {
      if (!have_header)
        fail(origin, ln.number, "edge before the \"p\" header");
      long long u = 0, v = 0;
      if (!(row >> u >> v) || (row >> extra))
        fail(origin, ln.number, "expected \"e u v\"");
      // DIMACS vertices are 1-indexed.
      add_checked_edge(g, u - 1, v - 1, origin, ln.number);
      continue;
    }
    fail(origin, ln.number, "unsupported line type \"" + tag + "\"");
  }
  if (!have_header) throw ParseError(origin + ":1: missing \"p\" header");
  return g;
}

}  // namespace

SimpleGraph parse_graph_text(const std::string& text, GraphFileFormat format,
                             const std::string& origin) {
  if (format == GraphFileFormat::auto_detect) {
    format = GraphFileFormat::edgelist;
    for (const Line& ln : significant_lines(text, false)) {
      const char c = ln.text[ln.text.find_first_not_of(" \t\r")];
      if (c == 'c' || c == 'p') format = GraphFileFormat::dimacs;
      break;
    }
  }
  return format == GraphFileFormat::dimacs ? parse_dimacs(text, origin)
                                           : parse_edgelist(text, origin);
}

SimpleGraph parse_graph_file(const std::string& path, GraphFileFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph_text(buf.str(), format, path);
}

}  // namespace codecap
