#pragma once

#include <string>

#include "codecap/capacity.hpp"

namespace codecap {

/// Supported graph file formats:
/// - edgelist: vertex count on the first line, then one "u v" pair per
///   line, 0-indexed; blank lines and lines starting with '#' are skipped.
/// - dimacs: "c" comments, one "p edge <n> <m>" header, then "e u v"
///   lines, 1-indexed.
/// Both reject self-loops and duplicate edges, reporting the line number.
enum class GraphFileFormat { auto_detect, edgelist, dimacs };

GraphFileFormat graph_format_from_string(const std::string& s);
std::string to_string(GraphFileFormat f);

SimpleGraph parse_graph_text(const std::string& text, GraphFileFormat format,
                             const std::string& origin = "<string>");

SimpleGraph parse_graph_file(const std::string& path,
                             GraphFileFormat format = GraphFileFormat::auto_detect);

}  // namespace codecap
