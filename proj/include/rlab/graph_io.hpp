#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "rlab/graph.hpp"

namespace rlab {

/// Raised on malformed graph text; line() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

using AnyGraph = std::variant<Graph, TripartiteGraph>;

// Text format, one record per line, '#' starts a comment line:
//   p <nA> <nB> <nC>      tripartite header; vertices a<i>, b<i>, c<i>
//   g <n>                 general header; vertices 0..n-1
//   l <v> <a|b|c>         optional part label (general graphs only)
//   e <x> <y>             edge
AnyGraph parse_graph(std::string_view text);

/// Canonical form: header, labels, then edges sorted lexicographically.
/// Tripartite edges are written in AB, BC, CA order as "a<i> b<j>",
/// "b<i> c<j>", "c<i> a<j>".
std::string serialize_graph(const Graph& g);
std::string serialize_graph(const TripartiteGraph& g);
std::string serialize_graph(const AnyGraph& g);

AnyGraph load_graph_file(const std::string& path);
void save_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

/// The general graph behind either alternative.
const Graph& as_graph(const AnyGraph& g);

}  // namespace rlab
