#include "rlab/graph_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace rlab {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
      ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
      ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

int to_int(std::string_view s, int line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(line, "expected integer, got '" + std::string(s) + "'");
  return value;
}

std::optional<Part> letter_part(char c) {
  switch (c) {
    case 'a': case 'A': return Part::A;
    case 'b': case 'B': return Part::B;
    case 'c': case 'C': return Part::C;
    default: return std::nullopt;
  }
}

}  // namespace

AnyGraph parse_graph(std::string_view text) {
  enum class Kind { None, Tripartite, General } kind = Kind::None;
  std::array<int, 3> sizes{};
  int n = 0;
  std::vector<Part> labels;
  std::vector<char> labelled;
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> seen;

  auto resolve = [&](std::string_view tok, int line) -> int {
    if (kind == Kind::Tripartite) {
      auto p = tok.empty() ? std::nullopt : letter_part(tok[0]);
      if (!p) throw ParseError(line, "expected a<i>, b<i> or c<i>, got '" +
                                         std::string(tok) + "'");
      int idx = to_int(tok.substr(1), line);
      if (idx < 0 || idx >= sizes[index_of(*p)])
        throw ParseError(line, "vertex index out of range: " + std::string(tok));
      int off = 0;
      for (int i = 0; i < index_of(*p); ++i) off += sizes[i];
      return off + idx;
    }
    int v = to_int(tok, line);
    if (v < 0 || v >= n)
      throw ParseError(line, "vertex index out of range: " + std::string(tok));
    return v;
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto tok = split_ws(line);
    if (tok.empty() || tok[0][0] == '#') {
      if (end == text.size()) break;
      continue;
    }
    const std::string_view head = tok[0];
    if (head == "p" || head == "g") {
      if (kind != Kind::None) throw ParseError(line_no, "duplicate header");
      if (head == "p") {
        if (tok.size() != 4) throw ParseError(line_no, "expected 'p <nA> <nB> <nC>'");
        for (int i = 0; i < 3; ++i) {
          sizes[i] = to_int(tok[i + 1], line_no);
          if (sizes[i] < 0) throw ParseError(line_no, "negative part size");
        }
        kind = Kind::Tripartite;
      } else {
        if (tok.size() != 2) throw ParseError(line_no, "expected 'g <n>'");
        n = to_int(tok[1], line_no);
        if (n < 0) throw ParseError(line_no, "negative vertex count");
        labels.assign(n, Part::A);
        labelled.assign(n, 0);
        kind = Kind::General;
      }
    } else if (head == "e") {
      if (kind == Kind::None) throw ParseError(line_no, "edge before header");
      if (tok.size() != 3) throw ParseError(line_no, "expected 'e <x> <y>'");
      int x = resolve(tok[1], line_no), y = resolve(tok[2], line_no);
      if (x == y) throw ParseError(line_no, "self-loop");
      if (kind == Kind::Tripartite && std::tolower(tok[1][0]) == std::tolower(tok[2][0]))
        throw ParseError(line_no, "edge inside a part");
      if (!seen.insert({std::min(x, y), std::max(x, y)}).second)
        throw ParseError(line_no, "duplicate edge");
      edges.emplace_back(x, y);
    } else if (head == "l") {
      if (kind != Kind::General)
        throw ParseError(line_no, "label lines are only valid after 'g <n>'");
      if (tok.size() != 3 || tok[2].size() != 1 || !letter_part(tok[2][0]))
        throw ParseError(line_no, "expected 'l <v> <a|b|c>'");
      int v = resolve(tok[1], line_no);
      labels[v] = *letter_part(tok[2][0]);
      labelled[v] = 1;
    } else {
      throw ParseError(line_no, "unknown record '" + std::string(head) + "'");
    }
    if (end == text.size()) break;
  }

  if (kind == Kind::None) throw ParseError(line_no, "missing header");
  if (kind == Kind::Tripartite) {
    try {
      return TripartiteGraph::from_global(sizes, edges);
    } catch (const GraphError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  bool any = false, all = true;
  for (char c : labelled) {
    any = any || c;
    all = all && c;
  }
  if (any && !all) throw ParseError(line_no, "part labels must cover every vertex");
  return Graph(n, std::move(edges), any ? std::move(labels) : std::vector<Part>{});
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << "g " << g.vertex_count() << '\n';
  if (g.has_parts())
    for (int v = 0; v < g.vertex_count(); ++v)
      out << "l " << v << ' ' << part_letter(g.part(v)) << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << '\n';
  return out.str();
}

std::string serialize_graph(const TripartiteGraph& g) {
  std::ostringstream out;
  const auto& s = g.part_sizes();
  out << "p " << s[0] << ' ' << s[1] << ' ' << s[2] << '\n';
  for (auto [a, b] : g.edges_ab()) out << "e a" << a << " b" << b << '\n';
  for (auto [b, c] : g.edges_bc()) out << "e b" << b << " c" << c << '\n';
  for (auto [c, a] : g.edges_ca()) out << "e c" << c << " a" << a << '\n';
  return out.str();
}

std::string serialize_graph(const AnyGraph& g) {
  return std::visit([](const auto& x) { return serialize_graph(x); }, g);
}

const Graph& as_graph(const AnyGraph& g) {
  if (auto* t = std::get_if<TripartiteGraph>(&g)) return t->graph();
  return std::get<Graph>(g);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void save_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

AnyGraph load_graph_file(const std::string& path) {
  return parse_graph(read_text_file(path));
}

}  // namespace rlab
