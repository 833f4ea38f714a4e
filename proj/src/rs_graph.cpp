#include "rlab/rs_graph.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <string>

#include "rlab/graph_io.hpp"

namespace rlab {

RsParameters normalized(const RsParameters& p) {
  if (p.m < 1) throw std::invalid_argument("RS parameter m must be positive");
  if (p.m > 1'000'000) throw std::invalid_argument("RS parameter m too large");
  RsParameters out{p.m, p.r};
  std::sort(out.r.begin(), out.r.end());
  out.r.erase(std::unique(out.r.begin(), out.r.end()), out.r.end());
  for (auto x : out.r)
    if (x < 1 || x > p.m)
      throw std::invalid_argument("element " + std::to_string(x) + " of R outside [1, " +
                                  std::to_string(p.m) + "]");
  return out;
}

TripartiteGraph build_rs_graph(const RsParameters& params) {
  const RsParameters p = normalized(params);
  const int n = static_cast<int>(3 * p.m);
  TripartiteGraph::PairList ab, bc, ca;
  // local index i <-> label i+1, so differences of labels equal differences
  // of indices.
  for (int x = 0; x < n; ++x)
    for (auto r : p.r) {
      if (x + r < n) {
        ab.emplace_back(x, x + static_cast<int>(r));
        bc.emplace_back(x, x + static_cast<int>(r));
      }
      if (x + 2 * r < n) ca.emplace_back(x + static_cast<int>(2 * r), x);
    }
  TripartiteGraph g({n, n, n}, std::move(ab), std::move(bc), std::move(ca));
  std::vector<std::int64_t> labels(3 * n);
  for (int v = 0; v < 3 * n; ++v) labels[v] = v % n + 1;
  return g.with_labels(std::move(labels));
}

CyclePacking canonical_triangle_family(const RsParameters& params) {
  const RsParameters p = normalized(params);
  const int n = static_cast<int>(3 * p.m);
  CyclePacking out;
  out.cycle_length = 3;
  for (std::int64_t a = 1; a <= p.m; ++a)
    for (auto r : p.r)
      out.cycles.push_back({static_cast<int>(a - 1), static_cast<int>(n + a + r - 1),
                            static_cast<int>(2 * n + a + 2 * r - 1)});
  return out;
}

std::vector<std::int64_t> parse_r_file(std::string_view text) {
  std::vector<std::int64_t> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
      line.remove_suffix(1);
    if (!line.empty() && line.front() != '#') {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
      if (ec != std::errc() || ptr != line.data() + line.size())
        throw ParseError(line_no, "expected one integer per line");
      out.push_back(v);
    }
    if (end == text.size()) break;
  }
  return out;
}

std::vector<std::int64_t> hom_to_assignment(const TripartiteGraph& h, const RoleMap& roles,
                                            std::span<const int> hom,
                                            const TripartiteGraph& rs) {
  const Graph& hg = h.graph();
  if (static_cast<int>(hom.size()) != hg.vertex_count())
    throw GraphError("homomorphism has wrong length");
  {
    std::array<bool, 3> seen{};
    for (Part p : roles) seen[index_of(p)] = true;
    if (!(seen[0] && seen[1] && seen[2])) throw GraphError("role map is not a bijection");
  }
  for (int v = 0; v < hg.vertex_count(); ++v) {
    if (hom[v] < 0 || hom[v] >= rs.vertex_count())
      throw GraphError("image of vertex " + std::to_string(v) + " out of range");
    if (rs.locate(hom[v]).part != roles[index_of(hg.part(v))])
      throw GraphError("vertex " + std::to_string(v) + " mapped outside its role's part");
  }
  std::vector<std::int64_t> out;
  out.reserve(hg.edge_count());
  for (int id = 0; id < hg.edge_count(); ++id) {
    const Edge& e = hg.edge(id);
    if (!rs.graph().adjacent(hom[e.u], hom[e.v]))
      throw GraphError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       ") is not mapped to an edge");
    PartVertex x = rs.locate(hom[e.u]), y = rs.locate(hom[e.v]);
    if (index_of(x.part) > index_of(y.part)) std::swap(x, y);
    // x.part < y.part: (A,B), (A,C) or (B,C)
    std::int64_t label;
    if (x.part == Part::A && y.part == Part::C)
      label = (y.index - x.index) / 2;
    else
      label = y.index - x.index;
    out.push_back(label);
  }
  return out;
}

}  // namespace rlab
