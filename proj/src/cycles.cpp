#include "rlab/cycles.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace rlab {

namespace {

constexpr int kFar = std::numeric_limits<int>::max() / 2;

// Cycle search over mutable bit-rows, shared by find_cycle and the greedy
// packer (which deletes edges between searches).
class CycleFinder {
 public:
  CycleFinder(std::vector<Bitset> rows, int length, std::uint64_t node_cap)
      : rows_(std::move(rows)), n_(static_cast<int>(rows_.size())),
        length_(length), node_cap_(node_cap), dist_(n_, kFar), on_path_(n_) {}

  void remove_edge(int u, int v) {
    rows_[u].reset(v);
    rows_[v].reset(u);
  }

  // Smallest cycle whose minimum vertex is s, within `allowed` (empty = all).
  SearchStatus search_from(int s, const Bitset& allowed, std::vector<int>& out) {
    window_ = Bitset(n_);
    for (int v = s; v < n_; ++v)
      if (allowed.empty() || allowed.test(v)) window_.set(v);
    if (!window_.test(s)) return SearchStatus::NotFound;
    distances_from(s);
    path_.assign(1, s);
    on_path_.reset();
    on_path_.set(s);
    start_ = s;
    switch (extend()) {
      case Step::Found: out = path_; return SearchStatus::Found;
      case Step::Budget: return SearchStatus::BudgetExceeded;
      case Step::Exhausted: return SearchStatus::NotFound;
    }
    return SearchStatus::NotFound;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  enum class Step { Found, Exhausted, Budget };

  void distances_from(int s) {
    std::fill(dist_.begin(), dist_.end(), kFar);
    std::deque<int> queue{s};
    dist_[s] = 0;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      Bitset next = rows_[x] & window_;
      for (auto y = next.find_first(); y != Bitset::npos; y = next.find_next(y))
        if (dist_[y] == kFar) {
          dist_[y] = dist_[x] + 1;
          queue.push_back(static_cast<int>(y));
        }
    }
  }

  Step extend() {
    if (node_cap_ && nodes_ >= node_cap_) return Step::Budget;
    ++nodes_;
    const int len = static_cast<int>(path_.size());
    const int last = path_.back();
    if (len == length_)
      return rows_[last].test(start_) ? Step::Found : Step::Exhausted;
    Bitset cand = rows_[last] & window_;
    cand -= on_path_;
    const int remaining_after = length_ - len;  // edges left after the next step
    for (auto y = cand.find_first(); y != Bitset::npos; y = cand.find_next(y)) {
      if (dist_[y] > remaining_after) continue;
      path_.push_back(static_cast<int>(y));
      on_path_.set(y);
      Step r = extend();
      if (r != Step::Exhausted) return r;
      on_path_.reset(y);
      path_.pop_back();
    }
    return Step::Exhausted;
  }

  std::vector<Bitset> rows_;
  int n_;
  int length_;
  std::uint64_t node_cap_;
  std::uint64_t nodes_ = 0;
  std::vector<int> dist_;
  Bitset window_;
  Bitset on_path_;
  std::vector<int> path_;
  int start_ = 0;
};

std::vector<Bitset> rows_of(const Graph& g) {
  std::vector<Bitset> rows;
  rows.reserve(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) rows.push_back(g.row(v));
  return rows;
}

}  // namespace

CycleSearch find_cycle(const Graph& g, int length, const Bitset& allowed,
                       std::uint64_t node_cap) {
  if (length < 3) throw std::invalid_argument("cycle length must be at least 3");
  CycleSearch result;
  CycleFinder finder(rows_of(g), length, node_cap);
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (!allowed.empty() && !allowed.test(s)) continue;
    SearchStatus st = finder.search_from(s, allowed, result.cycle);
    if (st != SearchStatus::NotFound) {
      result.status = st;
      break;
    }
  }
  result.nodes = finder.nodes();
  if (result.status != SearchStatus::Found) result.cycle.clear();
  return result;
}

CyclePacking greedy_edge_disjoint_packing(const Graph& g, int cycle_length) {
  if (cycle_length < 3 || cycle_length % 2 == 0)
    throw std::invalid_argument("cycle length must be odd and at least 3");
  CyclePacking packing;
  packing.cycle_length = cycle_length;
  CycleFinder finder(rows_of(g), cycle_length, 0);
  const Bitset all;
  std::vector<int> cycle;
  for (int s = 0; s < g.vertex_count(); ++s) {
    while (finder.search_from(s, all, cycle) == SearchStatus::Found) {
      for (std::size_t i = 0; i < cycle.size(); ++i)
        finder.remove_edge(cycle[i], cycle[(i + 1) % cycle.size()]);
      packing.cycles.push_back(cycle);
    }
  }
  return packing;
}

std::vector<int> shortest_odd_cycle(const Graph& g) {
  const int n = g.vertex_count();
  int best_len = kFar;
  std::vector<int> best;
  std::vector<int> dist(n), parent(n);
  for (int root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<int> queue{root};
    dist[root] = 0;
    parent[root] = -1;
    int hit_x = -1, hit_y = -1;
    while (!queue.empty() && hit_x < 0) {
      int x = queue.front();
      queue.pop_front();
      if (2 * dist[x] + 1 >= best_len) break;
      for (int y : g.neighbors(x)) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          queue.push_back(y);
        } else if (dist[y] == dist[x] && x < y) {
          hit_x = x;
          hit_y = y;
          break;
        }
      }
    }
    if (hit_x < 0) continue;
    // Walk both endpoints up to their lowest common ancestor.
    std::vector<int> left{hit_x}, right{hit_y};
    while (left.back() != right.back()) {
      left.push_back(parent[left.back()]);
      right.push_back(parent[right.back()]);
    }
    std::vector<int> cycle(left.rbegin(), left.rend());
    for (std::size_t i = 0; i + 1 < right.size(); ++i) cycle.push_back(right[i]);
    if (static_cast<int>(cycle.size()) < best_len) {
      best_len = static_cast<int>(cycle.size());
      best = std::move(cycle);
    }
  }
  return best;
}

PeelResult shortest_odd_cycle_peel(const Graph& g, double epsilon) {
  const int n = g.vertex_count();
  PeelResult result;
  result.threshold = epsilon * n;
  std::vector<int> degree(n);
  std::vector<char> alive(n, 1);
  std::vector<int> stack;
  for (int v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    if (degree[v] < result.threshold) {
      alive[v] = 0;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(v)) {
      if (!alive[w]) continue;
      if (--degree[w] < result.threshold) {
        alive[w] = 0;
        stack.push_back(w);
      }
    }
  }
  for (int v = 0; v < n; ++v)
    if (alive[v]) result.remaining.push_back(v);
  if (result.remaining.empty()) {
    result.outcome = PeelOutcome::RemainderEmpty;
    return result;
  }
  Graph rest = g.induced(result.remaining);
  std::vector<int> local = shortest_odd_cycle(rest);
  if (local.empty()) {
    result.outcome = PeelOutcome::RemainderBipartite;
    return result;
  }
  for (int v : local) result.cycle.push_back(result.remaining[v]);
  result.outcome = PeelOutcome::OddCycle;
  return result;
}

}  // namespace rlab
