#include "rlab/equations.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "rlab/graph_io.hpp"
#include "rlab/linalg.hpp"

namespace rlab {

namespace {

Coeff checked_add(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow");
  return r;
}

Coeff checked_mul(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow");
  return r;
}

}  // namespace

// ------------------------------------------------------------ LinearEquation

LinearEquation::LinearEquation(int k, const std::map<int, Coeff>& coeffs) : k_(k) {
  if (k < 0) throw std::invalid_argument("negative variable count");
  for (auto [v, c] : coeffs) {
    if (v < 0 || v >= k) throw std::invalid_argument("variable id out of range");
    if (c != 0) terms_.emplace(v, c);
  }
}

LinearEquation LinearEquation::from_dense(std::span<const Coeff> coeffs) {
  std::map<int, Coeff> m;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) m.emplace(static_cast<int>(i), coeffs[i]);
  return LinearEquation(static_cast<int>(coeffs.size()), m);
}

Coeff LinearEquation::coefficient(int var) const {
  auto it = terms_.find(var);
  return it == terms_.end() ? 0 : it->second;
}

std::vector<Coeff> LinearEquation::dense() const {
  std::vector<Coeff> out(k_, 0);
  for (auto [v, c] : terms_) out[v] = c;
  return out;
}

Coeff LinearEquation::coefficient_sum() const {
  Coeff s = 0;
  for (auto [v, c] : terms_) s = checked_add(s, c);
  return s;
}

bool LinearEquation::is_convex() const {
  int negative = 0;
  for (auto [v, c] : terms_) negative += c < 0;
  return negative == 1 && translation_invariant();
}

// ------------------------------------------------------------ EquationSystem

EquationSystem::EquationSystem(int k, std::vector<LinearEquation> rows, std::string name)
    : k_(k), rows_(std::move(rows)), name_(std::move(name)) {
  for (const auto& r : rows_)
    if (r.variable_count() != k)
      throw std::invalid_argument("rows disagree on the variable count");
}

EquationSystem EquationSystem::from_dense(const std::vector<std::vector<Coeff>>& rows,
                                          std::string name) {
  if (rows.empty()) throw std::invalid_argument("from_dense needs at least one row");
  std::vector<LinearEquation> eqs;
  for (const auto& r : rows) eqs.push_back(LinearEquation::from_dense(r));
  return EquationSystem(static_cast<int>(rows[0].size()), std::move(eqs), std::move(name));
}

std::vector<std::vector<Coeff>> EquationSystem::dense_rows() const {
  std::vector<std::vector<Coeff>> out;
  for (const auto& r : rows_) out.push_back(r.dense());
  return out;
}

bool EquationSystem::translation_invariant() const {
  return std::all_of(rows_.begin(), rows_.end(),
                     [](const LinearEquation& r) { return r.translation_invariant(); });
}

Coeff EquationSystem::absolute_sum() const {
  Coeff s = 0;
  for (const auto& r : rows_)
    for (auto [v, c] : r.terms()) s = checked_add(s, c < 0 ? -c : c);
  return s;
}

EquationSystem three_ap_system() {
  return EquationSystem::from_dense({{1, -2, 1}}, "3ap");
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    default: return "inconclusive";
  }
}

// ------------------------------------------------------------------ genus one

namespace {

// Search for x in {0,1}^n with x[0] = 0, x != 0 and, for every row r,
// sum_i a[r][i] x[i] in targets[r]. Rows are stored per variable so that only
// rows touched by the current variable are re-checked.
class ZeroOneSearch {
 public:
  ZeroOneSearch(int n, const std::vector<std::vector<Coeff>>& rows,
                std::vector<std::vector<Coeff>> targets, std::uint64_t budget)
      : n_(n), targets_(std::move(targets)), budget_(budget) {
    const int s = static_cast<int>(rows.size());
    by_var_.resize(n);
    for (int r = 0; r < s; ++r)
      for (int i = 0; i < n; ++i)
        if (rows[r][i] != 0) by_var_[i].push_back({r, rows[r][i]});
    partial_.assign(s, 0);
    pos_.assign(s, 0);
    neg_.assign(s, 0);
    for (int r = 0; r < s; ++r)
      for (int i = 0; i < n; ++i) {
        if (rows[r][i] > 0) pos_[r] = checked_add(pos_[r], rows[r][i]);
        else neg_[r] = checked_add(neg_[r], rows[r][i]);
      }
    x_.assign(n, 0);
  }

  enum class Outcome { Found, None, Budget };

  Outcome run() {
    for (std::size_t r = 0; r < partial_.size(); ++r)
      if (!feasible(static_cast<int>(r))) return Outcome::None;
    if (n_ == 0) return Outcome::None;
    // x[0] = 0 by symmetry (x -> 1 - x).
    if (!assign(0, 0)) return Outcome::None;
    Outcome o = dfs(1, false);
    return o;
  }

  const std::vector<char>& solution() const { return x_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Term {
    int row;
    Coeff a;
  };

  bool feasible(int r) const {
    const Coeff lo = partial_[r] + neg_[r], hi = partial_[r] + pos_[r];
    for (Coeff t : targets_[r])
      if (lo <= t && t <= hi) return true;
    return false;
  }

  // Removes variable i from the undecided ranges and adds value*a.
  bool assign(int i, int value) {
    x_[i] = static_cast<char>(value);
    bool ok = true;
    for (const Term& t : by_var_[i]) {
      if (t.a > 0) pos_[t.row] -= t.a;
      else neg_[t.row] -= t.a;
      if (value) partial_[t.row] += t.a;
      if (ok && !feasible(t.row)) ok = false;
    }
    return ok;
  }

  void unassign(int i) {
    for (const Term& t : by_var_[i]) {
      if (t.a > 0) pos_[t.row] += t.a;
      else neg_[t.row] += t.a;
      if (x_[i]) partial_[t.row] -= t.a;
    }
    x_[i] = 0;
  }

  Outcome dfs(int i, bool any_one) {
    if (++nodes_ > budget_ && budget_) return Outcome::Budget;
    if (i == n_) return any_one ? Outcome::Found : Outcome::None;
    for (int value : {0, 1}) {
      bool ok = assign(i, value);
      if (ok) {
        Outcome o = dfs(i + 1, any_one || value);
        if (o != Outcome::None) return o;
      }
      unassign(i);
    }
    return Outcome::None;
  }

  int n_;
  std::vector<std::vector<Term>> by_var_;
  std::vector<std::vector<Coeff>> targets_;
  std::vector<Coeff> partial_, pos_, neg_;
  std::vector<char> x_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
};

// Returns the side of the partition {T, complement} that contains variable 0.
std::vector<int> canonical_witness(const std::vector<char>& in_t) {
  std::vector<int> w;
  const char side = in_t.empty() ? 0 : in_t[0];
  for (std::size_t i = 0; i < in_t.size(); ++i)
    if (in_t[i] == side) w.push_back(static_cast<int>(i));
  return w;
}

GenusResult genus_by_subsets(const EquationSystem& s, const GenusOptions& opt) {
  GenusResult res;
  res.engine = "subset";
  const int k = s.variable_count();
  auto rows = s.dense_rows();
  std::vector<std::vector<Coeff>> targets(rows.size(), std::vector<Coeff>{0});
  ZeroOneSearch search(k, rows, targets, opt.node_budget);
  auto o = search.run();
  res.nodes = search.nodes();
  if (o == ZeroOneSearch::Outcome::Budget) {
    res.verdict = Verdict::Inconclusive;
    res.note = "node budget exhausted; raise the budget";
  } else if (o == ZeroOneSearch::Outcome::Found) {
    res.verdict = Verdict::False;
    res.witness = canonical_witness(search.solution());
  } else {
    res.verdict = Verdict::True;
  }
  return res;
}

// 0/1 kernel vectors: the pivot coordinates are determined by the free ones,
// x_p = -sum_f R[p][f] x_f, so search over the free columns only and demand
// every pivot value land in {0, 1}.
GenusResult genus_by_echelon(const EquationSystem& s, const GenusOptions& opt) {
  GenusResult res;
  res.engine = "echelon";
  const int k = s.variable_count();
  Echelon e = reduce(to_rational(s.dense_rows()), k);
  const std::vector<int> free = e.free_columns();
  if (static_cast<int>(free.size()) > opt.cap) {
    res.verdict = Verdict::Inconclusive;
    res.note = "k = " + std::to_string(k) + " and kernel dimension " +
               std::to_string(free.size()) + " both exceed cap " +
               std::to_string(opt.cap) + "; raise the cap";
    return res;
  }
  std::vector<std::vector<Coeff>> rows;
  std::vector<std::vector<Coeff>> targets;
  try {
    for (int r = 0; r < e.rank(); ++r) {
      RatVector v;
      for (int f : free) v.push_back(e.rows[r][f]);
      BigInt l = 1;
      for (const auto& q : v) l = lcm(l, BigInt(denominator(q)));
      std::vector<Coeff> row;
      for (const auto& q : v) {
        BigInt z = numerator(q) * (l / denominator(q));
        if (abs(z) > BigInt(std::numeric_limits<Coeff>::max() / 4))
          throw std::overflow_error("echelon entry too large");
        row.push_back(z.convert_to<Coeff>());
      }
      if (l > BigInt(std::numeric_limits<Coeff>::max() / 4))
        throw std::overflow_error("echelon denominator too large");
      const Coeff d = l.convert_to<Coeff>();
      rows.push_back(std::move(row));
      targets.push_back({0, -d});
    }
  } catch (const std::overflow_error&) {
    res.verdict = Verdict::Inconclusive;
    res.note = "echelon form exceeds 64-bit range";
    return res;
  }
  ZeroOneSearch search(static_cast<int>(free.size()), rows, targets, opt.node_budget);
  auto o = search.run();
  res.nodes = search.nodes();
  if (o == ZeroOneSearch::Outcome::Budget) {
    res.verdict = Verdict::Inconclusive;
    res.note = "node budget exhausted; raise the budget";
    return res;
  }
  if (o == ZeroOneSearch::Outcome::None) {
    res.verdict = Verdict::True;
    return res;
  }
  std::vector<char> x(k, 0);
  const auto& sol = search.solution();
  for (std::size_t j = 0; j < free.size(); ++j) x[free[j]] = sol[j];
  for (int r = 0; r < e.rank(); ++r) {
    Coeff acc = 0;
    for (std::size_t j = 0; j < free.size(); ++j)
      if (sol[j]) acc += rows[r][j];
    x[e.pivots[r]] = acc != 0;
  }
  res.verdict = Verdict::False;
  res.witness = canonical_witness(x);
  if (!is_genus_witness(s, res.witness))
    throw std::logic_error("echelon genus search produced an invalid witness");
  return res;
}

}  // namespace

bool is_genus_witness(const EquationSystem& s, std::span<const int> t) {
  const int k = s.variable_count();
  if (t.empty() || static_cast<int>(t.size()) >= k) return false;
  std::vector<char> in(k, 0);
  for (int v : t) {
    if (v < 0 || v >= k || in[v]) return false;
    in[v] = 1;
  }
  for (const auto& r : s.rows()) {
    Coeff sum = 0;
    for (auto [v, c] : r.terms())
      if (in[v]) sum += c;
    if (sum != 0) return false;
  }
  return true;
}

GenusResult is_genus_one(const EquationSystem& s, const GenusOptions& options) {
  if (!s.translation_invariant())
    throw std::invalid_argument("genus check requires translation-invariant rows");
  if (s.variable_count() <= options.cap) return genus_by_subsets(s, options);
  return genus_by_echelon(s, options);
}

GenusResult falsify_genus_one(const EquationSystem& s, Rng& rng, std::uint64_t samples) {
  if (!s.translation_invariant())
    throw std::invalid_argument("genus check requires translation-invariant rows");
  GenusResult res;
  res.engine = "sampling";
  const int k = s.variable_count();
  std::vector<int> t;
  for (std::uint64_t i = 0; i < samples && k >= 2; ++i) {
    t.clear();
    for (int v = 0; v < k; ++v)
      if (rng.bernoulli(0.5)) t.push_back(v);
    ++res.nodes;
    if (is_genus_witness(s, t)) {
      res.verdict = Verdict::False;
      res.witness = t;
      return res;
    }
  }
  res.verdict = Verdict::Inconclusive;
  res.note = "no witness among " + std::to_string(res.nodes) + " sampled subsets";
  return res;
}

LinearEquation combine(const EquationSystem& s, std::span<const Coeff> b) {
  if (static_cast<int>(b.size()) != s.row_count())
    throw std::invalid_argument("one multiplier per row expected");
  std::map<int, Coeff> acc;
  for (int j = 0; j < s.row_count(); ++j)
    for (auto [v, c] : s.row(j).terms()) acc[v] = checked_add(acc[v], checked_mul(b[j], c));
  return LinearEquation(s.variable_count(), acc);
}

Combination random_genus_one_combination(const EquationSystem& s, Rng& rng,
                                         int retry_cap) {
  // Multipliers come from [1, 2^k]; the exponent is capped at 40 so that the
  // combination stays within 64 bits for large k.
  const int bits = std::min(s.variable_count(), 40);
  const std::uint64_t top = std::uint64_t{1} << bits;
  Combination out;
  EquationSystem single;
  for (int attempt = 1; attempt <= retry_cap; ++attempt) {
    out.multipliers.assign(s.row_count(), 0);
    for (auto& b : out.multipliers) b = static_cast<Coeff>(1 + rng.below(top));
    out.attempts = attempt;
    try {
      out.equation = combine(s, out.multipliers);
    } catch (const std::overflow_error&) {
      continue;
    }
    single = EquationSystem(s.variable_count(), {out.equation});
    if (is_genus_one(single).verdict == Verdict::True) return out;
  }
  throw std::runtime_error("no genus-one combination after " + std::to_string(retry_cap) +
                           " draws; the system is likely not genus one");
}

// ------------------------------------------------------- solution-free sets

namespace {

std::vector<std::int64_t> sorted_unique(std::span<const std::int64_t> values) {
  std::vector<std::int64_t> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void check_magnitude(const EquationSystem& s, const std::vector<std::int64_t>& x) {
  if (x.empty()) return;
  const std::int64_t big = std::max(std::abs(x.front()), std::abs(x.back()));
  const long double bound = static_cast<long double>(big) * s.absolute_sum();
  if (bound > 1e18L) throw std::overflow_error("values too large for solution search");
}

// Backtracking over variables in a fixed order. When a variable is the last
// undecided one of some row, its value is forced by that row.
class SolutionSearch {
 public:
  SolutionSearch(const std::vector<std::int64_t>& values, const EquationSystem& s,
                 std::vector<int> order, std::optional<std::int64_t> first_value)
      : x_(values), k_(s.variable_count()), order_(std::move(order)),
        first_(first_value) {
    rows_ = s.dense_rows();
    const int nr = static_cast<int>(rows_.size());
    std::vector<int> position(k_);
    for (int i = 0; i < k_; ++i) position[order_[i]] = i;
    closing_.resize(k_);
    touching_.resize(k_);
    for (int r = 0; r < nr; ++r) {
      int last = -1;
      for (int v = 0; v < k_; ++v)
        if (rows_[r][v] != 0) {
          touching_[position[v]].push_back(r);
          last = std::max(last, position[v]);
        }
      if (last >= 0) closing_[last].push_back(r);
    }
    partial_.assign(nr, 0);
    assignment_.assign(k_, 0);
  }

  bool run() {
    if (k_ < 2 || x_.empty()) return false;
    return dfs(0);
  }
  const std::vector<std::int64_t>& assignment() const { return assignment_; }

 private:
  bool dfs(int pos) {
    if (pos == k_) {
      for (int v = 1; v < k_; ++v)
        if (assignment_[v] != assignment_[0]) return true;
      return false;
    }
    const int var = order_[pos];
    if (pos == 0 && first_) return try_value(pos, var, *first_);
    // forced by a closing row?
    for (int r : closing_[pos]) {
      const Coeff a = rows_[r][var];
      if (partial_[r] % a != 0) return false;
      const std::int64_t v = -partial_[r] / a;
      if (!std::binary_search(x_.begin(), x_.end(), v)) return false;
      return try_value(pos, var, v);
    }
    for (std::int64_t v : x_)
      if (try_value(pos, var, v)) return true;
    return false;
  }

  bool try_value(int pos, int var, std::int64_t v) {
    for (int r : touching_[pos]) partial_[r] += rows_[r][var] * v;
    bool ok = true;
    for (int r : closing_[pos])
      if (partial_[r] != 0) ok = false;
    assignment_[var] = v;
    if (ok && dfs(pos + 1)) return true;
    for (int r : touching_[pos]) partial_[r] -= rows_[r][var] * v;
    return false;
  }

  std::vector<std::int64_t> x_;
  int k_;
  std::vector<int> order_;
  std::optional<std::int64_t> first_;
  std::vector<std::vector<Coeff>> rows_;
  std::vector<std::vector<int>> closing_, touching_;
  std::vector<Coeff> partial_;
  std::vector<std::int64_t> assignment_;
};

struct VecHash {
  std::size_t operator()(const std::vector<Coeff>& v) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (Coeff c : v) h = splitmix64(h ^ static_cast<std::uint64_t>(c));
    return h;
  }
};

// Counts all solutions over values^k via meet-in-the-middle; nullopt if the
// half tables would be too large.
std::optional<std::uint64_t> count_solutions_mitm(const std::vector<std::int64_t>& x,
                                                  const EquationSystem& s) {
  const int k = s.variable_count();
  const int h = k / 2;
  const auto rows = s.dense_rows();
  const std::size_t n = x.size();
  auto power = [&](int e) {
    long double p = 1;
    for (int i = 0; i < e; ++i) p *= static_cast<long double>(n);
    return p;
  };
  if (power(h) > 4e6L || power(k - h) > 6e7L) return std::nullopt;
  auto enumerate = [&](int from, int to, auto&& visit) {
    std::vector<std::size_t> idx(to - from, 0);
    std::vector<Coeff> key(rows.size());
    for (;;) {
      for (std::size_t r = 0; r < rows.size(); ++r) {
        Coeff acc = 0;
        for (int v = from; v < to; ++v) acc += rows[r][v] * x[idx[v - from]];
        key[r] = acc;
      }
      visit(key);
      int i = 0;
      while (i < to - from && ++idx[i] == n) idx[i++] = 0;
      if (i == to - from) break;
    }
  };
  std::unordered_map<std::vector<Coeff>, std::uint64_t, VecHash> left;
  enumerate(0, h, [&](const std::vector<Coeff>& key) { ++left[key]; });
  std::uint64_t total = 0;
  std::vector<Coeff> neg(rows.size());
  enumerate(h, k, [&](const std::vector<Coeff>& key) {
    for (std::size_t r = 0; r < key.size(); ++r) neg[r] = -key[r];
    auto it = left.find(neg);
    if (it != left.end()) total += it->second;
  });
  return total;
}

}  // namespace

bool has_nontrivial_solution(std::span<const std::int64_t> values,
                             const EquationSystem& s) {
  const auto x = sorted_unique(values);
  const int k = s.variable_count();
  if (k < 2 || x.size() < 2) return false;
  check_magnitude(s, x);
  if (k <= 8) {
    if (auto total = count_solutions_mitm(x, s)) {
      std::uint64_t trivial = 0;
      for (std::int64_t c : x) {
        bool ok = true;
        for (const auto& r : s.rows())
          if (r.coefficient_sum() * c != 0) ok = false;
        trivial += ok;
      }
      return *total > trivial;
    }
  }
  return find_nontrivial_solution(x, s).has_value();
}

std::optional<std::vector<std::int64_t>> find_nontrivial_solution(
    std::span<const std::int64_t> values, const EquationSystem& s) {
  const auto x = sorted_unique(values);
  check_magnitude(s, x);
  std::vector<int> order(s.variable_count());
  std::iota(order.begin(), order.end(), 0);
  SolutionSearch search(x, s, order, std::nullopt);
  if (search.run()) return search.assignment();
  return std::nullopt;
}

namespace {

// Does values (which contains x) admit a non-trivial solution using x?
bool has_solution_using(const std::vector<std::int64_t>& values, std::int64_t x,
                        const EquationSystem& s) {
  const int k = s.variable_count();
  for (int i = 0; i < k; ++i) {
    std::vector<int> order{i};
    for (int v = 0; v < k; ++v)
      if (v != i) order.push_back(v);
    SolutionSearch search(values, s, order, x);
    if (search.run()) return true;
  }
  return false;
}

}  // namespace

bool verify_solution_free(const SolutionFreeSet& set) {
  const auto& e = set.elements;
  if (!std::is_sorted(e.begin(), e.end())) return false;
  if (std::adjacent_find(e.begin(), e.end()) != e.end()) return false;
  if (!e.empty() && (e.front() < 1 || e.back() > set.m)) return false;
  for (const auto& s : set.avoided)
    if (has_nontrivial_solution(e, s)) return false;
  return true;
}

SolutionFreeSet behrend_set(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("behrend_set needs m >= 1");
  SolutionFreeSet out;
  out.m = m;
  out.avoided = {three_ap_system()};

  // Numbers whose base-3 digits are all 0 or 1, shifted into [1, m].
  for (std::int64_t v = 0; v + 1 <= m; ++v) {
    std::int64_t t = v;
    bool ok = true;
    while (t > 0 && ok) {
      ok = t % 3 != 2;
      t /= 3;
    }
    if (ok) out.elements.push_back(v + 1);
  }

  // Sphere construction: digit vectors in [0, D)^d with a fixed squared norm,
  // read in base 2D-1 so that x + z = 2y cannot carry.
  const int dmax = 2 + static_cast<int>(std::ceil(std::sqrt(std::log(static_cast<double>(m)))));
  for (int d = 2; d <= dmax; ++d) {
    const double root = std::pow(static_cast<double>(m), 1.0 / d);
    const std::int64_t d0 = std::max<std::int64_t>(2, static_cast<std::int64_t>((root + 1) / 2));
    for (std::int64_t D = d0; D <= std::min(2 * d0 + 2, d0 + 8); ++D) {
      if (std::pow(static_cast<double>(D), d) > 4e6) break;
      const std::int64_t base = 2 * D - 1;
      std::map<std::int64_t, std::vector<std::int64_t>> by_radius;
      std::vector<std::int64_t> digit(d, 0);
      for (;;) {
        std::int64_t value = 0, radius = 0;
        bool fits = true;
        for (int i = d - 1; i >= 0 && fits; --i) {
          if (value > (m - 1 - digit[i]) / base) fits = false;
          value = value * base + digit[i];
          radius += digit[i] * digit[i];
        }
        if (fits && value + 1 <= m) by_radius[radius].push_back(value + 1);
        int i = 0;
        while (i < d && ++digit[i] == D) digit[i++] = 0;
        if (i == d) break;
      }
      for (auto& [r, vals] : by_radius)
        if (vals.size() > out.elements.size()) {
          std::sort(vals.begin(), vals.end());
          out.elements = vals;
        }
    }
  }
  if (!verify_solution_free(out)) throw std::logic_error("behrend_set produced a 3-AP");
  return out;
}

MaxFreeResult max_solution_free_subset(int m, const EquationSystem& s, int cap) {
  MaxFreeResult res;
  res.set.m = m;
  res.set.avoided = {s};
  if (m > cap) {
    res.complete = false;
    return res;
  }
  if (m <= 0) return res;
  const bool invariant = s.translation_invariant();
  // r[j] = r_S(j); r_S is monotone and grows by at most one per step, so for
  // each j we only ask whether a set of size r[j-1] + 1 exists. For
  // translation-invariant S, elements i..j can contribute at most r[j-i+1].
  std::vector<int> r(m + 1, 0);
  std::vector<std::int64_t> best_set;
  std::vector<std::int64_t> current;
  for (int j = 1; j <= m; ++j) {
    const int goal = r[j - 1] + 1;
    std::vector<std::int64_t> found;
    auto dfs = [&](auto&& self, int i) -> bool {
      ++res.nodes;
      const int size = static_cast<int>(current.size());
      if (size == goal) {
        found = current;
        return true;
      }
      if (i > j) return false;
      const int remaining = j - i + 1;
      const int bound = invariant && remaining < j ? r[remaining] : remaining;
      if (size + bound < goal) return false;
      current.push_back(i);
      if (!has_solution_using(current, i, s) && self(self, i + 1)) return true;
      current.pop_back();
      return self(self, i + 1);
    };
    current.clear();
    if (dfs(dfs, 1)) {
      r[j] = goal;
      best_set = found;
    } else {
      r[j] = r[j - 1];
    }
  }
  res.size = r[m];
  res.set.elements = best_set;
  if (!verify_solution_free(res.set))
    throw std::logic_error("max_solution_free_subset produced an invalid set");
  return res;
}

ShiftResult shift_intersection(const std::vector<SolutionFreeSet>& sets,
                               const std::vector<EquationSystem>& systems,
                               std::int64_t m, std::span<const std::int64_t> shifts) {
  if (sets.empty() || sets.size() != systems.size())
    throw std::invalid_argument("need one system per set");
  if (shifts.size() + 1 != sets.size())
    throw std::invalid_argument("need t-1 shifts");
  Coeff s = 0;
  for (const auto& sys : systems) {
    if (!sys.translation_invariant())
      throw std::invalid_argument("systems must be translation-invariant");
    s = checked_add(s, sys.absolute_sum());
  }
  ShiftResult out;
  out.modulus = checked_mul(2 * s, m);
  if (out.modulus <= 0) throw std::invalid_argument("modulus must be positive");
  out.shifts.push_back(0);
  for (auto a : shifts) out.shifts.push_back(((a % out.modulus) + out.modulus) % out.modulus);
  out.set.m = m;
  double expected = static_cast<double>(sets[0].elements.size());
  for (std::size_t i = 1; i < sets.size(); ++i)
    expected *= static_cast<double>(sets[i].elements.size()) / out.modulus;
  out.expected_size = expected;
  for (auto x : sets[0].elements) {
    bool keep = true;
    for (std::size_t i = 1; i < sets.size() && keep; ++i) {
      const std::int64_t y = ((x - out.shifts[i]) % out.modulus + out.modulus) % out.modulus;
      keep = std::binary_search(sets[i].elements.begin(), sets[i].elements.end(), y);
    }
    if (keep) out.set.elements.push_back(x);
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (const auto& a : sets[i].avoided) out.set.avoided.push_back(a);
    if (std::find(out.set.avoided.begin(), out.set.avoided.end(), systems[i]) ==
        out.set.avoided.end())
      out.set.avoided.push_back(systems[i]);
  }
  if (!verify_solution_free(out.set))
    throw std::logic_error("shifted intersection contains a solution");
  return out;
}

ShiftResult random_shift_intersection(const std::vector<SolutionFreeSet>& sets,
                                      const std::vector<EquationSystem>& systems,
                                      std::int64_t m, Rng& rng) {
  Coeff s = 0;
  for (const auto& sys : systems) s = checked_add(s, sys.absolute_sum());
  const std::int64_t modulus = checked_mul(2 * s, m);
  if (modulus <= 0) throw std::invalid_argument("modulus must be positive");
  std::vector<std::int64_t> shifts;
  for (std::size_t i = 1; i < sets.size(); ++i)
    shifts.push_back(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(modulus))));
  return shift_intersection(sets, systems, m, shifts);
}

// -------------------------------------------------------------- text format

namespace {

std::int64_t parse_int(std::string_view s, int line) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw ParseError(line, "expected integer, got '" + std::string(s) + "'");
  return v;
}

}  // namespace

EquationSystem parse_equation_system(std::string_view text) {
  std::vector<std::map<int, Coeff>> rows;
  int declared = -1, max_id = -1, line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> toks;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks[0] == "vars") {
      if (toks.size() != 2 || declared >= 0 || !rows.empty())
        throw ParseError(line_no, "expected a single leading 'vars <k>' line");
      declared = static_cast<int>(parse_int(toks[1], line_no));
      if (declared < 0) throw ParseError(line_no, "negative variable count");
      continue;
    }
    std::map<int, Coeff> row;
    for (const auto& t : toks) {
      auto star = t.find('*');
      if (star == std::string::npos || star + 2 > t.size() ||
          (t[star + 1] != 'e' && t[star + 1] != 'x'))
        throw ParseError(line_no, "expected term like '3*e0', got '" + t + "'");
      const Coeff c = parse_int(std::string_view(t).substr(0, star), line_no);
      const auto id = parse_int(std::string_view(t).substr(star + 2), line_no);
      if (id < 0 || id > 1'000'000) throw ParseError(line_no, "variable id out of range");
      if (row.count(static_cast<int>(id)))
        throw ParseError(line_no, "variable repeated in a row");
      row[static_cast<int>(id)] = c;
      max_id = std::max(max_id, static_cast<int>(id));
    }
    rows.push_back(std::move(row));
  }
  const int k = declared >= 0 ? declared : max_id + 1;
  if (max_id >= k) throw ParseError(line_no, "variable id exceeds declared count");
  std::vector<LinearEquation> eqs;
  for (const auto& r : rows) eqs.emplace_back(k, r);
  return EquationSystem(k, std::move(eqs));
}

std::string format_equation(const LinearEquation& e) {
  std::string out;
  for (auto [v, c] : e.terms()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(c) + "*e" + std::to_string(v);
  }
  return out;
}

std::string serialize_equation_system(const EquationSystem& s) {
  std::string out = "vars " + std::to_string(s.variable_count()) + "\n";
  // a zero row is written as an explicit zero term so it survives parsing
  for (const auto& r : s.rows())
    out += (r.is_zero() && s.variable_count() > 0 ? "0*e0" : format_equation(r)) + "\n";
  return out;
}

}  // namespace rlab
