#include "rlab/linalg.hpp"

#include <limits>
#include <stdexcept>

namespace rlab {

RatMatrix to_rational(const std::vector<std::vector<std::int64_t>>& rows) {
  RatMatrix out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    RatVector v;
    v.reserve(r.size());
    for (auto x : r) v.emplace_back(x);
    out.push_back(std::move(v));
  }
  return out;
}

RatMatrix transpose(const RatMatrix& a, int cols) {
  RatMatrix t(cols, RatVector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int j = 0; j < cols; ++j) t[j][i] = a[i][j];
  return t;
}

std::vector<int> Echelon::free_columns() const {
  std::vector<int> out;
  std::size_t p = 0;
  for (int c = 0; c < cols; ++c) {
    if (p < pivots.size() && pivots[p] == c)
      ++p;
    else
      out.push_back(c);
  }
  return out;
}

Echelon reduce(RatMatrix a, int cols) {
  Echelon e;
  e.cols = cols;
  std::size_t r = 0;
  for (int c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[r], a[piv]);
    const Rational inv = 1 / a[r][c];
    for (int j = c; j < cols; ++j)
      if (a[r][j] != 0) a[r][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (int j = c; j < cols; ++j)
        if (a[r][j] != 0) a[i][j] -= f * a[r][j];
    }
    e.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  e.rows = std::move(a);
  return e;
}

RatMatrix kernel_basis(const Echelon& e) {
  RatMatrix basis;
  for (int f : e.free_columns()) {
    RatVector v(e.cols);
    v[f] = 1;
    for (int i = 0; i < e.rank(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVector> solve(const RatMatrix& a, int cols, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("solve: dimension mismatch");
  RatMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  Echelon e = reduce(std::move(aug), cols + 1);
  if (!e.pivots.empty() && e.pivots.back() == cols) return std::nullopt;
  RatVector x(cols);
  for (int i = 0; i < e.rank(); ++i) x[e.pivots[i]] = e.rows[i][cols];
  return x;
}

std::vector<std::int64_t> to_primitive_integers(const RatVector& v) {
  BigInt l = 1;
  for (const auto& x : v) l = lcm(l, BigInt(denominator(x)));
  BigInt g = 0;
  std::vector<BigInt> ints;
  ints.reserve(v.size());
  for (const auto& x : v) {
    ints.push_back(numerator(x) * (l / denominator(x)));
    g = gcd(g, abs(ints.back()));
  }
  std::vector<std::int64_t> out;
  out.reserve(v.size());
  const BigInt lo = std::numeric_limits<std::int64_t>::min();
  const BigInt hi = std::numeric_limits<std::int64_t>::max();
  for (auto& x : ints) {
    if (g > 1) x /= g;
    if (x < lo || x > hi) throw std::overflow_error("integer vector exceeds int64");
    out.push_back(x.convert_to<std::int64_t>());
  }
  return out;
}

}  // namespace rlab
