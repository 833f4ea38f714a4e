#include "rlab/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace rlab {

void RationalLP::add(RatVector coeffs, Relation rel, Rational rhs) {
  constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
}

void RationalLP::validate() const {
  if (variables < 0) throw std::invalid_argument("negative variable count");
  if (!nonnegative.empty() && static_cast<int>(nonnegative.size()) != variables)
    throw std::invalid_argument("sign flags differ from variable count");
  for (const auto& c : constraints)
    if (static_cast<int>(c.coeffs.size()) != variables)
      throw std::invalid_argument("constraint width differs from variable count");
}

bool RationalLP::satisfied_by(const RatVector& x) const {
  if (static_cast<int>(x.size()) != variables) return false;
  for (int v = 0; v < variables; ++v)
    if (is_nonnegative(v) && x[v] < 0) return false;
  for (const auto& c : constraints) {
    Rational lhs = 0;
    for (int v = 0; v < variables; ++v)
      if (c.coeffs[v] != 0) lhs += c.coeffs[v] * x[v];
    if ((c.relation == Relation::Le && lhs > c.rhs) || (c.relation == Relation::Ge && lhs < c.rhs) ||
        (c.relation == Relation::Eq && lhs != c.rhs))
      return false;
  }
  return true;
}

namespace {

template <class T>
struct Num;

template <>
struct Num<Rational> {
  double tol = 0;
  bool neg(const Rational& x) const { return x < 0; }
  bool pos(const Rational& x) const { return x > 0; }
  bool zero(const Rational& x) const { return x == 0; }
  static Rational from(const Rational& x) { return x; }
};

template <>
struct Num<double> {
  double tol;
  bool neg(double x) const { return x < -tol; }
  bool pos(double x) const { return x > tol; }
  bool zero(double x) const { return std::abs(x) <= tol; }
  static double from(const Rational& x) { return x.convert_to<double>(); }
};

// Phase one on [A | slacks | artificials] x = b, b >= 0, x >= 0.
template <class T>
class PhaseOne {
 public:
  PhaseOne(const RationalLP& lp, Num<T> num) : num_(num) {
    lp.validate();
    const int n = lp.variables;
    for (int v = 0; v < n; ++v) {
      pos_col_.push_back(cols_++);
      neg_col_.push_back(lp.is_nonnegative(v) ? -1 : cols_++);
    }
    const int m = static_cast<int>(lp.constraints.size());
    std::vector<int> slack(m, -1);
    for (int r = 0; r < m; ++r)
      if (lp.constraints[r].relation != Relation::Eq) slack[r] = cols_++;
    real_cols_ = cols_;
    art0_ = cols_;
    cols_ += m;

    rows_.assign(m, std::vector<T>(cols_ + 1, T(0)));
    sign_.assign(m, 1);
    basis_.resize(m);
    for (int r = 0; r < m; ++r) {
      const auto& c = lp.constraints[r];
      auto& row = rows_[r];
      for (int v = 0; v < n; ++v) {
        if (c.coeffs[v] == 0) continue;
        row[pos_col_[v]] = Num<T>::from(c.coeffs[v]);
        if (neg_col_[v] >= 0) row[neg_col_[v]] = -row[pos_col_[v]];
      }
      if (slack[r] >= 0) row[slack[r]] = T(c.relation == Relation::Le ? 1 : -1);
      row[cols_] = Num<T>::from(c.rhs);
      if (c.rhs < 0) {
        sign_[r] = -1;
        for (auto& x : row) x = -x;
      }
      row[art0_ + r] = T(1);
      basis_[r] = art0_ + r;
    }
    obj_.assign(cols_ + 1, T(0));
    for (int j = art0_; j < cols_; ++j) obj_[j] = T(1);
    for (int r = 0; r < m; ++r)
      for (int j = 0; j <= cols_; ++j)
        if (!num_.zero(rows_[r][j])) obj_[j] -= rows_[r][j];
  }

  void run() {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < real_cols_ && enter < 0; ++j)
        if (num_.neg(obj_[j])) enter = j;
      if (enter < 0) return;
      int leave = -1;
      T best(0);
      for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
        if (!num_.pos(rows_[r][enter])) continue;
        T ratio = rows_[r][cols_] / rows_[r][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis_[r] < basis_[leave]))
          leave = r, best = ratio;
      }
      if (leave < 0) return;  // unbounded direction; cannot happen in phase one
      pivot(leave, enter);
    }
  }

  bool feasible() const {
    // objective value w = -obj_[rhs]
    return !num_.pos(-obj_[cols_]);
  }
  T value() const { return -obj_[cols_]; }
  std::size_t pivots() const { return pivots_; }

  std::vector<T> point() const {
    std::vector<T> col_value(cols_, T(0));
    for (std::size_t r = 0; r < rows_.size(); ++r) col_value[basis_[r]] = rows_[r][cols_];
    std::vector<T> x(pos_col_.size(), T(0));
    for (std::size_t v = 0; v < x.size(); ++v) {
      x[v] = col_value[pos_col_[v]];
      if (neg_col_[v] >= 0) x[v] -= col_value[neg_col_[v]];
    }
    return x;
  }

  // Phase-one duals y (y.a_j <= 0 on real columns, y.b = w), negated and
  // mapped back to the caller's row signs.
  std::vector<T> farkas() const {
    std::vector<T> out(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
      out[r] = -(T(1) - obj_[art0_ + r]) * T(sign_[r]);
    return out;
  }

 private:
  void pivot(int r, int j) {
    ++pivots_;
    auto& p = rows_[r];
    const T inv = T(1) / p[j];
    std::vector<int> nz;
    for (int c = 0; c <= cols_; ++c)
      if (!num_.zero(p[c])) {
        p[c] *= inv;
        nz.push_back(c);
      } else {
        p[c] = T(0);
      }
    auto eliminate = [&](std::vector<T>& row) {
      if (num_.zero(row[j])) return;
      const T f = row[j];
      for (int c : nz) row[c] -= f * p[c];
      row[j] = T(0);
    };
    for (int i = 0; i < static_cast<int>(rows_.size()); ++i)
      if (i != r) eliminate(rows_[i]);
    eliminate(obj_);
    basis_[r] = j;
  }

  Num<T> num_;
  int cols_ = 0, real_cols_ = 0, art0_ = 0;
  std::vector<int> pos_col_, neg_col_, basis_, sign_;
  std::vector<std::vector<T>> rows_;
  std::vector<T> obj_;
  std::size_t pivots_ = 0;
};

}  // namespace

LpResult lp_feasible(const RationalLP& lp) {
  PhaseOne<Rational> simplex(lp, Num<Rational>{});
  simplex.run();
  LpResult res;
  res.pivots = simplex.pivots();
  res.feasible = simplex.feasible();
  if (res.feasible) {
    res.point = simplex.point();
    if (!lp.satisfied_by(res.point))
      throw std::logic_error("simplex point fails substitution check");
  }
  return res;
}

FloatLpResult float_lp_feasible(const RationalLP& lp, double tol) {
  PhaseOne<double> simplex(lp, Num<double>{tol});
  simplex.run();
  FloatLpResult res;
  res.pivots = simplex.pivots();
  res.phase_one_value = simplex.value();
  res.feasible = simplex.feasible();
  if (res.feasible)
    res.point = simplex.point();
  else
    res.farkas = simplex.farkas();
  return res;
}

}  // namespace rlab
