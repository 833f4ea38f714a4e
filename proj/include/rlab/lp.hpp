#pragma once

// Feasibility-only linear programming: an exact rational simplex (Bland's
// rule) and a double-precision one used for screening.

#include <optional>
#include <string>
#include <vector>

#include "rlab/linalg.hpp"

namespace rlab {

enum class Relation { Le, Eq, Ge };

struct LinearConstraint {
  RatVector coeffs;  // one per variable
  Relation relation = Relation::Eq;
  Rational rhs = 0;
};

/// Variables are free unless marked non-negative.
struct RationalLP {
  int variables = 0;
  std::vector<bool> nonnegative;  // empty = all free
  std::vector<LinearConstraint> constraints;

  void add(RatVector coeffs, Relation rel, Rational rhs);
  /// Throws std::invalid_argument on inconsistent dimensions.
  void validate() const;
  bool is_nonnegative(int var) const { return !nonnegative.empty() && nonnegative[var]; }
  /// Exact substitution check of every constraint and sign condition.
  bool satisfied_by(const RatVector& x) const;
};

struct LpResult {
  bool feasible = false;
  RatVector point;  // when feasible; verified by substitution
  std::size_t pivots = 0;
};

/// Phase-one simplex with Bland's rule over exact rationals.
LpResult lp_feasible(const RationalLP& lp);

struct FloatLpResult {
  bool feasible = false;
  std::vector<double> point;
  /// When infeasible: y with y.b < 0 and y.a_j >= 0 (= 0 for free
  /// variables) on the standard-form columns, one entry per constraint
  /// (Le/Ge rows included), approximately.
  std::vector<double> farkas;
  double phase_one_value = 0;
  std::size_t pivots = 0;
};

/// The same phase-one method in doubles with tolerance tol; Bland's rule.
FloatLpResult float_lp_feasible(const RationalLP& lp, double tol = 1e-9);

}  // namespace rlab
