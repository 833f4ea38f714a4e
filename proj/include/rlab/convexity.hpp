#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rlab/equations.hpp"
#include "rlab/linalg.hpp"

namespace rlab {

/// Outcome for one candidate position e of the negative coefficient.
struct ConvexCandidate {
  int position = 0;
  bool feasible = false;        // exact verdict
  bool float_feasible = false;  // screening verdict
  /// "separating-solution": an exact solution of S on which x_e is the
  /// strict minimum (so no convex equation in the span is negative at e);
  /// "exact-simplex": decided by the rational simplex.
  std::string method;
  /// For separating-solution: that solution, as primitive integers.
  std::vector<std::int64_t> separating;
};

struct ConvexSearchResult {
  /// Integer convex equation in the row span, negative coefficient at
  /// `position`.
  std::optional<LinearEquation> equation;
  int position = -1;
  /// Rational multipliers: equation = sum_j multipliers[j] * row_j.
  RatVector multipliers;
  std::vector<ConvexCandidate> candidates;
  /// Candidates where the float screen and the exact verdict differ.
  int disagreements = 0;
};

struct ConvexOptions {
  /// Stop at the first position with a convex equation.
  bool stop_at_first = true;
  unsigned threads = 1;
  double tolerance = 1e-9;
};

/// Searches the rational row span of s for a convex equation (exactly one
/// negative coefficient; zeros allowed) by one feasibility LP per position
/// e: a in the span, a_i >= 0 for i != e, sum_{i != e} a_i = 1. Throws
/// std::invalid_argument unless s is translation-invariant.
ConvexSearchResult convex_span_search(const EquationSystem& s, const ConvexOptions& options = {});

/// Independent check of a reported equation: convex, and in the rational
/// row span of s.
bool verify_convex_in_span(const EquationSystem& s, const LinearEquation& e);

}  // namespace rlab
