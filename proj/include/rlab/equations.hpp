#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rlab/random.hpp"

namespace rlab {

using Coeff = std::int64_t;

/// Integer linear equation sum_i a_i x_i = 0 over variables 0..k-1.
class LinearEquation {
 public:
  LinearEquation() = default;
  /// Zero coefficients are dropped; ids must lie in [0, k).
  LinearEquation(int k, const std::map<int, Coeff>& coeffs);
  static LinearEquation from_dense(std::span<const Coeff> coeffs);

  int variable_count() const { return k_; }
  Coeff coefficient(int var) const;
  const std::map<int, Coeff>& terms() const { return terms_; }
  std::vector<Coeff> dense() const;
  bool is_zero() const { return terms_.empty(); }
  Coeff coefficient_sum() const;
  bool translation_invariant() const { return coefficient_sum() == 0; }
  /// Translation-invariant with exactly one negative coefficient.
  bool is_convex() const;

  bool operator==(const LinearEquation&) const = default;

 private:
  int k_ = 0;
  std::map<int, Coeff> terms_;
};

class EquationSystem {
 public:
  EquationSystem() = default;
  /// Every row must have variable_count() == k.
  EquationSystem(int k, std::vector<LinearEquation> rows, std::string name = {});
  static EquationSystem from_dense(const std::vector<std::vector<Coeff>>& rows,
                                   std::string name = {});

  int variable_count() const { return k_; }
  int row_count() const { return static_cast<int>(rows_.size()); }
  const std::vector<LinearEquation>& rows() const { return rows_; }
  const LinearEquation& row(int i) const { return rows_[i]; }
  std::vector<std::vector<Coeff>> dense_rows() const;
  bool translation_invariant() const;
  /// Sum of absolute coefficient values over all rows.
  Coeff absolute_sum() const;
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  bool operator==(const EquationSystem& o) const {
    return k_ == o.k_ && rows_ == o.rows_;
  }

 private:
  int k_ = 0;
  std::vector<LinearEquation> rows_;
  std::string name_;
};

/// x + z = 2y, written x0 - 2 x1 + x2 = 0.
EquationSystem three_ap_system();

// ---------------------------------------------------------------- genus one

enum class Verdict { True, False, Inconclusive };
const char* verdict_name(Verdict v);

struct GenusOptions {
  /// Direct subset search is used when k <= cap; otherwise the search runs
  /// over the free columns of the rational echelon form when the kernel
  /// dimension is <= cap. Beyond both: Inconclusive.
  int cap = 24;
  /// Search-tree node budget; 0 = unlimited. Exhaustion gives Inconclusive.
  std::uint64_t node_budget = 0;
};

struct GenusResult {
  Verdict verdict = Verdict::Inconclusive;
  /// On False: a proper non-empty variable subset on which every row sums to 0.
  std::vector<int> witness;
  std::string engine;  // "subset", "echelon", "sampling"
  std::uint64_t nodes = 0;
  std::string note;
};

/// Exact genus-one check. Rows must be translation-invariant
/// (std::invalid_argument otherwise).
GenusResult is_genus_one(const EquationSystem& s, const GenusOptions& options = {});

/// Randomized falsification: draws random proper subsets T. Returns False
/// with a witness, or Inconclusive if none of the samples is a witness.
GenusResult falsify_genus_one(const EquationSystem& s, Rng& rng,
                              std::uint64_t samples = 100000);

/// True if every row sums to zero on T.
bool is_genus_witness(const EquationSystem& s, std::span<const int> t);

/// sum_j b_j E_j (overflow-checked).
LinearEquation combine(const EquationSystem& s, std::span<const Coeff> b);

struct Combination {
  LinearEquation equation;
  std::vector<Coeff> multipliers;
  int attempts = 0;
};

/// Draws b_j uniformly from [1, 2^k] until the combination has genus one.
/// Throws std::runtime_error after retry_cap failed draws.
Combination random_genus_one_combination(const EquationSystem& s, Rng& rng,
                                         int retry_cap = 64);

// ------------------------------------------------------- solution-free sets

struct SolutionFreeSet {
  std::int64_t m = 0;
  std::vector<std::int64_t> elements;  // sorted, within [1, m]
  std::vector<EquationSystem> avoided;
};

/// Is there an assignment from `values` to the variables, not all equal,
/// satisfying every row? Meet-in-the-middle for k <= 8, pruned backtracking
/// otherwise.
bool has_nontrivial_solution(std::span<const std::int64_t> values,
                             const EquationSystem& s);
/// Backtracking search returning one such assignment.
std::optional<std::vector<std::int64_t>> find_nontrivial_solution(
    std::span<const std::int64_t> values, const EquationSystem& s);

/// Checks range, ordering and every avoided system.
bool verify_solution_free(const SolutionFreeSet& set);

/// 3-AP-free subset of [m]; deterministic in m.
SolutionFreeSet behrend_set(std::int64_t m);

struct MaxFreeResult {
  bool complete = true;  // false: cap exceeded, nothing computed
  int size = 0;
  SolutionFreeSet set;
  std::uint64_t nodes = 0;
};

/// Exact r_S(m) by branch-and-bound with one maximizing set.
MaxFreeResult max_solution_free_subset(int m, const EquationSystem& s, int cap = 30);

struct ShiftResult {
  SolutionFreeSet set;
  std::int64_t modulus = 0;
  std::vector<std::int64_t> shifts;  // shifts[0] = 0 for the first set
  double expected_size = 0;
};

ShiftResult random_shift_intersection(const std::vector<SolutionFreeSet>& sets,
                                      const std::vector<EquationSystem>& systems,
                                      std::int64_t m, Rng& rng);
/// Same with explicit shifts a_2..a_t (reduced mod M).
ShiftResult shift_intersection(const std::vector<SolutionFreeSet>& sets,
                               const std::vector<EquationSystem>& systems,
                               std::int64_t m, std::span<const std::int64_t> shifts);

// -------------------------------------------------------------- text format

/// One row per line, terms "coeff*e<var>" separated by spaces; '#' comments;
/// an optional leading "vars <k>" line fixes the variable count (otherwise
/// max id + 1). Throws ParseError.
EquationSystem parse_equation_system(std::string_view text);
std::string serialize_equation_system(const EquationSystem& s);
std::string format_equation(const LinearEquation& e);

}  // namespace rlab
