#pragma once

// Exact linear algebra over the rationals (GMP-backed).

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace rlab {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;
using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

RatMatrix to_rational(const std::vector<std::vector<std::int64_t>>& rows);
RatMatrix transpose(const RatMatrix& a, int cols);

/// Reduced row echelon form. Zero rows are dropped, so rows.size() is the rank.
struct Echelon {
  RatMatrix rows;
  std::vector<int> pivots;  // pivot column of each row, increasing
  int cols = 0;
  int rank() const { return static_cast<int>(rows.size()); }
  int nullity() const { return cols - rank(); }
  std::vector<int> free_columns() const;
};

Echelon reduce(RatMatrix a, int cols);

/// Basis of {x : A x = 0}, one vector per free column (that column set to 1).
RatMatrix kernel_basis(const Echelon& e);

/// One solution of A x = b (free variables zero), or nullopt if inconsistent.
std::optional<RatVector> solve(const RatMatrix& a, int cols, const RatVector& b);

/// Primitive integer multiple of v (positive leading entry is not enforced;
/// the sign of v is kept). Throws std::overflow_error past int64.
std::vector<std::int64_t> to_primitive_integers(const RatVector& v);

}  // namespace rlab
