#include "rlab/convexity.hpp"

#include <cmath>
#include <stdexcept>

#include "rlab/lp.hpp"
#include "rlab/parallel.hpp"

namespace rlab {

namespace {

// Continued-fraction approximation with denominator at most max_den.
Rational approximate(double x, std::int64_t max_den) {
  BigInt h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(r);
    if (std::abs(a) > 1e15) break;
    const BigInt ai = static_cast<std::int64_t>(a);
    BigInt h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    const double frac = r - a;
    if (std::abs(frac) < 1e-12) break;
    r = 1 / frac;
  }
  if (k1 == 0) return Rational(x);
  return Rational(h1, k1);
}

struct Problem {
  const EquationSystem& s;
  int k = 0;
  RatMatrix rows;    // s as rationals
  RatMatrix kernel;  // basis of {x : s x = 0}
};

RationalLP candidate_lp(const Problem& p, int e, const std::vector<int>& vars) {
  // variables: a_v for v in vars (e among them, free; the rest >= 0)
  RationalLP lp;
  lp.variables = static_cast<int>(vars.size());
  lp.nonnegative.assign(vars.size(), true);
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == e) lp.nonnegative[i] = false;
  for (const auto& kv : p.kernel) {
    RatVector c(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) c[i] = kv[vars[i]];
    lp.add(std::move(c), Relation::Eq, 0);
  }
  RatVector norm(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) norm[i] = vars[i] == e ? 0 : 1;
  lp.add(std::move(norm), Relation::Eq, 1);
  return lp;
}

// x = sum_t z_t kernel_t solves s exactly; accept it if x_e is the strict
// minimum.
std::optional<RatVector> separating_solution(const Problem& p, int e,
                                             const std::vector<double>& z, bool exact_doubles) {
  RatVector x(p.k, 0);
  for (std::size_t t = 0; t < p.kernel.size(); ++t) {
    const Rational zt = exact_doubles ? Rational(z[t]) : approximate(z[t], 1'000'000);
    if (zt == 0) continue;
    for (int i = 0; i < p.k; ++i)
      if (p.kernel[t][i] != 0) x[i] += zt * p.kernel[t][i];
  }
  for (int i = 0; i < p.k; ++i)
    if (i != e && x[i] <= x[e]) return std::nullopt;
  for (const auto& row : p.s.rows()) {
    Rational acc = 0;
    for (auto [v, c] : row.terms()) acc += c * x[v];
    if (acc != 0) return std::nullopt;
  }
  return x;
}

struct Outcome {
  ConvexCandidate cand;
  RatVector point;  // full a when feasible
};

Outcome decide(const Problem& p, int e, double tol) {
  Outcome out;
  out.cand.position = e;
  std::vector<int> all(p.k);
  for (int i = 0; i < p.k; ++i) all[i] = i;
  const RationalLP lp = candidate_lp(p, e, all);
  const FloatLpResult fr = float_lp_feasible(lp, tol);
  out.cand.float_feasible = fr.feasible;

  if (!fr.feasible) {
    for (bool exact_doubles : {false, true})
      if (auto x = separating_solution(p, e, fr.farkas, exact_doubles)) {
        out.cand.method = "separating-solution";
        RatVector shifted(*x);
        for (auto& v : shifted) v -= (*x)[e];
        try {
          out.cand.separating = to_primitive_integers(shifted);
        } catch (const std::overflow_error&) {
        }
        return out;
      }
  } else {
    // Try the float support first: a small exact LP.
    std::vector<int> support;
    for (int i = 0; i < p.k; ++i)
      if (i == e || fr.point[i] > 10 * tol) support.push_back(i);
    if (static_cast<int>(support.size()) < p.k) {
      LpResult small = lp_feasible(candidate_lp(p, e, support));
      if (small.feasible) {
        out.cand.feasible = true;
        out.cand.method = "exact-simplex";
        out.point.assign(p.k, 0);
        for (std::size_t i = 0; i < support.size(); ++i) out.point[support[i]] = small.point[i];
        if (!lp.satisfied_by(out.point)) throw std::logic_error("support LP point fails check");
        return out;
      }
    }
  }
  LpResult exact = lp_feasible(lp);
  out.cand.method = "exact-simplex";
  out.cand.feasible = exact.feasible;
  if (exact.feasible) out.point = exact.point;
  return out;
}

}  // namespace

bool verify_convex_in_span(const EquationSystem& s, const LinearEquation& e) {
  if (!e.is_convex() || e.variable_count() != s.variable_count()) return false;
  if (s.row_count() == 0) return false;
  RatMatrix cols = transpose(to_rational(s.dense_rows()), s.variable_count());
  RatVector target;
  for (Coeff c : e.dense()) target.emplace_back(c);
  return solve(cols, s.row_count(), target).has_value();
}

ConvexSearchResult convex_span_search(const EquationSystem& s, const ConvexOptions& options) {
  if (!s.translation_invariant())
    throw std::invalid_argument("convex span search needs a translation-invariant system");
  ConvexSearchResult res;
  Problem p{s, s.variable_count(), to_rational(s.dense_rows()), {}};
  if (p.k == 0 || s.row_count() == 0) return res;
  p.kernel = kernel_basis(reduce(p.rows, p.k));

  const unsigned threads = options.threads == 0 ? default_threads() : options.threads;
  const std::size_t batch = options.stop_at_first ? threads : static_cast<std::size_t>(p.k);
  std::vector<Outcome> outcomes;
  for (int start = 0; start < p.k; start += static_cast<int>(batch)) {
    const int end = std::min(p.k, start + static_cast<int>(batch));
    std::vector<Outcome> slot(end - start);
    parallel_for(slot.size(), threads,
                 [&](std::size_t i) { slot[i] = decide(p, start + static_cast<int>(i), options.tolerance); });
    bool found = false;
    for (auto& o : slot) {
      outcomes.push_back(std::move(o));
      if (outcomes.back().cand.feasible) {
        found = true;
        if (options.stop_at_first) break;
      }
    }
    if (found && options.stop_at_first) break;
  }

  for (const auto& o : outcomes) {
    res.candidates.push_back(o.cand);
    if (o.cand.feasible != o.cand.float_feasible) ++res.disagreements;
    if (!o.cand.feasible || res.equation) continue;
    const auto ints = to_primitive_integers(o.point);
    LinearEquation eq = LinearEquation::from_dense(ints);
    RatMatrix cols = transpose(p.rows, p.k);
    auto lambda = solve(cols, s.row_count(), o.point);
    if (!lambda || !verify_convex_in_span(s, eq))
      throw std::logic_error("convex candidate failed re-verification");
    int ref = 0;
    while (o.point[ref] == 0) ++ref;
    const Rational scale = Rational(ints[ref]) / o.point[ref];
    for (auto& l : *lambda) l *= scale;
    res.equation = std::move(eq);
    res.position = o.cand.position;
    res.multipliers = std::move(*lambda);
  }
  return res;
}

}  // namespace rlab
