#pragma once

// Sampling detection of long odd cycles from many edge-disjoint short ones.
//
// A trial draws sets S_0..S_{2l} of q vertices each, uniformly and with
// repetition. Oblivious mode searches the union for a (2l+1)-cycle;
// structured mode follows the cleaning argument: v0 in S_0 n V0, then
// u_i in S_i n U_phi(i) adjacent to u_{i-1}, and closes through v0.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rlab/cycles.hpp"
#include "rlab/graph.hpp"

namespace rlab {

enum class SamplerMode { Oblivious, Structured };

const char* sampler_mode_name(SamplerMode m);
std::optional<SamplerMode> parse_sampler_mode(const std::string& s);

/// ceil(100 k^2 ln(10 l) / eps^2).
std::uint64_t default_sample_size(int k, int ell, double epsilon);

struct SamplerConfig {
  int k = 1;
  int ell = 2;
  double epsilon = 0.1;
  std::uint64_t q = 0;  // 0 = default_sample_size
  SamplerMode mode = SamplerMode::Structured;
  /// Use min(q, n) draws per set; the sampler reports whether it bit.
  bool cap_q_at_n = false;
  /// Node cap for the cycle search on a sample (0 = unlimited).
  std::uint64_t search_node_cap = 20'000'000;

  int set_count() const { return 2 * ell + 1; }
  int cycle_length() const { return 2 * ell + 1; }
  std::uint64_t sample_size() const { return q ? q : default_sample_size(k, ell, epsilon); }
  std::uint64_t total_sample_size() const { return sample_size() * set_count(); }
  /// Throws std::invalid_argument unless 1 <= k < l, eps > 0.
  void validate() const;
  /// n >= 200 l k^2 / eps^2.
  bool size_precondition(int n) const;
};

struct RefinedPacking {
  CyclePacking c0;
  std::vector<int> v0;              // vertices in >= eps n / 2 cycles of c0
  double threshold = 0;             // eps n / 2
  std::size_t removed_cycles = 0;
  std::size_t vertex_events = 0;    // vertices whose cycles were dropped
};

/// Drops every cycle through a vertex lying in fewer than eps n / 2 current
/// cycles (smallest such vertex first) until none is left.
RefinedPacking refine_packing(const Graph& g, const CyclePacking& packing, double epsilon);

struct CleaningStructure {
  int v0 = -1;
  std::vector<int> n_set;  // N: partners of v0 along c0 edges
  std::size_t cv0_size = 0;  // |C(v0)| before cleaning
  CyclePacking c_star;
  /// f_C per cycle of c_star: position j (0-based) -> vertex.
  std::vector<std::vector<int>> labelled;
  std::vector<std::vector<int>> u;  // U_1..U_{2k+1}, stored 0-based
  std::vector<int> phi;             // phi(1..2l), values 1..2k+1
  double degree_threshold = 0;      // eps^2 n / (50 k^2)
  bool degenerate = false;          // c_star empty
};

/// The cleaning fixpoint for one v0. phi traverses the (2k+1)-cycle once,
/// returns to 1 and then alternates 2, 1. Throws std::invalid_argument if
/// v0 lies on no cycle of c0, std::logic_error if a post-condition fails.
CleaningStructure build_cleaning_structure(const Graph& g, const CyclePacking& c0, int v0,
                                           const SamplerConfig& config);

/// Independent re-check of every post-condition; nullopt when all hold.
std::optional<std::string> check_cleaning_structure(const Graph& g, const CyclePacking& c0,
                                                    const CleaningStructure& cs,
                                                    const SamplerConfig& config);

/// phi as described above, 1-based values, length 2l.
std::vector<int> path_to_cycle_map(int k, int ell);

struct TrialResult {
  bool found = false;
  std::vector<int> witness;  // verified (2l+1)-cycle when found
  /// Oblivious search on the union of the samples (always run).
  bool oblivious_found = false;
  bool search_budget_exceeded = false;
  /// Every set was large enough to hold all vertices w.h.p. and was
  /// replaced by V(G) (see Sampler).
  bool saturated = false;
  int v0 = -1;
  /// Structured mode: 0 = no v0, i in 1..2l = step that found no u_i,
  /// -1 = degenerate structure, 2l+1 = success.
  int stage = 0;
  std::size_t distinct_sampled = 0;
};

/// Prepared sampler: in structured mode it refines the packing and builds
/// the cleaning structure for every v0 in V0 up front.
class Sampler {
 public:
  /// packing defaults to the greedy (2k+1)-cycle packing of g. g must
  /// outlive the sampler.
  Sampler(const Graph& g, SamplerConfig config, std::optional<CyclePacking> packing = {});

  const Graph& graph() const { return *g_; }
  const SamplerConfig& config() const { return config_; }
  const CyclePacking& packing() const { return packing_; }
  const RefinedPacking& refined() const { return refined_; }
  /// nullptr when v0 is not in V0 (or in oblivious mode).
  const CleaningStructure* structure(int v0) const;
  /// Sets drawn with more than n (ln n + 40) draws are taken as V(G): the
  /// chance that such a draw misses a vertex is below n e^{-40}.
  bool saturates() const;
  /// Draws per set actually used, after the optional cap.
  std::uint64_t draws_per_set() const { return q_; }
  bool q_capped() const { return q_capped_; }

  /// Trial `index` of the experiment with this seed: Rng(seed, index).
  TrialResult trial(std::uint64_t seed, std::uint64_t index) const;

 private:
  const Graph* g_;
  SamplerConfig config_;
  CyclePacking packing_;
  RefinedPacking refined_;
  std::map<int, CleaningStructure> structures_;
  std::uint64_t q_ = 0;
  bool q_capped_ = false;
};

TrialResult run_sampler_trial(const Graph& g, const SamplerConfig& config, std::uint64_t seed);

struct SuccessEstimate {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double frequency = 0;
  double ci_low = 0, ci_high = 0;  // 95% Wilson interval
  std::uint64_t oblivious_successes = 0;
  /// Trials found structurally but missed by the oblivious search on the
  /// same samples; must be 0.
  std::uint64_t structured_only = 0;
  std::uint64_t budget_exceeded = 0;
  std::vector<std::vector<int>> witnesses;  // first few
};

/// 95% Wilson score interval for k successes out of n.
std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n);

SuccessEstimate estimate_success_probability(const Sampler& s, std::uint64_t trials,
                                             std::uint64_t seed, unsigned threads = 1,
                                             std::size_t keep_witnesses = 5);

/// Growth function on odd integers, g(x) > x.
using GrowthFunction = std::function<int(int)>;
GrowthFunction growth_step(int step);
/// Throws std::out_of_range for an odd argument missing from the table.
GrowthFunction growth_table(std::map<int, int> table);

struct FamilyEntry {
  int length = 0;  // 2k+1
  std::size_t packing_size = 0;
  double threshold = 0;  // eps^2 n^2 / (20 k)
  bool certified = false;
};

struct FamilyReport {
  double epsilon = 0;
  std::vector<FamilyEntry> entries;
  std::vector<int> family;  // l_1, l_2, ... up to the target
  std::optional<int> certified_length;
  std::optional<int> target_length;
  std::optional<SamplerConfig> config;
  std::optional<SuccessEstimate> estimate;
  bool size_precondition = false;
  std::optional<PeelResult> peel;  // when no length certifies
};

struct FamilyOptions {
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  SamplerMode mode = SamplerMode::Structured;
  std::uint64_t q = 0;
};

/// For each odd 3 <= 2k+1 <= 4/eps, certify eps^2 n^2/(20k) edge-disjoint
/// (2k+1)-cycles with the greedy packing; at the first certified length,
/// target l = l_{i+1} where l_i <= 2k+1 < l_{i+1} (l_1 itself when
/// l_1 > 2k+1) and estimate detection of C_l with eps^2/(20k) in place of
/// eps.
/// Without a certified length, reports shortest_odd_cycle_peel(g, eps).
FamilyReport family_test(const Graph& g, const GrowthFunction& growth, int ell1, double epsilon,
                         const FamilyOptions& options = {});

}  // namespace rlab
