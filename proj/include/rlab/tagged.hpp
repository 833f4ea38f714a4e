#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rlab/graph.hpp"

namespace rlab {

/// Edge 2-coloring indexed by edge id: 0 = white, 1 = black.
using EdgeColoring = std::vector<std::uint8_t>;

bool both_colors_present(std::span<const std::uint8_t> coloring);

enum class TaggedKind {
  OneOffEdge,       // exactly one edge of the minority color
  TwoConsecutive,   // two consecutive minority edges through three parts
};

struct TaggedCycleWitness {
  std::vector<int> cycle;
  TaggedKind kind = TaggedKind::OneOffEdge;
  /// True when the minority color is white (the definition after a swap).
  bool swap_applied = false;
};

/// Searches both kinds under both polarities (black minority first). Uses
/// the part labels of h. Exhaustive: nullopt means no tagged cycle exists.
std::optional<TaggedCycleWitness> find_tagged_cycle(const Graph& h,
                                                    std::span<const std::uint8_t> coloring);

/// Existence only (union-find, no path reconstruction).
bool has_tagged_cycle(const Graph& h, std::span<const std::uint8_t> coloring);

/// nullopt if the witness satisfies the definition, else the reason.
std::optional<std::string> verify_tagged_witness(const Graph& h,
                                                 std::span<const std::uint8_t> coloring,
                                                 const TaggedCycleWitness& w);

enum class CertifyStatus { Certified, Counterexample, NotUniquely3Colorable, Inconclusive };
const char* certify_status_name(CertifyStatus s);

struct CertifyOptions {
  /// Maximum number of colorings examined in exact mode; 0 = unlimited.
  std::uint64_t budget = 0;
  unsigned threads = 1;
  /// Exact enumeration up to this many edges; Monte Carlo beyond.
  int exact_edge_cap = 30;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
};

struct CertifyResult {
  CertifyStatus status = CertifyStatus::Inconclusive;
  /// The unique partition the tagged-cycle test used (empty if none).
  std::vector<Part> partition;
  EdgeColoring counterexample;
  std::string mode;  // "exact" or "monte-carlo"
  std::uint64_t colorings_checked = 0;
  std::uint64_t colorings_total = 0;  // exact mode: 2^(|E|-1) - 1
  std::string note;
};

/// Strongly genus-one: uniquely 3-colorable and every coloring with both
/// colors present has a tagged cycle (w.r.t. the unique partition). Exact
/// mode fixes edge 0 white, tries the single-black-edge colorings first, then
/// enumerates the rest in fixed-size chunks (in parallel); the counterexample
/// reported is the smallest coloring mask, so the result does not depend on
/// the thread count.
CertifyResult certify_strongly_genus_one(const Graph& h, const CertifyOptions& options = {});

}  // namespace rlab
