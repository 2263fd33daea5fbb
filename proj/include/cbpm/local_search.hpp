#pragma once

// Swap descent on g(M) = Σ m_i². Every accepted move strictly decreases g,
// so a descent from M0 accepts at most g(M0) moves and ends at a matching
// where no single swap lowers g.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "cbpm/core.hpp"
#include "cbpm/kernels.hpp"

namespace cbpm {

enum class PivotKind { kFirst, kBest, kRandom };

struct PivotRule {
  PivotKind kind = PivotKind::kFirst;
  std::uint64_t seed = 0;  // used by kRandom only

  static PivotRule first() { return {PivotKind::kFirst, 0}; }
  static PivotRule best() { return {PivotKind::kBest, 0}; }
  static PivotRule random(std::uint64_t seed) { return {PivotKind::kRandom, seed}; }
};

std::string_view pivot_name(PivotKind kind);
/// "first" | "best" | "random".
std::optional<PivotKind> parse_pivot(std::string_view text);

/// Uniformly random perfect matching: seeded shuffle, then consecutive
/// pairing.
PerfectMatching random_matching(int num_vertices, std::uint64_t seed);
PerfectMatching random_matching(const ColouredClique& clique,
                                std::uint64_t seed);

/// Scans the swap neighbourhood of a ScoredMatching with the batched
/// kernels. The scanner mirrors the matching in structure-of-arrays form and
/// must be told about every applied move through sync().
class SwapScanner {
 public:
  explicit SwapScanner(const ScoredMatching& state,
                       kernels::Isa isa = kernels::active_isa());

  /// Call after state.apply(move).
  void sync(const SwapMove& move);

  /// First move with Δg < 0 in (edge_a, edge_b, reconnection) order,
  /// starting the row scan at start_row and wrapping around.
  std::optional<SwapMove> first_improving(std::size_t start_row = 0);
  /// Minimum Δg < 0, ties broken lexicographically.
  std::optional<SwapMove> best_improving();
  /// Every move with Δg < 0, in lexicographic order.
  std::vector<SwapMove> all_improving();

  /// Δg for both reconnections of (a, b) for every b > a.
  void row(std::size_t a, std::vector<std::int32_t>& cross1,
           std::vector<std::int32_t>& cross2);

 private:
  void load_pair(std::size_t i);
  kernels::RowQuery query(std::size_t a) const;

  const ScoredMatching* state_;
  kernels::Isa isa_;
  std::vector<Vertex> first_;
  std::vector<Vertex> second_;
  std::vector<Colour> pair_colour_;
  std::vector<std::int32_t> hist_;  // slot c holds m_c
  std::vector<std::int32_t> buf1_;
  std::vector<std::int32_t> buf2_;
};

/// Returns a move with Δg < 0 chosen by the pivot rule, or nothing iff the
/// matching is a swap-local minimum of g.
std::optional<SwapMove> find_improving_swap(const ColouredClique& clique,
                                            const PerfectMatching& matching,
                                            const PivotRule& rule);

struct DescentOptions {
  PivotRule rule;
  /// 0: exhaustive scan every step. s > 0: try s random pairs per step and
  /// fall back to one exhaustive pass before declaring a local minimum.
  std::size_t sample_size = 0;
  bool record_steps = false;
  /// Recheck every incremental update and move delta from scratch.
  bool verify = false;
};

struct DescentTrace {
  std::int64_t initial_g = 0;
  std::int64_t final_g = 0;
  std::size_t accepted = 0;
  std::vector<SwapMove> steps;  // filled when record_steps is set
  std::chrono::nanoseconds wall_time{0};
};

struct DescentResult {
  PerfectMatching matching;
  DescentTrace trace;
};

DescentResult descend(const ColouredClique& clique, PerfectMatching start,
                      const DescentOptions& options = {});

}  // namespace cbpm
