#pragma once

// Exhaustive ground truth for small instances.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cbpm/core.hpp"

namespace cbpm {

inline constexpr int kDefaultOracleCap = 14;

/// (N-1)!!, the number of perfect matchings of K_N (N even).
std::uint64_t perfect_matching_count(int num_vertices);

/// Yields every perfect matching of K_N exactly once, pairing the smallest
/// unmatched vertex first. Throws CapExceededError when N > cap and
/// std::invalid_argument when N is odd.
void enumerate_matchings(int num_vertices,
                         const std::function<void(const PerfectMatching&)>& visit,
                         int cap = kDefaultOracleCap);

/// True iff no swap has Δg < 0. Checks all 2·C(nk, 2) moves with the exact
/// per-move delta.
bool is_local_minimum(const ColouredClique& clique,
                      const PerfectMatching& matching);

struct LocalMinimum {
  PerfectMatching matching;  // canonical form
  std::int64_t f;
  std::int64_t g;
};

struct OracleOptions {
  int cap = kDefaultOracleCap;
  std::size_t argmin_cap = 16;
  bool collect_local_minima = true;
};

struct OracleResult {
  std::uint64_t matching_count = 0;
  std::int64_t min_f = 0;
  std::int64_t min_g = 0;
  std::vector<PerfectMatching> argmin_f;  // first argmin_cap, canonical
  std::vector<PerfectMatching> argmin_g;
  std::vector<LocalMinimum> local_minima;  // enumeration order
  std::uint64_t local_minimum_count = 0;

  bool contains_local_minimum(const PerfectMatching& matching) const;
  std::optional<std::int64_t> max_local_minimum_f() const;
};

OracleResult exact_minima(const ColouredClique& clique,
                          const OracleOptions& options = {});

struct K6SearchOptions {
  /// Exhaustive: all 756,756 balanced 3-colourings of K6. Otherwise `samples`
  /// random balanced colourings derived from `seed`.
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  unsigned workers = 1;
};

struct K6Report {
  std::uint64_t colourings = 0;
  /// Max over colourings of min f over the 15 matchings.
  std::int64_t max_min_f = 0;
  std::uint64_t attaining_max = 0;
  std::uint64_t positive_min_f = 0;
  /// First colouring in enumeration order that attains the max.
  std::optional<ColouredClique> witness;
  std::uint64_t witness_index = 0;
};

K6Report k6_search(const K6SearchOptions& options = {});

}  // namespace cbpm
