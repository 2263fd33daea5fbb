#pragma once

// Certificate pipeline over a (clique, matching) pair:
//
//   group_colours -> classify_pairs -> compute_tallies -> solve_levels
//                 -> compute_phi
//
// Colour groups are indexed 0..t-1 internally and reported 1-based. Pairs of
// groups (i, j) are flattened to i * t + j. All arithmetic is exact: int64
// for counts, cpp_int for thresholds, cpp_rational for levels and φ.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cbpm/core.hpp"

namespace cbpm::audit {

/// Merge threshold θ(ℓ) used when grouping colours.
class ThresholdRule {
 public:
  enum class Kind { kPaper, kConstant, kPower };

  /// θ(ℓ) = 4^{(ℓ+1)k}.
  static ThresholdRule paper() { return ThresholdRule(Kind::kPaper, 4); }
  /// θ(ℓ) = C.
  static ThresholdRule constant(BigInt c) { return ThresholdRule(Kind::kConstant, std::move(c)); }
  /// θ(ℓ) = B^{(ℓ+1)k}.
  static ThresholdRule power(BigInt base) { return ThresholdRule(Kind::kPower, std::move(base)); }
  /// "paper" | "const:C" | "pow:B" with C, B non-negative integers.
  static std::optional<ThresholdRule> parse(std::string_view text);

  Kind kind() const { return kind_; }
  BigInt at(int ell, int k) const;
  std::string describe() const;

 private:
  ThresholdRule(Kind kind, BigInt value) : kind_(kind), value_(std::move(value)) {}

  Kind kind_;
  BigInt value_;
};

struct ColourGrouping {
  int n = 0;
  int k = 0;
  ThresholdRule rule = ThresholdRule::paper();
  /// Colours by non-increasing m, ties by colour index.
  std::vector<Colour> order;
  /// Contiguous blocks of `order`.
  std::vector<std::vector<Colour>> groups;
  std::vector<std::int64_t> group_min;  // min m over the group (b_i)
  std::vector<std::int64_t> group_max;
  std::vector<std::int64_t> widths;
  /// d(A_i, A_{i+1}).
  std::vector<std::int64_t> gaps;
  /// group_of[c] = α for colour c (slot 0 unused).
  std::vector<int> group_of;
  /// θ at the final ℓ; every remaining gap exceeds it.
  BigInt final_threshold;

  int t() const { return static_cast<int>(groups.size()); }
  int ell() const { return k - t(); }
  int size(int group) const { return static_cast<int>(groups[group].size()); }
};

/// Starts from singletons in sorted order and repeatedly merges the
/// lowest-indexed adjacent pair whose gap is <= θ(k - t), until t = 1 or no
/// pair qualifies.
ColourGrouping group_colours(const ColourHistogram& hist, int n,
                             const ThresholdRule& rule);

struct PairClassification {
  int t = 0;
  /// Min and max of m_x + m_y over A_i x A_j, per flattened pair.
  std::vector<std::int64_t> low;
  std::vector<std::int64_t> high;
  /// Class index (0-based, dominance order) per flattened pair.
  std::vector<int> class_of;
  std::vector<std::vector<int>> classes;
  /// Incomparable pairs (p < q) that generate the closure.
  std::vector<std::pair<int, int>> generators;

  bool totally_ordered = true;
  bool class_count_bound_holds = true;    // s >= 2t - 1
  bool same_coordinate_separated = true;  // (x,z) !≃ (y,z), (z,x) !≃ (z,y)

  int s() const { return static_cast<int>(classes.size()); }
  int pair(int i, int j) const { return i * t + j; }
  /// Every swap from colours in pair p to colours in pair q is contradicting.
  bool dominates(int p, int q) const { return low[p] > high[q] + 4; }
};

PairClassification classify_pairs(const ColourGrouping& grouping,
                                  const ColourHistogram& hist);

struct SwapTally {
  int t = 0;
  std::vector<std::int64_t> y;  // t x t, row-major
  std::vector<std::int64_t> p;
  std::vector<std::int64_t> z;
  std::vector<std::int64_t> group_edges;  // p_i
  std::vector<std::int64_t> xi;

  std::int64_t at(const std::vector<std::int64_t>& m, int i, int j) const {
    return m[static_cast<std::size_t>(i) * t + j];
  }
};

/// S is the set of ordered pairs (e, e') of non-matching edges where e' is
/// the complementary rewiring edge of e: for matching edges {u,v}, {x,y},
/// e = {u,x} pairs with e' = {v,y}. y counts S by (α(e), α(e')).
SwapTally compute_tallies(const ColouredClique& clique,
                          const PerfectMatching& matching,
                          const ColourGrouping& grouping);

enum class Severity {
  kIdentity,  // unconditional; a failure is an audit failure
  kReport,    // recorded only
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string lhs;
  std::string rhs;
  Severity severity = Severity::kIdentity;
};

/// Row, total, and per-group identities of the tallies. Identities that need
/// a balanced colouring are omitted for unbalanced input.
std::vector<CheckResult> check_identities(const SwapTally& tally,
                                          const ColourGrouping& grouping,
                                          const ColouredClique& clique);

struct PrefixSums {
  std::vector<std::int64_t> sums;  // Σ_{q<=h} Σ_{(i,j) in B_q} z_ij, h = 1..s
  bool all_nonnegative = true;
  bool last_is_zero = true;
};

PrefixSums prefix_z(const SwapTally& tally,
                    const PairClassification& classification);

/// Prefix checks plus a direct scan for swaps whose origin class precedes
/// their destination class. `local_minimum` decides whether a violation is
/// an identity failure or informational.
std::vector<CheckResult> check_prefix_z(const SwapTally& tally,
                                        const PairClassification& classification,
                                        const ColouredClique& clique,
                                        const PerfectMatching& matching,
                                        const ColourGrouping& grouping,
                                        bool local_minimum);

/// Number of swaps (unordered matching pair, reconnection) going from a
/// class to a strictly later one.
std::int64_t count_down_arrows(const ColouredClique& clique,
                               const PerfectMatching& matching,
                               const ColourGrouping& grouping,
                               const PairClassification& classification);

using IntMatrix = std::vector<std::vector<int>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

struct Projection {
  std::vector<Rational> point;     // projection of b onto null(N)
  RationalMatrix null_basis;       // columns of a null-space basis, as rows
  int rank = 0;
};

/// Exact Euclidean projection of b onto the null space of N (N has
/// `columns` columns; it may have no rows).
Projection project_onto_null_space(const IntMatrix& matrix,
                                   std::span<const Rational> b, int columns);

/// N·a == 0 exactly.
bool in_null_space(const IntMatrix& matrix, std::span<const Rational> a);
/// Zᵀ(b - a) == 0 for the basis Z, i.e. b - a is orthogonal to null(N).
bool normal_residual_zero(const RationalMatrix& null_basis,
                          std::span<const Rational> b,
                          std::span<const Rational> a);

struct LevelSystem {
  IntMatrix matrix;                         // N
  std::vector<std::pair<int, int>> row_pairs;  // generating pairs per row
  std::vector<BigInt> b;
  std::vector<BigInt> residual;             // ε = N·b
  std::vector<Rational> a;
  RationalMatrix null_basis;
  int rank = 0;
  Rational max_deviation;                   // ‖a - b‖∞
  bool null_residual_zero = false;
  bool normal_residual_zero = false;
  bool strictly_decreasing = false;
  /// a_i + a_j equal within a class.
  bool class_sums_constant = false;
  /// Class sums non-increasing / strictly decreasing along dominance order.
  bool class_sums_weakly_decreasing = false;
  bool class_sums_strictly_decreasing = false;
};

LevelSystem solve_levels(const ColourGrouping& grouping,
                         const PairClassification& classification,
                         const ColourHistogram& hist);

struct PhiResult {
  Rational phi;
  /// ξ_1/|A_1| repeated |A_1| times, then ξ_2/|A_2|, ...
  std::vector<Rational> nu;
  bool negative = false;
  /// a strictly decreasing and ν weakly increasing, nonconstant, zero-sum.
  bool predicts_negative = false;
  /// Prefix sums all >= 0 and class sums of a weakly decreasing.
  bool predicts_nonnegative = false;
  /// Both predictions fire at once.
  bool contradiction = false;
};

/// φ = Σ a_i ξ_i from raw vectors; only predicts_negative is derived here.
PhiResult evaluate_phi(std::span<const Rational> a,
                       std::span<const std::int64_t> xi,
                       std::span<const int> group_sizes);

PhiResult compute_phi(const LevelSystem& levels, const SwapTally& tally,
                      const ColourGrouping& grouping,
                      const PairClassification& classification);

struct AuditReport {
  int n = 0;
  int k = 0;
  bool balanced = false;
  bool local_minimum = false;
  std::int64_t f = 0;
  std::int64_t g = 0;
  ColourGrouping grouping;
  PairClassification classification;
  SwapTally tally;
  PrefixSums prefix;
  std::int64_t down_arrows = 0;
  LevelSystem levels;
  PhiResult phi;
  std::vector<CheckResult> checks;

  /// Some kIdentity check failed.
  bool identity_failure() const;
  const CheckResult* find(std::string_view name) const;
};

AuditReport run_audit(const ColouredClique& clique,
                      const PerfectMatching& matching,
                      const ThresholdRule& rule = ThresholdRule::paper());

/// One key=value per line.
std::string to_key_value(const AuditReport& report);
/// JSON document with fixed top-level fields t, s, phi_num, phi_den, checks.
std::string to_json(const AuditReport& report);

}  // namespace cbpm::audit
