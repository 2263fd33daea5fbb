#pragma once

// Subcommand implementations behind the `cbpm` executable. Each returns the
// process exit code and writes only to the streams it is given.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cbpm/local_search.hpp"

namespace cbpm::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInput = 2,  // parse or validation failure
  kExitAuditFailure = 3,
};

/// Inclusive integer range written "a..b" or "a".
struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  static std::optional<IntRange> parse(std::string_view text);
  std::int64_t size() const { return hi - lo + 1; }
};

struct GenOptions {
  int n = 0;
  int k = 0;
  std::uint64_t seed = 0;
  std::filesystem::path out;
};
int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err);

struct SolveOptions {
  std::filesystem::path in;
  std::optional<std::filesystem::path> init;
  std::uint64_t seed = 0;
  PivotKind pivot = PivotKind::kFirst;
  std::size_t sample_size = 0;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> trace;
};
int cmd_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err);

struct OracleOptions {
  std::filesystem::path in;
  bool list_local_minima = false;
  int cap = 14;
};
int cmd_oracle(const OracleOptions& opt, std::ostream& out, std::ostream& err);

struct AuditOptions {
  std::filesystem::path in;
  std::filesystem::path matching;
  std::string theta = "paper";
  std::string format = "text";  // text | json
  std::optional<std::filesystem::path> out;
};
int cmd_audit(const AuditOptions& opt, std::ostream& out, std::ostream& err);

struct SweepRecord {
  int n = 0;
  int k = 0;
  std::uint64_t seed = 0;
  PivotKind pivot = PivotKind::kFirst;
  std::int64_t g_initial = 0;
  std::int64_t g_final = 0;
  std::int64_t f_final = 0;
  std::size_t swaps = 0;
  bool warmup_bound_holds = false;
  bool g_bound_holds = false;
  double wallclock_ms = 0;
};

inline constexpr std::string_view kSweepHeader =
    "n,k,seed,pivot,g_initial,g_final,f_final,swaps,warmup_bound_holds,"
    "g_bound_holds,wallclock_ms";

/// One sweep cell: random balanced instance from (n, k, seed), random start
/// matching and pivot stream derived from the same seed, then descent.
SweepRecord sweep_run(int n, int k, std::uint64_t seed, PivotKind pivot);
/// CSV row; wallclock_ms is "n/a" unless timing is requested.
std::string format_sweep_row(const SweepRecord& rec, bool timing);

struct SweepOptions {
  IntRange n_range;
  IntRange k_range;
  IntRange seeds;
  PivotKind pivot = PivotKind::kFirst;
  std::optional<std::filesystem::path> out;  // stdout when unset
  bool timing = false;
  unsigned workers = 1;
};
int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err);

struct ExtremalRecord {
  int n = 0;
  int k = 0;
  std::uint64_t seed = 0;
  int starts = 0;
  std::size_t distinct_local_minima = 0;
  std::int64_t max_local_f = 0;
  std::int64_t min_local_f = 0;
  bool within_warmup_bound = false;
  std::optional<std::int64_t> oracle_min_f;
  std::optional<std::int64_t> oracle_max_local_f;
};

inline constexpr std::string_view kExtremalHeader =
    "n,k,seed,starts,distinct_local_minima,max_local_f,min_local_f,"
    "within_warmup_bound,oracle_min_f,oracle_max_local_f,gap";

/// Multi-start descent on one colouring.
ExtremalRecord search_extremal(const ColouredClique& clique, std::uint64_t seed,
                               int starts, int cap);
std::string format_extremal_row(const ExtremalRecord& rec);

struct SearchExtremalOptions {
  int n = 0;
  int k = 0;
  IntRange seeds;
  int starts = 16;
  int cap = 14;
  std::optional<std::filesystem::path> in;   // fixed colouring instead of generated ones
  std::optional<std::filesystem::path> out;  // stdout when unset
  unsigned workers = 1;
};
int cmd_search_extremal(const SearchExtremalOptions& opt, std::ostream& out,
                        std::ostream& err);

struct K6Options {
  bool sampled = false;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  std::optional<std::filesystem::path> witness_out;
  unsigned workers = 1;
};
int cmd_k6(const K6Options& opt, std::ostream& out, std::ostream& err);

}  // namespace cbpm::cli
