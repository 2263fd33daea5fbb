#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cbpm/commands.hpp"
#include "cbpm/parallel.hpp"

namespace {

using cbpm::cli::IntRange;

// CLI11 validator for "a..b" ranges.
struct RangeValidator : CLI::Validator {
  RangeValidator() {
    name_ = "RANGE";
    func_ = [](const std::string& s) {
      return IntRange::parse(s) ? std::string() : "expected a..b, got '" + s + "'";
    };
  }
};

struct PivotValidator : CLI::Validator {
  PivotValidator() {
    name_ = "PIVOT";
    func_ = [](const std::string& s) {
      return cbpm::parse_pivot(s) ? std::string() : "pivot must be first, best or random";
    };
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Swap descent and exact audits for colour-balanced perfect matchings"};
  app.require_subcommand(1);
  const RangeValidator range;
  const PivotValidator pivot_check;

  cbpm::cli::GenOptions gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Write a random balanced colouring");
  gen_cmd->add_option("--n", gen.n, "balance parameter n")->required();
  gen_cmd->add_option("--k", gen.k, "number of colours")->required();
  gen_cmd->add_option("--seed", gen.seed, "RNG seed")->required();
  gen_cmd->add_option("--out", gen_out, "output colouring file")->required();

  cbpm::cli::SolveOptions solve;
  std::string solve_in, solve_init, solve_out, solve_trace, solve_pivot = "first";
  auto* solve_cmd = app.add_subcommand("solve", "Run swap descent on a colouring");
  solve_cmd->add_option("--in", solve_in, "colouring file")->required();
  solve_cmd->add_option("--init", solve_init, "initial matching file");
  solve_cmd->add_option("--seed", solve.seed, "seed for the start matching and random pivot");
  solve_cmd->add_option("--pivot", solve_pivot, "first | best | random")->check(pivot_check);
  solve_cmd->add_option("--sample", solve.sample_size,
                        "random candidate sample per step before the exhaustive pass");
  solve_cmd->add_option("--out", solve_out, "write the final matching");
  solve_cmd->add_option("--trace", solve_trace, "write accepted swaps");

  cbpm::cli::OracleOptions oracle;
  std::string oracle_in;
  auto* oracle_cmd = app.add_subcommand("oracle", "Enumerate all perfect matchings");
  oracle_cmd->add_option("--in", oracle_in, "colouring file")->required();
  oracle_cmd->add_flag("--list-local-minima", oracle.list_local_minima);
  oracle_cmd->add_option("--cap", oracle.cap, "largest vertex count to enumerate")
      ->capture_default_str();

  cbpm::cli::K6Options k6;
  std::string k6_out;
  auto* k6_cmd = app.add_subcommand("k6", "Search 3-colourings of K6 for the worst minimum f");
  k6_cmd->add_flag("--sampled", k6.sampled, "sample colourings instead of enumerating");
  k6_cmd->add_option("--seed", k6.seed, "seed for sampled mode");
  k6_cmd->add_option("--count", k6.count, "number of samples");
  k6_cmd->add_option("--out", k6_out, "write the witness colouring");

  cbpm::cli::AuditOptions audit;
  std::string audit_in, audit_matching, audit_out;
  auto* audit_cmd = app.add_subcommand("audit", "Exact audit of a matching");
  audit_cmd->add_option("--in", audit_in, "colouring file")->required();
  audit_cmd->add_option("--matching", audit_matching, "matching file")->required();
  audit_cmd->add_option("--theta", audit.theta, "paper | const:C | pow:B")
      ->capture_default_str();
  audit_cmd->add_option("--format", audit.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  audit_cmd->add_option("--out", audit_out, "write the report to a file");

  cbpm::cli::SweepOptions sweep;
  std::string sweep_n, sweep_k, sweep_seeds, sweep_pivot = "first", sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "Descent over a grid of instances, as CSV");
  sweep_cmd->add_option("--n-range", sweep_n, "a..b")->required()->check(range);
  sweep_cmd->add_option("--k-range", sweep_k, "a..b")->required()->check(range);
  sweep_cmd->add_option("--seeds", sweep_seeds, "a..b")->required()->check(range);
  sweep_cmd->add_option("--pivot", sweep_pivot, "first | best | random")->check(pivot_check);
  sweep_cmd->add_option("--out", sweep_out, "CSV path (stdout if omitted)");
  sweep_cmd->add_flag("--timing", sweep.timing, "fill wallclock_ms (rows then differ per run)");

  cbpm::cli::SearchExtremalOptions search;
  std::string search_seeds = "0..0", search_in, search_out;
  auto* search_cmd =
      app.add_subcommand("search-extremal", "Multi-start descent looking for large local f");
  search_cmd->add_option("--n", search.n, "balance parameter n");
  search_cmd->add_option("--k", search.k, "number of colours");
  search_cmd->add_option("--seeds", search_seeds, "a..b")->check(range);
  search_cmd->add_option("--starts", search.starts, "random starts per colouring")
      ->capture_default_str();
  search_cmd->add_option("--cap", search.cap, "oracle vertex cap")->capture_default_str();
  search_cmd->add_option("--in", search_in, "fixed colouring file");
  search_cmd->add_option("--out", search_out, "CSV path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cbpm::cli::kExitUsage;
  }

  const unsigned workers = cbpm::default_workers();
  auto& out = std::cout;
  auto& err = std::cerr;

  if (*gen_cmd) {
    gen.out = gen_out;
    return cbpm::cli::cmd_gen(gen, out, err);
  }
  if (*solve_cmd) {
    solve.in = solve_in;
    if (!solve_init.empty()) solve.init = solve_init;
    if (!solve_out.empty()) solve.out = solve_out;
    if (!solve_trace.empty()) solve.trace = solve_trace;
    solve.pivot = *cbpm::parse_pivot(solve_pivot);
    return cbpm::cli::cmd_solve(solve, out, err);
  }
  if (*oracle_cmd) {
    oracle.in = oracle_in;
    return cbpm::cli::cmd_oracle(oracle, out, err);
  }
  if (*k6_cmd) {
    if (!k6_out.empty()) k6.witness_out = k6_out;
    k6.workers = workers;
    return cbpm::cli::cmd_k6(k6, out, err);
  }
  if (*audit_cmd) {
    audit.in = audit_in;
    audit.matching = audit_matching;
    if (!audit_out.empty()) audit.out = audit_out;
    return cbpm::cli::cmd_audit(audit, out, err);
  }
  if (*sweep_cmd) {
    sweep.n_range = *IntRange::parse(sweep_n);
    sweep.k_range = *IntRange::parse(sweep_k);
    sweep.seeds = *IntRange::parse(sweep_seeds);
    sweep.pivot = *cbpm::parse_pivot(sweep_pivot);
    if (!sweep_out.empty()) sweep.out = sweep_out;
    sweep.workers = workers;
    return cbpm::cli::cmd_sweep(sweep, out, err);
  }
  if (*search_cmd) {
    search.seeds = *IntRange::parse(search_seeds);
    if (!search_in.empty()) search.in = search_in;
    if (!search_out.empty()) search.out = search_out;
    search.workers = workers;
    return cbpm::cli::cmd_search_extremal(search, out, err);
  }
  return cbpm::cli::kExitUsage;
}
