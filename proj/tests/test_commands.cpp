#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cbpm/commands.hpp"
#include "cbpm/iogen.hpp"

using namespace cbpm;
using namespace cbpm::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::size_t lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("ranges") {
  CHECK(IntRange::parse("2..5")->size() == 4);
  CHECK(IntRange::parse("7")->lo == 7);
  CHECK_FALSE(IntRange::parse("5..2"));
  CHECK_FALSE(IntRange::parse("a..b"));
  CHECK_FALSE(IntRange::parse("1..."));
}

TEST_CASE("gen, solve and audit") {
  TempDir tmp("cbpm_cmd_solve");
  std::ostringstream out, err;
  CHECK(cmd_gen({1, 2, 3, tmp.path / "k4.txt"}, out, err) == kExitOk);
  CHECK(read_colouring(tmp.path / "k4.txt").balanced());
  CHECK(cmd_gen({0, 2, 3, tmp.path / "bad.txt"}, out, err) == kExitUsage);

  CHECK(cmd_gen({2, 3, 7, tmp.path / "a.txt"}, out, err) == kExitOk);
  CHECK(cmd_gen({2, 3, 7, tmp.path / "b.txt"}, out, err) == kExitOk);
  CHECK(read_text_file(tmp.path / "a.txt") == read_text_file(tmp.path / "b.txt"));

  SolveOptions solve;
  solve.in = tmp.path / "a.txt";
  solve.seed = 4;
  solve.out = tmp.path / "m.txt";
  solve.trace = tmp.path / "trace.txt";
  out.str("");
  CHECK(cmd_solve(solve, out, err) == kExitOk);
  CHECK(out.str().find("warmup_bound=true") != std::string::npos);
  CHECK(read_text_file(tmp.path / "trace.txt").starts_with("step edge_a"));

  AuditOptions audit;
  audit.in = solve.in;
  audit.matching = tmp.path / "m.txt";
  out.str("");
  CHECK(cmd_audit(audit, out, err) == kExitOk);
  CHECK(out.str().find("identity_failure=false") != std::string::npos);
  audit.format = "json";
  out.str("");
  CHECK(cmd_audit(audit, out, err) == kExitOk);
  CHECK(out.str().front() == '{');
  audit.theta = "nonsense";
  CHECK(cmd_audit(audit, out, err) == kExitUsage);
}

TEST_CASE("solve on K4 always reaches f = 0") {
  TempDir tmp("cbpm_cmd_k4");
  std::ostringstream out, err;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CHECK(cmd_gen({1, 2, seed, tmp.path / "k4.txt"}, out, err) == kExitOk);
    SolveOptions solve;
    solve.in = tmp.path / "k4.txt";
    solve.seed = seed;
    out.str("");
    CHECK(cmd_solve(solve, out, err) == kExitOk);
    CHECK(out.str().find(" f=0 ") != std::string::npos);
  }
}

TEST_CASE("degenerate k = 1 solve") {
  TempDir tmp("cbpm_cmd_k1");
  std::ostringstream out, err;
  CHECK(cmd_gen({2, 1, 0, tmp.path / "c.txt"}, out, err) == kExitOk);
  SolveOptions solve;
  solve.in = tmp.path / "c.txt";
  out.str("");
  CHECK(cmd_solve(solve, out, err) == kExitOk);
  CHECK(out.str().find(" f=0 swaps=0 ") != std::string::npos);
}

TEST_CASE("input errors exit with 2") {
  TempDir tmp("cbpm_cmd_err");
  std::ostringstream out, err;
  write_text_file(tmp.path / "bad.txt", "1 2\n1 1 2\n");
  SolveOptions solve;
  solve.in = tmp.path / "bad.txt";
  CHECK(cmd_solve(solve, out, err) == kExitInput);
  CHECK(err.str().find("expected 6") != std::string::npos);

  CHECK(cmd_gen({1, 2, 0, tmp.path / "k4.txt"}, out, err) == kExitOk);
  write_text_file(tmp.path / "m.txt", "3 3\n0 1\n");
  AuditOptions audit;
  audit.in = tmp.path / "k4.txt";
  audit.matching = tmp.path / "m.txt";
  CHECK(cmd_audit(audit, out, err) == kExitInput);

  OracleOptions oracle;
  oracle.in = tmp.path / "missing.txt";
  CHECK(cmd_oracle(oracle, out, err) == kExitInput);
}

TEST_CASE("oracle command") {
  TempDir tmp("cbpm_cmd_oracle");
  std::ostringstream out, err;
  CHECK(cmd_gen({1, 3, 5, tmp.path / "c.txt"}, out, err) == kExitOk);
  OracleOptions oracle;
  oracle.in = tmp.path / "c.txt";
  oracle.list_local_minima = true;
  out.str("");
  CHECK(cmd_oracle(oracle, out, err) == kExitOk);
  CHECK(out.str().find("matchings=15") != std::string::npos);
  CHECK(out.str().find("local_min f=") != std::string::npos);
  CHECK(cmd_gen({2, 4, 5, tmp.path / "big.txt"}, out, err) == kExitOk);
  oracle.in = tmp.path / "big.txt";
  CHECK(cmd_oracle(oracle, out, err) == kExitInput);
}

TEST_CASE("sweep grid is deterministic across worker counts") {
  SweepOptions opt;
  opt.n_range = {1, 2};
  opt.k_range = {2, 3};
  opt.seeds = {0, 1};
  std::ostringstream a, b, err;
  CHECK(cmd_sweep(opt, a, err) == kExitOk);
  opt.workers = 3;
  CHECK(cmd_sweep(opt, b, err) == kExitOk);
  CHECK(a.str() == b.str());
  CHECK(lines(a.str()) == 1 + 8);
  CHECK(a.str().starts_with(kSweepHeader));
  CHECK(a.str().find(",false,") == std::string::npos);
  CHECK(a.str().find("n/a") != std::string::npos);
}

TEST_CASE("search-extremal rows") {
  SearchExtremalOptions opt;
  opt.n = 2;
  opt.k = 3;
  opt.seeds = {0, 3};
  opt.starts = 6;
  std::ostringstream out, err;
  CHECK(cmd_search_extremal(opt, out, err) == kExitOk);
  CHECK(lines(out.str()) == 5);
  const auto clique = random_balanced(2, 3, 1);
  const auto rec = search_extremal(clique, 1, 6, 14);
  CHECK(rec.max_local_f <= 6);
  REQUIRE(rec.oracle_min_f.has_value());
  CHECK(rec.min_local_f >= *rec.oracle_min_f);
  CHECK(rec.within_warmup_bound);
}

TEST_CASE("k6 command writes the witness") {
  TempDir tmp("cbpm_cmd_k6");
  K6Options opt;
  opt.witness_out = tmp.path / "w.txt";
  std::ostringstream out, err;
  CHECK(cmd_k6(opt, out, err) == kExitOk);
  CHECK(out.str().find("max_min_f=2") != std::string::npos);
  CHECK(read_colouring(tmp.path / "w.txt").balanced());
  opt.sampled = true;
  CHECK(cmd_k6(opt, out, err) == kExitUsage);
}
