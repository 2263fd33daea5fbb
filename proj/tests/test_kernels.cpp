#include <doctest.h>

#include "cbpm/iogen.hpp"
#include "cbpm/kernels.hpp"
#include "cbpm/local_search.hpp"
#include "support.hpp"

using namespace cbpm;

namespace {

// Every supported ISA must agree with the core swap formula on every row.
void check_rows(const ColouredClique& clique, const PerfectMatching& m) {
  ScoredMatching state(clique, m);
  std::vector<std::int32_t> c1, c2;
  for (kernels::Isa isa : kernels::supported_isas()) {
    SwapScanner scanner(state, isa);
    for (std::size_t a = 0; a < m.size(); ++a) {
      scanner.row(a, c1, c2);
      REQUIRE(c1.size() == m.size() - a - 1);
      for (std::size_t b = a + 1; b < m.size(); ++b) {
        REQUIRE(c1[b - a - 1] == state.delta(a, b, Reconnection::kCross1));
        REQUIRE(c2[b - a - 1] == state.delta(a, b, Reconnection::kCross2));
      }
    }
  }
}

}  // namespace

TEST_CASE("scalar is always available") {
  CHECK(kernels::isa_supported(kernels::Isa::kScalar));
  CHECK(kernels::supported_isas().front() == kernels::Isa::kScalar);
  CHECK(kernels::isa_name(kernels::Isa::kAvx2) == "avx2");
}

TEST_CASE("kernel rows match the core formula") {
  // Sizes straddle the 8-lane width so the scalar tail is exercised.
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    for (auto [n, k] : {std::pair{1, 2}, {2, 3}, {3, 3}, {2, 5}, {4, 4}, {3, 7}}) {
      const auto clique = random_balanced(n, k, seed);
      check_rows(clique, random_matching(clique, seed * 31 + 1));
    }
  }
}

TEST_CASE("kernel rows on unbalanced and monochromatic colourings") {
  check_rows(testing::monochromatic(2, 4), random_matching(16, 3));
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto clique = testing::random_colouring(3, 3, seed);
    check_rows(clique, random_matching(clique, seed));
  }
}

TEST_CASE("descent is identical under every ISA") {
  const auto saved = kernels::active_isa();
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto clique = random_balanced(3, 4, seed);
    const auto start = random_matching(clique, seed);
    std::vector<PerfectMatching> results;
    for (kernels::Isa isa : kernels::supported_isas()) {
      kernels::set_active_isa(isa);
      for (auto pivot : {PivotRule::first(), PivotRule::best(), PivotRule::random(seed)}) {
        DescentOptions opt;
        opt.rule = pivot;
        opt.verify = true;
        results.push_back(descend(clique, start, opt).matching);
      }
    }
    const std::size_t per_isa = 3;
    for (std::size_t i = per_isa; i < results.size(); ++i) {
      CHECK(results[i] == results[i % per_isa]);
    }
  }
  kernels::set_active_isa(saved);
}
