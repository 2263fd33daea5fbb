#include <doctest.h>

#include <set>

#include "cbpm/error.hpp"
#include "cbpm/iogen.hpp"
#include "cbpm/local_search.hpp"
#include "cbpm/oracle.hpp"
#include "support.hpp"

using namespace cbpm;
using namespace cbpm::testing;

TEST_CASE("matching counts are double factorials") {
  CHECK(perfect_matching_count(4) == 3);
  CHECK(perfect_matching_count(6) == 15);
  CHECK(perfect_matching_count(10) == 945);
  for (int N : {2, 4, 6, 8, 10}) {
    std::set<std::vector<std::pair<int, int>>> seen;
    enumerate_matchings(N, [&](const PerfectMatching& m) { seen.insert(as_pairs(m.canonical())); });
    CHECK(seen.size() == perfect_matching_count(N));
    CHECK(seen.size() == all_matchings(N).size());
  }
  CHECK_THROWS_AS(enumerate_matchings(16, [](const PerfectMatching&) {}), CapExceededError);
}

TEST_CASE("oracle on the K4 instance") {
  const auto r = exact_minima(k4_instance());
  CHECK(r.matching_count == 3);
  CHECK(r.min_f == 0);
  CHECK(r.min_g == 2);
  CHECK(is_local_minimum(k4_instance(), make_matching(4, {{0, 1}, {2, 3}})));
  CHECK_FALSE(is_local_minimum(k4_instance(), make_matching(4, {{0, 2}, {1, 3}})));
}

TEST_CASE("oracle minima agree with brute force") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int k = 2 + static_cast<int>(seed % 4);
    const int n = k == 2 && seed % 2 ? 2 : 1;
    const auto clique = random_balanced(n, k, seed);
    const auto r = exact_minima(clique);
    std::int64_t min_f = INT64_MAX, min_g = INT64_MAX;
    for (const auto& pairs : all_matchings(clique.num_vertices())) {
      const auto m = brute_histogram(clique, pairs);
      min_f = std::min(min_f, brute_f(m, n));
      min_g = std::min(min_g, brute_g(m));
    }
    CHECK(r.min_f == min_f);
    CHECK(r.min_g == min_g);
    for (const auto& lm : r.local_minima) CHECK(lm.g >= r.min_g);
    CHECK(r.local_minimum_count == r.local_minima.size());
  }
}

TEST_CASE("global minimisers and monochromatic cliques are local minima") {
  const auto clique = random_balanced(1, 4, 5);
  const auto r = exact_minima(clique);
  for (const auto& m : r.argmin_g) CHECK(is_local_minimum(clique, m));
  const auto mono = monochromatic(1, 3);
  CHECK(is_local_minimum(mono, random_matching(mono, 1)));
  CHECK(exact_minima(mono).local_minimum_count == 15);
}

TEST_CASE("descent output is an oracle local minimum") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto clique = random_balanced(1, 5, seed);
    const auto r = exact_minima(clique);
    const auto res = descend(clique, random_matching(clique, seed));
    CHECK(r.contains_local_minimum(res.matching));
  }
}

TEST_CASE("K6 witness has no rainbow matching") {
  K6SearchOptions opt;
  opt.workers = 2;
  const auto report = k6_search(opt);
  CHECK(report.colourings == 756756);
  CHECK(report.max_min_f == 2);
  REQUIRE(report.witness.has_value());
  const auto& w = *report.witness;
  CHECK(w.balanced());
  for (const auto& pairs : all_matchings(6)) {
    const auto m = brute_histogram(w, pairs);
    CHECK(brute_f(m, 1) >= 2);
  }
  CHECK(exact_minima(w).min_f == 2);

  K6SearchOptions serial;
  serial.workers = 1;
  const auto again = k6_search(serial);
  CHECK(again.attaining_max == report.attaining_max);
  CHECK(again.witness_index == report.witness_index);
  CHECK(*again.witness == w);
}

TEST_CASE("sampled K6 search stays within the exhaustive maximum") {
  K6SearchOptions opt;
  opt.exhaustive = false;
  opt.seed = 3;
  opt.samples = 2000;
  const auto r = k6_search(opt);
  CHECK(r.colourings == 2000);
  CHECK(r.max_min_f <= 2);
  // A sampled colouring recomputed by brute force.
  const auto c = random_balanced(1, 3, 77);
  std::int64_t best = INT64_MAX;
  for (const auto& pairs : all_matchings(6)) best = std::min(best, brute_f(brute_histogram(c, pairs), 1));
  CHECK(best <= 2);
}
