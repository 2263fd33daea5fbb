#include <doctest.h>

#include "cbpm/core.hpp"
#include "cbpm/error.hpp"
#include "cbpm/iogen.hpp"
#include "cbpm/local_search.hpp"
#include "support.hpp"

using namespace cbpm;
using namespace cbpm::testing;

TEST_CASE("edge_index walks the lexicographic order") {
  for (int N : {2, 4, 6, 12}) {
    std::size_t expected = 0;
    for (int u = 0; u < N; ++u) {
      for (int v = u + 1; v < N; ++v) CHECK(edge_index(N, u, v) == expected++);
    }
    CHECK(clique_edge_count(N) == expected);
  }
}

TEST_CASE("coloured clique validation") {
  const auto k4 = k4_instance();
  CHECK(k4.balanced());
  CHECK(k4.balanced_count() == 3);
  CHECK(k4.colour(0, 1) == 1);
  CHECK(k4.colour(3, 0) == 2);
  CHECK_THROWS_AS(ColouredClique(1, 2, {1, 1, 2}), InstanceError);
  CHECK_THROWS_AS(ColouredClique(1, 2, {1, 1, 2, 2, 1, 3}), InstanceError);
  CHECK_THROWS_AS(ColouredClique(0, 2, {}), InstanceError);
  CHECK_FALSE(ColouredClique(1, 2, {1, 1, 1, 1, 1, 2}).balanced());
}

TEST_CASE("perfect matching validation") {
  CHECK_NOTHROW(make_matching(4, {{0, 1}, {2, 3}}));
  CHECK_THROWS_AS(make_matching(4, {{0, 1}}), ValidationError);
  CHECK_THROWS_AS(make_matching(4, {{0, 1}, {1, 2}}), ValidationError);
  CHECK_THROWS_AS(make_matching(4, {{0, 0}, {2, 3}}), ValidationError);
  CHECK_THROWS_AS(make_matching(4, {{0, 4}, {2, 3}}), ValidationError);
  CHECK_THROWS_AS(make_matching(3, {{0, 1}}), ValidationError);
  const auto m = make_matching(4, {{1, 0}, {3, 2}});
  CHECK(m.pair(0) == VertexPair{0, 1});
  CHECK(m.partner(3) == 2);
}

TEST_CASE("histogram and scores on the K4 instance") {
  const auto k4 = k4_instance();
  const auto m = make_matching(4, {{0, 1}, {2, 3}});
  const auto hist = compute_histogram(k4, m);
  CHECK(hist.count(1) == 1);
  CHECK(hist.count(2) == 1);
  CHECK(f_score(hist, 1) == 0);
  CHECK(g_score(hist) == 2);
  CHECK(weight(k4, hist, 0, 2) == 1);
  const auto [wm, wrest] = average_weights(k4, m);
  CHECK(wm == Rational(1));
  CHECK(wrest == Rational(1));
}

TEST_CASE("f and g on explicit histograms") {
  CHECK(f_score(ColourHistogram({1, 1, 1}), 1) == 0);
  CHECK(f_score(ColourHistogram({3, 1, 2}), 2) == 2);
  CHECK(g_score(ColourHistogram({1, 1, 1})) == 3);
  CHECK(g_score(ColourHistogram({3, 1, 2})) == 14);
  CHECK(g_score(ColourHistogram({6, 0, 0})) == 36);
}

TEST_CASE("weight of absent and singleton colours") {
  const auto k4 = k4_instance();
  const auto mono = make_matching(4, {{0, 2}, {1, 3}});  // both colour 1
  const auto hist = compute_histogram(k4, mono);
  CHECK(hist.count(1) == 2);
  CHECK(weight(k4, hist, 0, 3) == 0);
  CHECK(weight(k4, mono, 0, 1) == 2);
}

TEST_CASE("monochromatic matching and clique") {
  const auto mono = monochromatic(2, 3);
  const auto m = random_matching(mono, 5);
  const auto hist = compute_histogram(mono, m);
  CHECK(hist.count(1) == 6);
  CHECK(hist.count(2) == 0);
  CHECK(f_score(hist, 2) == 2 * 2 * (3 - 1));
  const auto [wm, wrest] = average_weights(mono, m);
  CHECK(wm == Rational(6));
  CHECK(wrest == Rational(6));
}

TEST_CASE("swap delta on the K4 instance") {
  const auto k4 = k4_instance();
  const auto m = make_matching(4, {{0, 1}, {2, 3}});
  const auto hist = compute_histogram(k4, m);
  // cross1 of {0,1},{2,3} gives {0,2},{1,3}.
  CHECK(swap_delta_g(k4, m, hist, 0, 1, Reconnection::kCross1) == 2);
  const auto moved = apply_swap(m, make_swap(k4, m, hist, 0, 1, Reconnection::kCross1));
  CHECK(moved.canonical() == make_matching(4, {{0, 2}, {1, 3}}));
  CHECK_THROWS_AS(swap_delta_g(k4, m, hist, 0, 0, Reconnection::kCross1), InvalidMoveError);
  CHECK_THROWS_AS(swap_delta_g(k4, m, hist, 0, 2, Reconnection::kCross1), InvalidMoveError);
}

TEST_CASE("reconnection is an involution") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto clique = random_balanced(2, 3, seed);
    const auto m = random_matching(clique, seed);
    // Normalising the new pairs can swap endpoints, so the inverse is
    // whichever reconnection restores the original edges.
    for (Reconnection r : {Reconnection::kCross1, Reconnection::kCross2}) {
      auto once = m;
      once.reconnect(1, 4, r);
      CHECK_FALSE(once.same_edges(m));
      int restoring = 0;
      for (Reconnection back : {Reconnection::kCross1, Reconnection::kCross2}) {
        auto twice = once;
        twice.reconnect(1, 4, back);
        if (twice.same_edges(m)) ++restoring;
      }
      CHECK(restoring == 1);
    }
  }
}

TEST_CASE("swap delta equals full recomputation") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 1 + static_cast<int>(seed % 3);
    const int k = 2 + static_cast<int>(seed % 4);
    const auto clique = seed % 2 ? random_balanced(n, k, seed) : random_colouring(n, k, seed);
    const auto m = random_matching(clique, seed + 7);
    const auto hist = compute_histogram(clique, m);
    const auto pairs = as_pairs(m);
    const auto g0 = brute_g(brute_histogram(clique, pairs));
    CHECK(g_score(hist) == g0);
    for (std::size_t a = 0; a < m.size(); ++a) {
      for (std::size_t b = a + 1; b < m.size(); ++b) {
        for (bool second : {false, true}) {
          const auto r = second ? Reconnection::kCross2 : Reconnection::kCross1;
          const auto after = brute_g(brute_histogram(clique, brute_reconnect(pairs, a, b, second)));
          REQUIRE(swap_delta_g(clique, m, hist, a, b, r) == after - g0);
        }
      }
    }
  }
}

TEST_CASE("scored matching tracks g incrementally") {
  const auto clique = random_balanced(3, 4, 11);
  ScoredMatching state(clique, random_matching(clique, 3));
  state.set_verify(true);
  std::mt19937_64 rng(9);
  for (int step = 0; step < 200; ++step) {
    std::uniform_int_distribution<std::size_t> pick(0, state.matching().size() - 1);
    const std::size_t a = pick(rng);
    std::size_t b = pick(rng);
    if (a == b) continue;
    const auto r = rng() % 2 ? Reconnection::kCross1 : Reconnection::kCross2;
    state.apply(make_swap(clique, state.matching(), state.histogram(), a, b, r));
    CHECK(state.g() == brute_g(brute_histogram(clique, as_pairs(state.matching()))));
  }
}

TEST_CASE("bound predicates") {
  // (2nk-1)(g - n^2 k) <= 4nk(nk-1) at n=1, k=2: 3(g-2) <= 8.
  CHECK(g_bound_holds(1, 2, 4));
  CHECK_FALSE(g_bound_holds(1, 2, 5));
  // f^2 <= 2nk^2 at n=2, k=3: f <= 6.
  CHECK(warmup_f_bound_holds(2, 3, 6));
  CHECK_FALSE(warmup_f_bound_holds(2, 3, 7));
  CHECK(uniform_f_bound_holds(3, 262144));
  CHECK_FALSE(uniform_f_bound_holds(3, 262145));
  CHECK(uniform_f_bound_holds(40, std::numeric_limits<std::int64_t>::max()));
}
