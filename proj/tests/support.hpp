#pragma once

// Reference computations for tests. These deliberately avoid the library's
// dense colour matrix, incremental histograms and swap formulas so that they
// act as independent oracles.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "cbpm/core.hpp"

namespace cbpm::testing {

// The lexicographic edge list, rebuilt by walking u < v.
inline std::map<std::pair<int, int>, Colour> edge_colours(const ColouredClique& clique) {
  std::map<std::pair<int, int>, Colour> out;
  std::size_t idx = 0;
  const auto colours = clique.colours();
  for (int u = 0; u < clique.num_vertices(); ++u) {
    for (int v = u + 1; v < clique.num_vertices(); ++v) out[{u, v}] = colours[idx++];
  }
  return out;
}

inline Colour colour_of(const std::map<std::pair<int, int>, Colour>& table, int a, int b) {
  return table.at({std::min(a, b), std::max(a, b)});
}

inline std::vector<std::int64_t> brute_histogram(const ColouredClique& clique,
                                                 const std::vector<std::pair<int, int>>& pairs) {
  const auto table = edge_colours(clique);
  std::vector<std::int64_t> m(static_cast<std::size_t>(clique.k()), 0);
  for (const auto& [a, b] : pairs) ++m[colour_of(table, a, b) - 1];
  return m;
}

inline std::int64_t brute_g(const std::vector<std::int64_t>& m) {
  std::int64_t g = 0;
  for (auto x : m) g += x * x;
  return g;
}

inline std::int64_t brute_f(const std::vector<std::int64_t>& m, int n) {
  std::int64_t f = 0;
  for (auto x : m) f += x > n ? x - n : n - x;
  return f;
}

inline std::vector<std::pair<int, int>> as_pairs(const PerfectMatching& m) {
  std::vector<std::pair<int, int>> out;
  for (const auto& p : m.pairs()) out.emplace_back(p.u, p.v);
  return out;
}

// Pairs after rewiring matching edges a and b; second = false pairs u with x.
inline std::vector<std::pair<int, int>> brute_reconnect(std::vector<std::pair<int, int>> pairs,
                                                        std::size_t a, std::size_t b,
                                                        bool second) {
  const auto [u, v] = pairs[a];
  const auto [x, y] = pairs[b];
  pairs[a] = second ? std::pair{u, y} : std::pair{u, x};
  pairs[b] = second ? std::pair{v, x} : std::pair{v, y};
  return pairs;
}

// All perfect matchings of K_N as pair lists (N <= 10 in tests).
inline void brute_matchings(std::vector<int>& free, std::vector<std::pair<int, int>>& cur,
                            std::vector<std::vector<std::pair<int, int>>>& out) {
  if (free.empty()) {
    auto sorted = cur;
    for (auto& p : sorted) {
      if (p.first > p.second) std::swap(p.first, p.second);
    }
    std::sort(sorted.begin(), sorted.end());
    out.push_back(sorted);
    return;
  }
  const int a = free.front();
  for (std::size_t j = 1; j < free.size(); ++j) {
    const int b = free[j];
    std::vector<int> rest;
    for (std::size_t i = 1; i < free.size(); ++i) {
      if (i != j) rest.push_back(free[i]);
    }
    cur.emplace_back(a, b);
    brute_matchings(rest, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<std::pair<int, int>>> all_matchings(int num_vertices) {
  std::vector<int> free(static_cast<std::size_t>(num_vertices));
  for (int i = 0; i < num_vertices; ++i) free[i] = i;
  std::vector<std::pair<int, int>> cur;
  std::vector<std::vector<std::pair<int, int>>> out;
  brute_matchings(free, cur, out);
  return out;
}

// Colouring with arbitrary colours in 1..k (not necessarily balanced).
inline ColouredClique random_colouring(int n, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(1, k);
  const std::size_t edges = clique_edge_count(2LL * n * k);
  std::vector<Colour> colours(edges);
  for (auto& c : colours) c = pick(rng);
  return ColouredClique(n, k, std::move(colours));
}

inline ColouredClique monochromatic(int n, int k) {
  return ColouredClique(n, k, std::vector<Colour>(clique_edge_count(2LL * n * k), 1));
}

// Small reference colouring: 01,02,13 -> 1; 03,12,23 -> 2.
inline ColouredClique k4_instance() { return ColouredClique(1, 2, {1, 1, 2, 2, 1, 2}); }

inline PerfectMatching make_matching(int num_vertices,
                                     const std::vector<std::pair<int, int>>& pairs) {
  std::vector<VertexPair> vp;
  for (const auto& [a, b] : pairs) vp.push_back({a, b});
  return PerfectMatching(num_vertices, std::move(vp));
}

}  // namespace cbpm::testing
