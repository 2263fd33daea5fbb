#include "cbpm/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

#include "cbpm/error.hpp"
#include "cbpm/iogen.hpp"
#include "cbpm/parallel.hpp"

namespace cbpm {

std::uint64_t perfect_matching_count(int num_vertices) {
  std::uint64_t count = 1;
  for (int odd = num_vertices - 1; odd > 1; odd -= 2) count *= odd;
  return count;
}

namespace {

void extend(std::vector<VertexPair>& pairs, std::vector<char>& used,
            int num_vertices,
            const std::function<void(const PerfectMatching&)>& visit) {
  const auto free_it = std::find(used.begin(), used.end(), 0);
  if (free_it == used.end()) {
    visit(PerfectMatching(num_vertices, pairs));
    return;
  }
  const Vertex u = static_cast<Vertex>(free_it - used.begin());
  used[u] = 1;
  for (Vertex v = u + 1; v < num_vertices; ++v) {
    if (used[v]) continue;
    used[v] = 1;
    pairs.push_back({u, v});
    extend(pairs, used, num_vertices, visit);
    pairs.pop_back();
    used[v] = 0;
  }
  used[u] = 0;
}

}  // namespace

void enumerate_matchings(int num_vertices,
                         const std::function<void(const PerfectMatching&)>& visit,
                         int cap) {
  if (num_vertices < 0 || num_vertices % 2 != 0) {
    throw std::invalid_argument("perfect matchings need an even vertex count");
  }
  if (num_vertices > cap) {
    throw CapExceededError("refusing to enumerate matchings of K_" +
                           std::to_string(num_vertices) + ": limit is " +
                           std::to_string(cap) + " vertices (" +
                           std::to_string(perfect_matching_count(cap)) +
                           " matchings); raise the cap explicitly");
  }
  std::vector<VertexPair> pairs;
  pairs.reserve(static_cast<std::size_t>(num_vertices / 2));
  std::vector<char> used(static_cast<std::size_t>(num_vertices), 0);
  extend(pairs, used, num_vertices, visit);
}

bool is_local_minimum(const ColouredClique& clique,
                      const PerfectMatching& matching) {
  const ColourHistogram hist = compute_histogram(clique, matching);
  for (std::size_t a = 0; a < matching.size(); ++a) {
    for (std::size_t b = a + 1; b < matching.size(); ++b) {
      for (Reconnection r : {Reconnection::kCross1, Reconnection::kCross2}) {
        if (swap_delta_g(clique, matching, hist, a, b, r) < 0) return false;
      }
    }
  }
  return true;
}

bool OracleResult::contains_local_minimum(const PerfectMatching& matching) const {
  return std::any_of(local_minima.begin(), local_minima.end(),
                     [&](const LocalMinimum& lm) { return lm.matching.same_edges(matching); });
}

std::optional<std::int64_t> OracleResult::max_local_minimum_f() const {
  if (local_minima.empty()) return std::nullopt;
  std::int64_t best = local_minima.front().f;
  for (const auto& lm : local_minima) best = std::max(best, lm.f);
  return best;
}

OracleResult exact_minima(const ColouredClique& clique,
                          const OracleOptions& options) {
  OracleResult out;
  out.min_f = std::numeric_limits<std::int64_t>::max();
  out.min_g = std::numeric_limits<std::int64_t>::max();
  enumerate_matchings(
      clique.num_vertices(),
      [&](const PerfectMatching& m) {
        ++out.matching_count;
        const ColourHistogram hist = compute_histogram(clique, m);
        const Scores s = scores(hist, clique.n());
        if (s.f < out.min_f) {
          out.min_f = s.f;
          out.argmin_f.clear();
        }
        if (s.f == out.min_f && out.argmin_f.size() < options.argmin_cap) {
          out.argmin_f.push_back(m.canonical());
        }
        if (s.g < out.min_g) {
          out.min_g = s.g;
          out.argmin_g.clear();
        }
        if (s.g == out.min_g && out.argmin_g.size() < options.argmin_cap) {
          out.argmin_g.push_back(m.canonical());
        }
        if (options.collect_local_minima && is_local_minimum(clique, m)) {
          ++out.local_minimum_count;
          out.local_minima.push_back({m.canonical(), s.f, s.g});
        }
      },
      options.cap);
  return out;
}

namespace {

constexpr int kK6Vertices = 6;
constexpr int kK6Edges = 15;
using EdgeMask = std::uint16_t;

// Every 5-subset of {0..n-1} in lexicographic order, as index lists.
std::vector<std::array<int, 5>> five_subsets(int n) {
  std::vector<std::array<int, 5>> out;
  std::array<int, 5> s{0, 1, 2, 3, 4};
  while (true) {
    out.push_back(s);
    int i = 4;
    while (i >= 0 && s[i] == n - 5 + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < 5; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

std::array<EdgeMask, 15> k6_matching_masks() {
  std::array<EdgeMask, 15> masks{};
  std::size_t i = 0;
  enumerate_matchings(kK6Vertices, [&](const PerfectMatching& m) {
    EdgeMask mask = 0;
    for (const auto& p : m.pairs()) mask |= EdgeMask(1u << edge_index(kK6Vertices, p.u, p.v));
    masks[i++] = mask;
  });
  return masks;
}

std::int64_t min_f_k6(const std::array<EdgeMask, 15>& matchings, EdgeMask colour1,
                      EdgeMask colour2) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (EdgeMask mm : matchings) {
    const int m1 = std::popcount(static_cast<unsigned>(colour1 & mm));
    const int m2 = std::popcount(static_cast<unsigned>(colour2 & mm));
    const int m3 = 3 - m1 - m2;
    const std::int64_t f = std::abs(m1 - 1) + std::abs(m2 - 1) + std::abs(m3 - 1);
    if (f < best) {
      best = f;
      if (best == 0) break;
    }
  }
  return best;
}

std::vector<Colour> colours_from_masks(EdgeMask colour1, EdgeMask colour2) {
  std::vector<Colour> colours(kK6Edges, 3);
  for (int e = 0; e < kK6Edges; ++e) {
    if (colour1 & (1u << e)) colours[e] = 1;
    if (colour2 & (1u << e)) colours[e] = 2;
  }
  return colours;
}

struct ChunkResult {
  std::uint64_t colourings = 0;
  std::int64_t max_min_f = -1;
  std::uint64_t attaining = 0;
  std::uint64_t positive = 0;
  std::uint64_t witness_index = 0;
  EdgeMask witness1 = 0;
  EdgeMask witness2 = 0;
};

void observe(ChunkResult& r, std::uint64_t index, std::int64_t min_f,
             EdgeMask c1, EdgeMask c2) {
  ++r.colourings;
  if (min_f > 0) ++r.positive;
  if (min_f > r.max_min_f) {
    r.max_min_f = min_f;
    r.attaining = 0;
    r.witness_index = index;
    r.witness1 = c1;
    r.witness2 = c2;
  }
  if (min_f == r.max_min_f) ++r.attaining;
}

// Chunks are merged in index order, so the witness is the first attaining
// colouring in enumeration order regardless of the worker count.
void merge(ChunkResult& into, const ChunkResult& from) {
  into.colourings += from.colourings;
  into.positive += from.positive;
  if (from.max_min_f > into.max_min_f) {
    into.max_min_f = from.max_min_f;
    into.attaining = from.attaining;
    into.witness_index = from.witness_index;
    into.witness1 = from.witness1;
    into.witness2 = from.witness2;
  } else if (from.max_min_f == into.max_min_f) {
    into.attaining += from.attaining;
  }
}

}  // namespace

K6Report k6_search(const K6SearchOptions& options) {
  const auto matchings = k6_matching_masks();
  std::vector<ChunkResult> chunks;

  if (options.exhaustive) {
    const auto outer = five_subsets(kK6Edges);  // 3003 choices for colour 1
    const auto inner = five_subsets(10);        // 252 choices for colour 2
    chunks.resize(outer.size());
    parallel_for(outer.size(), options.workers, [&](std::size_t i) {
      EdgeMask c1 = 0;
      for (int e : outer[i]) c1 |= EdgeMask(1u << e);
      std::array<int, 10> rest{};
      for (int e = 0, j = 0; e < kK6Edges; ++e) {
        if (!(c1 & (1u << e))) rest[j++] = e;
      }
      ChunkResult& r = chunks[i];
      for (std::size_t j = 0; j < inner.size(); ++j) {
        EdgeMask c2 = 0;
        for (int pos : inner[j]) c2 |= EdgeMask(1u << rest[pos]);
        observe(r, i * inner.size() + j, min_f_k6(matchings, c1, c2), c1, c2);
      }
    });
  } else {
    chunks.resize(options.samples);
    parallel_for(options.samples, options.workers, [&](std::size_t i) {
      const ColouredClique c = random_balanced(1, 3, derive_seed(options.seed, i));
      EdgeMask c1 = 0;
      EdgeMask c2 = 0;
      for (int e = 0; e < kK6Edges; ++e) {
        if (c.colours()[e] == 1) c1 |= EdgeMask(1u << e);
        if (c.colours()[e] == 2) c2 |= EdgeMask(1u << e);
      }
      observe(chunks[i], i, min_f_k6(matchings, c1, c2), c1, c2);
    });
  }

  ChunkResult total;
  for (const auto& c : chunks) merge(total, c);

  K6Report report;
  report.colourings = total.colourings;
  report.max_min_f = std::max<std::int64_t>(total.max_min_f, 0);
  report.attaining_max = total.attaining;
  report.positive_min_f = total.positive;
  if (total.colourings > 0) {
    report.witness = ColouredClique(1, 3, colours_from_masks(total.witness1, total.witness2));
    report.witness_index = total.witness_index;
  }
  return report;
}

}  // namespace cbpm
