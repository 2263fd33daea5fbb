#include "cbpm/core.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "cbpm/checked.hpp"
#include "cbpm/error.hpp"

namespace cbpm {

namespace {

// Dense colour matrix is N² entries; beyond this it stops being desk scale.
constexpr std::int64_t kMaxVertices = 16384;

VertexPair normalized(Vertex a, Vertex b) {
  return a < b ? VertexPair{a, b} : VertexPair{b, a};
}

}  // namespace

std::size_t clique_edge_count(std::int64_t num_vertices) {
  return static_cast<std::size_t>(num_vertices * (num_vertices - 1) / 2);
}

std::size_t edge_index(std::int64_t num_vertices, Vertex u, Vertex v) {
  // Edges starting at vertices < u come first: Σ_{w<u} (N-1-w).
  const std::int64_t before = u * (2 * num_vertices - u - 1) / 2;
  return static_cast<std::size_t>(before + (v - u - 1));
}

ColouredClique::ColouredClique(int n, int k, std::vector<Colour> colours)
    : n_(n), k_(k), colours_(std::move(colours)) {
  if (n < 1 || k < 1) {
    throw InstanceError("n and k must be positive (got n=" + std::to_string(n) +
                        ", k=" + std::to_string(k) + ")");
  }
  const std::int64_t nv = checked_mul(2, checked_mul(n, k));
  if (nv > kMaxVertices) {
    throw InstanceError("2nk=" + std::to_string(nv) + " exceeds the supported " +
                        std::to_string(kMaxVertices) + " vertices");
  }
  num_vertices_ = static_cast<int>(nv);
  const std::size_t expected = clique_edge_count(nv);
  if (colours_.size() != expected) {
    throw InstanceError("expected " + std::to_string(expected) +
                        " edge colours for K_" + std::to_string(nv) + ", got " +
                        std::to_string(colours_.size()));
  }

  colour_counts_.assign(static_cast<std::size_t>(k), 0);
  dense_.assign(static_cast<std::size_t>(nv) * nv, 0);
  std::size_t e = 0;
  for (Vertex u = 0; u < num_vertices_; ++u) {
    for (Vertex v = u + 1; v < num_vertices_; ++v, ++e) {
      const Colour c = colours_[e];
      if (c < 1 || c > k) {
        throw InstanceError("edge " + std::to_string(u) + "-" +
                            std::to_string(v) + " has colour " +
                            std::to_string(c) + " outside 1.." +
                            std::to_string(k));
      }
      dense_[static_cast<std::size_t>(u) * nv + v] = c;
      dense_[static_cast<std::size_t>(v) * nv + u] = c;
      ++colour_counts_[c - 1];
    }
  }
  const std::int64_t target = balanced_count();
  balanced_ = std::all_of(colour_counts_.begin(), colour_counts_.end(),
                          [target](std::int64_t c) { return c == target; });
}

std::int64_t ColouredClique::balanced_count() const {
  return static_cast<std::int64_t>(n_) * (num_vertices_ - 1);
}

PerfectMatching::PerfectMatching(int num_vertices,
                                 std::vector<VertexPair> pairs)
    : pairs_(std::move(pairs)) {
  if (num_vertices < 0 || num_vertices % 2 != 0) {
    throw ValidationError("a perfect matching needs an even vertex count, got " +
                          std::to_string(num_vertices));
  }
  partner_.assign(static_cast<std::size_t>(num_vertices), -1);
  for (auto& p : pairs_) {
    if (p.u == p.v) {
      throw ValidationError("pair " + std::to_string(p.u) + " " +
                            std::to_string(p.v) + " is a loop");
    }
    p = normalized(p.u, p.v);
    if (p.u < 0 || p.v >= num_vertices) {
      throw ValidationError("pair " + std::to_string(p.u) + " " +
                            std::to_string(p.v) + " leaves vertex range 0.." +
                            std::to_string(num_vertices - 1));
    }
    for (Vertex x : {p.u, p.v}) {
      if (partner_[x] != -1) {
        throw ValidationError("vertex " + std::to_string(x) +
                              " is matched more than once");
      }
    }
    partner_[p.u] = p.v;
    partner_[p.v] = p.u;
  }
  const auto uncovered = std::find(partner_.begin(), partner_.end(), -1);
  if (uncovered != partner_.end()) {
    throw ValidationError("vertex " +
                          std::to_string(uncovered - partner_.begin()) +
                          " is not covered (" +
                          std::to_string(2 * pairs_.size()) + " of " +
                          std::to_string(num_vertices) + " vertices matched)");
  }
}

std::pair<VertexPair, VertexPair> reconnected_pairs(const VertexPair& a,
                                                    const VertexPair& b,
                                                    Reconnection r) {
  if (r == Reconnection::kCross1) {
    return {normalized(a.u, b.u), normalized(a.v, b.v)};
  }
  return {normalized(a.u, b.v), normalized(a.v, b.u)};
}

void PerfectMatching::reconnect(std::size_t a, std::size_t b, Reconnection r) {
  auto [first, second] = reconnected_pairs(pairs_[a], pairs_[b], r);
  pairs_[a] = first;
  pairs_[b] = second;
  partner_[first.u] = first.v;
  partner_[first.v] = first.u;
  partner_[second.u] = second.v;
  partner_[second.v] = second.u;
}

PerfectMatching PerfectMatching::canonical() const {
  PerfectMatching out = *this;
  std::sort(out.pairs_.begin(), out.pairs_.end());
  return out;
}

bool PerfectMatching::same_edges(const PerfectMatching& other) const {
  return partner_ == other.partner_;
}

std::int64_t ColourHistogram::total() const {
  std::int64_t sum = 0;
  for (auto c : counts_) sum = checked_add(sum, c);
  return sum;
}

ColourHistogram compute_histogram(const ColouredClique& clique,
                                  const PerfectMatching& matching) {
  if (matching.num_vertices() != clique.num_vertices()) {
    throw InstanceError("matching covers " +
                        std::to_string(matching.num_vertices()) +
                        " vertices but the clique has " +
                        std::to_string(clique.num_vertices()));
  }
  ColourHistogram hist(clique.k());
  for (const auto& p : matching.pairs()) ++hist.count(clique.colour(p.u, p.v));
  return hist;
}

std::int64_t f_score(const ColourHistogram& hist, int n) {
  std::int64_t f = 0;
  for (auto m : hist.counts()) f = checked_add(f, std::abs(m - n));
  return f;
}

std::int64_t g_score(const ColourHistogram& hist) {
  std::int64_t g = 0;
  for (auto m : hist.counts()) g = checked_add(g, checked_mul(m, m));
  return g;
}

Scores scores(const ColourHistogram& hist, int n) {
  return {f_score(hist, n), g_score(hist)};
}

std::int64_t weight(const ColouredClique& clique, const ColourHistogram& hist,
                    Vertex u, Vertex v) {
  return hist.count(clique.colour(u, v));
}

std::int64_t weight(const ColouredClique& clique,
                    const PerfectMatching& matching, Vertex u, Vertex v) {
  return weight(clique, compute_histogram(clique, matching), u, v);
}

std::int64_t swap_delta_g(const ColouredClique& clique,
                          const PerfectMatching& matching,
                          const ColourHistogram& hist, std::size_t edge_a,
                          std::size_t edge_b, Reconnection r) {
  if (edge_a == edge_b) {
    throw InvalidMoveError("swap needs two distinct matching edges (both are " +
                           std::to_string(edge_a) + ")");
  }
  if (edge_a >= matching.size() || edge_b >= matching.size()) {
    throw InvalidMoveError("swap edge index out of range");
  }
  const VertexPair& a = matching.pair(edge_a);
  const VertexPair& b = matching.pair(edge_b);
  const auto [p, q] = reconnected_pairs(a, b, r);

  // Touch at most four histogram entries: remove two colours, add two, and
  // compare Σ m² over the touched entries only.
  const std::array<Colour, 4> touched = {
      clique.colour(a.u, a.v), clique.colour(b.u, b.v),
      clique.colour(p.u, p.v), clique.colour(q.u, q.v)};
  std::array<Colour, 4> keys{};
  std::array<std::int64_t, 4> counts{};
  std::size_t used = 0;
  auto slot = [&](Colour c) -> std::int64_t& {
    for (std::size_t i = 0; i < used; ++i) {
      if (keys[i] == c) return counts[i];
    }
    keys[used] = c;
    counts[used] = hist.count(c);
    return counts[used++];
  };
  for (Colour c : touched) slot(c);
  std::int64_t before = 0;
  for (std::size_t i = 0; i < used; ++i) before += counts[i] * counts[i];
  --slot(touched[0]);
  --slot(touched[1]);
  ++slot(touched[2]);
  ++slot(touched[3]);
  std::int64_t after = 0;
  for (std::size_t i = 0; i < used; ++i) after += counts[i] * counts[i];
  return after - before;
}

std::int64_t swap_delta_g(const ColouredClique& clique,
                          const PerfectMatching& matching,
                          const SwapMove& move) {
  return swap_delta_g(clique, matching, compute_histogram(clique, matching),
                      move.edge_a, move.edge_b, move.reconnection);
}

SwapMove make_swap(const ColouredClique& clique,
                   const PerfectMatching& matching,
                   const ColourHistogram& hist, std::size_t edge_a,
                   std::size_t edge_b, Reconnection r) {
  return SwapMove{edge_a, edge_b, r,
                  swap_delta_g(clique, matching, hist, edge_a, edge_b, r)};
}

PerfectMatching apply_swap(const PerfectMatching& matching,
                           const SwapMove& move) {
  if (move.edge_a == move.edge_b || move.edge_a >= matching.size() ||
      move.edge_b >= matching.size()) {
    throw InvalidMoveError("invalid swap: edges " +
                           std::to_string(move.edge_a) + " and " +
                           std::to_string(move.edge_b));
  }
  PerfectMatching out = matching;
  out.reconnect(move.edge_a, move.edge_b, move.reconnection);
  return out;
}

std::pair<Rational, Rational> average_weights(const ColouredClique& clique,
                                              const PerfectMatching& matching) {
  if (clique.matching_size() < 2) {
    throw InstanceError("average weights need nk >= 2 (E \\ M is empty)");
  }
  const ColourHistogram hist = compute_histogram(clique, matching);
  BigInt in_matching = 0;
  BigInt outside = 0;
  const int nv = clique.num_vertices();
  for (Vertex u = 0; u < nv; ++u) {
    for (Vertex v = u + 1; v < nv; ++v) {
      const std::int64_t w = weight(clique, hist, u, v);
      if (matching.partner(u) == v) {
        in_matching += w;
      } else {
        outside += w;
      }
    }
  }
  const std::int64_t m_size = clique.matching_size();
  const std::int64_t rest =
      static_cast<std::int64_t>(clique.num_edges()) - m_size;
  return {Rational(in_matching, m_size), Rational(outside, rest)};
}

bool g_bound_holds(int n, int k, std::int64_t g) {
  const std::int64_t nk = checked_mul(n, k);
  const std::int64_t lhs =
      checked_mul(2 * nk - 1, checked_sub(g, checked_mul(checked_mul(n, n), k)));
  const std::int64_t rhs = checked_mul(4 * nk, nk - 1);
  return lhs <= rhs;
}

bool warmup_f_bound_holds(int n, int k, std::int64_t f) {
  return checked_mul(f, f) <= checked_mul(2 * static_cast<std::int64_t>(n),
                                          checked_mul(k, k));
}

bool uniform_f_bound_holds(int k, std::int64_t f) {
  const BigInt bound = boost::multiprecision::pow(
      BigInt(4), static_cast<unsigned>(static_cast<std::int64_t>(k) * k));
  return BigInt(f) <= bound;
}

ScoredMatching::ScoredMatching(const ColouredClique& clique,
                               PerfectMatching matching)
    : clique_(&clique),
      matching_(std::move(matching)),
      hist_(compute_histogram(clique, matching_)),
      g_(g_score(hist_)) {}

void ScoredMatching::apply(const SwapMove& move) {
  const VertexPair a = matching_.pair(move.edge_a);
  const VertexPair b = matching_.pair(move.edge_b);
  const std::int64_t delta = move.delta_g;
  matching_.reconnect(move.edge_a, move.edge_b, move.reconnection);
  const VertexPair p = matching_.pair(move.edge_a);
  const VertexPair q = matching_.pair(move.edge_b);
  --hist_.count(clique_->colour(a.u, a.v));
  --hist_.count(clique_->colour(b.u, b.v));
  ++hist_.count(clique_->colour(p.u, p.v));
  ++hist_.count(clique_->colour(q.u, q.v));
  g_ += delta;
  if (verify_) {
    const ColourHistogram fresh = compute_histogram(*clique_, matching_);
    if (fresh != hist_ || g_score(fresh) != g_) {
      throw std::logic_error("incremental score drifted from recomputation");
    }
  }
}

}  // namespace cbpm
