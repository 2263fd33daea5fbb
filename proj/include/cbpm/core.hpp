#pragma once

// Instances, perfect matchings, colour histograms, the f/g scores and exact
// swap deltas.
//
// Conventions: vertices are 0-based, colours are 1-based, and the edges of
// K_N are ordered lexicographically by (u, v) with u < v. Every file format
// and every colour vector uses that order.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cbpm {

using Vertex = std::int32_t;
using Colour = std::int32_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Number of edges of the complete graph on `num_vertices` vertices.
std::size_t clique_edge_count(std::int64_t num_vertices);

/// Position of edge {u, v} (u < v) in lexicographic edge order.
std::size_t edge_index(std::int64_t num_vertices, Vertex u, Vertex v);

/// An edge colouring of K_{2nk} with palette [k].
class ColouredClique {
 public:
  /// Throws InstanceError on non-positive n or k, a wrong number of colours,
  /// or a colour outside 1..k.
  ColouredClique(int n, int k, std::vector<Colour> colours);

  int n() const { return n_; }
  int k() const { return k_; }
  int num_vertices() const { return num_vertices_; }
  /// Number of edges in a perfect matching, nk.
  int matching_size() const { return num_vertices_ / 2; }
  std::size_t num_edges() const { return colours_.size(); }

  Colour colour(Vertex u, Vertex v) const {
    return dense_[static_cast<std::size_t>(u) * num_vertices_ + v];
  }
  /// Row u of the symmetric N x N colour matrix (diagonal entries are 0).
  const Colour* colour_row(Vertex u) const {
    return dense_.data() + static_cast<std::size_t>(u) * num_vertices_;
  }

  std::span<const Colour> colours() const { return colours_; }
  /// Edge count per colour, indexed by colour - 1.
  std::span<const std::int64_t> colour_counts() const { return colour_counts_; }

  /// n(2nk - 1): the per-colour edge count of a balanced colouring.
  std::int64_t balanced_count() const;
  bool balanced() const { return balanced_; }

  bool operator==(const ColouredClique& other) const {
    return n_ == other.n_ && k_ == other.k_ && colours_ == other.colours_;
  }

 private:
  int n_;
  int k_;
  int num_vertices_;
  std::vector<Colour> colours_;
  std::vector<Colour> dense_;
  std::vector<std::int64_t> colour_counts_;
  bool balanced_;
};

struct VertexPair {
  Vertex u;
  Vertex v;

  auto operator<=>(const VertexPair&) const = default;
};

enum class Reconnection : std::uint8_t {
  kCross1,  // {u,v},{x,y} -> {u,x},{v,y}
  kCross2,  // {u,v},{x,y} -> {u,y},{v,x}
};

/// A perfect matching of K_N, stored as an indexed list of pairs (u < v)
/// plus the partner involution.
class PerfectMatching {
 public:
  /// Normalizes each pair to u < v. Throws ValidationError if a pair is a
  /// loop, a vertex is out of range, repeated, or left uncovered.
  PerfectMatching(int num_vertices, std::vector<VertexPair> pairs);

  int num_vertices() const { return static_cast<int>(partner_.size()); }
  std::size_t size() const { return pairs_.size(); }
  std::span<const VertexPair> pairs() const { return pairs_; }
  const VertexPair& pair(std::size_t i) const { return pairs_[i]; }
  Vertex partner(Vertex x) const { return partner_[x]; }

  /// Replaces pairs a and b by the given reconnection, in place. The first
  /// new pair takes slot a, the second slot b.
  void reconnect(std::size_t a, std::size_t b, Reconnection r);

  /// Same edge set, pairs sorted.
  PerfectMatching canonical() const;
  bool same_edges(const PerfectMatching& other) const;

  bool operator==(const PerfectMatching& other) const {
    return pairs_ == other.pairs_;
  }

 private:
  std::vector<VertexPair> pairs_;
  std::vector<Vertex> partner_;
};

/// The two pairs introduced by reconnecting a = {u,v} and b = {x,y}, each
/// normalized to u < v.
std::pair<VertexPair, VertexPair> reconnected_pairs(const VertexPair& a,
                                                    const VertexPair& b,
                                                    Reconnection r);

/// m_c(M) for each colour c.
class ColourHistogram {
 public:
  explicit ColourHistogram(int k) : counts_(static_cast<std::size_t>(k), 0) {}
  explicit ColourHistogram(std::vector<std::int64_t> counts)
      : counts_(std::move(counts)) {}

  int k() const { return static_cast<int>(counts_.size()); }
  std::int64_t count(Colour c) const { return counts_[c - 1]; }
  std::int64_t& count(Colour c) { return counts_[c - 1]; }
  /// Indexed by colour - 1.
  std::span<const std::int64_t> counts() const { return counts_; }
  std::int64_t total() const;

  bool operator==(const ColourHistogram&) const = default;

 private:
  std::vector<std::int64_t> counts_;
};

struct Scores {
  std::int64_t f;
  std::int64_t g;
};

/// Throws InstanceError if M is not a matching on the clique's vertex set.
ColourHistogram compute_histogram(const ColouredClique& clique,
                                  const PerfectMatching& matching);

/// Σ |m_i - n|.
std::int64_t f_score(const ColourHistogram& hist, int n);
/// Σ m_i².
std::int64_t g_score(const ColourHistogram& hist);
Scores scores(const ColourHistogram& hist, int n);

/// Number of matching edges sharing the colour of edge {u, v}.
std::int64_t weight(const ColouredClique& clique, const ColourHistogram& hist,
                    Vertex u, Vertex v);
std::int64_t weight(const ColouredClique& clique,
                    const PerfectMatching& matching, Vertex u, Vertex v);

struct SwapMove {
  std::size_t edge_a = 0;
  std::size_t edge_b = 0;
  Reconnection reconnection = Reconnection::kCross1;
  std::int64_t delta_g = 0;

  bool operator==(const SwapMove&) const = default;
};

/// g(M') - g(M) for the move, from the four colours involved. M is not
/// modified. Throws InvalidMoveError when a == b or an index is out of range.
std::int64_t swap_delta_g(const ColouredClique& clique,
                          const PerfectMatching& matching,
                          const ColourHistogram& hist, std::size_t edge_a,
                          std::size_t edge_b, Reconnection r);
std::int64_t swap_delta_g(const ColouredClique& clique,
                          const PerfectMatching& matching,
                          const SwapMove& move);

/// Builds a move with its exact delta filled in.
SwapMove make_swap(const ColouredClique& clique,
                   const PerfectMatching& matching,
                   const ColourHistogram& hist, std::size_t edge_a,
                   std::size_t edge_b, Reconnection r);

PerfectMatching apply_swap(const PerfectMatching& matching,
                           const SwapMove& move);

/// (w̄_M(M), w̄_M(E \ M)). Throws InstanceError when nk < 2.
std::pair<Rational, Rational> average_weights(const ColouredClique& clique,
                                              const PerfectMatching& matching);

/// (2nk-1)(g - n²k) <= 4nk(nk-1).
bool g_bound_holds(int n, int k, std::int64_t g);
/// f² <= 2nk², i.e. f <= k·sqrt(2n).
bool warmup_f_bound_holds(int n, int k, std::int64_t f);
/// f <= 4^{k²}.
bool uniform_f_bound_holds(int k, std::int64_t f);

/// A matching together with its cached histogram and g, kept in sync under
/// swaps. With verification on, every update is checked against a full
/// recomputation.
class ScoredMatching {
 public:
  ScoredMatching(const ColouredClique& clique, PerfectMatching matching);

  const ColouredClique& clique() const { return *clique_; }
  const PerfectMatching& matching() const { return matching_; }
  const ColourHistogram& histogram() const { return hist_; }
  std::int64_t g() const { return g_; }
  std::int64_t f() const { return f_score(hist_, clique_->n()); }

  std::int64_t delta(std::size_t a, std::size_t b, Reconnection r) const {
    return swap_delta_g(*clique_, matching_, hist_, a, b, r);
  }

  void apply(const SwapMove& move);

  void set_verify(bool on) { verify_ = on; }
  bool verify() const { return verify_; }

 private:
  const ColouredClique* clique_;
  PerfectMatching matching_;
  ColourHistogram hist_;
  std::int64_t g_;
#ifdef NDEBUG
  bool verify_ = false;
#else
  bool verify_ = true;
#endif
};

}  // namespace cbpm
