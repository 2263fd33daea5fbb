#include "cbpm/local_search.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cbpm {

std::string_view pivot_name(PivotKind kind) {
  switch (kind) {
    case PivotKind::kFirst:
      return "first";
    case PivotKind::kBest:
      return "best";
    case PivotKind::kRandom:
      return "random";
  }
  return "unknown";
}

std::optional<PivotKind> parse_pivot(std::string_view text) {
  for (PivotKind kind : {PivotKind::kFirst, PivotKind::kBest, PivotKind::kRandom}) {
    if (pivot_name(kind) == text) return kind;
  }
  return std::nullopt;
}

PerfectMatching random_matching(int num_vertices, std::uint64_t seed) {
  std::vector<Vertex> order(static_cast<std::size_t>(num_vertices));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<VertexPair> pairs;
  pairs.reserve(order.size() / 2);
  for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
    pairs.push_back({order[i], order[i + 1]});
  }
  return PerfectMatching(num_vertices, std::move(pairs));
}

PerfectMatching random_matching(const ColouredClique& clique,
                                std::uint64_t seed) {
  return random_matching(clique.num_vertices(), seed);
}

SwapScanner::SwapScanner(const ScoredMatching& state, kernels::Isa isa)
    : state_(&state), isa_(isa) {
  const std::size_t size = state.matching().size();
  first_.resize(size);
  second_.resize(size);
  pair_colour_.resize(size);
  buf1_.resize(size);
  buf2_.resize(size);
  for (std::size_t i = 0; i < size; ++i) load_pair(i);
  hist_.assign(static_cast<std::size_t>(state.clique().k()) + 1, 0);
  for (Colour c = 1; c <= state.clique().k(); ++c) {
    hist_[c] = static_cast<std::int32_t>(state.histogram().count(c));
  }
}

void SwapScanner::load_pair(std::size_t i) {
  const VertexPair& p = state_->matching().pair(i);
  first_[i] = p.u;
  second_[i] = p.v;
  pair_colour_[i] = state_->clique().colour(p.u, p.v);
}

void SwapScanner::sync(const SwapMove& move) {
  for (std::size_t i : {move.edge_a, move.edge_b}) {
    --hist_[pair_colour_[i]];
    load_pair(i);
  }
  for (std::size_t i : {move.edge_a, move.edge_b}) ++hist_[pair_colour_[i]];
}

kernels::RowQuery SwapScanner::query(std::size_t a) const {
  const ColouredClique& clique = state_->clique();
  return kernels::RowQuery{clique.colour_row(first_[a]),
                           clique.colour_row(second_[a]),
                           pair_colour_[a],
                           hist_.data(),
                           first_.data(),
                           second_.data(),
                           pair_colour_.data()};
}

void SwapScanner::row(std::size_t a, std::vector<std::int32_t>& cross1,
                      std::vector<std::int32_t>& cross2) {
  const std::size_t size = first_.size();
  const std::size_t count = a + 1 < size ? size - a - 1 : 0;
  cross1.resize(count);
  cross2.resize(count);
  if (count > 0) {
    kernels::swap_delta_row(isa_, query(a), a + 1, size, cross1.data(),
                            cross2.data());
  }
}

std::optional<SwapMove> SwapScanner::first_improving(std::size_t start_row) {
  const std::size_t size = first_.size();
  if (size < 2) return std::nullopt;
  for (std::size_t step = 0; step < size; ++step) {
    const std::size_t a = (start_row + step) % size;
    if (a + 1 >= size) continue;
    const std::size_t count = size - a - 1;
    kernels::swap_delta_row(isa_, query(a), a + 1, size, buf1_.data(),
                            buf2_.data());
    for (std::size_t i = 0; i < count; ++i) {
      if (buf1_[i] < 0) return SwapMove{a, a + 1 + i, Reconnection::kCross1, buf1_[i]};
      if (buf2_[i] < 0) return SwapMove{a, a + 1 + i, Reconnection::kCross2, buf2_[i]};
    }
  }
  return std::nullopt;
}

std::optional<SwapMove> SwapScanner::best_improving() {
  const std::size_t size = first_.size();
  std::optional<SwapMove> best;
  for (std::size_t a = 0; a + 1 < size; ++a) {
    const std::size_t count = size - a - 1;
    kernels::swap_delta_row(isa_, query(a), a + 1, size, buf1_.data(),
                            buf2_.data());
    for (std::size_t i = 0; i < count; ++i) {
      if (buf1_[i] < 0 && (!best || buf1_[i] < best->delta_g)) {
        best = SwapMove{a, a + 1 + i, Reconnection::kCross1, buf1_[i]};
      }
      if (buf2_[i] < 0 && (!best || buf2_[i] < best->delta_g)) {
        best = SwapMove{a, a + 1 + i, Reconnection::kCross2, buf2_[i]};
      }
    }
  }
  return best;
}

std::vector<SwapMove> SwapScanner::all_improving() {
  const std::size_t size = first_.size();
  std::vector<SwapMove> out;
  for (std::size_t a = 0; a + 1 < size; ++a) {
    const std::size_t count = size - a - 1;
    kernels::swap_delta_row(isa_, query(a), a + 1, size, buf1_.data(),
                            buf2_.data());
    for (std::size_t i = 0; i < count; ++i) {
      if (buf1_[i] < 0) out.push_back({a, a + 1 + i, Reconnection::kCross1, buf1_[i]});
      if (buf2_[i] < 0) out.push_back({a, a + 1 + i, Reconnection::kCross2, buf2_[i]});
    }
  }
  return out;
}

namespace {

// Picks one move under the pivot rule. rotate_from is the first row to scan
// for kFirst; rng drives kRandom.
std::optional<SwapMove> pick(SwapScanner& scanner, const PivotRule& rule,
                             std::size_t rotate_from, std::mt19937_64& rng) {
  switch (rule.kind) {
    case PivotKind::kFirst:
      return scanner.first_improving(rotate_from);
    case PivotKind::kBest:
      return scanner.best_improving();
    case PivotKind::kRandom: {
      const auto moves = scanner.all_improving();
      if (moves.empty()) return std::nullopt;
      std::uniform_int_distribution<std::size_t> index(0, moves.size() - 1);
      return moves[index(rng)];
    }
  }
  return std::nullopt;
}

std::optional<SwapMove> sample_improving(const ScoredMatching& state,
                                         std::size_t samples,
                                         std::mt19937_64& rng) {
  const std::size_t size = state.matching().size();
  if (size < 2) return std::nullopt;
  std::uniform_int_distribution<std::size_t> index(0, size - 1);
  std::optional<SwapMove> best;
  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t a = index(rng);
    std::size_t b = index(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    for (Reconnection r : {Reconnection::kCross1, Reconnection::kCross2}) {
      const std::int64_t d = state.delta(a, b, r);
      if (d < 0 && (!best || d < best->delta_g)) best = SwapMove{a, b, r, d};
    }
  }
  return best;
}

}  // namespace

std::optional<SwapMove> find_improving_swap(const ColouredClique& clique,
                                            const PerfectMatching& matching,
                                            const PivotRule& rule) {
  ScoredMatching state(clique, matching);
  SwapScanner scanner(state);
  std::mt19937_64 rng(rule.seed);
  return pick(scanner, rule, 0, rng);
}

DescentResult descend(const ColouredClique& clique, PerfectMatching start,
                      const DescentOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  ScoredMatching state(clique, std::move(start));
  state.set_verify(options.verify);
  SwapScanner scanner(state);
  std::mt19937_64 rng(options.rule.seed);

  DescentTrace trace;
  trace.initial_g = state.g();
  std::size_t resume_row = 0;
  while (true) {
    std::optional<SwapMove> move;
    if (options.sample_size > 0) {
      move = sample_improving(state, options.sample_size, rng);
    }
    // The local-minimum verdict always comes from a full pass.
    if (!move) move = pick(scanner, options.rule, resume_row, rng);
    if (!move) break;

    if (options.verify &&
        move->delta_g != swap_delta_g(clique, state.matching(), state.histogram(),
                                      move->edge_a, move->edge_b,
                                      move->reconnection)) {
      throw std::logic_error("kernel delta disagrees with exact delta");
    }
    state.apply(*move);
    scanner.sync(*move);
    resume_row = move->edge_a;
    ++trace.accepted;
    if (options.record_steps) trace.steps.push_back(*move);
  }
  trace.final_g = state.g();
  trace.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - t0);
  return {state.matching(), std::move(trace)};
}

}  // namespace cbpm
