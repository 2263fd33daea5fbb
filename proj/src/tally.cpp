#include <string>

#include "cbpm/audit.hpp"

namespace cbpm::audit {

namespace {

std::string str(std::int64_t v) { return std::to_string(v); }
std::string str(const Rational& v) { return v.str(); }

CheckResult check(std::string name, bool pass, std::string lhs, std::string rhs,
                  Severity severity = Severity::kIdentity) {
  return CheckResult{std::move(name), pass, std::move(lhs), std::move(rhs), severity};
}

template <class T>
CheckResult equality(std::string name, const T& lhs, const T& rhs,
                     Severity severity = Severity::kIdentity) {
  return check(std::move(name), lhs == rhs, str(lhs), str(rhs), severity);
}

std::string indexed(std::string_view base, int i) {
  return std::string(base) + "_" + std::to_string(i + 1);
}

}  // namespace

SwapTally compute_tallies(const ColouredClique& clique,
                          const PerfectMatching& matching,
                          const ColourGrouping& grouping) {
  SwapTally out;
  const int t = grouping.t();
  out.t = t;
  const std::size_t cells = static_cast<std::size_t>(t) * t;
  out.y.assign(cells, 0);
  out.p.assign(cells, 0);
  out.z.assign(cells, 0);
  out.group_edges.assign(static_cast<std::size_t>(t), 0);
  out.xi.assign(static_cast<std::size_t>(t), 0);

  auto alpha = [&](Vertex a, Vertex b) { return grouping.group_of[clique.colour(a, b)]; };
  auto cell = [t](int i, int j) { return static_cast<std::size_t>(i) * t + j; };

  const auto pairs = matching.pairs();
  for (const auto& e : pairs) ++out.group_edges[alpha(e.u, e.v)];
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
      const Vertex u = pairs[a].u, v = pairs[a].v;
      const Vertex x = pairs[b].u, y = pairs[b].v;
      // {u,x} <-> {v,y} and {u,y} <-> {v,x}, each in both orders.
      const int ux = alpha(u, x), vy = alpha(v, y);
      const int uy = alpha(u, y), vx = alpha(v, x);
      ++out.y[cell(ux, vy)];
      ++out.y[cell(vy, ux)];
      ++out.y[cell(uy, vx)];
      ++out.y[cell(vx, uy)];
    }
  }

  for (int i = 0; i < t; ++i) {
    for (int j = 0; j < t; ++j) {
      const std::int64_t pi = out.group_edges[i];
      const std::int64_t pj = out.group_edges[j];
      out.p[cell(i, j)] = i == j ? 2 * pi * (pi - 1) : 2 * pi * pj;
      out.z[cell(i, j)] = out.y[cell(i, j)] - out.p[cell(i, j)];
      out.xi[i] += out.z[cell(i, j)];
    }
  }
  return out;
}

std::vector<CheckResult> check_identities(const SwapTally& tally,
                                          const ColourGrouping& grouping,
                                          const ColouredClique& clique) {
  std::vector<CheckResult> out;
  const int t = tally.t;
  const std::int64_t n = clique.n();
  const std::int64_t nk = clique.matching_size();
  const std::int64_t pair_count = 4 * (nk * (nk - 1) / 2);

  bool y_sym = true, p_sym = true, z_diff = true;
  std::int64_t y_total = 0, p_total = 0, z_total = 0, xi_total = 0, groups_total = 0;
  bool xi_rows = true;
  for (int i = 0; i < t; ++i) {
    std::int64_t row = 0;
    for (int j = 0; j < t; ++j) {
      y_sym = y_sym && tally.at(tally.y, i, j) == tally.at(tally.y, j, i);
      p_sym = p_sym && tally.at(tally.p, i, j) == tally.at(tally.p, j, i);
      z_diff = z_diff && tally.at(tally.z, i, j) ==
                             tally.at(tally.y, i, j) - tally.at(tally.p, i, j);
      y_total += tally.at(tally.y, i, j);
      p_total += tally.at(tally.p, i, j);
      z_total += tally.at(tally.z, i, j);
      row += tally.at(tally.z, i, j);
    }
    xi_rows = xi_rows && row == tally.xi[i];
    xi_total += tally.xi[i];
    groups_total += tally.group_edges[i];
  }
  out.push_back(check("y_symmetric", y_sym, "y", "y^T"));
  out.push_back(check("p_symmetric", p_sym, "p", "p^T"));
  out.push_back(check("z_is_y_minus_p", z_diff, "z", "y-p"));
  out.push_back(check("xi_is_z_row_sum", xi_rows, "xi", "row sums of z"));
  out.push_back(equality("group_edges_total", groups_total, nk));
  out.push_back(equality("y_total", y_total, pair_count));
  out.push_back(equality("p_total", p_total, pair_count));
  out.push_back(equality("z_total", z_total, std::int64_t{0}));
  out.push_back(equality("xi_total", xi_total, std::int64_t{0}));

  std::vector<Rational> xi_ratio(static_cast<std::size_t>(t));
  std::vector<Rational> p_ratio(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) {
    const std::int64_t pi = tally.group_edges[i];
    const std::int64_t size = grouping.size(i);
    std::int64_t y_row = 0, p_row = 0;
    for (int j = 0; j < t; ++j) {
      y_row += tally.at(tally.y, i, j);
      p_row += tally.at(tally.p, i, j);
    }
    out.push_back(equality(indexed("p_row_sum", i), p_row, 2 * pi * (nk - 1)));
    xi_ratio[i] = Rational(tally.xi[i], size);
    p_ratio[i] = Rational(pi, size);
    if (clique.balanced()) {
      out.push_back(equality(indexed("y_row_sum", i), y_row,
                             size * n * (2 * nk - 1) - pi));
      // Expanding the two partial sums gives p_i(2nk-1); the printed closed
      // form carries (2nk-3), kept as a report-only line.
      const Rational closed = Rational(n * (2 * nk - 1)) - Rational(pi * (2 * nk - 1), size);
      out.push_back(equality(indexed("xi_per_group", i), xi_ratio[i], closed));
      const Rational printed = Rational(n * (2 * nk - 1)) - Rational(pi * (2 * nk - 3), size);
      out.push_back(equality(indexed("xi_per_group_printed", i), xi_ratio[i], printed,
                             Severity::kReport));
    }
  }
  if (clique.balanced()) {
    bool xi_increasing = true, p_decreasing = true;
    for (int i = 0; i + 1 < t; ++i) {
      xi_increasing = xi_increasing && xi_ratio[i] < xi_ratio[i + 1];
      p_decreasing = p_decreasing && p_ratio[i] > p_ratio[i + 1];
    }
    out.push_back(check("xi_increasing_iff_p_decreasing", xi_increasing == p_decreasing,
                        xi_increasing ? "xi/|A| increasing" : "xi/|A| not increasing",
                        p_decreasing ? "p/|A| decreasing" : "p/|A| not decreasing"));
  }
  return out;
}

PrefixSums prefix_z(const SwapTally& tally,
                    const PairClassification& classification) {
  PrefixSums out;
  std::int64_t running = 0;
  for (const auto& cls : classification.classes) {
    for (int p : cls) running += tally.z[static_cast<std::size_t>(p)];
    out.sums.push_back(running);
    out.all_nonnegative = out.all_nonnegative && running >= 0;
  }
  out.last_is_zero = out.sums.empty() || out.sums.back() == 0;
  return out;
}

std::int64_t count_down_arrows(const ColouredClique& clique,
                               const PerfectMatching& matching,
                               const ColourGrouping& grouping,
                               const PairClassification& classification) {
  auto alpha = [&](Vertex a, Vertex b) { return grouping.group_of[clique.colour(a, b)]; };
  auto class_of = [&](int i, int j) { return classification.class_of[classification.pair(i, j)]; };
  std::int64_t count = 0;
  const auto pairs = matching.pairs();
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
      const int from = class_of(alpha(pairs[a].u, pairs[a].v), alpha(pairs[b].u, pairs[b].v));
      for (Reconnection r : {Reconnection::kCross1, Reconnection::kCross2}) {
        const auto [e1, e2] = reconnected_pairs(pairs[a], pairs[b], r);
        if (from < class_of(alpha(e1.u, e1.v), alpha(e2.u, e2.v))) ++count;
      }
    }
  }
  return count;
}

std::vector<CheckResult> check_prefix_z(const SwapTally& tally,
                                        const PairClassification& classification,
                                        const ColouredClique& clique,
                                        const PerfectMatching& matching,
                                        const ColourGrouping& grouping,
                                        bool local_minimum) {
  // At a swap-local minimum with totally ordered classes, any swap leaving a
  // class prefix would be contradicting, so these become hard checks.
  const Severity severity = local_minimum && classification.totally_ordered
                                ? Severity::kIdentity
                                : Severity::kReport;
  std::vector<CheckResult> out;
  const PrefixSums prefix = prefix_z(tally, classification);
  for (std::size_t h = 0; h < prefix.sums.size(); ++h) {
    out.push_back(check("prefix_z_" + std::to_string(h + 1), prefix.sums[h] >= 0,
                        str(prefix.sums[h]), ">=0", severity));
  }
  out.push_back(equality("prefix_z_last_zero",
                         prefix.sums.empty() ? std::int64_t{0} : prefix.sums.back(),
                         std::int64_t{0}));
  const std::int64_t arrows = count_down_arrows(clique, matching, grouping, classification);
  out.push_back(equality("no_down_arrows", arrows, std::int64_t{0}, severity));
  return out;
}

}  // namespace cbpm::audit
