#include <algorithm>
#include <numeric>

#include "cbpm/audit.hpp"

namespace cbpm::audit {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t size) : parent_(size) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

PairClassification classify_pairs(const ColourGrouping& grouping,
                                  const ColourHistogram& hist) {
  (void)hist;  // group extrema already carry the multiplicities
  PairClassification out;
  const int t = grouping.t();
  out.t = t;
  const int pairs = t * t;
  out.low.resize(static_cast<std::size_t>(pairs));
  out.high.resize(static_cast<std::size_t>(pairs));
  for (int i = 0; i < t; ++i) {
    for (int j = 0; j < t; ++j) {
      out.low[out.pair(i, j)] = grouping.group_min[i] + grouping.group_min[j];
      out.high[out.pair(i, j)] = grouping.group_max[i] + grouping.group_max[j];
    }
  }

  DisjointSets sets(static_cast<std::size_t>(pairs));
  for (int p = 0; p < pairs; ++p) {
    for (int q = p + 1; q < pairs; ++q) {
      if (!out.dominates(p, q) && !out.dominates(q, p)) {
        out.generators.emplace_back(p, q);
        sets.unite(static_cast<std::size_t>(p), static_cast<std::size_t>(q));
      }
    }
  }

  std::vector<std::vector<int>> classes;
  std::vector<int> root_to_class(static_cast<std::size_t>(pairs), -1);
  for (int p = 0; p < pairs; ++p) {
    const auto root = sets.find(static_cast<std::size_t>(p));
    if (root_to_class[root] < 0) {
      root_to_class[root] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[root_to_class[root]].push_back(p);
  }
  auto top = [&](const std::vector<int>& c) {
    std::int64_t best = out.low[c.front()];
    for (int p : c) best = std::max(best, out.low[p]);
    return best;
  };
  std::stable_sort(classes.begin(), classes.end(),
                   [&](const auto& a, const auto& b) { return top(a) > top(b); });
  out.classes = std::move(classes);
  out.class_of.assign(static_cast<std::size_t>(pairs), -1);
  for (std::size_t q = 0; q < out.classes.size(); ++q) {
    for (int p : out.classes[q]) out.class_of[p] = static_cast<int>(q);
  }

  for (std::size_t q = 0; q < out.classes.size() && out.totally_ordered; ++q) {
    for (std::size_t r = q + 1; r < out.classes.size() && out.totally_ordered; ++r) {
      for (int p : out.classes[q]) {
        for (int p2 : out.classes[r]) {
          if (!out.dominates(p, p2)) out.totally_ordered = false;
        }
      }
    }
  }

  out.class_count_bound_holds = out.s() >= 2 * t - 1;
  for (int x = 0; x < t; ++x) {
    for (int y = 0; y < t; ++y) {
      if (x == y) continue;
      for (int z = 0; z < t; ++z) {
        if (out.class_of[out.pair(x, z)] == out.class_of[out.pair(y, z)] ||
            out.class_of[out.pair(z, x)] == out.class_of[out.pair(z, y)]) {
          out.same_coordinate_separated = false;
        }
      }
    }
  }
  return out;
}

}  // namespace cbpm::audit
