#include <algorithm>
#include <charconv>
#include <numeric>

#include "cbpm/audit.hpp"

namespace cbpm::audit {

std::optional<ThresholdRule> ThresholdRule::parse(std::string_view text) {
  if (text == "paper") return paper();
  auto number = [](std::string_view digits) -> std::optional<BigInt> {
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      return std::nullopt;
    }
    return BigInt(std::string(digits));
  };
  if (text.starts_with("const:")) {
    if (auto v = number(text.substr(6))) return constant(*v);
  } else if (text.starts_with("pow:")) {
    if (auto v = number(text.substr(4))) return power(*v);
  }
  return std::nullopt;
}

BigInt ThresholdRule::at(int ell, int k) const {
  if (kind_ == Kind::kConstant) return value_;
  const auto exponent = static_cast<unsigned>((ell + 1) * k);
  return boost::multiprecision::pow(value_, exponent);
}

std::string ThresholdRule::describe() const {
  switch (kind_) {
    case Kind::kPaper:
      return "paper";
    case Kind::kConstant:
      return "const:" + value_.str();
    case Kind::kPower:
      return "pow:" + value_.str();
  }
  return "unknown";
}

ColourGrouping group_colours(const ColourHistogram& hist, int n,
                             const ThresholdRule& rule) {
  ColourGrouping out;
  out.n = n;
  out.k = hist.k();
  out.rule = rule;
  const int k = out.k;

  out.order.resize(static_cast<std::size_t>(k));
  std::iota(out.order.begin(), out.order.end(), 1);
  std::stable_sort(out.order.begin(), out.order.end(), [&](Colour a, Colour b) {
    return hist.count(a) > hist.count(b);
  });
  for (Colour c : out.order) out.groups.push_back({c});

  // Groups are contiguous in sorted order, so d(A_i, A_{i+1}) is the last
  // value of A_i minus the first value of A_{i+1}.
  auto gap = [&](std::size_t i) {
    return hist.count(out.groups[i].back()) - hist.count(out.groups[i + 1].front());
  };
  while (out.groups.size() > 1) {
    const int ell = k - static_cast<int>(out.groups.size());
    const BigInt threshold = rule.at(ell, k);
    std::size_t merge_at = out.groups.size();
    for (std::size_t i = 0; i + 1 < out.groups.size(); ++i) {
      if (BigInt(gap(i)) <= threshold) {
        merge_at = i;
        break;
      }
    }
    if (merge_at == out.groups.size()) break;
    auto& into = out.groups[merge_at];
    auto& from = out.groups[merge_at + 1];
    into.insert(into.end(), from.begin(), from.end());
    out.groups.erase(out.groups.begin() + static_cast<std::ptrdiff_t>(merge_at) + 1);
  }
  out.final_threshold = rule.at(k - static_cast<int>(out.groups.size()), k);

  out.group_of.assign(static_cast<std::size_t>(k) + 1, -1);
  for (std::size_t i = 0; i < out.groups.size(); ++i) {
    const auto& g = out.groups[i];
    out.group_max.push_back(hist.count(g.front()));
    out.group_min.push_back(hist.count(g.back()));
    out.widths.push_back(out.group_max.back() - out.group_min.back());
    for (Colour c : g) out.group_of[c] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i + 1 < out.groups.size(); ++i) out.gaps.push_back(gap(i));
  return out;
}

}  // namespace cbpm::audit
