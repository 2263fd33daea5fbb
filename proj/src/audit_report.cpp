#include <algorithm>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "cbpm/audit.hpp"
#include "cbpm/oracle.hpp"

namespace cbpm::audit {

namespace {

CheckResult check(std::string name, bool pass, std::string lhs, std::string rhs,
                  Severity severity) {
  return CheckResult{std::move(name), pass, std::move(lhs), std::move(rhs), severity};
}

std::string yes_no(bool v) { return v ? "true" : "false"; }

template <class Range, class Fn>
std::string join(const Range& range, std::string_view sep, Fn fn) {
  std::string out;
  bool first = true;
  for (const auto& v : range) {
    if (!first) out += sep;
    out += fn(v);
    first = false;
  }
  return out;
}

std::string pair_name(int p, int t) {
  return "(" + std::to_string(p / t + 1) + "," + std::to_string(p % t + 1) + ")";
}

nlohmann::json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

}  // namespace

PhiResult evaluate_phi(std::span<const Rational> a,
                       std::span<const std::int64_t> xi,
                       std::span<const int> group_sizes) {
  PhiResult out;
  out.phi = 0;
  for (std::size_t i = 0; i < a.size(); ++i) out.phi += a[i] * xi[i];
  out.negative = out.phi < 0;

  Rational total = 0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const Rational ratio(xi[i], group_sizes[i]);
    out.nu.insert(out.nu.end(), static_cast<std::size_t>(group_sizes[i]), ratio);
    total += xi[i];
  }
  bool a_decreasing = true;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) a_decreasing = a_decreasing && a[i] > a[i + 1];
  bool nu_increasing = true;
  for (std::size_t i = 0; i + 1 < out.nu.size(); ++i) {
    nu_increasing = nu_increasing && out.nu[i] <= out.nu[i + 1];
  }
  const bool nu_constant =
      out.nu.empty() || std::all_of(out.nu.begin(), out.nu.end(),
                                    [&](const Rational& v) { return v == out.nu.front(); });
  out.predicts_negative = a_decreasing && nu_increasing && !nu_constant && total == 0;
  return out;
}

PhiResult compute_phi(const LevelSystem& levels, const SwapTally& tally,
                      const ColourGrouping& grouping,
                      const PairClassification& classification) {
  std::vector<int> sizes;
  for (int i = 0; i < grouping.t(); ++i) sizes.push_back(grouping.size(i));
  PhiResult out = evaluate_phi(levels.a, tally.xi, sizes);
  const PrefixSums prefix = prefix_z(tally, classification);
  out.predicts_nonnegative = prefix.all_nonnegative && prefix.last_is_zero &&
                             levels.class_sums_weakly_decreasing;
  out.contradiction = out.predicts_negative && out.predicts_nonnegative;
  return out;
}

bool AuditReport::identity_failure() const {
  return std::any_of(checks.begin(), checks.end(), [](const CheckResult& c) {
    return c.severity == Severity::kIdentity && !c.pass;
  });
}

const CheckResult* AuditReport::find(std::string_view name) const {
  const auto it = std::find_if(checks.begin(), checks.end(),
                               [&](const CheckResult& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

AuditReport run_audit(const ColouredClique& clique,
                      const PerfectMatching& matching,
                      const ThresholdRule& rule) {
  AuditReport r;
  const ColourHistogram hist = compute_histogram(clique, matching);
  const Scores sc = scores(hist, clique.n());
  r.n = clique.n();
  r.k = clique.k();
  r.f = sc.f;
  r.g = sc.g;
  r.balanced = clique.balanced();
  r.local_minimum = is_local_minimum(clique, matching);

  r.grouping = group_colours(hist, clique.n(), rule);
  r.classification = classify_pairs(r.grouping, hist);
  r.tally = compute_tallies(clique, matching, r.grouping);
  r.prefix = prefix_z(r.tally, r.classification);
  r.down_arrows = count_down_arrows(clique, matching, r.grouping, r.classification);
  r.levels = solve_levels(r.grouping, r.classification, hist);
  r.phi = compute_phi(r.levels, r.tally, r.grouping, r.classification);

  const bool paper_rule = rule.kind() == ThresholdRule::Kind::kPaper;
  const Severity default_rule_hard = paper_rule ? Severity::kIdentity : Severity::kReport;
  const int t = r.grouping.t();
  auto& checks = r.checks;

  checks = check_identities(r.tally, r.grouping, clique);

  bool separated = true;
  for (auto gap : r.grouping.gaps) separated = separated && BigInt(gap) > r.grouping.final_threshold;
  checks.push_back(check("groups_separated", separated,
                         "min gap " + (r.grouping.gaps.empty()
                                           ? std::string("none")
                                           : std::to_string(*std::min_element(
                                                 r.grouping.gaps.begin(), r.grouping.gaps.end()))),
                         "> " + r.grouping.final_threshold.str(), Severity::kIdentity));
  if (paper_rule && t == 1) {
    std::int64_t deviation = 0;
    for (auto m : hist.counts()) deviation = std::max(deviation, std::abs(m - clique.n()));
    const BigInt bound = boost::multiprecision::pow(
        BigInt(4), static_cast<unsigned>(clique.k() * (clique.k() - 1) + 1));
    checks.push_back(check("single_group_deviation_bound",
                           deviation <= r.grouping.widths.front() && BigInt(deviation) < bound,
                           std::to_string(deviation) + " <= width " +
                               std::to_string(r.grouping.widths.front()),
                           "< " + bound.str(), Severity::kIdentity));
  }

  checks.push_back(check("classes_totally_ordered", r.classification.totally_ordered,
                         "s=" + std::to_string(r.classification.s()), "blockwise dominance",
                         Severity::kReport));
  checks.push_back(check("s_at_least_2t_minus_1", r.classification.class_count_bound_holds,
                         std::to_string(r.classification.s()), ">= " + std::to_string(2 * t - 1),
                         default_rule_hard));
  checks.push_back(check("same_coordinate_separated",
                         r.classification.same_coordinate_separated, "(x,z) vs (y,z)",
                         "different classes", default_rule_hard));

  auto prefix_checks = check_prefix_z(r.tally, r.classification, clique, matching,
                                      r.grouping, r.local_minimum);
  checks.insert(checks.end(), prefix_checks.begin(), prefix_checks.end());

  checks.push_back(check("levels_null_residual", r.levels.null_residual_zero, "N*a", "0",
                         Severity::kIdentity));
  checks.push_back(check("levels_normal_residual", r.levels.normal_residual_zero,
                         "Z^T(b-a)", "0", Severity::kIdentity));
  checks.push_back(check("levels_class_sums_constant", r.levels.class_sums_constant,
                         "a_i+a_j within classes", "equal", Severity::kIdentity));
  checks.push_back(check("levels_strictly_decreasing", r.levels.strictly_decreasing, "a",
                         "strictly decreasing", Severity::kReport));
  checks.push_back(check("levels_follow_class_order", r.levels.class_sums_strictly_decreasing,
                         "class sums", "strictly decreasing", Severity::kReport));
  const BigInt scale = boost::multiprecision::pow(
      BigInt(4), static_cast<unsigned>((r.grouping.ell() + 1) * clique.k()));
  checks.push_back(check("levels_deviation_bound",
                         r.levels.max_deviation < Rational(scale, 8),
                         r.levels.max_deviation.str(), "< " + Rational(scale, 8).str(),
                         Severity::kReport));

  checks.push_back(check("phi_negative_side", !r.phi.predicts_negative || r.phi.negative,
                         r.phi.phi.str(), r.phi.predicts_negative ? "< 0" : "no prediction",
                         Severity::kIdentity));
  checks.push_back(check("phi_nonnegative_side", !r.phi.predicts_nonnegative || r.phi.phi >= 0,
                         r.phi.phi.str(), r.phi.predicts_nonnegative ? ">= 0" : "no prediction",
                         Severity::kIdentity));
  checks.push_back(check("phi_no_contradiction", !r.phi.contradiction,
                         "predicts_negative=" + yes_no(r.phi.predicts_negative),
                         "predicts_nonnegative=" + yes_no(r.phi.predicts_nonnegative),
                         Severity::kReport));
  return r;
}

std::string to_key_value(const AuditReport& r) {
  const int t = r.grouping.t();
  std::ostringstream out;
  auto str_i64 = [](std::int64_t v) { return std::to_string(v); };
  auto str_rat = [](const Rational& v) { return v.str(); };
  out << "n=" << r.n << '\n'
      << "k=" << r.k << '\n'
      << "theta=" << r.grouping.rule.describe() << '\n'
      << "balanced=" << yes_no(r.balanced) << '\n'
      << "local_minimum=" << yes_no(r.local_minimum) << '\n'
      << "f=" << r.f << '\n'
      << "g=" << r.g << '\n'
      << "t=" << t << '\n'
      << "ell=" << r.grouping.ell() << '\n'
      << "s=" << r.classification.s() << '\n'
      << "groups="
      << join(r.grouping.groups, "|",
              [](const auto& g) { return join(g, ",", [](Colour c) { return std::to_string(c); }); })
      << '\n'
      << "widths=" << join(r.grouping.widths, ",", str_i64) << '\n'
      << "gaps=" << join(r.grouping.gaps, ",", str_i64) << '\n'
      << "classes="
      << join(r.classification.classes, "|",
              [t](const auto& c) { return join(c, ",", [t](int p) { return pair_name(p, t); }); })
      << '\n'
      << "y=" << join(r.tally.y, ",", str_i64) << '\n'
      << "p=" << join(r.tally.p, ",", str_i64) << '\n'
      << "z=" << join(r.tally.z, ",", str_i64) << '\n'
      << "group_edges=" << join(r.tally.group_edges, ",", str_i64) << '\n'
      << "xi=" << join(r.tally.xi, ",", str_i64) << '\n'
      << "prefix_z=" << join(r.prefix.sums, ",", str_i64) << '\n'
      << "down_arrows=" << r.down_arrows << '\n'
      << "levels_rows=" << r.levels.matrix.size() << '\n'
      << "levels_rank=" << r.levels.rank << '\n'
      << "b=" << join(r.levels.b, ",", [](const BigInt& v) { return v.str(); }) << '\n'
      << "epsilon=" << join(r.levels.residual, ",", [](const BigInt& v) { return v.str(); })
      << '\n'
      << "a=" << join(r.levels.a, ",", str_rat) << '\n'
      << "a_minus_b_max=" << r.levels.max_deviation.str() << '\n'
      << "nu=" << join(r.phi.nu, ",", str_rat) << '\n'
      << "phi_num=" << numerator(r.phi.phi).str() << '\n'
      << "phi_den=" << denominator(r.phi.phi).str() << '\n'
      << "phi_predicts_negative=" << yes_no(r.phi.predicts_negative) << '\n'
      << "phi_predicts_nonnegative=" << yes_no(r.phi.predicts_nonnegative) << '\n'
      << "phi_contradiction=" << yes_no(r.phi.contradiction) << '\n';
  for (const auto& c : r.checks) {
    out << "checks[" << c.name << "]=" << (c.pass ? "pass" : "fail") << '\n';
  }
  for (const auto& c : r.checks) {
    out << "check_values[" << c.name << "]=" << c.lhs << " | " << c.rhs << '\n';
  }
  out << "identity_failure=" << yes_no(r.identity_failure()) << '\n';
  return out.str();
}

std::string to_json(const AuditReport& r) {
  using nlohmann::json;
  const int t = r.grouping.t();
  auto rationals = [](const std::vector<Rational>& v) {
    json arr = json::array();
    for (const auto& x : v) arr.push_back(x.str());
    return arr;
  };
  auto matrix = [t](const std::vector<std::int64_t>& m) {
    json rows = json::array();
    for (int i = 0; i < t; ++i) {
      rows.push_back(std::vector<std::int64_t>(m.begin() + i * t, m.begin() + (i + 1) * t));
    }
    return rows;
  };

  json doc;
  doc["n"] = r.n;
  doc["k"] = r.k;
  doc["theta"] = r.grouping.rule.describe();
  doc["balanced"] = r.balanced;
  doc["local_minimum"] = r.local_minimum;
  doc["f"] = r.f;
  doc["g"] = r.g;
  doc["t"] = t;
  doc["ell"] = r.grouping.ell();
  doc["s"] = r.classification.s();
  doc["groups"] = r.grouping.groups;
  doc["widths"] = r.grouping.widths;
  doc["gaps"] = r.grouping.gaps;
  json classes = json::array();
  for (const auto& c : r.classification.classes) {
    json cls = json::array();
    for (int p : c) cls.push_back({p / t + 1, p % t + 1});
    classes.push_back(cls);
  }
  doc["classes"] = classes;
  doc["y"] = matrix(r.tally.y);
  doc["p"] = matrix(r.tally.p);
  doc["z"] = matrix(r.tally.z);
  doc["group_edges"] = r.tally.group_edges;
  doc["xi"] = r.tally.xi;
  doc["prefix_z"] = r.prefix.sums;
  doc["down_arrows"] = r.down_arrows;
  json levels;
  levels["N"] = r.levels.matrix;
  json b = json::array(), eps = json::array();
  for (const auto& v : r.levels.b) b.push_back(big_to_json(v));
  for (const auto& v : r.levels.residual) eps.push_back(big_to_json(v));
  levels["b"] = b;
  levels["epsilon"] = eps;
  levels["a"] = rationals(r.levels.a);
  levels["rank"] = r.levels.rank;
  levels["a_minus_b_max"] = r.levels.max_deviation.str();
  doc["levels"] = levels;
  doc["nu"] = rationals(r.phi.nu);
  doc["phi_num"] = big_to_json(numerator(r.phi.phi));
  doc["phi_den"] = big_to_json(denominator(r.phi.phi));
  doc["phi_predicts_negative"] = r.phi.predicts_negative;
  doc["phi_predicts_nonnegative"] = r.phi.predicts_nonnegative;
  doc["phi_contradiction"] = r.phi.contradiction;
  json checks = json::object(), values = json::object();
  for (const auto& c : r.checks) {
    checks[c.name] = c.pass ? "pass" : "fail";
    values[c.name] = {{"lhs", c.lhs},
                      {"rhs", c.rhs},
                      {"severity", c.severity == Severity::kIdentity ? "identity" : "report"}};
  }
  doc["checks"] = checks;
  doc["check_values"] = values;
  doc["identity_failure"] = r.identity_failure();
  return doc.dump(2) + "\n";
}

}  // namespace cbpm::audit
