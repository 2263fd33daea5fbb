#include "cbpm/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>

#include "cbpm/audit.hpp"
#include "cbpm/error.hpp"
#include "cbpm/iogen.hpp"
#include "cbpm/oracle.hpp"
#include "cbpm/parallel.hpp"

namespace cbpm::cli {

namespace {

std::string yes_no(bool v) { return v ? "true" : "false"; }

std::string format_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

// Runs body, mapping input errors to exit code 2.
template <class Fn>
int guarded(std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
  } catch (const InstanceError& e) {
    err << "instance error: " << e.what() << '\n';
  } catch (const CapExceededError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInput;
}

void emit(const std::optional<std::filesystem::path>& path, const std::string& text,
          std::ostream& out) {
  if (path) {
    write_text_file(*path, text);
  } else {
    out << text;
  }
}

std::string pairs_text(const PerfectMatching& m) {
  std::string s;
  for (const auto& p : m.pairs()) {
    if (!s.empty()) s += ',';
    s += std::to_string(p.u) + "-" + std::to_string(p.v);
  }
  return s;
}

}  // namespace

std::optional<IntRange> IntRange::parse(std::string_view text) {
  auto number = [](std::string_view s) -> std::optional<std::int64_t> {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const auto v = number(text);
    if (!v) return std::nullopt;
    return IntRange{*v, *v};
  }
  const auto lo = number(text.substr(0, dots));
  const auto hi = number(text.substr(dots + 2));
  if (!lo || !hi || *lo > *hi) return std::nullopt;
  return IntRange{*lo, *hi};
}

int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.n < 1 || opt.k < 1) {
    err << "usage error: --n and --k must be positive\n";
    return kExitUsage;
  }
  return guarded(err, [&] {
    const ColouredClique clique = random_balanced(opt.n, opt.k, opt.seed);
    write_colouring(opt.out, clique);
    out << "n=" << opt.n << " k=" << opt.k << " seed=" << opt.seed
        << " vertices=" << clique.num_vertices() << " edges=" << clique.num_edges()
        << " out=" << opt.out.string() << '\n';
    return kExitOk;
  });
}

int cmd_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ColouredClique clique = read_colouring(opt.in);
    if (!clique.balanced()) {
      err << "warning: colouring is not balanced; bound checks reported as n/a\n";
    }
    PerfectMatching start = opt.init ? read_matching(*opt.init, clique.num_vertices())
                                     : random_matching(clique, opt.seed);
    DescentOptions d;
    d.rule = PivotRule{opt.pivot, opt.seed};
    d.sample_size = opt.sample_size;
    d.record_steps = opt.trace.has_value();
    const DescentResult result = descend(clique, std::move(start), d);

    const ColourHistogram hist = compute_histogram(clique, result.matching);
    const Scores sc = scores(hist, clique.n());
    const double ms = std::chrono::duration<double, std::milli>(result.trace.wall_time).count();
    std::string warmup = "n/a", g_bound = "n/a";
    if (clique.balanced()) {
      warmup = yes_no(warmup_f_bound_holds(clique.n(), clique.k(), sc.f));
      g_bound = yes_no(g_bound_holds(clique.n(), clique.k(), sc.g));
    }
    out << "n=" << clique.n() << " k=" << clique.k() << " seed=" << opt.seed
        << " g0=" << result.trace.initial_g << " g=" << sc.g << " f=" << sc.f
        << " swaps=" << result.trace.accepted << " ms=" << format_ms(ms)
        << " warmup_bound=" << warmup << " g_bound=" << g_bound << '\n';

    if (opt.out) write_matching(*opt.out, result.matching);
    if (opt.trace) {
      std::string text = "step edge_a edge_b reconnection delta_g\n";
      for (std::size_t i = 0; i < result.trace.steps.size(); ++i) {
        const SwapMove& m = result.trace.steps[i];
        text += std::to_string(i + 1) + " " + std::to_string(m.edge_a) + " " +
                std::to_string(m.edge_b) + " " +
                (m.reconnection == Reconnection::kCross1 ? "cross1" : "cross2") + " " +
                std::to_string(m.delta_g) + "\n";
      }
      write_text_file(*opt.trace, text);
    }
    return kExitOk;
  });
}

int cmd_oracle(const OracleOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ColouredClique clique = read_colouring(opt.in);
    cbpm::OracleOptions o;
    o.cap = opt.cap;
    const OracleResult r = exact_minima(clique, o);
    out << "n=" << clique.n() << " k=" << clique.k() << " matchings=" << r.matching_count
        << " min_f=" << r.min_f << " min_g=" << r.min_g
        << " local_minima=" << r.local_minimum_count;
    if (const auto max_f = r.max_local_minimum_f()) out << " max_local_f=" << *max_f;
    out << '\n';
    if (!r.argmin_f.empty()) out << "argmin_f pairs=" << pairs_text(r.argmin_f.front()) << '\n';
    if (opt.list_local_minima) {
      for (const auto& lm : r.local_minima) {
        out << "local_min f=" << lm.f << " g=" << lm.g << " pairs=" << pairs_text(lm.matching)
            << '\n';
      }
    }
    return kExitOk;
  });
}

int cmd_audit(const AuditOptions& opt, std::ostream& out, std::ostream& err) {
  const auto rule = audit::ThresholdRule::parse(opt.theta);
  if (!rule) {
    err << "usage error: --theta must be paper, const:C or pow:B\n";
    return kExitUsage;
  }
  if (opt.format != "text" && opt.format != "json") {
    err << "usage error: --format must be text or json\n";
    return kExitUsage;
  }
  return guarded(err, [&] {
    const ColouredClique clique = read_colouring(opt.in);
    if (!clique.balanced()) {
      err << "warning: colouring is not balanced; balance-dependent identities skipped\n";
    }
    const PerfectMatching matching = read_matching(opt.matching, clique.num_vertices());
    const audit::AuditReport report = audit::run_audit(clique, matching, *rule);
    emit(opt.out, opt.format == "json" ? audit::to_json(report) : audit::to_key_value(report),
         out);
    if (report.identity_failure()) {
      for (const auto& c : report.checks) {
        if (c.severity == audit::Severity::kIdentity && !c.pass) {
          err << "audit failure: " << c.name << " (" << c.lhs << " | " << c.rhs << ")\n";
        }
      }
      return kExitAuditFailure;
    }
    return kExitOk;
  });
}

SweepRecord sweep_run(int n, int k, std::uint64_t seed, PivotKind pivot) {
  const ColouredClique clique = random_balanced(n, k, seed);
  DescentOptions d;
  d.rule = PivotRule{pivot, derive_seed(seed, 2)};
  const DescentResult result = descend(clique, random_matching(clique, derive_seed(seed, 1)), d);
  const Scores sc = scores(compute_histogram(clique, result.matching), n);
  SweepRecord rec;
  rec.n = n;
  rec.k = k;
  rec.seed = seed;
  rec.pivot = pivot;
  rec.g_initial = result.trace.initial_g;
  rec.g_final = sc.g;
  rec.f_final = sc.f;
  rec.swaps = result.trace.accepted;
  rec.warmup_bound_holds = warmup_f_bound_holds(n, k, sc.f);
  rec.g_bound_holds = g_bound_holds(n, k, sc.g);
  rec.wallclock_ms = std::chrono::duration<double, std::milli>(result.trace.wall_time).count();
  return rec;
}

std::string format_sweep_row(const SweepRecord& rec, bool timing) {
  std::ostringstream row;
  row << rec.n << ',' << rec.k << ',' << rec.seed << ',' << pivot_name(rec.pivot) << ','
      << rec.g_initial << ',' << rec.g_final << ',' << rec.f_final << ',' << rec.swaps << ','
      << yes_no(rec.warmup_bound_holds) << ',' << yes_no(rec.g_bound_holds) << ','
      << (timing ? format_ms(rec.wallclock_ms) : std::string("n/a"));
  return row.str();
}

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.n_range.lo < 1 || opt.k_range.lo < 1 || opt.seeds.lo < 0) {
    err << "usage error: n and k ranges must be positive, seeds non-negative\n";
    return kExitUsage;
  }
  struct Cell {
    int n, k;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (auto n = opt.n_range.lo; n <= opt.n_range.hi; ++n) {
    for (auto k = opt.k_range.lo; k <= opt.k_range.hi; ++k) {
      for (auto s = opt.seeds.lo; s <= opt.seeds.hi; ++s) {
        cells.push_back({static_cast<int>(n), static_cast<int>(k), static_cast<std::uint64_t>(s)});
      }
    }
  }
  return guarded(err, [&] {
    std::vector<SweepRecord> records(cells.size());
    parallel_for(cells.size(), opt.workers, [&](std::size_t i) {
      records[i] = sweep_run(cells[i].n, cells[i].k, cells[i].seed, opt.pivot);
    });
    std::string csv(kSweepHeader);
    csv += '\n';
    for (const auto& rec : records) csv += format_sweep_row(rec, opt.timing) + "\n";
    emit(opt.out, csv, out);
    return kExitOk;
  });
}

ExtremalRecord search_extremal(const ColouredClique& clique, std::uint64_t seed,
                               int starts, int cap) {
  ExtremalRecord rec;
  rec.n = clique.n();
  rec.k = clique.k();
  rec.seed = seed;
  rec.starts = starts;
  std::set<std::vector<VertexPair>> seen;
  bool first = true;
  for (int j = 0; j < starts; ++j) {
    const auto start = random_matching(clique, derive_seed(seed, 100 + static_cast<std::uint64_t>(j)));
    const DescentResult result = descend(clique, start, {});
    const auto canon = result.matching.canonical();
    seen.emplace(canon.pairs().begin(), canon.pairs().end());
    const std::int64_t f = f_score(compute_histogram(clique, result.matching), clique.n());
    rec.max_local_f = first ? f : std::max(rec.max_local_f, f);
    rec.min_local_f = first ? f : std::min(rec.min_local_f, f);
    first = false;
  }
  rec.distinct_local_minima = seen.size();
  rec.within_warmup_bound = warmup_f_bound_holds(clique.n(), clique.k(), rec.max_local_f);
  if (clique.num_vertices() <= cap) {
    cbpm::OracleOptions o;
    o.cap = cap;
    const OracleResult oracle = exact_minima(clique, o);
    rec.oracle_min_f = oracle.min_f;
    rec.oracle_max_local_f = oracle.max_local_minimum_f();
  }
  return rec;
}

std::string format_extremal_row(const ExtremalRecord& rec) {
  auto opt = [](const std::optional<std::int64_t>& v) {
    return v ? std::to_string(*v) : std::string("n/a");
  };
  std::ostringstream row;
  row << rec.n << ',' << rec.k << ',' << rec.seed << ',' << rec.starts << ','
      << rec.distinct_local_minima << ',' << rec.max_local_f << ',' << rec.min_local_f << ','
      << yes_no(rec.within_warmup_bound) << ',' << opt(rec.oracle_min_f) << ','
      << opt(rec.oracle_max_local_f) << ','
      << (rec.oracle_min_f ? std::to_string(rec.min_local_f - *rec.oracle_min_f)
                           : std::string("n/a"));
  return row.str();
}

int cmd_search_extremal(const SearchExtremalOptions& opt, std::ostream& out,
                        std::ostream& err) {
  if (!opt.in && (opt.n < 1 || opt.k < 1)) {
    err << "usage error: --n and --k must be positive (or pass --in)\n";
    return kExitUsage;
  }
  if (opt.starts < 1 || opt.seeds.lo < 0) {
    err << "usage error: --starts must be positive and seeds non-negative\n";
    return kExitUsage;
  }
  return guarded(err, [&] {
    std::optional<ColouredClique> fixed;
    if (opt.in) fixed = read_colouring(*opt.in);
    const auto count = static_cast<std::size_t>(opt.seeds.size());
    std::vector<ExtremalRecord> rows(count);
    parallel_for(count, opt.workers, [&](std::size_t i) {
      const auto seed = static_cast<std::uint64_t>(opt.seeds.lo) + i;
      if (fixed) {
        rows[i] = search_extremal(*fixed, seed, opt.starts, opt.cap);
      } else {
        rows[i] = search_extremal(random_balanced(opt.n, opt.k, seed), seed, opt.starts, opt.cap);
      }
    });
    std::string csv(kExtremalHeader);
    csv += '\n';
    for (const auto& r : rows) csv += format_extremal_row(r) + "\n";
    emit(opt.out, csv, out);
    return kExitOk;
  });
}

int cmd_k6(const K6Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.sampled && opt.count == 0) {
    err << "usage error: sampled mode needs --count > 0\n";
    return kExitUsage;
  }
  return guarded(err, [&] {
    K6SearchOptions o;
    o.exhaustive = !opt.sampled;
    o.seed = opt.seed;
    o.samples = opt.count;
    o.workers = opt.workers;
    const auto t0 = std::chrono::steady_clock::now();
    const K6Report r = k6_search(o);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out << "mode=" << (opt.sampled ? "sampled" : "exhaustive") << " colourings=" << r.colourings
        << " max_min_f=" << r.max_min_f << " attaining=" << r.attaining_max
        << " positive_min_f=" << r.positive_min_f << " witness_index=" << r.witness_index
        << " ms=" << format_ms(ms) << '\n';
    if (r.witness) {
      out << "witness:\n" << format_colouring(*r.witness);
      if (opt.witness_out) write_colouring(*opt.witness_out, *r.witness);
    }
    return kExitOk;
  });
}

}  // namespace cbpm::cli
