#pragma once

// Command-line driver: gen, expect, verify <target>, sample.
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include "meander/codes.hpp"
#include "meander/combinatorics.hpp"
#include "meander/experiments.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace meander::cli {

inline constexpr int kSuccess = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kUsageError = 2;

struct Config {
  std::string subcommand;
  std::string target;  // verify only
  unsigned s = 5;
  unsigned r = 1;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t trials = 10000;
  unsigned count = 1;
  bool alternating = false;
  std::string format = "table";
  std::string out;
  unsigned workers = 1;
  std::optional<unsigned> max_s;
  std::optional<unsigned> max_r;
  std::string stat;
  std::optional<double> tol;
  std::string top;
  std::string bottom;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string decimal(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

inline std::string exact_and_decimal(const Rational& q) {
  const std::string exact = to_string(q);
  if (boost::multiprecision::denominator(q) == 1) return exact;
  return exact + " (" + decimal(to_double(q)) + ")";
}

inline void require_positive(unsigned value, const char* flag) {
  if (value == 0) throw UsageError(std::string(flag) + " must be at least 1");
}

// gen -----------------------------------------------------------------------------

inline int cmd_gen(const Config& cfg, std::ostream& out) {
  require_positive(cfg.s, "--s");
  require_positive(cfg.r, "--r");
  require_positive(cfg.count, "--count");
  if (cfg.format != "table" && cfg.format != "pd" && cfg.format != "gauss" && cfg.format != "json") {
    throw UsageError("gen: --format must be one of table, pd, gauss, json");
  }
  if (cfg.s > kMaxPairs || cfg.r > kMaxCabling) throw UsageError("gen: s or r out of supported range");
  std::optional<PString> fixed_top;
  std::optional<PString> fixed_bottom;
  try {
    if (!cfg.top.empty()) fixed_top = PString::parse(cfg.top);
    if (!cfg.bottom.empty()) fixed_bottom = PString::parse(cfg.bottom);
  } catch (const ParseError& e) {
    throw UsageError(std::string("gen: bad p-string: ") + e.what());
  }
  unsigned s = cfg.s;
  if (fixed_top) s = fixed_top->pairs();
  if (fixed_bottom) s = fixed_bottom->pairs();
  if ((fixed_top && fixed_top->pairs() != s) || s == 0) throw UsageError("gen: --top and --bottom need equal, positive lengths");

  const PStringSampler sampler(s);
  std::vector<LinkDiagram> diagrams;
  for (unsigned i = 0; i < cfg.count; ++i) {
    Engine engine = derive_engine(cfg.seed, i);
    PString top = sampler(engine);
    PString bottom = sampler(engine);
    if (fixed_top) top = *fixed_top;
    if (fixed_bottom) bottom = *fixed_bottom;
    const MeanderGraph g(std::move(top), std::move(bottom));
    CrossingAssignment v;
    if (cfg.alternating) {
      auto pair = alternating_assignments(g, cfg.r);
      v = fair_coin(engine) ? std::move(pair.second) : std::move(pair.first);
    } else {
      v = sample_assignment(s, cfg.r, engine);
    }
    diagrams.push_back(assemble(g, cfg.r, std::move(v)));
  }

  if (cfg.format == "json") {
    nlohmann::json doc;
    doc["seed"] = cfg.seed;
    doc["diagrams"] = nlohmann::json::array();
    for (const LinkDiagram& d : diagrams) doc["diagrams"].push_back(to_json(d));
    out << doc.dump(2) << '\n';
    return kSuccess;
  }
  if (cfg.format == "gauss") {
    for (const LinkDiagram& d : diagrams) {
      if (d.components().size() != 1) {
        throw UsageError("gen: a diagram has " + std::to_string(d.components().size()) +
                         " components; gauss format needs knots (try --format pd)");
      }
    }
  }
  out << "# seed " << cfg.seed << '\n';
  for (std::size_t i = 0; i < diagrams.size(); ++i) {
    const LinkDiagram& d = diagrams[i];
    if (cfg.format == "pd") {
      out << export_pd(d) << '\n';
    } else if (cfg.format == "gauss") {
      out << export_gauss(d) << '\n';
    } else {
      const DiagramStats st = diagram_stats(d);
      out << "diagram " << i << '\n';
      out << "  top            " << d.skeleton().top().text() << '\n';
      out << "  bottom         " << d.skeleton().bottom().text() << '\n';
      for (const std::string& w : d.assignment().words()) out << "  crossing info  " << w << '\n';
      out << "  crossings      " << st.crossings << '\n';
      out << "  components     " << st.components << " (" << st.axis_components << " axis)\n";
      out << "  pierced        ";
      if (st.pierced_circle_positions.empty()) out << "none";
      for (std::size_t k = 0; k < st.pierced_circle_positions.size(); ++k) {
        out << (k ? " " : "") << st.pierced_circle_positions[k];
      }
      out << '\n';
      out << "  bigons         " << st.bigons << " faces, " << st.nesting_bigons << " nestings\n";
      out << "  twists         " << st.twists << '\n';
      out << "  nugatory       " << st.nugatory << '\n';
      out << "  pd             " << export_pd(d) << '\n';
    }
  }
  return kSuccess;
}

// expect ----------------------------------------------------------------------------

inline int cmd_expect(const Config& cfg, std::ostream& out) {
  require_positive(cfg.s, "--s");
  require_positive(cfg.r, "--r");
  if (cfg.format != "table" && cfg.format != "json") throw UsageError("expect: --format must be table or json");
  const Rational pierced = expected_pierced_circles(cfg.s);
  const Rational nest = expected_nestings(cfg.s);
  const Rational bigons = expected_bigons(cfg.s);
  const VolumeReport vol = expected_volume_report(cfg.s, cfg.r, cfg.alternating);
  const bool twists_vacuous = vol.expected_twists <= 0;

  if (cfg.format == "json") {
    nlohmann::json j;
    j["s"] = cfg.s;
    j["r"] = cfg.r;
    j["alternating"] = cfg.alternating;
    j["pierced_circles"] = to_string(pierced);
    j["nestings"] = to_string(nest);
    j["bigons"] = to_string(bigons);
    j["twists"] = to_string(vol.expected_twists);
    j["twists_vacuous"] = twists_vacuous;
    j["volume_upper"] = vol.bounds.upper;
    j["volume_upper_formula"] = vol.upper_formula;
    j["volume_lower"] = vol.bounds.lower ? nlohmann::json(*vol.bounds.lower) : nlohmann::json(nullptr);
    j["volume_lower_formula"] = vol.lower_formula ? nlohmann::json(*vol.lower_formula) : nlohmann::json(nullptr);
    j["volume_vacuous"] = vol.bounds.vacuous;
    out << j.dump(2) << '\n';
    return kSuccess;
  }
  out << "s = " << cfg.s << ", r = " << cfg.r << (cfg.alternating ? ", alternating" : "") << '\n';
  out << "pierced circles (r = 1 skeleton)  " << exact_and_decimal(pierced) << '\n';
  out << "nestings per string               " << exact_and_decimal(nest) << '\n';
  out << "bigons                            " << exact_and_decimal(bigons) << '\n';
  out << "twists                            " << exact_and_decimal(vol.expected_twists)
      << (twists_vacuous ? "  [vacuous]" : "") << '\n';
  out << "volume upper bound                " << vol.upper_formula << " = " << decimal(vol.bounds.upper)
      << (vol.bounds.upper <= 0 ? "  [vacuous]" : "") << '\n';
  if (vol.bounds.lower) {
    out << "volume lower bound                " << *vol.lower_formula << " = " << decimal(*vol.bounds.lower)
        << (*vol.bounds.lower <= 0 ? "  [vacuous]" : "") << '\n';
  } else {
    out << "volume lower bound                none (needs alternating and r > 1)\n";
  }
  return kSuccess;
}

// verify ----------------------------------------------------------------------------

inline int fail(std::ostream& out, const std::string& what) {
  out << "FAIL " << what << '\n';
  return kVerificationFailed;
}

inline int verify_recurrence(unsigned max_s, std::ostream& out) {
  for (unsigned s = 1; s <= max_s; ++s) {
    const BigInt residual = zeilberger_residual(s);
    if (residual != 0) return fail(out, "recurrence residual at s=" + std::to_string(s) + " is " + residual.str());
  }
  out << "PASS recurrence: residual is 0 for 1 <= s <= " << max_s << '\n';
  return kSuccess;
}

inline int verify_enumeration(unsigned max_s, std::ostream& out) {
  if (max_s > kMaxEnumerationPairs) throw UsageError("verify enumeration: --max-s is capped at 6");
  for (unsigned s = 1; s <= max_s; ++s) {
    const EnumerationReport rep = run_enumeration(s);
    out << "s=" << s << " histogram";
    for (const auto& [k, n] : rep.histogram) out << ' ' << k << ':' << n;
    out << '\n';
    for (const auto& [k, ok] : rep.matches_formula) {
      if (!ok) return fail(out, "enumeration at s=" + std::to_string(s) + ", k=" + std::to_string(k) + ": E(s,k)=" +
                                    count_E(s, k).str());
    }
  }
  out << "PASS enumeration: histograms match E(s,k) for 1 <= s <= " << max_s << '\n';
  return kSuccess;
}

inline int verify_unlinked(unsigned max_r, std::ostream& out) {
  if (max_r > kMaxUnlinkedCabling) throw UsageError("verify unlinked: --max-r is capped at 10");
  for (unsigned r = 1; r <= max_r; ++r) {
    const Rational got = run_unlinked_exact(r);
    const Rational want(BigInt(1), BigInt(1) << r);
    out << "r=" << r << " unlinked fraction " << to_string(got) << '\n';
    if (got != want) return fail(out, "unlinked at r=" + std::to_string(r) + ": expected " + to_string(want));
  }
  out << "PASS unlinked: fraction is 1/2^r for 1 <= r <= " << max_r << '\n';
  return kSuccess;
}

inline int verify_ratio(unsigned max_s, std::optional<double> tol, std::ostream& out) {
  if (max_s < 2) throw UsageError("verify ratio: --max-s must be at least 2");
  const auto seq = ratio_sequence(max_s);
  for (unsigned s = 2; s < max_s; ++s) {
    if (!(seq[s].a < seq[s - 1].a)) return fail(out, "a_s is not decreasing at s=" + std::to_string(s + 1));
  }
  for (unsigned s = 2; s <= max_s; ++s) {
    const auto& e = seq[s - 1].e_ratio;
    if (!e || *e >= 16) return fail(out, "E(s+1,0)/E(s,0) >= 16 at s=" + std::to_string(s));
  }
  const double last = to_double(*seq.back().e_ratio);
  const double distance = std::abs(last - characteristic_roots()[2]);
  out << "E(" << max_s + 1 << ",0)/E(" << max_s << ",0) = " << decimal(last) << ", distance to 7+4sqrt3 = "
      << decimal(distance) << '\n';
  if (tol && !(distance < *tol)) return fail(out, "ratio distance " + decimal(distance) + " >= tol " + decimal(*tol));
  out << "PASS ratio: a_s decreasing and ratios below 16 for 2 <= s <= " << max_s << '\n';
  return kSuccess;
}

inline int verify_narayana(unsigned max_n, std::ostream& out) {
  for (unsigned n = 1; n <= max_n; ++n) {
    BigInt sum = 0;
    for (unsigned k = 1; k <= n; ++k) {
      sum += narayana(n, k);
      if (narayana(n, k) != narayana(n, n - k + 1)) {
        return fail(out, "narayana symmetry at n=" + std::to_string(n) + ", k=" + std::to_string(k));
      }
    }
    if (sum != catalan(n)) return fail(out, "narayana sum at n=" + std::to_string(n));
  }
  out << "PASS narayana: sums equal Catalan numbers and rows are symmetric for 1 <= n <= " << max_n << '\n';
  return kSuccess;
}

inline int cmd_verify(const Config& cfg, std::ostream& out) {
  if (cfg.target == "recurrence") return verify_recurrence(cfg.max_s.value_or(100), out);
  if (cfg.target == "enumeration") return verify_enumeration(cfg.max_s.value_or(6), out);
  if (cfg.target == "unlinked") return verify_unlinked(cfg.max_r.value_or(8), out);
  if (cfg.target == "ratio") return verify_ratio(cfg.max_s.value_or(200), cfg.tol, out);
  if (cfg.target == "narayana") return verify_narayana(cfg.max_s.value_or(30), out);
  throw UsageError("verify: unknown target '" + cfg.target + "' (recurrence, enumeration, unlinked, ratio, narayana)");
}

// sample ------------------------------------------------------------------------------

inline int cmd_sample(const Config& cfg, std::ostream& out) {
  const auto stat = parse_statistic(cfg.stat);
  if (!stat) throw UsageError("sample: unknown statistic '" + cfg.stat + "'");
  if (cfg.format != "table" && cfg.format != "json" && cfg.format != "csv") {
    throw UsageError("sample: --format must be table, json or csv");
  }
  ExperimentReport rep;
  try {
    rep = run_monte_carlo(*stat, cfg.s, cfg.r, cfg.trials, cfg.seed, cfg.workers);
  } catch (const std::logic_error& e) {
    throw UsageError(std::string("sample: ") + e.what());
  }
  if (cfg.format == "json") {
    out << to_json(rep).dump() << '\n';
  } else if (cfg.format == "csv") {
    out << kReportCsvHeader << '\n' << to_csv_row(rep) << '\n';
  } else {
    const double gate = cfg.tol.value_or(4.0);
    out << "statistic    " << to_string(rep.statistic) << '\n';
    out << "s, r         " << rep.s << ", " << rep.r << '\n';
    out << "trials       " << rep.trials << '\n';
    out << "seed         " << rep.seed << '\n';
    out << "mean         " << decimal(rep.empirical_mean) << '\n';
    out << "stderr       " << decimal(rep.empirical_stderr) << '\n';
    out << "closed form  " << (rep.closed_form ? exact_and_decimal(*rep.closed_form) : std::string("none")) << '\n';
    if (rep.z_score) {
      out << "z            " << decimal(*rep.z_score) << (std::abs(*rep.z_score) < gate ? "  (within " : "  (outside ")
          << "|z| < " << decimal(gate) << ")\n";
    } else {
      out << "z            n/a\n";
    }
  }
  return kSuccess;
}

inline void add_common(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--out", cfg.out, "Write output to this file instead of stdout");
  cmd->add_option("--format", cfg.format, "Output format");
}

}  // namespace detail

/// Runs the command line; never throws. Output goes to `out` (or --out),
/// diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Random meander link generator and verifier"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Sample (r, 2s-1)-meander link diagrams");
  gen->add_option("--s", cfg.s, "Pairs per p-string");
  gen->add_option("--r", cfg.r, "Parallel copies per strand");
  gen->add_option("--count", cfg.count, "Number of diagrams");
  gen->add_option("--seed", cfg.seed, "Master seed");
  gen->add_flag("--alternating", cfg.alternating, "Use alternating crossing information");
  gen->add_option("--top", cfg.top, "Fix the top p-string");
  gen->add_option("--bottom", cfg.bottom, "Fix the bottom p-string");
  detail::add_common(gen, cfg);

  auto* expect = app.add_subcommand("expect", "Exact expectations and volume bounds");
  expect->add_option("--s", cfg.s, "Pairs per p-string");
  expect->add_option("--r", cfg.r, "Parallel copies per strand");
  expect->add_flag("--alternating", cfg.alternating, "Include the alternating lower volume bound");
  detail::add_common(expect, cfg);

  auto* verify = app.add_subcommand("verify", "Exact verification runs");
  verify->add_option("target", cfg.target, "recurrence | enumeration | unlinked | ratio | narayana")->required();
  verify->add_option("--max-s", cfg.max_s, "Largest s (or n) to check");
  verify->add_option("--max-r", cfg.max_r, "Largest r to check");
  verify->add_option("--tol", cfg.tol, "Ceiling for |E(s+1,0)/E(s,0) - (7+4sqrt3)| at max-s (ratio)");
  detail::add_common(verify, cfg);

  auto* sample = app.add_subcommand("sample", "Monte Carlo estimate of a statistic");
  sample->add_option("--stat", cfg.stat, "Statistic name")->required();
  sample->add_option("--s", cfg.s, "Pairs per p-string");
  sample->add_option("--r", cfg.r, "Parallel copies per strand");
  sample->add_option("--trials", cfg.trials, "Number of trials");
  sample->add_option("--seed", cfg.seed, "Master seed");
  sample->add_option("--workers", cfg.workers, "Worker threads (output does not depend on it)");
  sample->add_option("--tol", cfg.tol, "|z| gate shown in the table (default 4)");
  detail::add_common(sample, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << app.get_name() << ": " << e.what() << '\n';
    return kUsageError;
  }

  std::ostringstream buffer;
  int code = kSuccess;
  try {
    if (gen->parsed()) {
      code = detail::cmd_gen(cfg, buffer);
    } else if (expect->parsed()) {
      code = detail::cmd_expect(cfg, buffer);
    } else if (verify->parsed()) {
      code = detail::cmd_verify(cfg, buffer);
    } else if (sample->parsed()) {
      code = detail::cmd_sample(cfg, buffer);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kVerificationFailed;
  }

  if (!cfg.out.empty()) {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << cfg.out << '\n';
      return kUsageError;
    }
    file << buffer.str();
  } else {
    out << buffer.str();
  }
  return code;
}

}  // namespace meander::cli
