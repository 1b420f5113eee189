#pragma once

// Monte Carlo and exhaustive experiments against the exact expectations.
//
// Trial t of a run draws everything from derive_engine(seed, t): first the
// top and bottom strings, then (if the statistic needs one) the crossing
// assignment. Per-trial values are integers and are summed exactly, so a
// report does not depend on the number of workers.

#include "meander/codes.hpp"
#include "meander/combinatorics.hpp"
#include "meander/diagram.hpp"
#include "meander/pstring.hpp"
#include "meander/random.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace meander {

enum class Statistic {
  PiercedCircles,
  Nestings,
  NestingBigons,
  FaceBigons,
  Twists,
  Components,
  UnlinkedCircleFraction,
  CrossingCount,
};

inline constexpr std::array<std::pair<Statistic, std::string_view>, 8> kStatisticNames{{
    {Statistic::PiercedCircles, "pierced_circles"},
    {Statistic::Nestings, "nestings"},
    {Statistic::NestingBigons, "nesting_bigons"},
    {Statistic::FaceBigons, "face_bigons"},
    {Statistic::Twists, "twists"},
    {Statistic::Components, "components"},
    {Statistic::UnlinkedCircleFraction, "unlinked_circle_fraction"},
    {Statistic::CrossingCount, "crossing_count"},
}};

inline std::string_view to_string(Statistic s) {
  for (const auto& [stat, name] : kStatisticNames) {
    if (stat == s) return name;
  }
  return "unknown";
}

inline std::optional<Statistic> parse_statistic(std::string_view name) {
  for (const auto& [stat, n] : kStatisticNames) {
    if (n == name) return stat;
  }
  return std::nullopt;
}

struct ExperimentReport {
  Statistic statistic = Statistic::PiercedCircles;
  unsigned s = 0;
  unsigned r = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double empirical_mean = 0.0;
  double empirical_stderr = 0.0;
  std::optional<Rational> closed_form;
  std::optional<double> z_score;
};

/// Exact expectation of a statistic, when one is known.
inline std::optional<Rational> closed_form(Statistic stat, unsigned s, unsigned r) {
  switch (stat) {
    case Statistic::PiercedCircles:
      return expected_pierced_circles(s);
    case Statistic::Nestings:
      return expected_nestings(s);
    case Statistic::NestingBigons:
      return expected_bigons(s);
    case Statistic::Twists:
      return expected_twists(s, r);
    case Statistic::UnlinkedCircleFraction:
      return Rational(BigInt(1), BigInt(1) << r);
    case Statistic::CrossingCount:
      return Rational(BigInt(2 * s - 1) * r * r);
    case Statistic::FaceBigons:
    case Statistic::Components:
      return std::nullopt;
  }
  return std::nullopt;
}

inline constexpr unsigned kMaxPairs = 100000;
inline constexpr unsigned kMaxCabling = 256;
inline constexpr std::uint64_t kMaxAssembledCrossings = 10'000'000;

namespace detail {

inline bool needs_assembly(Statistic stat) {
  return stat == Statistic::FaceBigons || stat == Statistic::Components ||
         stat == Statistic::UnlinkedCircleFraction || stat == Statistic::CrossingCount;
}

inline void check_experiment(Statistic stat, unsigned s, unsigned r, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("run_monte_carlo: trials must be at least 1");
  if (s == 0 || s > kMaxPairs) throw std::out_of_range("run_monte_carlo: s must lie in [1, " + std::to_string(kMaxPairs) + "]");
  if (r == 0 || r > kMaxCabling) {
    throw std::out_of_range("run_monte_carlo: r must lie in [1, " + std::to_string(kMaxCabling) + "]");
  }
  if (needs_assembly(stat) && std::uint64_t{2 * s - 1} * r * r > kMaxAssembledCrossings) {
    throw std::out_of_range("run_monte_carlo: diagrams with more than " + std::to_string(kMaxAssembledCrossings) +
                            " crossings are not supported");
  }
  if (stat == Statistic::UnlinkedCircleFraction && s < 2) {
    throw std::out_of_range("run_monte_carlo: unlinked_circle_fraction needs s >= 2 (no pierced circles otherwise)");
  }
}

/// One trial. The unlinked-circle statistic resamples the skeleton from the
/// same stream until it has a pierced circle, then asks whether the first
/// copy of the leftmost circle is unlinked from every axis copy.
inline std::int64_t trial_value(Statistic stat, unsigned s, unsigned r, const PStringSampler& sampler, Engine& engine) {
  PString top = sampler(engine);
  PString bottom = sampler(engine);
  if (stat == Statistic::UnlinkedCircleFraction) {
    while (pierced_circles(MeanderGraph(top, bottom)).empty()) {
      top = sampler(engine);
      bottom = sampler(engine);
    }
  }
  const MeanderGraph g(std::move(top), std::move(bottom));
  switch (stat) {
    case Statistic::PiercedCircles:
      return static_cast<std::int64_t>(pierced_circles(g).size());
    case Statistic::Nestings:
      return static_cast<std::int64_t>(nestings(g.top()).size());
    case Statistic::NestingBigons:
      return nesting_bigons(g);
    case Statistic::Twists:
      return static_cast<std::int64_t>(std::uint64_t{g.vertex_count()} * r * r) - nesting_bigons(g);
    default:
      break;
  }
  const LinkDiagram d = assemble(g, r, sample_assignment(s, r, engine));
  switch (stat) {
    case Statistic::FaceBigons:
      return diagram_stats(d).bigons;
    case Statistic::Components:
      return static_cast<std::int64_t>(d.components().size());
    case Statistic::CrossingCount:
      return static_cast<std::int64_t>(d.crossing_count());
    case Statistic::UnlinkedCircleFraction: {
      const unsigned position = pierced_circles(g).front();
      const unsigned circle = circle_copies_at(d.projection(), position).front();
      for (unsigned q = 1; q <= r; ++q) {
        if (!circle_axis_unlinked(d, circle, q)) return 0;
      }
      return 1;
    }
    default:
      break;
  }
  throw std::logic_error("run_monte_carlo: unhandled statistic");
}

struct Tally {
  __int128 sum = 0;
  __int128 sum_squares = 0;
};

}  // namespace detail

inline ExperimentReport run_monte_carlo(Statistic stat, unsigned s, unsigned r, std::uint64_t trials, std::uint64_t seed,
                                        unsigned workers = 1) {
  detail::check_experiment(stat, s, r, trials);
  const PStringSampler sampler(s);
  workers = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(workers, trials)));

  std::vector<detail::Tally> tallies(workers);
  auto work = [&](unsigned w) {
    const std::uint64_t begin = trials * w / workers;
    const std::uint64_t end = trials * (w + 1) / workers;
    detail::Tally& t = tallies[w];
    for (std::uint64_t i = begin; i < end; ++i) {
      Engine engine = derive_engine(seed, i);
      const std::int64_t x = detail::trial_value(stat, s, r, sampler, engine);
      t.sum += x;
      t.sum_squares += static_cast<__int128>(x) * x;
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  detail::Tally total;
  for (const auto& t : tallies) {
    total.sum += t.sum;
    total.sum_squares += t.sum_squares;
  }
  const auto n = static_cast<__int128>(trials);
  ExperimentReport rep;
  rep.statistic = stat;
  rep.s = s;
  rep.r = r;
  rep.trials = trials;
  rep.seed = seed;
  rep.empirical_mean = static_cast<double>(total.sum) / static_cast<double>(trials);
  if (trials > 1) {
    // variance of the mean: (n sum x^2 - (sum x)^2) / (n^2 (n - 1)), numerator exact
    const __int128 spread = n * total.sum_squares - total.sum * total.sum;
    const double var_mean = static_cast<double>(spread) / (static_cast<double>(trials) * static_cast<double>(trials) *
                                                           static_cast<double>(trials - 1));
    rep.empirical_stderr = std::sqrt(var_mean);
  }
  rep.closed_form = closed_form(stat, s, r);
  if (rep.closed_form && rep.empirical_stderr > 0.0) {
    rep.z_score = (rep.empirical_mean - to_double(*rep.closed_form)) / rep.empirical_stderr;
  }
  return rep;
}

// Exhaustive checks -----------------------------------------------------------

inline constexpr unsigned kMaxEnumerationPairs = 6;

struct EnumerationReport {
  unsigned s = 0;
  std::map<unsigned, std::uint64_t> histogram;  // pierced circles -> graphs
  std::map<unsigned, bool> matches_formula;     // every k in [0, s]

  bool all_match() const {
    return std::all_of(matches_formula.begin(), matches_formula.end(), [](const auto& kv) { return kv.second; });
  }
};

inline EnumerationReport run_enumeration(unsigned s) {
  if (s == 0 || s > kMaxEnumerationPairs) {
    throw std::out_of_range("run_enumeration: s must lie in [1, " + std::to_string(kMaxEnumerationPairs) + "]");
  }
  const auto strings = enumerate_all(s);
  EnumerationReport rep;
  rep.s = s;
  for (const PString& top : strings) {
    for (const PString& bottom : strings) ++rep.histogram[static_cast<unsigned>(pierced_circles(MeanderGraph(top, bottom)).size())];
  }
  const CountTable table = count_table(s);
  for (unsigned k = 0; k <= s; ++k) {
    const auto it = rep.histogram.find(k);
    const std::uint64_t observed = it == rep.histogram.end() ? 0 : it->second;
    rep.matches_formula[k] = BigInt(observed) == table.entries.at(k).e_value;
  }
  return rep;
}

inline constexpr unsigned kMaxUnlinkedCabling = 10;

/// Fraction of the 4^r sense combinations on one pierced-circle copy (two
/// crossings with each of the r axis copies) that leave it unlinked from all
/// axis copies. Uses the skeleton "()()" over "(())", whose circle sits at
/// position 1; every other letter is held at Over.
inline Rational run_unlinked_exact(unsigned r) {
  if (r == 0 || r > kMaxUnlinkedCabling) {
    throw std::out_of_range("run_unlinked_exact: r must lie in [1, " + std::to_string(kMaxUnlinkedCabling) + "]");
  }
  const MeanderGraph g(PString::parse("()()"), PString::parse("(())"));
  const LinkDiagram base = assemble(g, r, CrossingAssignment(2, r, std::vector<Sense>(3 * std::size_t{r} * r, Sense::Over)));
  const unsigned circle = circle_copies_at(base.projection(), 1).front();

  // the 2r crossings between the circle copy and the axis copies
  std::vector<std::uint32_t> slots;
  for (const Pass& p : base.components()[circle - 1].passes) slots.push_back(p.crossing);
  if (slots.size() != 2 * std::size_t{r}) throw std::logic_error("run_unlinked_exact: circle copy has the wrong crossings");

  std::uint64_t unlinked = 0;
  const std::uint64_t combos = std::uint64_t{1} << (2 * r);
  std::vector<Sense> letters(3 * std::size_t{r} * r, Sense::Over);
  for (std::uint64_t mask = 0; mask < combos; ++mask) {
    for (std::size_t b = 0; b < slots.size(); ++b) letters[slots[b]] = (mask >> b) & 1 ? Sense::Under : Sense::Over;
    const LinkDiagram d = base.with_assignment(CrossingAssignment(2, r, letters));
    bool all = true;
    for (unsigned q = 1; q <= r && all; ++q) all = circle_axis_unlinked(d, circle, q);
    unlinked += all ? 1 : 0;
  }
  return Rational(BigInt(unlinked), BigInt(combos));
}

struct ConvergencePoint {
  unsigned s = 0;
  double a = 0.0;        // E(s,0) / C_s^2
  double e_ratio = 0.0;  // E(s+1,0) / E(s,0)
  double distance = 0.0; // |e_ratio - (7 + 4 sqrt 3)|
};

inline std::vector<unsigned> default_checkpoints() { return {10, 50, 100, 200}; }

inline std::vector<ConvergencePoint> run_convergence(unsigned max_s, std::vector<unsigned> checkpoints = default_checkpoints()) {
  if (max_s < 4) throw std::invalid_argument("run_convergence: max_s must be at least 4");
  const auto seq = ratio_sequence(max_s);
  const double dominant = characteristic_roots()[2];
  std::sort(checkpoints.begin(), checkpoints.end());
  std::vector<ConvergencePoint> out;
  for (unsigned s : checkpoints) {
    if (s < 1 || s > max_s) continue;
    const RatioPoint& p = seq[s - 1];
    ConvergencePoint c;
    c.s = s;
    c.a = to_double(p.a);
    c.e_ratio = p.e_ratio ? to_double(*p.e_ratio) : 0.0;
    c.distance = std::abs(c.e_ratio - dominant);
    out.push_back(c);
  }
  return out;
}

struct VolumeReport {
  unsigned s = 0;
  unsigned r = 0;
  bool alternating = false;
  Rational expected_twists;
  VolumeBounds bounds;
  std::string upper_formula;
  std::optional<std::string> lower_formula;
};

inline VolumeReport expected_volume_report(unsigned s, unsigned r, bool alternating) {
  VolumeReport rep;
  rep.s = s;
  rep.r = r;
  rep.alternating = alternating;
  rep.expected_twists = expected_twists(s, r);
  rep.bounds = volume_bounds(s, r, alternating);
  const BigInt twists = boost::multiprecision::numerator(rep.expected_twists);
  rep.upper_formula = "10*v3*(" + std::to_string(volume_upper_multiplier(s, r)) + ")";
  if (rep.bounds.lower) rep.lower_formula = "v3*(" + BigInt(twists - 4).str() + ")/2";
  return rep;
}

// Serialization -------------------------------------------------------------------

inline nlohmann::json to_json(const ExperimentReport& rep) {
  nlohmann::json j;
  j["statistic"] = std::string(to_string(rep.statistic));
  j["s"] = rep.s;
  j["r"] = rep.r;
  j["trials"] = rep.trials;
  j["seed"] = rep.seed;
  j["mean"] = rep.empirical_mean;
  j["stderr"] = rep.empirical_stderr;
  j["closed_form"] = rep.closed_form ? nlohmann::json(to_string(*rep.closed_form)) : nlohmann::json(nullptr);
  j["z"] = rep.z_score ? nlohmann::json(*rep.z_score) : nlohmann::json(nullptr);
  return j;
}

inline constexpr std::string_view kReportCsvHeader = "statistic,s,r,trials,seed,mean,stderr,closed_form,z";

inline std::string to_csv_row(const ExperimentReport& rep) {
  const nlohmann::json j = to_json(rep);
  std::string row;
  for (const char* key : {"statistic", "s", "r", "trials", "seed", "mean", "stderr", "closed_form", "z"}) {
    if (!row.empty()) row += ',';
    const nlohmann::json& v = j.at(key);
    if (v.is_null()) continue;
    row += v.is_string() ? v.get<std::string>() : v.dump();
  }
  return row;
}

}  // namespace meander
