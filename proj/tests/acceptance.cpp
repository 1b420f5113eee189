// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes. Criteria named with
// --known-failure N are still evaluated and reported; the run then succeeds
// only if the failing set is exactly the known set.

#include "meander/cli.hpp"
#include "meander/codes.hpp"
#include "meander/combinatorics.hpp"
#include "meander/experiments.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace meander;

namespace {

constexpr std::uint64_t kSeed = kDefaultSeed;
constexpr std::uint64_t kTrials = 100000;
constexpr double kGate = 4.0;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) {
      pass = false;
      detail = why;
    }
  }
};

std::string fmt(double x, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << x;
  return os.str();
}

bool z_ok(const ExperimentReport& rep) { return rep.z_score && std::abs(*rep.z_score) < kGate; }

std::string z_text(const ExperimentReport& rep) {
  return std::string(to_string(rep.statistic)) + "(s=" + std::to_string(rep.s) + ",r=" + std::to_string(rep.r) +
         ") z=" + (rep.z_score ? fmt(*rep.z_score, 3) : std::string("n/a"));
}

Outcome enumeration() {
  Outcome o;
  std::uint64_t graphs = 0;
  for (unsigned s = 1; s <= 6; ++s) {
    const EnumerationReport rep = run_enumeration(s);
    for (const auto& [k, n] : rep.histogram) graphs += n;
    o.require(rep.all_match(), "histogram differs from E(s,k) at s=" + std::to_string(s));
  }
  if (o.pass) o.detail = std::to_string(graphs) + " graphs over s<=6 match E(s,k)";
  return o;
}

Outcome pierced_expectation() {
  Outcome o;
  for (unsigned s = 2; s <= 200; ++s) {
    o.require(expected_pierced_circles(s) == pierced_circles_closed_form(s),
              "O(s,1)/C_s^2 differs from the closed form at s=" + std::to_string(s));
  }
  const ExperimentReport rep = run_monte_carlo(Statistic::PiercedCircles, 20, 1, kTrials, kSeed);
  o.require(z_ok(rep), z_text(rep));
  if (o.pass) o.detail = "identity exact for 2<=s<=200; mean " + fmt(rep.empirical_mean) + " vs 931/338, " + z_text(rep);
  return o;
}

Outcome asymptote() {
  Outcome o;
  const Rational gap = expected_pierced_circles(6) - 1;
  const Rational abs_gap = gap < 0 ? Rational(-gap) : gap;
  o.require(abs_gap < Rational(13, 1000), "|E(6) - 1| = " + to_string(abs_gap));
  if (o.pass) o.detail = "|245/242 - 1| = " + to_string(abs_gap) + " < 0.013";
  return o;
}

Outcome recurrence() {
  Outcome o;
  for (unsigned s = 1; s <= 100; ++s) {
    const BigInt residual = zeilberger_residual(s);
    o.require(residual == 0, "residual " + residual.str() + " at s=" + std::to_string(s));
  }
  if (o.pass) o.detail = "residual 0 for 1<=s<=100";
  return o;
}

Outcome vanishing_ratio() {
  Outcome o;
  const auto seq = ratio_sequence(200);
  for (unsigned s = 3; s <= 200; ++s) {
    o.require(seq[s - 1].a < seq[s - 2].a, "a_s not decreasing at s=" + std::to_string(s));
  }
  for (unsigned s = 2; s <= 200; ++s) {
    o.require(*seq[s - 1].e_ratio < 16, "E(s+1,0)/E(s,0) >= 16 at s=" + std::to_string(s));
  }
  const double ratio = to_double(*seq[199].e_ratio);
  const double distance = std::abs(ratio - characteristic_roots()[2]);
  o.require(distance < 0.2, "|E(201,0)/E(200,0) - (7+4sqrt3)| = " + fmt(distance, 8) + " >= 0.2 (ratio " +
                                fmt(ratio, 10) + "); a_s decreasing and ratios < 16 hold");
  if (o.pass) o.detail = "a_s decreasing, ratios < 16, distance " + fmt(distance, 8);
  return o;
}

Outcome unlinked() {
  Outcome o;
  for (unsigned r = 1; r <= 8; ++r) {
    const Rational got = run_unlinked_exact(r);
    o.require(got == Rational(BigInt(1), BigInt(1) << r), "exact fraction " + to_string(got) + " at r=" + std::to_string(r));
  }
  const ExperimentReport rep = run_monte_carlo(Statistic::UnlinkedCircleFraction, 5, 3, kTrials, kSeed);
  o.require(z_ok(rep), z_text(rep));
  if (o.pass) o.detail = "exact 1/2^r for r<=8; mean " + fmt(rep.empirical_mean) + " vs 1/8, " + z_text(rep);
  return o;
}

Outcome nestings_bigons_twists() {
  Outcome o;
  double worst = 0.0;
  unsigned runs = 0;
  auto check = [&](Statistic stat, unsigned s, unsigned r) {
    const ExperimentReport rep = run_monte_carlo(stat, s, r, kTrials, kSeed);
    ++runs;
    o.require(z_ok(rep), z_text(rep));
    if (rep.z_score) worst = std::max(worst, std::abs(*rep.z_score));
  };
  for (unsigned s : {5u, 10u, 20u}) {
    // nestings and nesting bigons do not depend on r
    check(Statistic::Nestings, s, 1);
    check(Statistic::NestingBigons, s, 1);
    for (unsigned r : {1u, 2u, 3u}) check(Statistic::Twists, s, r);
  }
  for (unsigned n = 1; n <= 30; ++n) {
    BigInt sum = 0;
    for (unsigned k = 1; k <= n; ++k) sum += narayana(n, k);
    o.require(sum == catalan(n), "Narayana row sum differs from C_n at n=" + std::to_string(n));
  }
  if (o.pass) o.detail = std::to_string(runs) + " Monte Carlo runs, max |z| " + fmt(worst, 3) + "; Narayana sums exact for n<=30";
  return o;
}

Outcome structural() {
  Outcome o;
  const unsigned per_cell = 1112;  // 9 cells, 10008 diagrams
  unsigned checked = 0;
  unsigned nugatory_free = 0;
  for (unsigned s : {5u, 10u, 20u}) {
    const PStringSampler sampler(s);
    for (unsigned r : {1u, 2u, 3u}) {
      for (unsigned i = 0; i < per_cell && o.pass; ++i) {
        Engine engine = derive_engine(kSeed + 8, std::uint64_t{s} * 1000000 + r * 100000 + i);
        PString top = sampler(engine);
        PString bottom = sampler(engine);
        const LinkDiagram d = assemble(MeanderGraph(std::move(top), std::move(bottom)), r, sample_assignment(s, r, engine));
        const DiagramStats st = diagram_stats(d);
        const std::string where = " (s=" + std::to_string(s) + ", r=" + std::to_string(r) + ", #" + std::to_string(i) + ")";
        o.require(st.crossings == std::size_t{2 * s - 1} * r * r, "crossing count" + where);
        o.require(st.components >= r && st.components <= std::size_t{s} * r, "component bound" + where);
        o.require(st.faces == st.crossings + 2, "face count" + where);
        if (st.nugatory == 0) {
          ++nugatory_free;
          o.require(st.bigons == st.nesting_bigons, "bigons != nestings" + where);
        }
        ++checked;
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " diagrams, " + std::to_string(nugatory_free) + " nugatory-free";
  return o;
}

Outcome volume() {
  Outcome o;
  const double v3 = kIdealTetrahedronVolume;
  const VolumeReport a = expected_volume_report(10, 1, false);
  o.require(std::abs(a.bounds.upper - 10 * v3 * 7) < 1e-9 && std::abs(a.bounds.upper - 71.04591244867575) < 1e-9,
            "(10,1) upper " + fmt(a.bounds.upper, 15));
  const VolumeReport b = expected_volume_report(3, 2, true);
  o.require(b.bounds.lower && std::abs(*b.bounds.lower - 6 * v3) < 1e-9, "(3,2) lower bound");
  o.require(std::abs(b.bounds.upper - 140 * v3) < 1e-9, "(3,2) upper " + fmt(b.bounds.upper, 15));
  if (o.pass) {
    o.detail = "(10,1) upper " + fmt(a.bounds.upper, 12) + "; (3,2,alt) lower " + fmt(*b.bounds.lower, 12) + ", upper " +
               fmt(b.bounds.upper, 12);
  }
  return o;
}

Outcome reproducibility() {
  Outcome o;
  unsigned compared = 0;
  auto sample = [](const std::string& stat, const char* format, const char* workers) {
    const std::vector<const char*> argv{"meander", "sample",  "--stat",    stat.c_str(), "--s",     "8",   "--r", "2",
                                        "--trials", "5000",   "--seed",    "31337",      "--format", format, "--workers",
                                        workers};
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::make_pair(code, out.str());
  };
  for (const char* stat : {"twists", "face_bigons", "components", "unlinked_circle_fraction"}) {
    for (const char* format : {"json", "csv", "table"}) {
      const auto one = sample(stat, format, "1");
      const auto three = sample(stat, format, "3");
      o.require(one.first == 0 && three.first == 0, std::string("sample failed for ") + stat);
      o.require(one.second == three.second, std::string("reports differ across --workers for ") + stat + " " + format);
      ++compared;
    }
  }
  if (o.pass) o.detail = std::to_string(compared) + " report pairs byte-identical at --workers 1 and 3";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--known-failure" && i + 1 < argc) {
      known.insert(std::stoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--known-failure N]...\n";
      return 2;
    }
  }

  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "exact enumeration vs inclusion-exclusion", enumeration},
      {2, "expected pierced circles", pierced_expectation},
      {3, "asymptote at s=6", asymptote},
      {4, "recurrence residual", recurrence},
      {5, "vanishing-unknot ratio", vanishing_ratio},
      {6, "unlinked-circle probability", unlinked},
      {7, "nestings, bigons and twists", nestings_bigons_twists},
      {8, "structural invariants", structural},
      {9, "volume bound report", volume},
      {10, "reproducibility across workers", reproducibility},
  };

  std::cout << "seed " << kSeed << ", trials " << kTrials << ", gate |z| < " << kGate << '\n';
  std::set<int> failed;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) failed.insert(c.id);
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << " ("
              << fmt(seconds, 3) << " s)" << (!o.pass && known.count(c.id) ? " [known failure]" : "") << std::endl;
  }
  std::cout << (10 - failed.size()) << "/10 criteria pass" << std::endl;
  if (known.empty()) return failed.empty() ? 0 : 1;
  if (failed != known) {
    std::cout << "failing set differs from the known-failure set" << std::endl;
    return 1;
  }
  return 0;
}
