#include "meander/experiments.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace meander;

TEST(Statistic, Names) {
  for (const auto& [stat, name] : kStatisticNames) {
    EXPECT_EQ(to_string(stat), name);
    EXPECT_EQ(parse_statistic(name), stat);
  }
  EXPECT_FALSE(parse_statistic("volume").has_value());
}

TEST(ClosedForm, Values) {
  EXPECT_EQ(*closed_form(Statistic::NestingBigons, 10, 1), 11);
  EXPECT_EQ(*closed_form(Statistic::Nestings, 10, 3), Rational(11, 2));
  EXPECT_EQ(*closed_form(Statistic::Twists, 20, 3), 330);
  EXPECT_EQ(*closed_form(Statistic::UnlinkedCircleFraction, 5, 3), Rational(1, 8));
  EXPECT_EQ(*closed_form(Statistic::CrossingCount, 4, 2), 28);
  EXPECT_EQ(*closed_form(Statistic::PiercedCircles, 20, 2), Rational(931, 338));
  EXPECT_FALSE(closed_form(Statistic::Components, 5, 2).has_value());
  EXPECT_FALSE(closed_form(Statistic::FaceBigons, 5, 2).has_value());
}

TEST(MonteCarlo, CrossingCountIsConstant) {
  const ExperimentReport rep = run_monte_carlo(Statistic::CrossingCount, 4, 2, 100, kDefaultSeed);
  EXPECT_EQ(rep.empirical_mean, 28.0);
  EXPECT_EQ(rep.empirical_stderr, 0.0);
  EXPECT_FALSE(rep.z_score.has_value());
}

TEST(MonteCarlo, NestingBigonsAtTen) {
  const ExperimentReport rep = run_monte_carlo(Statistic::NestingBigons, 10, 1, 100000, 7);
  EXPECT_EQ(*rep.closed_form, 11);
  ASSERT_TRUE(rep.z_score.has_value());
  EXPECT_LT(std::abs(*rep.z_score), 4.0);
}

TEST(MonteCarlo, UnlinkedAtOne) {
  const ExperimentReport rep = run_monte_carlo(Statistic::UnlinkedCircleFraction, 4, 1, 20000, 3);
  EXPECT_LT(std::abs(*rep.z_score), 4.0);
}

TEST(MonteCarlo, ComponentsWithinBounds) {
  const ExperimentReport rep = run_monte_carlo(Statistic::Components, 6, 2, 2000, 9);
  EXPECT_GE(rep.empirical_mean, 2.0);
  EXPECT_LE(rep.empirical_mean, 12.0);
}

TEST(MonteCarlo, WorkerIndependent) {
  for (Statistic stat : {Statistic::Twists, Statistic::FaceBigons}) {
    const ExperimentReport a = run_monte_carlo(stat, 7, 2, 3001, 11, 1);
    const ExperimentReport b = run_monte_carlo(stat, 7, 2, 3001, 11, 4);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
    EXPECT_EQ(to_csv_row(a), to_csv_row(b));
  }
  const ExperimentReport c = run_monte_carlo(Statistic::Twists, 7, 2, 3001, 12, 1);
  EXPECT_NE(to_json(c).dump(), to_json(run_monte_carlo(Statistic::Twists, 7, 2, 3001, 11, 1)).dump());
}

TEST(MonteCarlo, Errors) {
  EXPECT_THROW(run_monte_carlo(Statistic::Twists, 5, 1, 0, 1), std::invalid_argument);
  EXPECT_THROW(run_monte_carlo(Statistic::Twists, 0, 1, 10, 1), std::out_of_range);
  EXPECT_THROW(run_monte_carlo(Statistic::UnlinkedCircleFraction, 1, 1, 10, 1), std::out_of_range);
}

TEST(Report, JsonAndCsvShape) {
  const ExperimentReport rep = run_monte_carlo(Statistic::Nestings, 5, 1, 500, 2);
  const nlohmann::json j = to_json(rep);
  for (const char* key : {"statistic", "s", "r", "trials", "seed", "mean", "stderr", "closed_form", "z"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j.at("statistic"), "nestings");
  EXPECT_EQ(j.at("closed_form"), "3");
  EXPECT_EQ(std::string(kReportCsvHeader), "statistic,s,r,trials,seed,mean,stderr,closed_form,z");
  const std::string row = to_csv_row(rep);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 8);
  EXPECT_EQ(row.rfind("nestings,5,1,500,2,", 0), 0u);
}

TEST(Enumeration, MatchesFormula) {
  for (unsigned s = 1; s <= 6; ++s) EXPECT_TRUE(run_enumeration(s).all_match()) << s;
  EXPECT_EQ(run_enumeration(3).histogram, (std::map<unsigned, std::uint64_t>{{0, 12}, {1, 10}, {2, 3}}));
  EXPECT_THROW(run_enumeration(7), std::out_of_range);
}

TEST(Unlinked, Exact) {
  for (unsigned r = 1; r <= 8; ++r) EXPECT_EQ(run_unlinked_exact(r), Rational(BigInt(1), BigInt(1) << r)) << r;
  EXPECT_THROW(run_unlinked_exact(0), std::out_of_range);
  EXPECT_THROW(run_unlinked_exact(11), std::out_of_range);
}

TEST(Convergence, Checkpoints) {
  const auto points = run_convergence(200);
  ASSERT_EQ(points.size(), 4u);
  EXPECT_EQ(points[0].s, 10u);
  EXPECT_NEAR(points[0].a, 0.18509, 1e-5);
  EXPECT_NEAR(points[0].e_ratio, 10.6753, 1e-4);
  EXPECT_NEAR(points[1].e_ratio, 13.1369, 1e-4);
  EXPECT_NEAR(points[2].a, 7.112e-7, 1e-9);
  EXPECT_NEAR(points[3].distance, 0.20604178, 1e-8);
  const auto four = run_convergence(4, {4});
  EXPECT_NEAR(four[0].a, 82.0 / 196.0, 1e-12);
  EXPECT_NEAR(four[0].e_ratio, 646.0 / 82.0, 1e-12);
  EXPECT_THROW(run_convergence(3), std::invalid_argument);
}

TEST(Volume, Report) {
  const VolumeReport a = expected_volume_report(10, 1, false);
  EXPECT_NEAR(a.bounds.upper, 71.04591244867575, 1e-9);
  EXPECT_EQ(a.upper_formula, "10*v3*(7)");
  EXPECT_EQ(a.expected_twists, 8);
  const VolumeReport b = expected_volume_report(3, 2, true);
  EXPECT_EQ(b.upper_formula, "10*v3*(14)");
  EXPECT_EQ(*b.lower_formula, "v3*(12)/2");
  EXPECT_TRUE(expected_volume_report(2, 1, false).bounds.vacuous);
}
