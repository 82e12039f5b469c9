#include <cmath>
#include <limits>
#include <random>
#include <thread>
#include <atomic>

#include <gtest/gtest.h>

#include "pharmrel/format.hpp"
#include "pharmrel/reliability.hpp"
#include "test_support.hpp"

using namespace pharmrel;

namespace {

const EchelonRates kBase = baseline_rates();

// Availabilities of the case-study components, straight from the mean times.
const double a_s = 17.3 / (17.3 + 1.2);
const double a_p = 28.2 / (28.2 + 0.8);
const double a_l = 8.5 / (8.5 + 0.08);
const double q_s = 1.2 / 18.5;
const double q_p = 0.8 / 29.0;
const double q_l = 0.08 / 8.58;

}  // namespace

TEST(ComponentAvailability, Examples)
{
  EXPECT_DOUBLE_EQ(component_availability(1.0, 1.0), 0.5);
  EXPECT_NEAR(component_availability(17.3, 1.2), 0.935135, 1e-6);
  EXPECT_NEAR(component_availability(8.5, 0.08), 0.990676, 1e-6);
}

TEST(ComponentAvailability, RejectsDegenerateInputs)
{
  const double inf = std::numeric_limits<double>::infinity();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (auto [mtf, mtr] : {std::pair{0.0, 1.0}, {1.0, 0.0}, {-1.0, 1.0}, {1.0, -2.0}, {inf, 1.0}, {1.0, inf},
                          {nan, 1.0}, {1.0, nan}}) {
    EXPECT_THROW(component_availability(mtf, mtr), Error) << mtf << " " << mtr;
  }
  try {
    component_availability(-1.0, 1.0);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidParameter);
    EXPECT_EQ(e.field(), "mtf");
  }
}

TEST(ComponentAvailability, RejectsAvailabilityRoundingToOne)
{
  EXPECT_THROW(component_availability(1.0, 1e-300), Error);
}

TEST(RApi, Examples)
{
  EXPECT_NEAR(r_api({1, 1, 1}, kBase), a_s, 1e-15);
  EXPECT_NEAR(r_api({1, 1, 1}, kBase), 0.935135, 1e-6);
  EXPECT_NEAR(r_api({2, 1, 1}, kBase), 1.0 - std::pow(1.2 / 18.5, 2), 1e-15);
  EXPECT_NEAR(r_api({2, 1, 1}, kBase), 0.995793, 1e-6);
  EXPECT_NEAR(r_api({3, 1, 1}, kBase), 1.0 - std::pow(1.2 / 18.5, 3), 1e-15);
  EXPECT_NEAR(r_api({3, 1, 1}, kBase), 0.999727, 1e-6);
}

TEST(RApi, StrictlyIncreasingInSuppliers)
{
  for (int z = 1; z < 10; ++z) EXPECT_LT(r_api({z, 1, 1}, kBase), r_api({z + 1, 1, 1}, kBase));
}

TEST(RPl, Examples)
{
  EXPECT_NEAR(r_pl({1, 1, 1}, kBase), a_p * a_l, 1e-15);
  EXPECT_NEAR(r_pl({1, 1, 1}, kBase), 0.963347, 1e-6);
  const double g1 = q_p + a_p * q_l;
  EXPECT_NEAR(g1, 0.036653, 1e-6);
  EXPECT_NEAR(r_pl({1, 2, 1}, kBase), 1.0 - g1 * g1, 1e-15);
  EXPECT_NEAR(r_pl({1, 2, 1}, kBase), 0.998657, 1e-6);
  EXPECT_NEAR(r_pl({1, 1, 2}, kBase), 1.0 - (q_p + a_p * q_l * q_l), 1e-15);
  EXPECT_NEAR(r_pl({1, 1, 2}, kBase), 0.972325, 1e-5);
}

TEST(SystemReliability, CaseStudyValues)
{
  EXPECT_NEAR(system_reliability({1, 1, 1}, kBase), a_s * a_p * a_l, 1e-15);
  EXPECT_NEAR(system_reliability({1, 1, 1}, kBase), 0.90090, 5e-5);
  EXPECT_NEAR(system_reliability({2, 1, 2}, kBase), 0.968, 1e-3);
  EXPECT_NEAR(system_reliability({2, 2, 1}, kBase), 0.99446, 1e-5);
  EXPECT_EQ(format::percent(expected_shortage({1, 1, 1}, kBase), 1), "9.9%");
  EXPECT_EQ(format::percent(expected_shortage({2, 1, 2}, kBase), 1), "3.2%");
  EXPECT_EQ(format::percent(expected_shortage({2, 2, 1}, kBase), 1), "0.6%");
}

TEST(ExpectedShortage, CaseStudyValues)
{
  EXPECT_NEAR(expected_shortage({1, 1, 1}, kBase), 0.099, 5e-4);
  EXPECT_NEAR(expected_shortage({1, 2, 1}, kBase), 0.066, 5e-4);
  EXPECT_LT(expected_shortage({3, 3, 1}, kBase), 0.0005);
  EXPECT_NEAR(expected_shortage({1, 1, 1}, kBase), 1.0 - system_reliability({1, 1, 1}, kBase), 1e-15);
  EXPECT_NEAR(expected_shortage({2, 2, 1}, kBase), 1.0 - (1.0 - q_s * q_s) * (1.0 - std::pow(q_p + a_p * q_l, 2)), 1e-15);
}

TEST(Criticality, Examples)
{
  EXPECT_NEAR(crit_api({1, 1, 1}, kBase), r_pl({1, 1, 1}, kBase), 1e-15);
  EXPECT_NEAR(crit_api({1, 1, 1}, kBase), 0.963347, 1e-6);
  EXPECT_NEAR(crit_api({2, 1, 1}, kBase), r_pl({1, 1, 1}, kBase) * q_s, 1e-15);
  EXPECT_NEAR(crit_api({2, 1, 1}, kBase), 0.062487, 1e-6);

  EXPECT_NEAR(crit_plant({1, 1, 1}, kBase), a_s * a_l, 1e-15);
  EXPECT_NEAR(crit_plant({1, 1, 1}, kBase), 0.926421, 1e-5);
  EXPECT_NEAR(crit_plant({1, 2, 1}, kBase), a_s * a_l * (q_p + a_p * q_l), 1e-15);
  EXPECT_NEAR(crit_plant({1, 2, 1}, kBase), 0.033956, 1e-6);

  EXPECT_NEAR(crit_line({1, 1, 1}, kBase), a_s * a_p, 1e-15);
  EXPECT_NEAR(crit_line({1, 1, 1}, kBase), 0.909335, 1e-5);
  EXPECT_NEAR(crit_line({1, 1, 2}, kBase), a_s * a_p * q_l, 1e-15);
  EXPECT_NEAR(crit_line({1, 1, 2}, kBase), 0.008477, 1e-5);
}

TEST(MeanTimes, CaseStudyValues)
{
  EXPECT_EQ(format::years(mean_uptime({1, 1, 1}, kBase)), "4.7");
  EXPECT_EQ(format::years(mean_uptime({2, 2, 1}, kBase)), "56.0");
  EXPECT_EQ(format::years(mean_uptime({1, 2, 1}, apply(kBase, {0.5, 1.0}))), "31.5");
  EXPECT_EQ(format::years(mean_downtime({1, 1, 1}, kBase)), "0.5");
  EXPECT_EQ(format::years(mean_downtime({1, 1, 2}, kBase)), "1.0");
}

// Lean chain, worked by hand: the system leaves the up state whenever any of
// the three series components fails.
TEST(MeanTimes, LeanChainIsSeriesSystem)
{
  const double lambda_sum = 1.0 / 17.3 + 1.0 / 28.2 + 1.0 / 8.5;
  EXPECT_NEAR(mean_uptime({1, 1, 1}, kBase), 1.0 / lambda_sum, 1e-12);
}

TEST(MeanTimes, DowntimeIncreasesWithBackupLine)
{
  EXPECT_GT(mean_downtime({1, 1, 2}, kBase), mean_downtime({1, 1, 1}, kBase));
}

TEST(Evaluate, MatchesIndividualOperations)
{
  for (const Configuration cfg : {Configuration{1, 1, 1}, {2, 3, 1}, {3, 2, 4}, {5, 5, 5}}) {
    const auto rep = evaluate(cfg, kBase);
    EXPECT_EQ(rep.r, system_reliability(cfg, kBase));
    EXPECT_EQ(rep.s, expected_shortage(cfg, kBase));
    EXPECT_EQ(rep.r_api, r_api(cfg, kBase));
    EXPECT_EQ(rep.r_pl, r_pl(cfg, kBase));
    EXPECT_EQ(rep.crit_api, crit_api(cfg, kBase));
    EXPECT_EQ(rep.crit_plant, crit_plant(cfg, kBase));
    EXPECT_EQ(rep.crit_line, crit_line(cfg, kBase));
    EXPECT_EQ(rep.mean_uptime, mean_uptime(cfg, kBase));
    EXPECT_EQ(rep.mean_downtime, mean_downtime(cfg, kBase));
  }
}

TEST(Evaluate, RejectsInvalidConfiguration)
{
  for (const Configuration cfg : {Configuration{0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {-3, 1, 1}}) {
    EXPECT_THROW(evaluate(cfg, kBase), Error);
  }
  try {
    evaluate({1, 1, 0}, kBase);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.field(), "z_l");
  }
}

TEST(Evaluate, RejectsInvalidRatesAndMultipliers)
{
  EchelonRates bad = kBase;
  bad.plant.mtr = -0.8;
  try {
    evaluate({1, 1, 1}, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.field(), "plant.mtr");
  }
  EXPECT_THROW(evaluate({1, 1, 1}, kBase, {0.0, 1.0}), Error);
  EXPECT_THROW(evaluate({1, 1, 1}, kBase, {1.0, -2.0}), Error);
}

TEST(Multipliers, IdentityAndScaling)
{
  EXPECT_EQ(apply(kBase, {}), kBase);
  const auto scaled = apply(kBase, {2.0, 4.0});
  EXPECT_DOUBLE_EQ(scaled.supplier.mtf, 17.3 / 2.0);
  EXPECT_DOUBLE_EQ(scaled.line.mtr, 0.08 / 4.0);
  EXPECT_EQ(evaluate({2, 2, 1}, kBase, {}), evaluate({2, 2, 1}, kBase));
}

TEST(Ipow, SmallAndLargeExponents)
{
  EXPECT_EQ(ipow(0.5, 0), 1.0);
  EXPECT_EQ(ipow(0.5, 3), 0.125);
  EXPECT_NEAR(ipow(0.99, 100), std::pow(0.99, 100), 1e-15);
  EXPECT_THROW(ipow(2.0, -1), Error);
}

// Properties over random rates and configurations.

TEST(Properties, ErgodicityIdentity)
{
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const auto rates = test_support::random_rates(rng);
    const auto cfg = test_support::random_configuration(rng, 6);
    const auto rep = evaluate(cfg, rates);
    const double lhs = rep.mean_uptime / (rep.mean_uptime + rep.mean_downtime);
    EXPECT_NEAR(lhs, 1.0 - rep.s, 1e-12 * (1.0 - rep.s)) << cfg.label();
  }
}

TEST(Properties, BoundsAndShortageComplement)
{
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto rates = test_support::random_rates(rng);
    const auto cfg = test_support::random_configuration(rng, 4);
    const auto rep = evaluate(cfg, rates);
    EXPECT_NEAR(rep.s, 1.0 - rep.r, 4e-16);
    EXPECT_GT(rep.r, 0.0);
    EXPECT_LT(rep.r, 1.0);
    EXPECT_GT(rep.s, 0.0);
    EXPECT_LT(rep.s, 1.0);
    EXPECT_GT(rep.mean_uptime, 0.0);
    EXPECT_GT(rep.mean_downtime, 0.0);
    for (double p : {rep.r_api, rep.r_pl, rep.crit_api, rep.crit_plant, rep.crit_line}) {
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, 1.0);
    }
  }
}

TEST(Properties, RedundancyMonotonicity)
{
  std::mt19937_64 rng(13);
  int strict = 0;
  for (int i = 0; i < 500; ++i) {
    const auto rates = test_support::random_rates(rng);
    const auto cfg = test_support::random_configuration(rng, 5);
    const double s = expected_shortage(cfg, rates);
    for (int axis = 0; axis < 3; ++axis) {
      Configuration more = cfg;
      (axis == 0 ? more.z_api : axis == 1 ? more.z_p : more.z_l) += 1;
      const double s_more = expected_shortage(more, rates);
      // Below double resolution the two values may differ by rounding only.
      EXPECT_LE(s_more, s * (1 + 1e-14)) << cfg.label() << " axis " << axis;
      if (test_support::decrease_resolvable(cfg, more, rates)) {
        ++strict;
        EXPECT_LT(s_more, s) << cfg.label() << " axis " << axis;
      }
    }
  }
  EXPECT_GT(strict, 1000);
}

TEST(Properties, StrictRedundancyMonotonicityAtBaseline)
{
  for (int a = 1; a <= 5; ++a)
    for (int p = 1; p <= 5; ++p)
      for (int l = 1; l <= 5; ++l) {
        const double s = expected_shortage({a, p, l}, kBase);
        EXPECT_LT(expected_shortage({a + 1, p, l}, kBase), s);
        EXPECT_LT(expected_shortage({a, p + 1, l}, kBase), s);
        EXPECT_LT(expected_shortage({a, p, l + 1}, kBase), s);
      }
}

TEST(Properties, SmallShortagesKeepRelativePrecision)
{
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    const auto rates = test_support::random_rates(rng);
    const auto cfg = test_support::random_configuration(rng, 5);
    const long double exact = test_support::shortage_extended(cfg, rates);
    EXPECT_NEAR(expected_shortage(cfg, rates) / exact, 1.0L, 1e-13) << cfg.label();
  }
}

TEST(Properties, DiminishingReturnsAtBaseline)
{
  for (int a = 1; a <= 3; ++a)
    for (int p = 1; p <= 3; ++p)
      for (int l = 1; l <= 3; ++l) {
        for (int axis = 0; axis < 3; ++axis) {
          auto at = [&](int z) {
            Configuration c{a, p, l};
            (axis == 0 ? c.z_api : axis == 1 ? c.z_p : c.z_l) = z;
            return expected_shortage(c, kBase);
          };
          for (int z = 1; z <= 3; ++z) {
            EXPECT_LT(at(z + 1) - at(z + 2), at(z) - at(z + 1)) << a << p << l << " axis " << axis << " z " << z;
          }
        }
      }
}

TEST(Properties, RateMonotonicity)
{
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> m(0.1, 5.0);
  for (int i = 0; i < 300; ++i) {
    const auto cfg = test_support::random_configuration(rng, 4);
    const double lo = m(rng);
    const double hi = lo * 1.1;
    EXPECT_LT(evaluate(cfg, kBase, {lo, 1.0}).s, evaluate(cfg, kBase, {hi, 1.0}).s) << cfg.label();
    EXPECT_GT(evaluate(cfg, kBase, {1.0, lo}).s, evaluate(cfg, kBase, {1.0, hi}).s) << cfg.label();
  }
}

TEST(Properties, ConcurrentEvaluationIsPure)
{
  const auto expected = evaluate({2, 3, 2}, kBase);
  std::vector<std::jthread> threads;
  std::atomic<int> mismatches{0};
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 2000; ++i) {
        if (!(evaluate({2, 3, 2}, kBase) == expected)) ++mismatches;
      }
    });
  }
  threads.clear();
  EXPECT_EQ(mismatches.load(), 0);
}
