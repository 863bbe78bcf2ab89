#include <gtest/gtest.h>

#include <cmath>

#include "effectplan/errors.hpp"
#include "effectplan/format.hpp"
#include "effectplan/normal.hpp"
#include "effectplan/power.hpp"

using namespace effectplan;

namespace {

// Closed-form reference: n = 2 ((z_{1-a/2} + z_{power}) / d)^2.
double formula_n(double d, double alpha, double power) {
  const double z = normal_quantile(1.0 - alpha / 2.0) + normal_quantile(power);
  return 2.0 * z * z / (d * d);
}

}  // namespace

TEST(AchievedPowerSmd, Examples) {
  for (long long n : {2LL, 10LL, 1000LL}) {
    EXPECT_NEAR(achieved_power_smd(SmdValue(0.0), n, 0.05), 0.05, 1e-15);
  }
  EXPECT_NEAR(achieved_power_smd(SmdValue(0.5), 64, 0.05), 0.8074, 1e-4);
  EXPECT_GE(achieved_power_smd(SmdValue(0.2), 394, 0.05), 0.80);
  EXPECT_EQ(achieved_power_smd(SmdValue(0.3), 50, 0.05), achieved_power_smd(SmdValue(-0.3), 50, 0.05));
  EXPECT_EQ(achieved_power_smd(SmdValue(0.3), 50, 0.05), achieved_power_smd(SmdValue(0.3), 50, 50, 0.05));
  EXPECT_THROW(achieved_power_smd(SmdValue(0.3), 1, 0.05), DomainError);
  EXPECT_THROW(achieved_power_smd(SmdValue(0.3), 10, 1.0), DomainError);
}

TEST(RequiredNSmd, Examples) {
  const PowerSpec spec;
  const auto small = required_n_smd(SmdValue(0.2), spec);
  EXPECT_EQ(small.n_per_group, 393);
  EXPECT_EQ(small.n_total, 786);
  EXPECT_FALSE(small.floored);

  const auto huge = required_n_smd(SmdValue(2.0), spec);
  EXPECT_EQ(huge.n_per_group, kMinGroupSize);
  EXPECT_FALSE(huge.floored);  // formula gives 3.93, so n = 4 is already the analytic answer
  EXPECT_GE(huge.achieved_power_at_n, 0.80);
  EXPECT_LT(achieved_power_smd(SmdValue(2.0), 3, 0.05), 0.80);

  const auto raised = required_n_smd(SmdValue(3.0), spec);
  EXPECT_EQ(raised.n_per_group, kMinGroupSize);
  EXPECT_TRUE(raised.floored);

  EXPECT_EQ(required_n_smd(SmdValue(0.016), spec).n_per_group, 61320);
  EXPECT_NEAR(formula_n(0.016, 0.05, 0.80), 61319.37, 0.01);
}

TEST(RequiredNSmd, NullEffectIsDomainError) {
  try {
    required_n_smd(SmdValue(0.0), PowerSpec{});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("no finite n detects a null effect"), std::string::npos);
  }
}

TEST(RequiredNSmd, InvalidSpec) {
  EXPECT_THROW(required_n_smd(SmdValue(0.2), PowerSpec{.alpha = 0.0}), DomainError);
  EXPECT_THROW(required_n_smd(SmdValue(0.2), PowerSpec{.target_power = 1.0}), DomainError);
}

TEST(RequiredNSmd, CeilingConsistency) {
  for (double alpha : {0.01, 0.05, 0.1}) {
    for (double power : {0.5, 0.8, 0.9, 0.95}) {
      for (double d = 0.05; d < 2.0; d += 0.0137) {
        const auto res = required_n_smd(SmdValue(d), PowerSpec{.alpha = alpha, .target_power = power});
        ASSERT_GE(achieved_power_smd(SmdValue(d), res.n_per_group, alpha), power);
        if (!res.floored) {
          ASSERT_LT(achieved_power_smd(SmdValue(d), res.n_per_group - 1, alpha), power) << d;
        }
      }
    }
  }
}

TEST(PowerProperties, Monotone) {
  long long prev_n = required_n_smd(SmdValue(0.01), PowerSpec{}).n_per_group;
  for (double d = 0.02; d <= 3.0; d += 0.01) {
    const long long n = required_n_smd(SmdValue(d), PowerSpec{}).n_per_group;
    ASSERT_LE(n, prev_n);
    prev_n = n;
  }
  for (long long n = 2; n < 400; ++n) {
    ASSERT_LT(achieved_power_smd(SmdValue(0.2), n, 0.05), achieved_power_smd(SmdValue(0.2), n + 1, 0.05));
  }
  for (double d = 0.0; d < 1.5; d += 0.01) {
    ASSERT_LT(achieved_power_smd(SmdValue(d), 30, 0.05), achieved_power_smd(SmdValue(d + 0.01), 30, 0.05));
  }
}

TEST(MdeSmd, Examples) {
  EXPECT_NEAR(mde_smd(500, PowerSpec{}).d_min, 0.1772, 5e-5);
  EXPECT_EQ(format_fixed(mde_smd(2, PowerSpec{}).d_min, 4), "2.8016");
  EXPECT_THROW(mde_smd(1, PowerSpec{}), DomainError);
}

TEST(MdeSmd, RoundTripsThroughPower) {
  for (long long n : {2LL, 5LL, 20LL, 64LL, 500LL, 100000LL}) {
    for (double power : {0.2, 0.5, 0.8, 0.95}) {
      const PowerSpec spec{.target_power = power};
      const double d = mde_smd(n, spec).d_min;
      EXPECT_NEAR(achieved_power_smd(SmdValue(d), n, spec.alpha), power, 1e-10) << n << " " << power;
    }
  }
}

TEST(TwoProportions, Examples) {
  const PowerSpec spec;
  const auto rd = required_n_two_proportions(OutcomeContext(0.2),
                                             RiskDifferenceValue(0.064, OutcomeContext(0.2)), spec);
  EXPECT_EQ(rd.n_per_group, 682);
  const auto rr = required_n_two_proportions(OutcomeContext(0.01),
                                             RelativeRiskValue(2.44, OutcomeContext(0.01)), spec);
  EXPECT_EQ(rr.n_per_group, 1279);
  for (const auto& res : {rd, rr}) {
    EXPECT_GE(res.achieved_power_at_n, 0.80);
  }
}

TEST(TwoProportions, Boundaries) {
  const PowerSpec spec;
  // Exposed risk of exactly 1: the value is representable but has no finite n.
  EXPECT_THROW(required_n_two_proportions(OutcomeContext(0.5), RiskDifferenceValue(0.5, OutcomeContext(0.5)),
                                          spec),
               DomainError);
  EXPECT_THROW(required_n_two_proportions(OutcomeContext(0.2), RelativeRiskValue(1.0, OutcomeContext(0.2)),
                                          spec),
               DomainError);
  EXPECT_THROW(required_n_two_proportions(OutcomeContext(0.2), RelativeRiskValue(5.0, OutcomeContext(0.2)),
                                          spec),
               DomainError);
  EXPECT_THROW(exposed_risk(OutcomeContext(0.3), RelativeRiskValue(1.5, OutcomeContext(0.2))), ConfigError);
}

TEST(TwoProportions, CeilingConsistency) {
  const PowerSpec spec;
  for (double p0 : {0.01, 0.05, 0.2, 0.5}) {
    for (double rr : {0.5, 1.2, 1.5, 1.9}) {
      const OutcomeContext ctx(p0);
      const auto res = required_n_two_proportions(ctx, RelativeRiskValue(rr, ctx), spec);
      const double p1 = p0 * rr;
      EXPECT_GE(achieved_power_two_proportions(p0, p1, res.n_per_group, res.n_group2, 0.05), 0.80);
      if (!res.floored) {
        EXPECT_LT(achieved_power_two_proportions(p0, p1, res.n_per_group - 1, res.n_group2 - 1, 0.05), 0.80);
      }
    }
  }
}
