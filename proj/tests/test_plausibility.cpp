#include <gtest/gtest.h>

#include <algorithm>

#include "effectplan/plausibility.hpp"

using namespace effectplan;

namespace {

bool has_rule(const PlausibilityVerdict& v, std::string_view id) {
  return std::any_of(v.triggered_rules.begin(), v.triggered_rules.end(),
                     [&](const TriggeredRule& r) { return r.id == id; });
}

const InterventionBenchmark& find(std::string_view name) {
  for (const auto& b : benchmark_catalog()) {
    if (b.name == name) return b;
  }
  throw std::runtime_error("missing catalog entry");
}

}  // namespace

TEST(Catalog, Entries) {
  ASSERT_EQ(benchmark_catalog().size(), 5u);
  const auto& smoke = find("Smoke-free air policies");
  EXPECT_EQ(smoke.largest_smd.value(), 0.541);
  EXPECT_EQ(smoke.outcome, "Second-hand smoke exposure");
  EXPECT_EQ(smoke.intensity, IntensityClass::LowTouch);

  const auto& home = find("Home visiting programs in pregnancy and early childhood");
  EXPECT_EQ(home.largest_smd.value(), 0.369);
  EXPECT_EQ(home.outcome, "Child maltreatment episodes");
  EXPECT_EQ(home.intensity, IntensityClass::HighTouch);
  EXPECT_EQ(home.targeting, Targeting::Targeted);

  const auto& schooling = find("Compulsory schooling laws");
  EXPECT_EQ(schooling.largest_smd.value(), 0.016);
  EXPECT_EQ(schooling.outcome, "Obesity");
  EXPECT_EQ(schooling.intensity, IntensityClass::LowTouch);
  EXPECT_EQ(schooling.targeting, Targeting::Universal);

  EXPECT_EQ(catalog_max_smd(), 0.541);
}

TEST(AttenuateIndirect, Examples) {
  EXPECT_EQ(attenuate_indirect(SmdValue(0.03), 0.1).value(), 0.03 * 0.1);
  EXPECT_NEAR(attenuate_indirect(SmdValue(0.03), 0.1).value(), 0.003, 1e-17);
  EXPECT_NEAR(attenuate_indirect(SmdValue(0.16), 0.1).value(), 0.016, 1e-17);
  EXPECT_EQ(attenuate_indirect(SmdValue(0.7), 0.0).value(), 0.0);
}

TEST(AssessPlausibility, Examples) {
  for (auto intensity : {IntensityClass::HighTouch, IntensityClass::LowTouch}) {
    for (auto proximity : {OutcomeProximity::Proximal, OutcomeProximity::Distal}) {
      const auto big = assess_plausibility(SmdValue(0.9), intensity, Targeting::Targeted, proximity,
                                           Mechanism::Direct);
      EXPECT_EQ(big.level, PlausibilityLevel::Implausible);
      EXPECT_TRUE(has_rule(big, "R1"));
      const auto null = assess_plausibility(SmdValue(0.0), intensity, Targeting::Universal, proximity,
                                            Mechanism::Indirect);
      EXPECT_EQ(null.level, PlausibilityLevel::Plausible);
      EXPECT_TRUE(null.triggered_rules.empty());
    }
  }
  // The rule table tops out at Questionable below 0.8, whichever rules fire.
  const auto v = assess_plausibility(SmdValue(0.5), IntensityClass::LowTouch, Targeting::Universal,
                                     OutcomeProximity::Distal, Mechanism::Indirect);
  EXPECT_EQ(v.level, PlausibilityLevel::Questionable);
  EXPECT_TRUE(has_rule(v, "R2a"));
  EXPECT_TRUE(has_rule(v, "R3"));
  EXPECT_TRUE(has_rule(v, "R4"));
  EXPECT_FALSE(has_rule(v, "R2b"));
}

TEST(AssessPlausibility, MediumBand) {
  const auto exempt = assess_plausibility(SmdValue(0.52), IntensityClass::HighTouch, Targeting::Targeted,
                                          OutcomeProximity::Distal, Mechanism::Direct);
  EXPECT_EQ(exempt.level, PlausibilityLevel::Plausible);
  const auto above_max = assess_plausibility(SmdValue(0.6), IntensityClass::HighTouch, Targeting::Targeted,
                                             OutcomeProximity::Proximal, Mechanism::Direct);
  EXPECT_EQ(above_max.level, PlausibilityLevel::Questionable);
  EXPECT_TRUE(has_rule(above_max, "R2b"));
  EXPECT_FALSE(has_rule(above_max, "R2a"));
}

TEST(AssessPlausibility, UnknownFlagsNeverExempt) {
  EXPECT_EQ(assess_plausibility(SmdValue(0.55), StudyFlags{}).level, PlausibilityLevel::Questionable);
  EXPECT_EQ(assess_plausibility(SmdValue(0.3), StudyFlags{}).level, PlausibilityLevel::Plausible);
  EXPECT_EQ(assess_plausibility(SmdValue(0.3), StudyFlags{.mechanism = Mechanism::Indirect}).level,
            PlausibilityLevel::Questionable);
}

TEST(AssessPlausibility, MonotoneInMagnitudeForEveryFlagCombination) {
  int combos = 0;
  for (auto i : {IntensityClass::HighTouch, IntensityClass::MediumTouch, IntensityClass::LowTouch}) {
    for (auto t : {Targeting::Universal, Targeting::Targeted}) {
      for (auto p : {OutcomeProximity::Proximal, OutcomeProximity::Distal}) {
        for (auto m : {Mechanism::Direct, Mechanism::Indirect}) {
          ++combos;
          auto prev = PlausibilityLevel::Plausible;
          for (int step = 0; step <= 2000; ++step) {
            const double d = step * 0.001;
            for (double sign : {1.0, -1.0}) {
              const auto level = assess_plausibility(SmdValue(sign * d), i, t, p, m).level;
              ASSERT_GE(static_cast<int>(level), static_cast<int>(prev)) << d;
              if (sign < 0) prev = level;
            }
          }
        }
      }
    }
  }
  EXPECT_EQ(combos, 24);
}

TEST(Enums, ParseAndPrint) {
  EXPECT_EQ(parse_intensity("high"), IntensityClass::HighTouch);
  EXPECT_EQ(parse_intensity("low-touch"), IntensityClass::LowTouch);
  EXPECT_EQ(parse_targeting("targeted"), Targeting::Targeted);
  EXPECT_EQ(parse_proximity("distal"), OutcomeProximity::Distal);
  EXPECT_EQ(parse_mechanism("indirect"), Mechanism::Indirect);
  EXPECT_FALSE(parse_intensity("extreme"));
  for (auto v : {IntensityClass::HighTouch, IntensityClass::MediumTouch, IntensityClass::LowTouch}) {
    EXPECT_EQ(parse_intensity(to_string(v)), v);
  }
}
