#include "effectplan/plausibility.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "effectplan/errors.hpp"
#include "effectplan/format.hpp"

namespace effectplan {

std::string_view to_string(IntensityClass v) noexcept {
  switch (v) {
    case IntensityClass::HighTouch: return "high-touch";
    case IntensityClass::MediumTouch: return "medium-touch";
    case IntensityClass::LowTouch: return "low-touch";
  }
  return "?";
}

std::string_view to_string(Targeting v) noexcept {
  return v == Targeting::Universal ? "universal" : "targeted";
}

std::string_view to_string(OutcomeProximity v) noexcept {
  return v == OutcomeProximity::Proximal ? "proximal" : "distal";
}

std::string_view to_string(Mechanism v) noexcept {
  return v == Mechanism::Direct ? "direct" : "indirect";
}

std::string_view to_string(PlausibilityLevel v) noexcept {
  switch (v) {
    case PlausibilityLevel::Plausible: return "Plausible";
    case PlausibilityLevel::Questionable: return "Questionable";
    case PlausibilityLevel::Implausible: return "Implausible";
  }
  return "?";
}

std::optional<IntensityClass> parse_intensity(std::string_view text) noexcept {
  if (text == "high" || text == "high-touch") return IntensityClass::HighTouch;
  if (text == "medium" || text == "medium-touch") return IntensityClass::MediumTouch;
  if (text == "low" || text == "low-touch") return IntensityClass::LowTouch;
  return std::nullopt;
}

std::optional<Targeting> parse_targeting(std::string_view text) noexcept {
  if (text == "universal") return Targeting::Universal;
  if (text == "targeted") return Targeting::Targeted;
  return std::nullopt;
}

std::optional<OutcomeProximity> parse_proximity(std::string_view text) noexcept {
  if (text == "proximal") return OutcomeProximity::Proximal;
  if (text == "distal") return OutcomeProximity::Distal;
  return std::nullopt;
}

std::optional<Mechanism> parse_mechanism(std::string_view text) noexcept {
  if (text == "direct") return Mechanism::Direct;
  if (text == "indirect") return Mechanism::Indirect;
  return std::nullopt;
}

const std::vector<InterventionBenchmark>& benchmark_catalog() {
  static const std::vector<InterventionBenchmark> catalog{
      {
          .name = "Home visiting programs in pregnancy and early childhood",
          .intensity = IntensityClass::HighTouch,
          .targeting = Targeting::Targeted,
          .largest_smd = SmdValue(0.369),
          .outcome = "Child maltreatment episodes",
          .source = "Bilukha et al., 2005",
          .features = "High-touch, individually-tailored, one-on-one, intensive supports, "
                      "typically 1+ years in duration",
          .target_population = "Targeted to high-need individuals",
      },
      {
          .name = "Compulsory schooling laws",
          .intensity = IntensityClass::LowTouch,
          .targeting = Targeting::Universal,
          .largest_smd = SmdValue(0.016),
          .outcome = "Obesity",
          .source = "Hamad et al., 2018",
          .features = "Low-touch",
          .target_population = "Universal",
      },
      {
          .name = "Smoke-free air policies",
          .intensity = IntensityClass::LowTouch,
          .targeting = Targeting::Universal,
          .largest_smd = SmdValue(0.541),
          .outcome = "Second-hand smoke exposure",
          .source = "Community Preventive Services Task Force, 2014b",
          .features = "Low-touch",
          .target_population = "Universal or targeted to specific communities or workplaces",
      },
      {
          .name = "Mass media campaigns to reduce tobacco use",
          .intensity = IntensityClass::LowTouch,
          .targeting = Targeting::Universal,
          .largest_smd = SmdValue(0.208),
          .outcome = "Tobacco use initiation",
          .source = "uncited in the benchmark table",
          .features = "Low-touch or medium-touch, depending on exposure",
          .target_population = "Universal or targeted to key subpopulations (e.g. youth)",
      },
      {
          .name = "Quitlines to promote tobacco cessation",
          .intensity = IntensityClass::MediumTouch,
          .targeting = Targeting::Targeted,
          .largest_smd = SmdValue(0.227),
          .outcome = "Tobacco cessation",
          .source = "Stead et al., 2013",
          .features = "Medium-touch, sometimes individually-tailored",
          .target_population = "Targeted to current smokers who want to quit",
      },
  };
  return catalog;
}

double catalog_max_smd() {
  const auto& catalog = benchmark_catalog();
  return std::max_element(catalog.begin(), catalog.end(),
                          [](const auto& a, const auto& b) {
                            return a.largest_smd.value() < b.largest_smd.value();
                          })
      ->largest_smd.value();
}

SmdValue attenuate_indirect(SmdValue effect_per_unit_of_mechanism,
                            double induced_change_in_mechanism) {
  if (!std::isfinite(induced_change_in_mechanism)) {
    throw DomainError("induced change in the mechanism must be finite");
  }
  return SmdValue(effect_per_unit_of_mechanism.value() * induced_change_in_mechanism);
}

PlausibilityVerdict assess_plausibility(SmdValue d, const StudyFlags& flags) {
  const double m = std::fabs(d.value());
  PlausibilityVerdict verdict;
  auto trigger = [&](std::string id, PlausibilityLevel level, std::string rationale,
                     std::string basis) {
    verdict.level = std::max(verdict.level, level);
    verdict.triggered_rules.push_back(
        TriggeredRule{std::move(id), level, std::move(rationale), std::move(basis)});
  };

  if (m >= kLargeThreshold) {
    trigger("R1", PlausibilityLevel::Implausible,
            "|d| >= 0.8: large effects appear unlikely or exceptional for population health "
            "interventions",
            "benchmarks for plausible effect sizes");
  }

  if (m >= kMediumThreshold && m < kLargeThreshold) {
    const bool intensive = flags.intensity == IntensityClass::HighTouch &&
                           flags.targeting == Targeting::Targeted;
    const bool proximal = flags.proximity == OutcomeProximity::Proximal;
    if (!intensive && !proximal) {
      trigger("R2a", PlausibilityLevel::Questionable,
              "0.5 <= |d| < 0.8: medium effects require a high-touch targeted intervention or a "
              "proximal outcome",
              "intervention intensity, targeting and outcome proximity");
    }
    if (m > catalog_max_smd()) {
      trigger("R2b", PlausibilityLevel::Questionable,
              "|d| exceeds the largest benchmark effect (" + format_fixed(catalog_max_smd(), 3) +
                  ", smoke-free air policies on second-hand smoke exposure)",
              "benchmarks for plausible effect sizes");
    }
  }

  if (m >= kSmallThreshold && flags.mechanism == Mechanism::Indirect) {
    trigger("R3", PlausibilityLevel::Questionable,
            "|d| >= 0.2 through an indirect mechanism: effects transmitted through an "
            "intermediate are scaled down by the induced change (e.g. 0.003 to 0.016 SMD)",
            "mechanism of effect");
  }

  if (m >= kSmallThreshold && flags.intensity == IntensityClass::LowTouch &&
      flags.targeting == Targeting::Universal && flags.proximity == OutcomeProximity::Distal) {
    trigger("R4", PlausibilityLevel::Questionable,
            "|d| >= 0.2 for a low-touch universal intervention on a distal outcome: very small to "
            "small effects are more realistic",
            "intervention intensity, targeting and outcome proximity");
  }

  return verdict;
}

PlausibilityVerdict assess_plausibility(SmdValue d, IntensityClass intensity, Targeting targeting,
                                        OutcomeProximity proximity, Mechanism mechanism) {
  return assess_plausibility(d, StudyFlags{intensity, targeting, proximity, mechanism});
}

}  // namespace effectplan
