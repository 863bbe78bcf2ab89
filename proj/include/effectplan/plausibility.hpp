#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "effectplan/measures.hpp"

namespace effectplan {

enum class IntensityClass { HighTouch, MediumTouch, LowTouch };
enum class Targeting { Universal, Targeted };
enum class OutcomeProximity { Proximal, Distal };
enum class Mechanism { Direct, Indirect };

std::string_view to_string(IntensityClass v) noexcept;
std::string_view to_string(Targeting v) noexcept;
std::string_view to_string(OutcomeProximity v) noexcept;
std::string_view to_string(Mechanism v) noexcept;

// Parse the lower-case spellings ("high", "high-touch", "universal",
// "proximal", "indirect", ...).
std::optional<IntensityClass> parse_intensity(std::string_view text) noexcept;
std::optional<Targeting> parse_targeting(std::string_view text) noexcept;
std::optional<OutcomeProximity> parse_proximity(std::string_view text) noexcept;
std::optional<Mechanism> parse_mechanism(std::string_view text) noexcept;

/// Largest reported health effect for one illustrative population health
/// intervention. `features` and `target_population` keep the published
/// wording; `intensity` and `targeting` are its closest enum reading.
struct InterventionBenchmark {
  std::string name;
  IntensityClass intensity;
  Targeting targeting;
  SmdValue largest_smd;
  std::string outcome;
  std::string source;
  std::string features;
  std::string target_population;
};

const std::vector<InterventionBenchmark>& benchmark_catalog();

/// Largest SMD in the catalog.
double catalog_max_smd();

/// Expected effect of an intervention that works through a mechanism:
/// (effect per unit of mechanism) x (units of mechanism it induces).
SmdValue attenuate_indirect(SmdValue effect_per_unit_of_mechanism,
                            double induced_change_in_mechanism);

enum class PlausibilityLevel { Plausible = 0, Questionable = 1, Implausible = 2 };
std::string_view to_string(PlausibilityLevel v) noexcept;

struct TriggeredRule {
  std::string id;
  PlausibilityLevel level;
  std::string rationale;
  std::string basis;  // which planning consideration the rule encodes
};

struct PlausibilityVerdict {
  PlausibilityLevel level = PlausibilityLevel::Plausible;
  std::vector<TriggeredRule> triggered_rules;
};

/// Qualitative description of the study; unknown flags are left empty.
struct StudyFlags {
  std::optional<IntensityClass> intensity;
  std::optional<Targeting> targeting;
  std::optional<OutcomeProximity> proximity;
  std::optional<Mechanism> mechanism;
};

/// States that the rule table is a heuristic, not an empirical finding.
inline constexpr std::string_view kRuleTableNote =
    "heuristic rule table built from the conventional 0.2/0.5/0.8 SMD benchmarks and the largest "
    "benchmark effect (0.541); advisory only";

/// Rule table on |d|:
///   R1  |d| >= 0.8                                              -> Implausible
///   R2a 0.5 <= |d| < 0.8 without (high-touch and targeted) or a
///       proximal outcome                                        -> Questionable
///   R2b 0.5 <= |d| < 0.8 and |d| above the catalog maximum      -> Questionable
///   R3  indirect mechanism and |d| >= 0.2                       -> Questionable
///   R4  low-touch, universal, distal and |d| >= 0.2             -> Questionable
/// The verdict is the worst triggered level.
PlausibilityVerdict assess_plausibility(SmdValue d, IntensityClass intensity, Targeting targeting,
                                        OutcomeProximity proximity, Mechanism mechanism);

/// Same table with partially known flags: an R2a exemption counts only when
/// it is known to hold, and R3/R4 fire only when their flags are known to
/// match.
PlausibilityVerdict assess_plausibility(SmdValue d, const StudyFlags& flags);

}  // namespace effectplan
