#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "effectplan/impact.hpp"
#include "effectplan/measures.hpp"
#include "effectplan/plausibility.hpp"
#include "effectplan/power.hpp"
#include "effectplan/scenario.hpp"
#include "effectplan/table.hpp"

namespace effectplan {

/// A module failure inside run_report, tagged with the stage that raised it.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& message)
      : std::runtime_error(stage + " stage: " + message), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// SMD magnitudes beyond this are outside any empirical range and draw a warning.
inline constexpr double kEmpiricalSmdLimit = 10.0;

/// Pe values always included in the report's PAF sweep.
inline constexpr double kReportPeSweep[] = {0.01, 0.20, 0.50, 1.00};

struct ScaleEntry {
  Scale scale;
  std::optional<double> value;  // empty when P0 is needed but unknown
};

struct Report {
  Scenario scenario{};
  double smd{};  // signed pivot value
  std::vector<ScaleEntry> scales{};
  MagnitudeLabel magnitude{};
  std::vector<PafResult> paf_sweep{};  // empty without P0
  std::optional<SampleSizeResult> n_smd{};
  std::optional<SampleSizeResult> n_proportions{};
  std::optional<long long> mde_n{};
  std::optional<MdeResult> mde{};
  PlausibilityVerdict verdict{};
  std::optional<double> attenuated_smd{};
  std::vector<std::string> warnings{};
};

/// Throws StageError naming the failing stage.
Report run_report(const Scenario& scenario);

/// Rows of (section, item, value, exact).
Table report_table(const Report& report);

}  // namespace effectplan
