#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "effectplan/errors.hpp"
#include "effectplan/impact.hpp"
#include "effectplan/measures.hpp"
#include "effectplan/plausibility.hpp"

namespace effectplan {

/// One planning what-if, read from a flat `key = value` file.
///
/// Keys: label, effect_scale (smd|r|or|rr|rd, default smd), effect_value,
/// p0, pe, alpha, target_power, n_per_group, intensity, targeting, proximity,
/// mechanism, mechanism_effect_per_unit, mechanism_change.
struct Scenario {
  std::string label;
  EffectQuantity effect{SmdValue(0.0)};
  std::optional<OutcomeContext> p0;
  std::optional<ExposurePrevalence> pe;
  double alpha = 0.05;
  double target_power = 0.80;
  std::optional<long long> n_per_group;
  StudyFlags flags;
  std::optional<SmdValue> mechanism_effect_per_unit;
  std::optional<double> mechanism_change;
};

struct ScenarioIssue {
  int line;  // 0 for values supplied on the command line
  std::string key;
  std::string message;

  /// "key: message (line N)" or "key: message (command line)".
  std::string to_string() const;
};

class ScenarioError : public ConfigError {
 public:
  explicit ScenarioError(std::vector<ScenarioIssue> issues);
  const std::vector<ScenarioIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ScenarioIssue> issues_;
};

/// Key/value pairs that replace (or add to) the file's entries before
/// validation; used for command-line flags.
using ScenarioOverrides = std::map<std::string, std::string>;

/// Reads and validates a scenario. Blank lines and lines starting with '#'
/// are ignored. Throws ScenarioError listing every problem found.
Scenario parse_scenario(std::istream& in, const ScenarioOverrides& overrides = {});

}  // namespace effectplan
