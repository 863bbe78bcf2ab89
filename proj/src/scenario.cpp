#include "effectplan/scenario.hpp"

#include <algorithm>
#include <array>
#include <string_view>

#include "effectplan/format.hpp"

namespace effectplan {

namespace {

constexpr std::array<std::string_view, 14> kKeys = {
    "label",     "effect_scale", "effect_value",  "p0",        "pe",
    "alpha",     "target_power", "n_per_group",   "intensity", "targeting",
    "proximity", "mechanism",    "mechanism_effect_per_unit", "mechanism_change"};

struct Entry {
  std::string value;
  int line;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool known_key(std::string_view key) {
  return std::find(kKeys.begin(), kKeys.end(), key) != kKeys.end();
}

class Validator {
 public:
  Validator(std::map<std::string, Entry> entries, std::vector<ScenarioIssue> issues)
      : entries_(std::move(entries)), issues_(std::move(issues)) {}

  Scenario run() {
    Scenario s;
    if (auto e = find("label")) s.label = e->value;

    if (auto p0 = bounded("p0", [](double v) { return v > 0.0 && v < 1.0; },
                          "baseline risk must lie strictly between 0 and 1")) {
      s.p0 = OutcomeContext(*p0);
    }
    if (auto pe = bounded("pe", [](double v) { return v >= 0.0 && v <= 1.0; },
                          "exposure prevalence must lie in [0, 1]")) {
      s.pe = ExposurePrevalence(*pe);
    }
    if (auto a = number("alpha")) {
      if (*a > 0.0 && *a < 1.0) {
        s.alpha = *a;
      } else {
        fail("alpha", "alpha must lie strictly between 0 and 1");
      }
    }
    if (auto p = number("target_power")) {
      if (*p > 0.0 && *p < 1.0) {
        s.target_power = *p;
      } else {
        fail("target_power", "target power must lie strictly between 0 and 1");
      }
    }
    if (auto e = find("n_per_group")) {
      const auto n = parse_count(e->value);
      if (!n) {
        fail("n_per_group", "not an integer: '" + e->value + "'");
      } else if (*n < 2) {
        fail("n_per_group", "group size must be at least 2");
      } else {
        s.n_per_group = *n;
      }
    }

    s.flags.intensity = enumerated("intensity", parse_intensity, "high, medium or low");
    s.flags.targeting = enumerated("targeting", parse_targeting, "universal or targeted");
    s.flags.proximity = enumerated("proximity", parse_proximity, "proximal or distal");
    s.flags.mechanism = enumerated("mechanism", parse_mechanism, "direct or indirect");

    const auto per_unit = number("mechanism_effect_per_unit");
    const auto change = number("mechanism_change");
    if (per_unit.has_value() != change.has_value()) {
      const char* missing = per_unit ? "mechanism_change" : "mechanism_effect_per_unit";
      issues_.push_back({-1, missing,
                         "mechanism_effect_per_unit and mechanism_change must be given together"});
    } else if (per_unit) {
      s.mechanism_effect_per_unit = SmdValue(*per_unit);
      s.mechanism_change = *change;
    }

    effect(s);
    if (!issues_.empty()) throw ScenarioError(std::move(issues_));
    return s;
  }

 private:
  const Entry* find(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  int line_of(const std::string& key) const {
    const Entry* e = find(key);
    return e ? e->line : -1;
  }

  void fail(const std::string& key, std::string message) {
    issues_.push_back({line_of(key), key, std::move(message)});
  }

  std::optional<double> number(const std::string& key) {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    auto v = parse_double(e->value);
    if (!v) fail(key, "not a finite number: '" + e->value + "'");
    return v;
  }

  template <typename Pred>
  std::optional<double> bounded(const std::string& key, Pred ok, const char* message) {
    const auto v = number(key);
    if (v && !ok(*v)) {
      fail(key, message);
      return std::nullopt;
    }
    return v;
  }

  template <typename Parser>
  auto enumerated(const std::string& key, Parser parse, const char* choices)
      -> decltype(parse(std::string_view{})) {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    auto v = parse(e->value);
    if (!v) fail(key, "expected " + std::string(choices) + " (got '" + e->value + "')");
    return v;
  }

  void effect(Scenario& s) {
    const Entry* scale_entry = find("effect_scale");
    const Entry* value_entry = find("effect_value");
    if (!value_entry) {
      issues_.push_back({-1, "effect_value", "missing required key"});
      return;
    }
    const std::string scale_text = scale_entry ? scale_entry->value : "smd";
    const auto scale = parse_scale(scale_text);
    if (!scale) {
      fail("effect_scale", "expected smd, r, or, rr or rd (got '" + scale_text + "')");
      return;
    }
    const auto value = number("effect_value");
    if (!value) return;
    const double x = *value;

    if (requires_context(*scale) && !s.p0) {
      if (!find("p0")) {
        issues_.push_back({-1, "p0", "required for effect scale " + scale_text});
      }
      return;
    }

    switch (*scale) {
      case Scale::Smd: s.effect = SmdValue(x); return;
      case Scale::Correlation:
        if (!(x > -1.0 && x < 1.0)) {
          fail("effect_value", "correlation must lie strictly between -1 and 1");
          return;
        }
        s.effect = CorrelationValue(x);
        return;
      case Scale::OddsRatio:
        if (!(x > 0.0)) {
          fail("effect_value", "odds ratio must be positive");
          return;
        }
        s.effect = OddsRatioValue(x);
        return;
      case Scale::RelativeRisk: {
        if (!(x > 0.0)) {
          fail("effect_value", "relative risk must be positive");
          return;
        }
        const double exposed = x * s.p0->p0();
        if (!(exposed < 1.0)) {
          fail("effect_value", "RR * p0 = " + format_short(exposed) +
                                   " >= 1; risk in the exposed group must stay below 1");
          return;
        }
        s.effect = RelativeRiskValue(x, *s.p0);
        return;
      }
      case Scale::RiskDifference: {
        const double p0 = s.p0->p0();
        if (!(x > -p0 && x < 1.0 - p0)) {
          fail("effect_value", "risk difference must lie strictly between -p0 and 1 - p0 (" +
                                   format_short(-p0) + ", " + format_short(1.0 - p0) + ")");
          return;
        }
        s.effect = RiskDifferenceValue(x, *s.p0);
        return;
      }
    }
  }

  std::map<std::string, Entry> entries_;
  std::vector<ScenarioIssue> issues_;
};

}  // namespace

std::string ScenarioIssue::to_string() const {
  std::string out = key + ": " + message;
  if (line > 0) {
    out += " (line " + std::to_string(line) + ")";
  } else if (line == 0) {
    out += " (command line)";
  }
  return out;
}

namespace {

std::string join_issues(const std::vector<ScenarioIssue>& issues) {
  std::string out;
  for (const auto& issue : issues) {
    if (!out.empty()) out += '\n';
    out += issue.to_string();
  }
  return out;
}

}  // namespace

ScenarioError::ScenarioError(std::vector<ScenarioIssue> issues)
    : ConfigError(join_issues(issues)), issues_(std::move(issues)) {}

Scenario parse_scenario(std::istream& in, const ScenarioOverrides& overrides) {
  std::map<std::string, Entry> entries;
  std::vector<ScenarioIssue> issues;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      issues.push_back({line_no, std::string(line), "expected 'key = value'"});
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) {
      issues.push_back({line_no, "(empty)", "missing key before '='"});
    } else if (!known_key(key)) {
      issues.push_back({line_no, key, "unknown key"});
    } else if (const auto it = entries.find(key); it != entries.end()) {
      issues.push_back({line_no, key,
                        "duplicate key (first set on line " + std::to_string(it->second.line) + ")"});
    } else if (value.empty()) {
      issues.push_back({line_no, key, "empty value"});
    } else {
      entries.emplace(key, Entry{value, line_no});
    }
  }

  for (const auto& [key, value] : overrides) {
    if (!known_key(key)) {
      issues.push_back({0, key, "unknown key"});
      continue;
    }
    entries[key] = Entry{value, 0};
  }

  // Validation continues past syntax problems so every issue is reported at once.
  return Validator(std::move(entries), std::move(issues)).run();
}

}  // namespace effectplan
