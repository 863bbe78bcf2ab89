#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace effectplan {

// ---------------------------------------------------------------------------
// Effect scales
//
// Every value type validates its invariant on construction and throws
// DomainError otherwise, so a constructed value is always usable by the
// conversions below.
// ---------------------------------------------------------------------------

/// Standardized mean difference (Cohen's d). Negative values mean the second
/// group's mean exceeds the first's.
class SmdValue {
 public:
  explicit SmdValue(double d);
  double value() const noexcept { return d_; }

 private:
  double d_;
};

class CorrelationValue {
 public:
  explicit CorrelationValue(double r);  // -1 < r < 1
  double value() const noexcept { return r_; }

 private:
  double r_;
};

class OddsRatioValue {
 public:
  explicit OddsRatioValue(double odds_ratio);  // > 0
  double value() const noexcept { return or_; }

 private:
  double or_;
};

/// Baseline risk P0 of the outcome among the unexposed/untreated.
class OutcomeContext {
 public:
  explicit OutcomeContext(double p0);  // 0 < p0 < 1
  double p0() const noexcept { return p0_; }

  friend bool operator==(const OutcomeContext&, const OutcomeContext&) = default;

 private:
  double p0_;
};

class RelativeRiskValue {
 public:
  // rr > 0 and rr * p0 <= 1.
  RelativeRiskValue(double rr, OutcomeContext context);
  double value() const noexcept { return rr_; }
  const OutcomeContext& context() const noexcept { return context_; }
  double exposed_risk() const noexcept { return rr_ * context_.p0(); }

 private:
  double rr_;
  OutcomeContext context_;
};

class RiskDifferenceValue {
 public:
  // -p0 <= rd <= 1 - p0.
  RiskDifferenceValue(double rd, OutcomeContext context);
  double value() const noexcept { return rd_; }
  const OutcomeContext& context() const noexcept { return context_; }
  double exposed_risk() const noexcept { return context_.p0() + rd_; }

 private:
  double rd_;
  OutcomeContext context_;
};

using EffectQuantity = std::variant<SmdValue, CorrelationValue, OddsRatioValue,
                                    RelativeRiskValue, RiskDifferenceValue>;

/// Position on the canonical pivot chain r <-> SMD <-> OR <-> RR <-> RD.
enum class Scale { Correlation = 0, Smd = 1, OddsRatio = 2, RelativeRisk = 3, RiskDifference = 4 };

inline constexpr Scale kAllScales[] = {Scale::Smd, Scale::Correlation, Scale::OddsRatio,
                                       Scale::RelativeRisk, Scale::RiskDifference};

Scale scale_of(const EffectQuantity& q) noexcept;
double value_of(const EffectQuantity& q) noexcept;
std::optional<OutcomeContext> context_of(const EffectQuantity& q) noexcept;
bool requires_context(Scale s) noexcept;

/// Short machine name ("smd", "r", "or", "rr", "rd").
std::string_view scale_name(Scale s) noexcept;
std::string_view scale_title(Scale s) noexcept;
std::optional<Scale> parse_scale(std::string_view name) noexcept;

/// Builds a quantity on `scale`; RR/RD need a context. Throws DomainError or
/// ConfigError.
EffectQuantity make_effect(Scale scale, double value, std::optional<OutcomeContext> context);

// ---------------------------------------------------------------------------
// Summary statistics
// ---------------------------------------------------------------------------

SmdValue compute_smd(double mean1, double mean2, double pooled_sd);

/// sqrt(((n1-1) sd1^2 + (n2-1) sd2^2) / (n1 + n2 - 2))
double compute_pooled_sd(long long n1, double sd1, long long n2, double sd2);

// ---------------------------------------------------------------------------
// Pairwise conversions
// ---------------------------------------------------------------------------

CorrelationValue smd_to_r(SmdValue d);
SmdValue r_to_smd(CorrelationValue r);
OddsRatioValue smd_to_or(SmdValue d);
SmdValue or_to_smd(OddsRatioValue odds_ratio);
RelativeRiskValue or_to_rr(OddsRatioValue odds_ratio, OutcomeContext context);
OddsRatioValue rr_to_or(const RelativeRiskValue& rr);
RiskDifferenceValue rr_to_rd(const RelativeRiskValue& rr);
RelativeRiskValue rd_to_rr(const RiskDifferenceValue& rd);

/// Reciprocal of an OR/RR below 1; values >= 1 are returned unchanged.
/// Throws UsageError for SMD, r and RD, which flip by sign instead.
EffectQuantity invert_for_comparability(const EffectQuantity& q);

/// Walks the pivot chain from the scale of `q` to `target`. The context is
/// taken from `q` when it carries one, otherwise from `context`.
/// Throws ConfigError when P0 is needed but unavailable (or conflicts with
/// the carried one) and DomainError naming the failing link.
EffectQuantity convert(const EffectQuantity& q, Scale target,
                       std::optional<OutcomeContext> context = std::nullopt);

// ---------------------------------------------------------------------------
// Magnitude
// ---------------------------------------------------------------------------

enum class MagnitudeLabel { BelowVerySmall, VerySmall, Small, Medium, Large, VeryLarge, Huge };

/// Lower bounds on |d| for each label above BelowVerySmall.
inline constexpr double kVerySmallThreshold = 0.01;
inline constexpr double kSmallThreshold = 0.2;
inline constexpr double kMediumThreshold = 0.5;
inline constexpr double kLargeThreshold = 0.8;
inline constexpr double kVeryLargeThreshold = 1.2;
inline constexpr double kHugeThreshold = 2.0;

MagnitudeLabel classify_magnitude(SmdValue d) noexcept;
std::string_view magnitude_name(MagnitudeLabel label) noexcept;

// ---------------------------------------------------------------------------
// Correspondence grid
// ---------------------------------------------------------------------------

struct CorrespondenceRow {
  double d;
  std::string d_text;  // as conventionally printed ("0.10", "1", "1.75")
  double r;
  double odds_ratio;
  double rr_rare;    // P0 = 0.01
  double rr_common;  // P0 = 0.20
  double rd_rare;
  double rd_common;
  MagnitudeLabel label;
};

inline constexpr double kRareBaselineRisk = 0.01;
inline constexpr double kCommonBaselineRisk = 0.20;

/// The 23 standard SMD rows, each converted at full precision.
std::vector<CorrespondenceRow> correspondence_grid();

}  // namespace effectplan
