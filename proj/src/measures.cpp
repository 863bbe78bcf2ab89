#include "effectplan/measures.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "effectplan/errors.hpp"
#include "effectplan/format.hpp"

namespace effectplan {

namespace {

// pi / sqrt(3): scale of the standard logistic distribution.
constexpr double kLogisticScale = std::numbers::pi / std::numbers::sqrt3;

// Slack for rr * p0 <= 1 so that values produced from a boundary RD (rd = 1 - p0)
// are not rejected because of the final rounding of 1 + rd / p0.
constexpr double kRiskSlack = 1e-12;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + " must be finite");
}

}  // namespace

SmdValue::SmdValue(double d) : d_(d) { require_finite(d, "standardized mean difference"); }

CorrelationValue::CorrelationValue(double r) : r_(r) {
  require_finite(r, "correlation");
  if (!(r > -1.0 && r < 1.0)) {
    throw DomainError("correlation must lie strictly between -1 and 1 (got " + format_full(r) + ")");
  }
}

OddsRatioValue::OddsRatioValue(double odds_ratio) : or_(odds_ratio) {
  require_finite(odds_ratio, "odds ratio");
  if (!(odds_ratio > 0.0)) {
    throw DomainError("odds ratio must be positive (got " + format_full(odds_ratio) + ")");
  }
}

OutcomeContext::OutcomeContext(double p0) : p0_(p0) {
  require_finite(p0, "baseline risk p0");
  if (!(p0 > 0.0 && p0 < 1.0)) {
    throw DomainError("baseline risk p0 must lie strictly between 0 and 1 (got " + format_full(p0) +
                      ")");
  }
}

RelativeRiskValue::RelativeRiskValue(double rr, OutcomeContext context)
    : rr_(rr), context_(context) {
  require_finite(rr, "relative risk");
  if (!(rr > 0.0)) {
    throw DomainError("relative risk must be positive (got " + format_full(rr) + ")");
  }
  if (rr * context.p0() > 1.0 + kRiskSlack) {
    throw DomainError("RR * p0 = " + format_full(rr * context.p0()) +
                      " > 1: risk in the exposed group cannot exceed 1");
  }
}

RiskDifferenceValue::RiskDifferenceValue(double rd, OutcomeContext context)
    : rd_(rd), context_(context) {
  require_finite(rd, "risk difference");
  const double p0 = context.p0();
  if (rd < -p0 || rd > 1.0 - p0) {
    throw DomainError("risk difference must lie in [-p0, 1 - p0] = [" + format_full(-p0) + ", " +
                      format_full(1.0 - p0) + "] (got " + format_full(rd) + ")");
  }
}

Scale scale_of(const EffectQuantity& q) noexcept {
  if (std::holds_alternative<SmdValue>(q)) return Scale::Smd;
  if (std::holds_alternative<CorrelationValue>(q)) return Scale::Correlation;
  if (std::holds_alternative<OddsRatioValue>(q)) return Scale::OddsRatio;
  if (std::holds_alternative<RelativeRiskValue>(q)) return Scale::RelativeRisk;
  return Scale::RiskDifference;
}

double value_of(const EffectQuantity& q) noexcept {
  return std::visit([](const auto& v) { return v.value(); }, q);
}

std::optional<OutcomeContext> context_of(const EffectQuantity& q) noexcept {
  if (const auto* rr = std::get_if<RelativeRiskValue>(&q)) return rr->context();
  if (const auto* rd = std::get_if<RiskDifferenceValue>(&q)) return rd->context();
  return std::nullopt;
}

bool requires_context(Scale s) noexcept {
  return s == Scale::RelativeRisk || s == Scale::RiskDifference;
}

std::string_view scale_name(Scale s) noexcept {
  switch (s) {
    case Scale::Smd: return "smd";
    case Scale::Correlation: return "r";
    case Scale::OddsRatio: return "or";
    case Scale::RelativeRisk: return "rr";
    case Scale::RiskDifference: return "rd";
  }
  return "?";
}

std::string_view scale_title(Scale s) noexcept {
  switch (s) {
    case Scale::Smd: return "standardized mean difference";
    case Scale::Correlation: return "correlation coefficient";
    case Scale::OddsRatio: return "odds ratio";
    case Scale::RelativeRisk: return "relative risk";
    case Scale::RiskDifference: return "risk difference";
  }
  return "?";
}

std::optional<Scale> parse_scale(std::string_view name) noexcept {
  for (Scale s : kAllScales) {
    if (scale_name(s) == name) return s;
  }
  if (name == "d") return Scale::Smd;
  return std::nullopt;
}

EffectQuantity make_effect(Scale scale, double value, std::optional<OutcomeContext> context) {
  if (requires_context(scale) && !context) {
    throw ConfigError("baseline risk p0 is required for effect scale " +
                      std::string(scale_name(scale)));
  }
  switch (scale) {
    case Scale::Smd: return SmdValue(value);
    case Scale::Correlation: return CorrelationValue(value);
    case Scale::OddsRatio: return OddsRatioValue(value);
    case Scale::RelativeRisk: return RelativeRiskValue(value, *context);
    case Scale::RiskDifference: return RiskDifferenceValue(value, *context);
  }
  throw UsageError("unknown scale");
}

SmdValue compute_smd(double mean1, double mean2, double pooled_sd) {
  require_finite(mean1, "mean1");
  require_finite(mean2, "mean2");
  require_finite(pooled_sd, "pooled standard deviation");
  if (!(pooled_sd > 0.0)) throw DomainError("pooled standard deviation must be positive");
  return SmdValue((mean1 - mean2) / pooled_sd);
}

double compute_pooled_sd(long long n1, double sd1, long long n2, double sd2) {
  if (n1 < 2 || n2 < 2) throw DomainError("each group needs at least 2 observations");
  require_finite(sd1, "sd1");
  require_finite(sd2, "sd2");
  if (sd1 < 0.0 || sd2 < 0.0) throw DomainError("standard deviations must be non-negative");
  if (!(sd1 + sd2 > 0.0)) throw DomainError("at least one standard deviation must be positive");
  const double ss = static_cast<double>(n1 - 1) * sd1 * sd1 + static_cast<double>(n2 - 1) * sd2 * sd2;
  return std::sqrt(ss / static_cast<double>(n1 + n2 - 2));
}

CorrelationValue smd_to_r(SmdValue d) {
  const double x = d.value();
  return CorrelationValue(x / std::sqrt(x * x + 4.0));
}

SmdValue r_to_smd(CorrelationValue r) {
  const double x = r.value();
  return SmdValue(2.0 * x / std::sqrt(1.0 - x * x));
}

OddsRatioValue smd_to_or(SmdValue d) {
  const double odds_ratio = std::exp(d.value() * kLogisticScale);
  if (!std::isfinite(odds_ratio) || odds_ratio == 0.0) {
    throw DomainError("odds ratio for d = " + format_full(d.value()) + " is not representable");
  }
  return OddsRatioValue(odds_ratio);
}

SmdValue or_to_smd(OddsRatioValue odds_ratio) {
  return SmdValue(std::log(odds_ratio.value()) / kLogisticScale);
}

RelativeRiskValue or_to_rr(OddsRatioValue odds_ratio, OutcomeContext context) {
  const double o = odds_ratio.value();
  // 1 - p0 + p0 * OR, written so that OR == 1 gives exactly 1.
  const double denom = 1.0 + context.p0() * (o - 1.0);
  return RelativeRiskValue(o / denom, context);
}

OddsRatioValue rr_to_or(const RelativeRiskValue& rr) {
  const double p0 = rr.context().p0();
  const double exposed = rr.value() * p0;
  if (!(exposed < 1.0)) {
    throw DomainError("RR * p0 = " + format_full(exposed) +
                      " must be < 1 to convert to an odds ratio (exposed risk would reach 1)");
  }
  return OddsRatioValue(rr.value() * (1.0 - p0) / (1.0 - exposed));
}

RiskDifferenceValue rr_to_rd(const RelativeRiskValue& rr) {
  const double p0 = rr.context().p0();
  const double rd = p0 * (rr.value() - 1.0);
  // Clamp the slack admitted by RelativeRiskValue.
  return RiskDifferenceValue(std::min(rd, 1.0 - p0), rr.context());
}

RelativeRiskValue rd_to_rr(const RiskDifferenceValue& rd) {
  return RelativeRiskValue(1.0 + rd.value() / rd.context().p0(), rd.context());
}

EffectQuantity invert_for_comparability(const EffectQuantity& q) {
  if (const auto* o = std::get_if<OddsRatioValue>(&q)) {
    return o->value() >= 1.0 ? q : EffectQuantity(OddsRatioValue(1.0 / o->value()));
  }
  if (const auto* rr = std::get_if<RelativeRiskValue>(&q)) {
    if (rr->value() >= 1.0) return q;
    return RelativeRiskValue(1.0 / rr->value(), rr->context());
  }
  throw UsageError("invert_for_comparability applies to odds ratios and relative risks only; " +
                   std::string(scale_title(scale_of(q))) + " values flip by sign");
}

namespace {

std::string link_name(Scale from, Scale to) {
  return std::string(scale_name(from)) + " -> " + std::string(scale_name(to));
}

EffectQuantity step(const EffectQuantity& q, Scale to, const std::optional<OutcomeContext>& ctx) {
  const Scale from = scale_of(q);
  try {
    switch (from) {
      case Scale::Correlation: return r_to_smd(std::get<CorrelationValue>(q));
      case Scale::Smd:
        if (to == Scale::Correlation) return smd_to_r(std::get<SmdValue>(q));
        return smd_to_or(std::get<SmdValue>(q));
      case Scale::OddsRatio:
        if (to == Scale::Smd) return or_to_smd(std::get<OddsRatioValue>(q));
        return or_to_rr(std::get<OddsRatioValue>(q), *ctx);
      case Scale::RelativeRisk:
        if (to == Scale::OddsRatio) return rr_to_or(std::get<RelativeRiskValue>(q));
        return rr_to_rd(std::get<RelativeRiskValue>(q));
      case Scale::RiskDifference: return rd_to_rr(std::get<RiskDifferenceValue>(q));
    }
  } catch (const DomainError& e) {
    throw DomainError("conversion " + link_name(from, to) + " failed: " + e.what());
  }
  throw UsageError("unknown scale");
}

}  // namespace

EffectQuantity convert(const EffectQuantity& q, Scale target, std::optional<OutcomeContext> context) {
  const auto carried = context_of(q);
  if (carried && context && !(*carried == *context)) {
    throw ConfigError("supplied p0 = " + format_full(context->p0()) +
                      " conflicts with the p0 = " + format_full(carried->p0()) +
                      " carried by the effect");
  }
  const auto ctx = carried ? carried : context;
  if ((requires_context(target) || requires_context(scale_of(q))) && !ctx) {
    throw ConfigError("baseline risk p0 is required to convert " +
                      std::string(scale_name(scale_of(q))) + " to " +
                      std::string(scale_name(target)));
  }

  EffectQuantity current = q;
  while (scale_of(current) != target) {
    const int here = static_cast<int>(scale_of(current));
    const int next = here + (static_cast<int>(target) > here ? 1 : -1);
    current = step(current, static_cast<Scale>(next), ctx);
  }
  return current;
}

MagnitudeLabel classify_magnitude(SmdValue d) noexcept {
  const double m = std::fabs(d.value());
  if (m >= kHugeThreshold) return MagnitudeLabel::Huge;
  if (m >= kVeryLargeThreshold) return MagnitudeLabel::VeryLarge;
  if (m >= kLargeThreshold) return MagnitudeLabel::Large;
  if (m >= kMediumThreshold) return MagnitudeLabel::Medium;
  if (m >= kSmallThreshold) return MagnitudeLabel::Small;
  if (m >= kVerySmallThreshold) return MagnitudeLabel::VerySmall;
  return MagnitudeLabel::BelowVerySmall;
}

std::string_view magnitude_name(MagnitudeLabel label) noexcept {
  switch (label) {
    case MagnitudeLabel::BelowVerySmall: return "Below very small";
    case MagnitudeLabel::VerySmall: return "Very small";
    case MagnitudeLabel::Small: return "Small";
    case MagnitudeLabel::Medium: return "Medium";
    case MagnitudeLabel::Large: return "Large";
    case MagnitudeLabel::VeryLarge: return "Very large";
    case MagnitudeLabel::Huge: return "Huge";
  }
  return "?";
}

std::vector<CorrespondenceRow> correspondence_grid() {
  static constexpr std::string_view kRows[] = {
      "0.01", "0.02", "0.05", "0.10", "0.15", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8",
      "0.9",  "1",    "1.1",  "1.2",  "1.3",  "1.4", "1.5", "1.75", "2", "2.25", "2.5"};

  const OutcomeContext rare(kRareBaselineRisk);
  const OutcomeContext common(kCommonBaselineRisk);

  std::vector<CorrespondenceRow> rows;
  rows.reserve(std::size(kRows));
  for (std::string_view text : kRows) {
    double d = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), d);
    const SmdValue smd(d);
    const OddsRatioValue odds_ratio = smd_to_or(smd);
    const RelativeRiskValue rr_rare = or_to_rr(odds_ratio, rare);
    const RelativeRiskValue rr_common = or_to_rr(odds_ratio, common);
    rows.push_back(CorrespondenceRow{
        .d = d,
        .d_text = std::string(text),
        .r = smd_to_r(smd).value(),
        .odds_ratio = odds_ratio.value(),
        .rr_rare = rr_rare.value(),
        .rr_common = rr_common.value(),
        .rd_rare = rr_to_rd(rr_rare).value(),
        .rd_common = rr_to_rd(rr_common).value(),
        .label = classify_magnitude(smd),
    });
  }
  return rows;
}

}  // namespace effectplan
