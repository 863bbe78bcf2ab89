#include "effectplan/power.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "effectplan/errors.hpp"
#include "effectplan/format.hpp"
#include "effectplan/normal.hpp"

namespace effectplan {

namespace {

// Beyond this the per-group size is not a meaningful design and would
// overflow the integer search.
constexpr double kMaxGroupSize = 1e15;

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie strictly between 0 and 1 (got " + format_full(alpha) + ")");
  }
}

double two_sided_critical(double alpha) { return normal_quantile(1.0 - alpha / 2.0); }

long long group2_size(long long n1, double allocation) {
  return std::max<long long>(2, static_cast<long long>(std::ceil(allocation * static_cast<double>(n1) - 1e-9)));
}

// Shared ceiling search: smallest n1 >= 2 with power(n1) >= target, starting
// from the closed-form estimate.
template <typename PowerFn>
long long smallest_n(double estimate, double target, PowerFn power) {
  if (!std::isfinite(estimate) || estimate > kMaxGroupSize) {
    throw DomainError("required sample size exceeds " + format_full(kMaxGroupSize) + " per group");
  }
  long long n = std::max<long long>(2, static_cast<long long>(std::ceil(estimate)));
  while (n > 2 && power(n - 1) >= target) --n;
  while (power(n) < target) ++n;
  return n;
}

SampleSizeResult finish(long long n1, const PowerSpec& spec, auto power) {
  SampleSizeResult result{};
  if (n1 < kMinGroupSize) {
    n1 = kMinGroupSize;
    result.floored = true;
  }
  result.n_per_group = n1;
  result.n_group2 = group2_size(n1, spec.allocation);
  result.n_total = result.n_per_group + result.n_group2;
  result.achieved_power_at_n = power(n1);
  return result;
}

}  // namespace

void PowerSpec::validate() const {
  require_alpha(alpha);
  if (!(target_power > 0.0 && target_power < 1.0)) {
    throw DomainError("target power must lie strictly between 0 and 1 (got " +
                      format_full(target_power) + ")");
  }
  if (!(allocation > 0.0) || !std::isfinite(allocation)) {
    throw DomainError("allocation ratio must be positive (got " + format_full(allocation) + ")");
  }
}

double achieved_power_smd(SmdValue d, long long n1, long long n2, double alpha) {
  if (n1 < 2 || n2 < 2) throw DomainError("power needs at least 2 observations per group");
  require_alpha(alpha);
  const double z = two_sided_critical(alpha);
  const double shift =
      std::fabs(d.value()) / std::sqrt(1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2));
  return normal_cdf(shift - z) + normal_cdf(-shift - z);
}

double achieved_power_smd(SmdValue d, long long n_per_group, double alpha) {
  return achieved_power_smd(d, n_per_group, n_per_group, alpha);
}

SampleSizeResult required_n_smd(SmdValue d, const PowerSpec& spec) {
  spec.validate();
  if (d.value() == 0.0) throw DomainError("no finite n detects a null effect");
  const double z_sum = two_sided_critical(spec.alpha) + normal_quantile(spec.target_power);
  const double ratio = z_sum / d.value();
  const double estimate = (1.0 + 1.0 / spec.allocation) * ratio * ratio;
  auto power = [&](long long n) {
    return achieved_power_smd(d, n, group2_size(n, spec.allocation), spec.alpha);
  };
  return finish(smallest_n(estimate, spec.target_power, power), spec, power);
}

MdeResult mde_smd(long long n_per_group, const PowerSpec& spec) {
  spec.validate();
  if (n_per_group < 2) throw DomainError("MDE needs at least 2 observations per group");
  if (spec.target_power <= spec.alpha) {
    throw DomainError("target power " + format_full(spec.target_power) +
                      " does not exceed alpha; the null effect already reaches it");
  }
  const long long n2 = group2_size(n_per_group, spec.allocation);
  const double z = two_sided_critical(spec.alpha);
  const double scale =
      1.0 / std::sqrt(1.0 / static_cast<double>(n_per_group) + 1.0 / static_cast<double>(n2));

  // Closed form ignores the far rejection tail; Newton on the full power
  // curve removes that bias.
  double d = (z + normal_quantile(spec.target_power)) / scale;
  for (int iter = 0; iter < 60; ++iter) {
    const double s = d * scale;
    const double g = normal_cdf(s - z) + normal_cdf(-s - z) - spec.target_power;
    const double slope = scale * (normal_pdf(s - z) - normal_pdf(-s - z));
    if (!(slope > 0.0)) break;
    const double step = g / slope;
    d = std::max(d - step, d / 2.0);
    if (std::fabs(step) <= 1e-15 * d) break;
  }
  return MdeResult{.d_min = d};
}

double exposed_risk(OutcomeContext context, const TwoProportionEffect& effect) {
  return std::visit(
      [&](const auto& e) {
        if (!(e.context() == context)) {
          throw ConfigError("effect carries p0 = " + format_full(e.context().p0()) +
                            " but the design uses p0 = " + format_full(context.p0()));
        }
        return e.exposed_risk();
      },
      effect);
}

double achieved_power_two_proportions(double p0, double p1, long long n1, long long n2,
                                      double alpha) {
  if (n1 < 2 || n2 < 2) throw DomainError("power needs at least 2 observations per group");
  require_alpha(alpha);
  const double z = two_sided_critical(alpha);
  const double a = static_cast<double>(n1);
  const double b = static_cast<double>(n2);
  const double pooled = (a * p0 + b * p1) / (a + b);
  const double se_null = std::sqrt(pooled * (1.0 - pooled) * (1.0 / a + 1.0 / b));
  const double se_alt = std::sqrt(p0 * (1.0 - p0) / a + p1 * (1.0 - p1) / b);
  const double gap = std::fabs(p1 - p0);
  return normal_cdf((gap - z * se_null) / se_alt) + normal_cdf((-gap - z * se_null) / se_alt);
}

SampleSizeResult required_n_two_proportions(OutcomeContext context,
                                            const TwoProportionEffect& effect,
                                            const PowerSpec& spec) {
  spec.validate();
  const double p0 = context.p0();
  const double p1 = exposed_risk(context, effect);
  if (!(p1 > 0.0 && p1 < 1.0)) {
    throw DomainError("risk under the effect is " + format_full(p1) +
                      "; it must lie strictly between 0 and 1");
  }
  if (p1 == p0) throw DomainError("no finite n detects a null effect (p1 == p0)");

  const double k = spec.allocation;
  const double pooled = (p0 + k * p1) / (1.0 + k);
  const double z_alpha = two_sided_critical(spec.alpha);
  const double z_power = normal_quantile(spec.target_power);
  const double numer = z_alpha * std::sqrt(pooled * (1.0 - pooled) * (1.0 + 1.0 / k)) +
                       z_power * std::sqrt(p0 * (1.0 - p0) + p1 * (1.0 - p1) / k);
  const double estimate = numer * numer / ((p1 - p0) * (p1 - p0));

  auto power = [&](long long n) {
    return achieved_power_two_proportions(p0, p1, n, group2_size(n, k), spec.alpha);
  };
  return finish(smallest_n(estimate, spec.target_power, power), spec, power);
}

}  // namespace effectplan
