#pragma once

#include <cstdint>
#include <variant>

#include "effectplan/measures.hpp"

namespace effectplan {

// Two-group designs, two-sided tests, normal (z) approximation throughout.

struct PowerSpec {
  double alpha = 0.05;
  double target_power = 0.80;
  /// Size of group 2 relative to group 1.
  double allocation = 1.0;

  /// Throws DomainError if any field is out of range.
  void validate() const;
};

/// Sample-size outputs below this per-group size are raised to it (and
/// flagged), since the normal approximation degrades for tiny groups.
inline constexpr long long kMinGroupSize = 4;

struct SampleSizeResult {
  long long n_per_group;  // group 1
  long long n_group2;
  long long n_total;
  double achieved_power_at_n;
  /// Set when the small-sample floor raised the analytic answer.
  bool floored = false;
};

struct MdeResult {
  double d_min;
};

/// Two-sided z-test power for a standardized difference with n per group.
/// Equals alpha at d = 0. Throws DomainError for n < 2 or alpha outside (0, 1).
double achieved_power_smd(SmdValue d, long long n_per_group, double alpha);
double achieved_power_smd(SmdValue d, long long n1, long long n2, double alpha);

/// Smallest n with achieved power >= target, never below kMinGroupSize.
/// Throws DomainError for d = 0.
SampleSizeResult required_n_smd(SmdValue d, const PowerSpec& spec);

/// d such that achieved_power_smd(d, n, alpha) == target_power.
MdeResult mde_smd(long long n_per_group, const PowerSpec& spec);

using TwoProportionEffect = std::variant<RelativeRiskValue, RiskDifferenceValue>;

/// Risk in the exposed/treated group implied by `effect` at baseline `context`.
/// Throws ConfigError if the effect carries a different baseline risk.
double exposed_risk(OutcomeContext context, const TwoProportionEffect& effect);

/// Power of the pooled two-proportion z-test, normal approximation.
double achieved_power_two_proportions(double p0, double p1, long long n1, long long n2,
                                      double alpha);

/// Throws DomainError unless the implied exposed risk lies in (0, 1) and
/// differs from p0.
SampleSizeResult required_n_two_proportions(OutcomeContext context,
                                            const TwoProportionEffect& effect,
                                            const PowerSpec& spec);

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

struct SimConfig {
  long long replications = 100000;
  std::uint64_t seed = 42;
  /// Worker threads; 0 picks hardware concurrency. Does not affect results.
  unsigned workers = 0;
};

/// Fraction of replications in which the pooled-variance two-sample statistic
/// exceeds the two-sided normal critical value. Groups are drawn from unit
/// variance normals with mean gap d. Deterministic in (inputs, seed,
/// replications).
double simulate_power_smd(SmdValue d, long long n_per_group, double alpha, const SimConfig& sim);

/// Binomial analog: pooled two-proportion z-test on Bernoulli draws.
double simulate_power_two_proportions(OutcomeContext context, const TwoProportionEffect& effect,
                                      long long n_per_group, double alpha, const SimConfig& sim);

}  // namespace effectplan
