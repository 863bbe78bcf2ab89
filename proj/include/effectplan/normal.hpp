#pragma once

namespace effectplan {

/// Inverse standard normal CDF (Wichura's AS241 PPND16, ~1e-16 relative).
/// Throws DomainError unless 0 < p < 1.
double normal_quantile(double p);

/// Standard normal CDF via erfc; symmetric so that Phi(-x) = 1 - Phi(x).
double normal_cdf(double x);

double normal_pdf(double x);

}  // namespace effectplan
