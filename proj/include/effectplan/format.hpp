#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace effectplan {

/// Shortest decimal text that parses back to exactly `x` (locale independent).
std::string format_full(double x);

/// `x` rounded half away from zero to `decimals` places, always printing
/// exactly `decimals` digits after the point. Rounding is done on the
/// shortest round-trip decimal expansion of `x`, so 1.005 -> "1.01" and
/// 2.675 -> "2.68" even though neither is exactly representable.
std::string format_fixed(double x, int decimals);

/// Up to `significant` significant digits, trailing zeros dropped
/// (for messages: 6 * 0.2 prints as "1.2").
std::string format_short(double x, int significant = 10);

/// Integer with no grouping separators.
std::string format_count(long long n);

/// Strict, locale-independent parse of a whole string as a finite double.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_count(std::string_view text);

}  // namespace effectplan
