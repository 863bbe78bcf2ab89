#include "effectplan/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace effectplan {

std::string format_full(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_fixed(double x, int decimals) {
  if (!std::isfinite(x)) return format_full(x);

  char buf[512];
  const auto res = std::to_chars(buf, buf + sizeof buf, std::fabs(x), std::chars_format::fixed);
  std::string digits(buf, res.ptr);

  const auto dot = digits.find('.');
  std::string int_part = dot == std::string::npos ? digits : digits.substr(0, dot);
  std::string frac_part = dot == std::string::npos ? std::string() : digits.substr(dot + 1);

  const auto keep = static_cast<std::size_t>(decimals);
  bool round_up = frac_part.size() > keep && frac_part[keep] >= '5';
  frac_part.resize(keep, '0');

  if (round_up) {
    // Propagate the carry through the fraction, then the integer part.
    std::string all = int_part + frac_part;
    int i = static_cast<int>(all.size()) - 1;
    while (i >= 0 && all[i] == '9') all[i--] = '0';
    if (i >= 0) {
      ++all[i];
    } else {
      all.insert(all.begin(), '1');
    }
    int_part = all.substr(0, all.size() - keep);
    frac_part = all.substr(all.size() - keep);
  }

  std::string out = int_part;
  if (keep > 0) out += "." + frac_part;
  const bool is_zero = out.find_first_not_of("0.") == std::string::npos;
  if (std::signbit(x) && !is_zero) out.insert(out.begin(), '-');
  return out;
}

std::string format_short(double x, int significant) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, significant);
  return std::string(buf, res.ptr);
}

std::string format_count(long long n) { return std::to_string(n); }

std::optional<double> parse_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  const char* first = text.data();
  const char* last = first + text.size();
  if (*first == '+') ++first;
  double value = 0.0;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<long long> parse_count(std::string_view text) {
  if (text.empty()) return std::nullopt;
  long long value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace effectplan
