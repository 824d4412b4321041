#include "vrrw/rational.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>

namespace vrrw {

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  num = g ? n / g : n;
  den = g ? d / g : d;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

namespace {

bool parse_int(const std::string& s, std::size_t begin, std::size_t end,
               std::int64_t& out) {
  if (begin >= end) return false;
  std::int64_t sign = 1;
  std::size_t i = begin;
  if (s[i] == '+' || s[i] == '-') {
    sign = s[i] == '-' ? -1 : 1;
    ++i;
  }
  if (i >= end) return false;
  std::int64_t value = 0;
  for (; i < end; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    if (value > (INT64_MAX - 9) / 10) return false;
    value = value * 10 + (s[i] - '0');
  }
  out = sign * value;
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::int64_t n = 0, d = 0;
    if (!parse_int(text, 0, slash, n)) return std::nullopt;
    if (!parse_int(text, slash + 1, text.size(), d)) return std::nullopt;
    if (d == 0) return std::nullopt;
    return Rational(n, d);
  }
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::int64_t whole = 0, frac = 0;
    const std::size_t digits = text.size() - dot - 1;
    if (digits == 0 || digits > 18) return std::nullopt;
    if (!parse_int(text, 0, dot, whole)) return std::nullopt;
    if (!parse_int(text, dot + 1, text.size(), frac)) return std::nullopt;
    if (frac < 0) return std::nullopt;
    std::int64_t den = 1;
    for (std::size_t k = 0; k < digits; ++k) {
      if (den > INT64_MAX / 10) return std::nullopt;
      den *= 10;
    }
    const bool neg = !text.empty() && text[0] == '-';
    const std::int64_t mag = (whole < 0 ? -whole : whole);
    if (mag > (INT64_MAX - frac) / den) return std::nullopt;
    const std::int64_t num = mag * den + frac;
    return Rational(neg ? -num : num, den);
  }
  std::int64_t n = 0;
  if (!parse_int(text, 0, text.size(), n)) return std::nullopt;
  return Rational(n, 1);
}

}  // namespace vrrw
