#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace vrrw {

// Exact nonnegative rational, used so that weights given as strings like
// "3/8" can be compared exactly and round-tripped through files.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;  // always > 0, gcd(num,den) == 1

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;  // canonical "num/den" (or "num" when den == 1)

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
};

// Parses "3/8", "2", "0.25" (decimal with up to 18 fractional digits).
// Returns nullopt on malformed input or zero denominator.
std::optional<Rational> parse_rational(const std::string& text);

}  // namespace vrrw
