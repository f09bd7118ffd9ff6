#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace lookupdb {

// Fixed-point decimal with four fractional digits, stored as a scaled
// 64-bit integer. All arithmetic is exact or rounds half away from zero at
// the fourth digit; overflow is reported as std::nullopt.
class Decimal {
 public:
  static constexpr int kScale = 4;
  static constexpr std::int64_t kUnit = 10'000;

  constexpr Decimal() = default;

  static constexpr Decimal from_units(std::int64_t units) {
    Decimal d;
    d.units_ = units;
    return d;
  }

  static std::optional<Decimal> from_integer(std::int64_t value);

  // Accepts [-+]digits[.digits] with at most four fractional digits.
  static std::optional<Decimal> parse(std::string_view text);

  constexpr std::int64_t units() const { return units_; }
  constexpr bool is_zero() const { return units_ == 0; }
  constexpr bool is_negative() const { return units_ < 0; }

  // Shortest exact text: no exponent, no trailing fractional zeros.
  std::string to_string() const;

  // Half-up (away from zero) rounding to `digits` fractional digits, 0..4.
  Decimal round_half_up(int digits) const;

  constexpr auto operator<=>(const Decimal&) const = default;

 private:
  std::int64_t units_ = 0;
};

std::optional<Decimal> checked_add(Decimal a, Decimal b);
std::optional<Decimal> checked_sub(Decimal a, Decimal b);
std::optional<Decimal> checked_mul(Decimal a, Decimal b);
// std::nullopt on division by zero as well as overflow.
std::optional<Decimal> checked_div(Decimal a, Decimal b);

}  // namespace lookupdb
