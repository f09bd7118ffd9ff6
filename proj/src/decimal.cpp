#include "lookupdb/decimal.hpp"

#include <cstdlib>
#include <limits>

namespace lookupdb {

namespace {

using Wide = __int128;

constexpr Wide kMax = std::numeric_limits<std::int64_t>::max();
constexpr Wide kMin = std::numeric_limits<std::int64_t>::min();

std::optional<Decimal> narrow(Wide v) {
  if (v > kMax || v < kMin) return std::nullopt;
  return Decimal::from_units(static_cast<std::int64_t>(v));
}

// Divides with half-away-from-zero rounding. divisor != 0.
Wide div_half_up(Wide numerator, Wide divisor) {
  Wide q = numerator / divisor;
  Wide r = numerator % divisor;
  if (r < 0) r = -r;
  Wide d = divisor < 0 ? -divisor : divisor;
  if (r * 2 >= d) {
    bool negative = (numerator < 0) != (divisor < 0);
    q += negative ? -1 : 1;
  }
  return q;
}

}  // namespace

std::optional<Decimal> Decimal::from_integer(std::int64_t value) {
  return narrow(static_cast<Wide>(value) * kUnit);
}

std::optional<Decimal> Decimal::parse(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  Wide int_part = 0;
  std::size_t int_digits = 0;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
    int_part = int_part * 10 + (text[i] - '0');
    if (int_part > kMax) return std::nullopt;
    ++int_digits;
    ++i;
  }
  Wide frac = 0;
  int frac_digits = 0;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      if (frac_digits == kScale) return std::nullopt;
      frac = frac * 10 + (text[i] - '0');
      ++frac_digits;
      ++i;
    }
    if (frac_digits == 0) return std::nullopt;
  }
  if (i != text.size() || (int_digits == 0 && frac_digits == 0)) return std::nullopt;
  for (int k = frac_digits; k < kScale; ++k) frac *= 10;
  Wide units = int_part * kUnit + frac;
  return narrow(negative ? -units : units);
}

std::string Decimal::to_string() const {
  Wide u = units_;
  bool negative = u < 0;
  if (negative) u = -u;
  auto int_part = static_cast<unsigned long long>(u / kUnit);
  auto frac = static_cast<unsigned>(u % kUnit);
  std::string out = negative ? "-" : "";
  out += std::to_string(int_part);
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, kScale - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    out += '.';
    out += digits;
  }
  return out;
}

Decimal Decimal::round_half_up(int digits) const {
  if (digits >= kScale) return *this;
  if (digits < 0) digits = 0;
  Wide factor = 1;
  for (int k = digits; k < kScale; ++k) factor *= 10;
  Wide q = div_half_up(units_, factor);
  // Rounding can push past int64 only at the extreme ends; saturate there.
  Wide r = q * factor;
  if (r > kMax) r -= factor;
  if (r < kMin) r += factor;
  return from_units(static_cast<std::int64_t>(r));
}

std::optional<Decimal> checked_add(Decimal a, Decimal b) {
  return narrow(static_cast<Wide>(a.units()) + b.units());
}

std::optional<Decimal> checked_sub(Decimal a, Decimal b) {
  return narrow(static_cast<Wide>(a.units()) - b.units());
}

std::optional<Decimal> checked_mul(Decimal a, Decimal b) {
  Wide product = static_cast<Wide>(a.units()) * b.units();
  return narrow(div_half_up(product, Decimal::kUnit));
}

std::optional<Decimal> checked_div(Decimal a, Decimal b) {
  if (b.is_zero()) return std::nullopt;
  Wide numerator = static_cast<Wide>(a.units()) * Decimal::kUnit;
  return narrow(div_half_up(numerator, b.units()));
}

}  // namespace lookupdb
