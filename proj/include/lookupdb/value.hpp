#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lookupdb/decimal.hpp"

namespace lookupdb {

enum class ValueType { Integer, Decimal, Text, Date };

std::string_view to_string(ValueType type);
std::optional<ValueType> parse_value_type(std::string_view name);

// Calendar date, ISO-8601 `YYYY-MM-DD` on disk and on the wire.
struct Date {
  int year = 1970;
  unsigned month = 1;
  unsigned day = 1;

  static std::optional<Date> parse(std::string_view text);
  bool valid() const;
  std::string to_string() const;

  auto operator<=>(const Date&) const = default;
};

using Null = std::monostate;
using Value = std::variant<Null, std::int64_t, Decimal, std::string, Date>;

inline bool is_null(const Value& v) { return std::holds_alternative<Null>(v); }

std::optional<ValueType> type_of(const Value& v);
bool matches_type(const Value& v, ValueType type);

// Canonical text form; null renders as the empty string.
std::string to_text(const Value& v);

// Coerces text into a value of `type`. Empty text is null. Throws
// Error(TypeError) when the text is not a valid literal of `type`.
Value parse_value(std::string_view text, ValueType type);

// Total order: null first, then by alternative, then by value.
std::strong_ordering compare_values(const Value& a, const Value& b);

// Numeric view used by expressions and display formats. Null for
// non-numeric or null values and for integers beyond Decimal range.
std::optional<Decimal> as_decimal(const Value& v);

using Row = std::vector<Value>;

// Primary-key tuple compared component-wise.
using Key = std::vector<Value>;

std::strong_ordering compare_keys(const Key& a, const Key& b);
std::string key_to_string(const Key& key);

}  // namespace lookupdb
