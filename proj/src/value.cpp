#include "lookupdb/value.hpp"

#include <charconv>
#include <cstdio>

#include "lookupdb/error.hpp"

namespace lookupdb {

std::string_view to_string(ValueType type) {
  switch (type) {
    case ValueType::Integer: return "Integer";
    case ValueType::Decimal: return "Decimal";
    case ValueType::Text: return "Text";
    case ValueType::Date: return "Date";
  }
  return "Text";
}

std::optional<ValueType> parse_value_type(std::string_view name) {
  if (name == "Integer") return ValueType::Integer;
  if (name == "Decimal") return ValueType::Decimal;
  if (name == "Text") return ValueType::Text;
  if (name == "Date") return ValueType::Date;
  return std::nullopt;
}

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

unsigned days_in_month(int y, unsigned m) {
  static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return kDays[m - 1];
}

template <typename T>
bool parse_digits(std::string_view text, T& out) {
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

std::optional<Date> Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  Date d;
  if (!parse_digits(text.substr(0, 4), d.year) || !parse_digits(text.substr(5, 2), d.month) ||
      !parse_digits(text.substr(8, 2), d.day)) {
    return std::nullopt;
  }
  if (!d.valid()) return std::nullopt;
  return d;
}

bool Date::valid() const {
  return year >= 1 && year <= 9999 && month >= 1 && month <= 12 && day >= 1 &&
         day <= days_in_month(year, month);
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year, month, day);
  return buf;
}

std::optional<ValueType> type_of(const Value& v) {
  switch (v.index()) {
    case 1: return ValueType::Integer;
    case 2: return ValueType::Decimal;
    case 3: return ValueType::Text;
    case 4: return ValueType::Date;
    default: return std::nullopt;
  }
}

bool matches_type(const Value& v, ValueType type) {
  auto t = type_of(v);
  return !t || *t == type;
}

std::string to_text(const Value& v) {
  struct Visitor {
    std::string operator()(Null) const { return {}; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(const Decimal& d) const { return d.to_string(); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(const Date& d) const { return d.to_string(); }
  };
  return std::visit(Visitor{}, v);
}

Value parse_value(std::string_view text, ValueType type) {
  if (text.empty()) return Null{};
  auto fail = [&]() -> Value {
    throw Error(ErrorCode::TypeError, "'" + std::string(text) + "' is not a valid " +
                                          std::string(to_string(type)));
  };
  switch (type) {
    case ValueType::Integer: {
      std::int64_t out = 0;
      std::string_view digits = text;
      if (digits.front() == '+') digits.remove_prefix(1);
      if (digits.empty()) return fail();
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out);
      if (ec != std::errc() || ptr != digits.data() + digits.size()) return fail();
      return out;
    }
    case ValueType::Decimal: {
      auto d = Decimal::parse(text);
      if (!d) return fail();
      return *d;
    }
    case ValueType::Text:
      return std::string(text);
    case ValueType::Date: {
      auto d = Date::parse(text);
      if (!d) return fail();
      return *d;
    }
  }
  return fail();
}

std::strong_ordering compare_values(const Value& a, const Value& b) {
  if (a.index() != b.index()) return a.index() <=> b.index();
  switch (a.index()) {
    case 1: return std::get<std::int64_t>(a) <=> std::get<std::int64_t>(b);
    case 2: return std::get<Decimal>(a) <=> std::get<Decimal>(b);
    case 3: return std::get<std::string>(a).compare(std::get<std::string>(b)) <=> 0;
    case 4: return std::get<Date>(a) <=> std::get<Date>(b);
    default: return std::strong_ordering::equal;
  }
}

std::optional<Decimal> as_decimal(const Value& v) {
  if (auto i = std::get_if<std::int64_t>(&v)) return Decimal::from_integer(*i);
  if (auto d = std::get_if<Decimal>(&v)) return *d;
  return std::nullopt;
}

std::strong_ordering compare_keys(const Key& a, const Key& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (auto c = compare_values(a[i], b[i]); c != 0) return c;
  }
  return a.size() <=> b.size();
}

std::string key_to_string(const Key& key) {
  std::string out = "(";
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out += ',';
    out += to_text(key[i]);
  }
  out += ')';
  return out;
}

}  // namespace lookupdb
