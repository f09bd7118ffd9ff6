#include "lookupdb/format.hpp"

#include "lookupdb/error.hpp"

namespace lookupdb {

namespace {

bool is_digit_placeholder(char c) { return c == '#' || c == '0'; }

}  // namespace

FormatPattern parse_pattern(std::string_view text) {
  if (text.empty()) throw SyntaxError(0, "empty pattern");

  FormatPattern p;
  std::size_t i = 0;
  while (i < text.size() && !is_digit_placeholder(text[i])) ++i;
  p.prefix = std::string(text.substr(0, i));
  if (i == text.size()) throw SyntaxError(i, "pattern has no digit placeholder");

  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '0') {
      ++p.min_int_digits;
    } else if (c == '.') {
      p.grouping = true;
    } else if (c != '#') {
      break;
    }
  }
  if (i == text.size()) return p;

  if (text[i] != ',') throw SyntaxError(i, "unexpected character after integer section");
  std::size_t marker = i++;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '#') {
      p.fraction.push_back(Placeholder::Optional);
    } else if (c == '0') {
      p.fraction.push_back(Placeholder::Forced);
    } else if (c == ',') {
      throw SyntaxError(i, "second decimal marker");
    } else {
      throw SyntaxError(i, "unexpected character after fraction section");
    }
    if (p.fraction.size() > FormatPattern::kMaxFraction) {
      throw SyntaxError(i, "more than four fractional placeholders");
    }
  }
  if (p.fraction.empty()) throw SyntaxError(marker, "decimal marker without placeholders");
  return p;
}

std::string canonical_text(const FormatPattern& pattern) {
  std::string out = pattern.prefix;
  out += '#';
  if (pattern.grouping) out += '.';
  out.append(pattern.min_int_digits, '0');
  if (pattern.grouping && pattern.min_int_digits == 0) out += '#';
  if (!pattern.fraction.empty()) {
    out += ',';
    for (auto ph : pattern.fraction) out += ph == Placeholder::Forced ? '0' : '#';
  }
  return out;
}

std::string render(Decimal value, const FormatPattern& pattern, const LocaleSpec& locale) {
  const auto digits = static_cast<int>(pattern.fraction.size());
  Decimal rounded = value.round_half_up(digits);

  std::string text = rounded.to_string();
  bool negative = !text.empty() && text.front() == '-';
  if (negative) text.erase(0, 1);

  std::string int_digits = text;
  std::string frac_digits;
  if (auto dot = text.find('.'); dot != std::string::npos) {
    int_digits = text.substr(0, dot);
    frac_digits = text.substr(dot + 1);
  }
  frac_digits.resize(pattern.fraction.size(), '0');

  // Drop trailing optional digits that are zero.
  std::size_t keep = frac_digits.size();
  while (keep > 0 && pattern.fraction[keep - 1] == Placeholder::Optional &&
         frac_digits[keep - 1] == '0') {
    --keep;
  }
  frac_digits.resize(keep);

  if (int_digits.size() < pattern.min_int_digits) {
    int_digits.insert(0, pattern.min_int_digits - int_digits.size(), '0');
  }
  if (pattern.grouping && int_digits.size() > 3) {
    std::string grouped;
    std::size_t lead = int_digits.size() % 3;
    if (lead == 0) lead = 3;
    grouped.append(int_digits, 0, lead);
    for (std::size_t k = lead; k < int_digits.size(); k += 3) {
      grouped += locale.group_symbol;
      grouped.append(int_digits, k, 3);
    }
    int_digits = std::move(grouped);
  }

  std::string out = pattern.prefix;
  if (negative) out += '-';
  out += int_digits;
  if (!frac_digits.empty()) {
    out += locale.decimal_symbol;
    out += frac_digits;
  }
  return out;
}

}  // namespace lookupdb
