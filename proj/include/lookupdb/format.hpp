#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lookupdb/decimal.hpp"

namespace lookupdb {

// Rendering symbols. Pattern text always uses '.' for grouping and ',' for
// the decimal marker; the locale only decides what gets printed.
struct LocaleSpec {
  char group_symbol = '.';
  char decimal_symbol = ',';

  static LocaleSpec indonesian() { return {'.', ','}; }
  static LocaleSpec us() { return {',', '.'}; }

  bool operator==(const LocaleSpec&) const = default;
};

enum class Placeholder { Forced, Optional };

// Parsed display format, e.g. `US$ #.#,#`:
//   prefix "US$ ", grouping on, no forced integer digits, one optional
//   fractional digit.
struct FormatPattern {
  static constexpr std::size_t kMaxFraction = 4;

  std::string prefix;
  bool grouping = false;
  std::size_t min_int_digits = 0;
  std::vector<Placeholder> fraction;

  bool operator==(const FormatPattern&) const = default;
};

// Throws SyntaxError on an empty pattern, a second decimal marker, a
// character after the fraction section, a missing integer placeholder or
// more than four fractional placeholders.
FormatPattern parse_pattern(std::string_view text);

// Canonical pattern text; parse_pattern(canonical_text(p)) == p.
std::string canonical_text(const FormatPattern& pattern);

std::string render(Decimal value, const FormatPattern& pattern, const LocaleSpec& locale);

}  // namespace lookupdb
