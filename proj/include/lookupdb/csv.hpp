#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lookupdb::csv {

using Record = std::vector<std::string>;

// RFC 4180: comma delimiter, double-quote quoting, CRLF or LF line ends.
// Blank lines are skipped. Throws Error(TypeError) on an unterminated quote.
std::vector<Record> parse(std::string_view text);

// Appends one record terminated by '\n', quoting cells only when needed.
void append_record(std::string& out, const Record& record);

}  // namespace lookupdb::csv
