#include "lookupdb/csv.hpp"

#include "lookupdb/error.hpp"

namespace lookupdb::csv {

std::vector<Record> parse(std::string_view text) {
  std::vector<Record> out;
  Record record;
  std::string cell;
  bool quoted = false;
  bool cell_started = false;
  std::size_t line = 1;

  auto end_record = [&] {
    if (cell_started || !record.empty()) {
      record.push_back(std::move(cell));
      out.push_back(std::move(record));
    }
    record.clear();
    cell.clear();
    cell_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        cell += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        cell_started = true;
        break;
      case ',':
        record.push_back(std::move(cell));
        cell.clear();
        cell_started = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        end_record();
        ++line;
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        cell += c;
        cell_started = true;
    }
  }
  if (quoted) {
    throw Error(ErrorCode::TypeError, "unterminated quoted cell at line " + std::to_string(line));
  }
  end_record();
  return out;
}

void append_record(std::string& out, const Record& record) {
  for (std::size_t i = 0; i < record.size(); ++i) {
    if (i) out += ',';
    const auto& cell = record[i];
    if (cell.find_first_of(",\"\r\n") == std::string::npos) {
      out += cell;
      continue;
    }
    out += '"';
    for (char c : cell) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  }
  out += '\n';
}

}  // namespace lookupdb::csv
