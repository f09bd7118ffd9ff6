#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lookupdb/schema.hpp"
#include "lookupdb/value.hpp"

namespace lookupdb {

// Committed rows of one table. Rows are positional over def.fields; Lookup
// and Calculated slots are always null in the store.
struct TableStore {
  TableDef def;
  std::vector<Row> rows;

  std::optional<std::size_t> find(const Key& key) const;
  bool operator==(const TableStore& other) const;
};

// Parses CSV text against `def`. Throws Error(HeaderMismatch | TypeError |
// DuplicateKey) with the offending row and field in the message.
TableStore parse_table(const TableDef& def, std::string_view csv_text);

// Throws Error(MissingFile) when the source file does not exist.
TableStore load_table(const TableDef& def, const std::filesystem::path& data_dir);

// Header is the Data fields in declaration order.
std::string serialize_table(const TableStore& store);

// Writes atomically through a temporary file. Throws Error(IoError).
void save_table(const TableStore& store, const std::filesystem::path& data_dir);

}  // namespace lookupdb
