#include "lookupdb/table.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "lookupdb/csv.hpp"
#include "lookupdb/error.hpp"

namespace lookupdb {

namespace {

struct KeyLess {
  bool operator()(const Key& a, const Key& b) const { return compare_keys(a, b) < 0; }
};

}  // namespace

std::optional<std::size_t> TableStore::find(const Key& key) const {
  auto idx = def.key_indices();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    bool match = true;
    for (std::size_t k = 0; k < idx.size() && match; ++k) {
      match = compare_values(rows[r][idx[k]], key[k]) == 0;
    }
    if (match) return r;
  }
  return std::nullopt;
}

bool TableStore::operator==(const TableStore& other) const {
  if (def.name != other.def.name || rows.size() != other.rows.size()) return false;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != other.rows[r].size()) return false;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (compare_values(rows[r][c], other.rows[r][c]) != 0) return false;
    }
  }
  return true;
}

TableStore parse_table(const TableDef& def, std::string_view csv_text) {
  TableStore store{def, {}};
  auto records = csv::parse(csv_text);
  auto data = def.data_indices();

  if (records.empty()) {
    throw Error(ErrorCode::HeaderMismatch, def.source_file + ": missing header row");
  }
  const auto& header = records.front();
  for (std::size_t i = 0; i < std::max(header.size(), data.size()); ++i) {
    if (i >= data.size()) {
      throw Error(ErrorCode::HeaderMismatch,
                  def.source_file + ": unexpected column '" + header[i] + "'");
    }
    const auto& expected = def.fields[data[i]].name;
    if (i >= header.size() || header[i] != expected) {
      throw Error(ErrorCode::HeaderMismatch, def.source_file + ": expected column '" +
                                                 expected + "' at position " +
                                                 std::to_string(i + 1));
    }
  }

  auto key_idx = def.key_indices();
  std::map<Key, std::size_t, KeyLess> seen;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::string where = def.source_file + " row " + std::to_string(r);
    if (rec.size() != data.size()) {
      throw Error(ErrorCode::TypeError, where + ": expected " + std::to_string(data.size()) +
                                            " cells, got " + std::to_string(rec.size()));
    }
    Row row = def.empty_row();
    for (std::size_t c = 0; c < data.size(); ++c) {
      const FieldDef& f = def.fields[data[c]];
      try {
        row[data[c]] = parse_value(rec[c], f.value_type);
      } catch (const Error& e) {
        throw Error(ErrorCode::TypeError, where + ", field " + f.name + ": " + e.what());
      }
      if (f.required && is_null(row[data[c]])) {
        throw Error(ErrorCode::TypeError, where + ", field " + f.name + ": required value missing");
      }
    }
    Key key = def.key_of(row);
    for (std::size_t k = 0; k < key.size(); ++k) {
      if (is_null(key[k])) {
        throw Error(ErrorCode::TypeError,
                    where + ", field " + def.primary_key[k] + ": key value missing");
      }
    }
    if (!seen.emplace(key, r).second) {
      throw Error(ErrorCode::DuplicateKey,
                  def.source_file + ": duplicate key " + key_to_string(key) + " at row " +
                      std::to_string(r));
    }
    store.rows.push_back(std::move(row));
  }
  return store;
}

TableStore load_table(const TableDef& def, const std::filesystem::path& data_dir) {
  auto path = data_dir / def.source_file;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, "missing table file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_table(def, ss.str());
}

std::string serialize_table(const TableStore& store) {
  auto data = store.def.data_indices();
  std::string out;
  csv::Record header;
  for (auto i : data) header.push_back(store.def.fields[i].name);
  csv::append_record(out, header);
  for (const auto& row : store.rows) {
    csv::Record rec;
    rec.reserve(data.size());
    for (auto i : data) rec.push_back(to_text(row[i]));
    csv::append_record(out, rec);
  }
  return out;
}

void save_table(const TableStore& store, const std::filesystem::path& data_dir) {
  auto path = data_dir / store.def.source_file;
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    auto text = serialize_table(store);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot replace " + path.string() + ": " + ec.message());
}

}  // namespace lookupdb
