#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "lookupdb/schema.hpp"
#include "lookupdb/table.hpp"

namespace lookupdb {

struct DatabaseOptions {
  // Save a table's CSV synchronously after every committed change.
  bool write_through = false;
};

// All table stores of one manifest. Single writer: callers serialize
// mutations; a copy is a consistent read-only snapshot.
class Database {
 public:
  Database(SchemaManifest manifest, std::map<std::string, TableStore, std::less<>> stores,
           DatabaseOptions options = {});

  // Loads every table listed in the manifest from its data_dir.
  static Database load(SchemaManifest manifest, DatabaseOptions options = {});

  const SchemaManifest& manifest() const { return manifest_; }
  const LocaleSpec& locale() const { return manifest_.locale; }
  void set_locale(LocaleSpec locale) { manifest_.locale = locale; }
  const DatabaseOptions& options() const { return options_; }

  bool has_table(std::string_view name) const { return stores_.count(name) != 0; }
  // Throws Error(UnknownTable).
  const TableStore& store(std::string_view name) const;
  TableStore& mutable_store(std::string_view name);

  // Bumped on every committed change; datasets use it to notice edits made
  // through other cursors.
  std::uint64_t version(std::string_view name) const;
  void touch(std::string_view name);

  // Saves when write_through is on.
  void persist(std::string_view name) const;
  void save_all() const;

 private:
  SchemaManifest manifest_;
  std::map<std::string, TableStore, std::less<>> stores_;
  std::map<std::string, std::uint64_t, std::less<>> versions_;
  DatabaseOptions options_;
};

}  // namespace lookupdb
