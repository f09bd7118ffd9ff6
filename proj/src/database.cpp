#include "lookupdb/database.hpp"

#include "lookupdb/error.hpp"

namespace lookupdb {

Database::Database(SchemaManifest manifest, std::map<std::string, TableStore, std::less<>> stores,
                   DatabaseOptions options)
    : manifest_(std::move(manifest)), stores_(std::move(stores)), options_(options) {
  for (const auto& t : manifest_.tables) {
    if (!stores_.count(t.name)) stores_.emplace(t.name, TableStore{t, {}});
    versions_[t.name] = 0;
  }
}

Database Database::load(SchemaManifest manifest, DatabaseOptions options) {
  std::map<std::string, TableStore, std::less<>> stores;
  for (const auto& t : manifest.tables) {
    stores.emplace(t.name, load_table(t, manifest.data_dir));
  }
  return Database(std::move(manifest), std::move(stores), options);
}

const TableStore& Database::store(std::string_view name) const {
  auto it = stores_.find(name);
  if (it == stores_.end()) throw Error(ErrorCode::UnknownTable, "unknown table " + std::string(name));
  return it->second;
}

TableStore& Database::mutable_store(std::string_view name) {
  auto it = stores_.find(name);
  if (it == stores_.end()) throw Error(ErrorCode::UnknownTable, "unknown table " + std::string(name));
  return it->second;
}

std::uint64_t Database::version(std::string_view name) const {
  auto it = versions_.find(name);
  return it == versions_.end() ? 0 : it->second;
}

void Database::touch(std::string_view name) {
  auto it = versions_.find(name);
  if (it != versions_.end()) ++it->second;
}

void Database::persist(std::string_view name) const {
  if (options_.write_through) save_table(store(name), manifest_.data_dir);
}

void Database::save_all() const {
  for (const auto& [name, s] : stores_) save_table(s, manifest_.data_dir);
}

}  // namespace lookupdb
