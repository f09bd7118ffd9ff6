#pragma once

#include <cstddef>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "json.hpp"
#include "lookupdb/database.hpp"

namespace httplib {
class Server;
}

namespace lookupdb {

using json = nlohmann::json;

// Wire form of a value: integers as numbers, decimals, text and dates as
// strings, null as null.
json value_to_json(const Value& v);
// Throws Error(TypeError).
Value value_from_json(const json& j, ValueType type);

// JSON facade over one database. Reads share a lock; mutations take it
// exclusively and write through to CSV before returning.
class Service {
 public:
  struct Response {
    int status = 200;
    json body;
  };

  explicit Service(Database db);

  Response schema() const;
  Response rows(std::string_view table, const std::optional<std::string>& master_key,
                std::size_t offset = 0, std::optional<std::size_t> limit = std::nullopt) const;
  Response options(std::string_view binding) const;
  Response mutate(std::string_view table, const json& request);
  Response calc_preview(const json& request) const;
  Response validate() const;

  // GET /schema, GET /tables/{t}/rows, GET /bindings/{name}/options,
  // POST /tables/{t}/mutations, POST /calc/preview, GET /validate.
  void register_routes(httplib::Server& server);

  // Copy of the committed state.
  Database snapshot() const;

 private:
  json row_json(const TableDef& def, const Row& evaluated) const;

  mutable std::shared_mutex mutex_;
  Database db_;
};

}  // namespace lookupdb
