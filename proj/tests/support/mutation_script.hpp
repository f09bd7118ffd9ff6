#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "test_support.hpp"

namespace lookupdb::testing {

// One insert, update or delete against the seed schema. Scripts mix valid
// changes with FK violations, duplicate keys, type errors, read-only
// fields and RESTRICT deletes.
struct Mutation {
  std::string table;
  std::string op;
  Key key;
  std::vector<std::pair<std::string, Value>> values;
};

std::vector<Mutation> random_script(Rng& rng, int length);

// Request body for POST /tables/{t}/mutations, built without the service's
// own converters.
nlohmann::json to_request(const Mutation& m);

// Applies `m` through a Dataset. True when the change was committed.
bool apply_direct(Database& db, const Mutation& m);

}  // namespace lookupdb::testing
