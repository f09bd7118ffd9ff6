#include "lookupdb/service.hpp"

#include <mutex>

#include "httplib.h"
#include "lookupdb/calc.hpp"
#include "lookupdb/dataset.hpp"
#include "lookupdb/error.hpp"
#include "lookupdb/lookup.hpp"
#include "lookupdb/master_detail.hpp"

namespace lookupdb {

namespace {

json error_body(std::string_view code, const std::string& message, const std::string& field = {}) {
  return {{"ok", false},
          {"errors", json::array({{{"field", field}, {"code", code}, {"message", message}}})}};
}

json field_errors_body(const std::vector<FieldError>& errors) {
  json arr = json::array();
  for (const auto& e : errors) {
    arr.push_back({{"field", e.field}, {"code", e.code}, {"message", e.message}});
  }
  return {{"ok", false}, {"errors", arr}};
}

std::string_view field_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ReadOnlyField: return field_code::kReadOnly;
    case ErrorCode::UnknownField: return field_code::kUnknownField;
    default: return field_code::kTypeError;
  }
}

json locale_json(const LocaleSpec& l) {
  return {{"group", std::string(1, l.group_symbol)}, {"decimal", std::string(1, l.decimal_symbol)}};
}

Key key_from_json(const TableDef& def, const json& j) {
  json parts = j.is_array() ? j : json::array({j});
  if (parts.size() != def.primary_key.size()) {
    throw Error(ErrorCode::TypeError, "key of " + def.name + " has " +
                                          std::to_string(def.primary_key.size()) + " part(s)");
  }
  Key key;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    key.push_back(value_from_json(parts[i], def.field(def.primary_key[i]).value_type));
  }
  return key;
}

}  // namespace

json value_to_json(const Value& v) {
  if (is_null(v)) return nullptr;
  if (auto i = std::get_if<std::int64_t>(&v)) return *i;
  return to_text(v);
}

Value value_from_json(const json& j, ValueType type) {
  if (j.is_null()) return Null{};
  if (j.is_string()) return parse_value(j.get<std::string>(), type);
  if (j.is_number_integer()) {
    if (type == ValueType::Integer) return j.get<std::int64_t>();
    if (type == ValueType::Decimal) {
      if (auto d = Decimal::from_integer(j.get<std::int64_t>())) return *d;
    }
  } else if (j.is_number_float() && type == ValueType::Decimal) {
    if (auto d = Decimal::parse(j.dump())) return *d;
  }
  throw Error(ErrorCode::TypeError, j.dump() + " is not a valid " + std::string(to_string(type)));
}

Service::Service(Database db) : db_(std::move(db)) {}

Database Service::snapshot() const {
  std::shared_lock lock(mutex_);
  return db_;
}

json Service::row_json(const TableDef& def, const Row& row) const {
  json values = json::object();
  json rendered = json::object();
  for (std::size_t i = 0; i < def.fields.size(); ++i) {
    const FieldDef& f = def.fields[i];
    values[f.name] = value_to_json(row[i]);
    rendered[f.name] = display_text(f, row[i], db_.locale());
  }
  json lookups = json::object();
  for (const LookupBinding* b : db_.manifest().bindings_for_child(def.name)) {
    const TableStore& parent = db_.store(b->list_source);
    auto r = find_parent_row(parent, b->key_field, row[def.field_index(b->data_field)]);
    if (!r) {
      lookups[b->name] = nullptr;
      continue;
    }
    auto idx = parent.def.field_index(b->display_field());
    lookups[b->name] = display_text(parent.def.fields[idx], parent.rows[*r][idx], db_.locale());
  }
  json key = json::array();
  for (const auto& k : def.key_of(row)) key.push_back(value_to_json(k));
  return {{"key", key}, {"values", values}, {"rendered", rendered}, {"lookups", lookups}};
}

Service::Response Service::schema() const {
  std::shared_lock lock(mutex_);
  const SchemaManifest& m = db_.manifest();
  json tables = json::array();
  for (const auto& t : m.tables) {
    json fields = json::array();
    for (const auto& f : t.fields) {
      json jf = {{"name", f.name},
                 {"kind", to_string(f.kind)},
                 {"type", to_string(f.value_type)},
                 {"required", f.required},
                 {"read_only", f.kind != FieldKind::Data},
                 {"display_label", f.display_label.value_or(f.name)},
                 {"display_format", f.display_format ? json(*f.display_format) : json(nullptr)}};
      if (f.lookup_binding) jf["lookup_binding"] = *f.lookup_binding;
      for (const LookupBinding* b : m.bindings_for_child(t.name)) {
        if (b->data_field == f.name) {
          jf["binding"] = b->name;
          jf["widget"] = b->widget;
        }
      }
      fields.push_back(std::move(jf));
    }
    json jt = {{"name", t.name},
               {"source_file", t.source_file},
               {"primary_key", t.primary_key},
               {"fields", fields}};
    if (auto link = m.link_for_detail(t.name)) jt["master_table"] = link->master_table;
    tables.push_back(std::move(jt));
  }
  json bindings = json::array();
  for (const auto& b : m.bindings) {
    bindings.push_back({{"name", b.name},
                        {"data_source", b.data_source},
                        {"data_field", b.data_field},
                        {"list_source", b.list_source},
                        {"list_fields", b.list_fields},
                        {"key_field", b.key_field},
                        {"display_field", b.display_field()},
                        {"widget", b.widget}});
  }
  json links = json::array();
  for (const auto& l : m.links) {
    json master_fields = json::array();
    json detail_fields = json::array();
    for (const auto& p : l.field_pairs) {
      master_fields.push_back(p.master_field);
      detail_fields.push_back(p.detail_field);
    }
    links.push_back({{"detail_table", l.detail_table},
                     {"master_table", l.master_table},
                     {"master_fields", master_fields},
                     {"detail_fields", detail_fields}});
  }
  json calcs = json::array();
  for (const auto& c : m.calc_fields) {
    calcs.push_back({{"table", c.table}, {"target_field", c.target_field}, {"expression", c.source}});
  }
  return {200,
          {{"locale", locale_json(m.locale)},
           {"tables", tables},
           {"bindings", bindings},
           {"links", links},
           {"calc_fields", calcs}}};
}

Service::Response Service::rows(std::string_view table, const std::optional<std::string>& master_key,
                                std::size_t offset, std::optional<std::size_t> limit) const {
  std::shared_lock lock(mutex_);
  if (!db_.has_table(table)) {
    return {404, error_body("UNKNOWN_TABLE", "unknown table " + std::string(table))};
  }
  const TableStore& store = db_.store(table);
  std::vector<std::size_t> indices;
  if (const MasterLink* link = db_.manifest().link_for_detail(table)) {
    if (!master_key) {
      return {400, error_body("MISSING_MASTER_KEY",
                              std::string(table) + " is a detail of " + link->master_table +
                                  "; master_key is required")};
    }
    const TableDef& master = db_.manifest().table(link->master_table);
    Row master_row = master.empty_row();
    std::vector<std::string> parts;
    std::string part;
    for (char c : *master_key + ",") {
      if (c == ',') {
        parts.push_back(std::move(part));
        part.clear();
      } else {
        part += c;
      }
    }
    if (parts.size() != link->field_pairs.size()) {
      return {400, error_body("BAD_MASTER_KEY", "master_key needs " +
                                                    std::to_string(link->field_pairs.size()) +
                                                    " comma-separated value(s)")};
    }
    try {
      for (std::size_t i = 0; i < parts.size(); ++i) {
        auto idx = master.field_index(link->field_pairs[i].master_field);
        master_row[idx] = parse_value(parts[i], master.fields[idx].value_type);
      }
    } catch (const Error& e) {
      return {400, error_body("BAD_MASTER_KEY", e.what())};
    }
    indices = detail_view(*link, master, &master_row, store);
  } else {
    for (std::size_t i = 0; i < store.rows.size(); ++i) indices.push_back(i);
  }

  json out = json::array();
  std::size_t end = indices.size();
  if (limit) end = std::min(end, offset + *limit);
  for (std::size_t i = offset; i < end; ++i) {
    Row row = store.rows[indices[i]];
    recalc(db_, store.def, row);
    out.push_back(row_json(store.def, row));
  }
  return {200, {{"table", table}, {"total", indices.size()}, {"offset", offset}, {"rows", out}}};
}

Service::Response Service::options(std::string_view binding) const {
  std::shared_lock lock(mutex_);
  if (!db_.manifest().find_binding(binding)) {
    return {404, error_body("UNKNOWN_BINDING", "unknown binding " + std::string(binding))};
  }
  json out = json::array();
  for (const auto& opt : lookup_rows(db_, binding)) {
    out.push_back({{"key", value_to_json(opt.key)}, {"display", opt.display}});
  }
  return {200, out};
}

Service::Response Service::mutate(std::string_view table, const json& request) {
  std::unique_lock lock(mutex_);
  if (!db_.has_table(table)) {
    return {404, error_body("UNKNOWN_TABLE", "unknown table " + std::string(table))};
  }
  if (!request.is_object() || !request.contains("op") || !request["op"].is_string()) {
    return {400, error_body("BAD_REQUEST", "body must be an object with an 'op' string")};
  }
  const std::string op = request["op"];
  if (op != "insert" && op != "update" && op != "delete") {
    return {400, error_body("BAD_REQUEST", "op must be insert, update or delete")};
  }
  json values = request.value("values", json::object());
  if (!values.is_object()) return {400, error_body("BAD_REQUEST", "'values' must be an object")};

  Dataset ds(db_, std::string(table));
  const TableDef& def = ds.def();
  ds.open();

  std::optional<Row> removed;
  try {
    if (op != "insert") {
      if (!request.contains("key")) return {400, error_body("BAD_REQUEST", op + " needs a key")};
      Key key;
      try {
        key = key_from_json(def, request["key"]);
      } catch (const Error& e) {
        return {400, error_body("BAD_REQUEST", e.what())};
      }
      if (!ds.locate(key)) {
        return {404, error_body("NOT_FOUND", "no row " + key_to_string(key) + " in " + def.name)};
      }
    }
    if (op == "delete") {
      removed = *ds.current();
      ds.remove();
      return {200, {{"ok", true}, {"row", row_json(def, *removed)}}};
    }

    op == "insert" ? ds.begin_insert() : ds.begin_edit();
    std::vector<FieldError> errors;
    for (const auto& [name, j] : values.items()) {
      try {
        auto idx = def.find_field(name);
        if (!idx) throw Error(ErrorCode::UnknownField, "unknown field " + def.name + "." + name);
        if (!def.fields[*idx].persisted()) {
          throw Error(ErrorCode::ReadOnlyField, def.name + "." + name + " is read-only");
        }
        ds.set_field(name, value_from_json(j, def.fields[*idx].value_type));
      } catch (const Error& e) {
        errors.push_back({name, std::string(field_code_for(e.code())), e.what()});
      }
    }
    if (!errors.empty()) {
      ds.cancel();
      return {422, field_errors_body(errors)};
    }
    ds.post();
    return {200, {{"ok", true}, {"row", row_json(def, *ds.current())}}};
  } catch (const ValidationFailed& e) {
    if (ds.editing()) ds.cancel();
    int status = e.has_code(field_code::kDuplicateKey) ? 409 : 422;
    return {status, field_errors_body(e.errors())};
  } catch (const Error& e) {
    if (ds.editing()) ds.cancel();
    int status = e.code() == ErrorCode::NotFound ? 404 : 500;
    return {status, error_body(to_string(e.code()), e.what())};
  }
}

Service::Response Service::calc_preview(const json& request) const {
  std::shared_lock lock(mutex_);
  if (!request.is_object() || !request.contains("table") || !request["table"].is_string()) {
    return {400, error_body("BAD_REQUEST", "body must name a 'table'")};
  }
  const std::string table = request["table"];
  if (!db_.has_table(table)) return {404, error_body("UNKNOWN_TABLE", "unknown table " + table)};
  const TableDef& def = db_.store(table).def;
  json values = request.value("values", json::object());
  if (!values.is_object()) return {400, error_body("BAD_REQUEST", "'values' must be an object")};

  Row row = def.empty_row();
  std::vector<FieldError> errors;
  for (const auto& [name, j] : values.items()) {
    auto idx = def.find_field(name);
    if (!idx) {
      errors.push_back({name, std::string(field_code::kUnknownField), "unknown field " + name});
      continue;
    }
    if (!def.fields[*idx].persisted()) {
      errors.push_back({name, std::string(field_code::kReadOnly), name + " is read-only"});
      continue;
    }
    try {
      row[*idx] = value_from_json(j, def.fields[*idx].value_type);
    } catch (const Error& e) {
      errors.push_back({name, std::string(field_code::kTypeError), e.what()});
    }
  }
  if (!errors.empty()) return {400, field_errors_body(errors)};

  recalc(db_, def, row);
  json fields = json::object();
  for (std::size_t i = 0; i < def.fields.size(); ++i) {
    const FieldDef& f = def.fields[i];
    if (f.persisted()) continue;
    fields[f.name] = {{"value", value_to_json(row[i])},
                      {"rendered", display_text(f, row[i], db_.locale())}};
  }
  return {200, {{"table", table}, {"fields", fields}}};
}

Service::Response Service::validate() const {
  std::shared_lock lock(mutex_);
  auto report = validate_database(db_);
  json violations = json::array();
  for (const auto& v : report.violations) {
    json key = json::array();
    for (const auto& k : v.row_key) key.push_back(value_to_json(k));
    violations.push_back({{"table", v.table},
                          {"row_key", key},
                          {"field", v.field},
                          {"expected_parent", v.expected_parent},
                          {"offending_value", v.offending_value}});
  }
  return {200, {{"violations", violations}, {"checked_row_count", report.checked_row_count}}};
}

void Service::register_routes(httplib::Server& server) {
  auto reply = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json; charset=utf-8");
  };
  auto parse_body = [](const httplib::Request& req, json& out) {
    out = json::parse(req.body, nullptr, false);
    return !out.is_discarded();
  };

  server.Get("/schema", [this, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, schema());
  });
  server.Get(R"(/tables/([^/]+)/rows)",
             [this, reply](const httplib::Request& req, httplib::Response& res) {
               std::optional<std::string> master_key;
               if (req.has_param("master_key")) master_key = req.get_param_value("master_key");
               std::size_t offset = 0;
               std::optional<std::size_t> limit;
               try {
                 if (req.has_param("offset")) offset = std::stoul(req.get_param_value("offset"));
                 if (req.has_param("limit")) limit = std::stoul(req.get_param_value("limit"));
               } catch (const std::exception&) {
                 reply(res, {400, error_body("BAD_REQUEST", "offset and limit must be integers")});
                 return;
               }
               reply(res, rows(req.matches[1].str(), master_key, offset, limit));
             });
  server.Get(R"(/bindings/([^/]+)/options)",
             [this, reply](const httplib::Request& req, httplib::Response& res) {
               reply(res, options(req.matches[1].str()));
             });
  server.Post(R"(/tables/([^/]+)/mutations)",
              [this, reply, parse_body](const httplib::Request& req, httplib::Response& res) {
                json body;
                if (!parse_body(req, body)) {
                  reply(res, {400, error_body("BAD_REQUEST", "body is not valid JSON")});
                  return;
                }
                reply(res, mutate(req.matches[1].str(), body));
              });
  server.Post("/calc/preview",
              [this, reply, parse_body](const httplib::Request& req, httplib::Response& res) {
                json body;
                if (!parse_body(req, body)) {
                  reply(res, {400, error_body("BAD_REQUEST", "body is not valid JSON")});
                  return;
                }
                reply(res, calc_preview(body));
              });
  server.Get("/validate", [this, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, validate());
  });
}

}  // namespace lookupdb
