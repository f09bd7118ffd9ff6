#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "lookupdb/error.hpp"
#include "lookupdb/schema.hpp"

namespace lookupdb {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ManifestError, what); }

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string req_string(const YAML::Node& node, const char* key, const std::string& where) {
  auto v = node[key];
  if (!v || !v.IsScalar()) fail(where + ": missing '" + key + "'");
  return v.as<std::string>();
}

std::optional<std::string> opt_string(const YAML::Node& node, const char* key) {
  auto v = node[key];
  if (!v || v.IsNull()) return std::nullopt;
  return v.as<std::string>();
}

// A list may be written as a YAML sequence or as a `;`-separated scalar,
// the way property grids show `CustNo;Company`.
std::vector<std::string> name_list(const YAML::Node& node, const char* key,
                                   const std::string& where) {
  auto v = node[key];
  std::vector<std::string> out;
  if (!v || v.IsNull()) return out;
  if (v.IsSequence()) {
    for (const auto& item : v) out.push_back(trim(item.as<std::string>()));
  } else if (v.IsScalar()) {
    std::stringstream ss(v.as<std::string>());
    std::string part;
    while (std::getline(ss, part, ';')) {
      if (auto t = trim(part); !t.empty()) out.push_back(t);
    }
  } else {
    fail(where + ": '" + key + "' must be a list");
  }
  return out;
}

LocaleSpec parse_locale(const YAML::Node& node) {
  if (!node || node.IsNull()) return LocaleSpec::indonesian();
  if (node.IsScalar()) {
    auto name = node.as<std::string>();
    if (name == "id") return LocaleSpec::indonesian();
    if (name == "us") return LocaleSpec::us();
    fail("locale must be 'id', 'us' or a {group, decimal} map");
  }
  auto g = req_string(node, "group", "locale");
  auto d = req_string(node, "decimal", "locale");
  if (g.size() != 1 || d.size() != 1) fail("locale symbols must be single characters");
  return {g[0], d[0]};
}

FieldDef parse_field(const YAML::Node& node, const std::string& table) {
  FieldDef f;
  f.name = req_string(node, "name", "field of " + table);
  const std::string where = "field " + table + "." + f.name;
  if (auto kind = opt_string(node, "kind")) {
    if (*kind == "Data") f.kind = FieldKind::Data;
    else if (*kind == "Lookup") f.kind = FieldKind::Lookup;
    else if (*kind == "Calculated") f.kind = FieldKind::Calculated;
    else fail(where + ": unknown kind " + *kind);
  }
  auto type_name = req_string(node, "type", where);
  auto type = parse_value_type(type_name);
  if (!type) fail(where + ": unknown type " + type_name);
  f.value_type = *type;
  if (auto r = node["required"]) f.required = r.as<bool>();
  f.display_format = opt_string(node, "display_format");
  f.display_label = opt_string(node, "display_label");
  f.lookup_binding = opt_string(node, "lookup_binding");
  f.lookup_result = opt_string(node, "lookup_result");
  return f;
}

}  // namespace

SchemaManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    fail(std::string("manifest is not valid YAML: ") + e.what());
  }
  if (!root.IsMap()) fail("manifest must be a mapping");
  for (const char* section : {"tables", "bindings", "links", "calc_fields"}) {
    if (root[section] && !root[section].IsSequence() && !root[section].IsNull()) {
      fail(std::string(section) + " must be a list");
    }
  }

  SchemaManifest m;
  try {
    std::filesystem::path dir = opt_string(root, "data_dir").value_or(".");
    m.data_dir = dir.is_absolute() ? dir : (base_dir / dir).lexically_normal();
    m.locale = parse_locale(root["locale"]);

    for (const auto& tn : root["tables"]) {
      TableDef t;
      t.name = req_string(tn, "name", "table");
      t.source_file = opt_string(tn, "source_file").value_or(t.name + ".csv");
      t.primary_key = name_list(tn, "primary_key", "table " + t.name);
      for (const auto& fn : tn["fields"]) t.fields.push_back(parse_field(fn, t.name));
      m.tables.push_back(std::move(t));
    }
    for (const auto& bn : root["bindings"]) {
      LookupBinding b;
      b.name = req_string(bn, "name", "binding");
      const std::string where = "binding " + b.name;
      b.data_source = req_string(bn, "data_source", where);
      b.data_field = req_string(bn, "data_field", where);
      b.list_source = req_string(bn, "list_source", where);
      b.list_fields = name_list(bn, "list_fields", where);
      b.key_field = req_string(bn, "key_field", where);
      b.widget = opt_string(bn, "widget").value_or("");
      m.bindings.push_back(std::move(b));
    }
    for (const auto& ln : root["links"]) {
      MasterLink l;
      l.detail_table = req_string(ln, "detail_table", "link");
      const std::string where = "link of " + l.detail_table;
      l.master_table = req_string(ln, "master_table", where);
      auto master_fields = name_list(ln, "master_fields", where);
      auto detail_fields = name_list(ln, "detail_fields", where);
      if (detail_fields.empty()) detail_fields = master_fields;
      if (detail_fields.size() != master_fields.size()) {
        fail(where + ": master_fields and detail_fields differ in length");
      }
      for (std::size_t i = 0; i < master_fields.size(); ++i) {
        l.field_pairs.push_back({master_fields[i], detail_fields[i]});
      }
      m.links.push_back(std::move(l));
    }
    for (const auto& cn : root["calc_fields"]) {
      CalcFieldDef c;
      c.table = req_string(cn, "table", "calc field");
      c.target_field = req_string(cn, "target_field", "calc field of " + c.table);
      c.source = req_string(cn, "expression", "calc field " + c.table + "." + c.target_field);
      m.calc_fields.push_back(std::move(c));
    }
  } catch (const YAML::Exception& e) {
    fail(std::string("malformed manifest: ") + e.what());
  }

  validate_manifest(m);
  return m;
}

SchemaManifest load_manifest(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, "cannot open manifest " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str(), file.parent_path());
}

}  // namespace lookupdb
