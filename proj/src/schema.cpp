#include "lookupdb/schema.hpp"

#include <algorithm>
#include <set>

#include "lookupdb/error.hpp"

namespace lookupdb {

std::string_view to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::Data: return "Data";
    case FieldKind::Lookup: return "Lookup";
    case FieldKind::Calculated: return "Calculated";
  }
  return "Data";
}

std::optional<std::size_t> TableDef::find_field(std::string_view field) const {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].name == field) return i;
  }
  return std::nullopt;
}

std::size_t TableDef::field_index(std::string_view field) const {
  if (auto i = find_field(field)) return *i;
  throw Error(ErrorCode::UnknownField, "unknown field " + name + "." + std::string(field));
}

std::vector<std::size_t> TableDef::key_indices() const {
  std::vector<std::size_t> out;
  out.reserve(primary_key.size());
  for (const auto& k : primary_key) out.push_back(field_index(k));
  return out;
}

std::vector<std::size_t> TableDef::data_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].persisted()) out.push_back(i);
  }
  return out;
}

Key TableDef::key_of(const Row& row) const {
  Key key;
  key.reserve(primary_key.size());
  for (auto i : key_indices()) key.push_back(row[i]);
  return key;
}

const TableDef* SchemaManifest::find_table(std::string_view name) const {
  for (const auto& t : tables) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

const TableDef& SchemaManifest::table(std::string_view name) const {
  if (auto t = find_table(name)) return *t;
  throw Error(ErrorCode::UnknownTable, "unknown table " + std::string(name));
}

const LookupBinding* SchemaManifest::find_binding(std::string_view name) const {
  for (const auto& b : bindings) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

const LookupBinding& SchemaManifest::binding(std::string_view name) const {
  if (auto b = find_binding(name)) return *b;
  throw Error(ErrorCode::UnknownBinding, "unknown binding " + std::string(name));
}

const MasterLink* SchemaManifest::link_for_detail(std::string_view table) const {
  for (const auto& l : links) {
    if (l.detail_table == table) return &l;
  }
  return nullptr;
}

std::vector<const LookupBinding*> SchemaManifest::bindings_for_child(std::string_view table) const {
  std::vector<const LookupBinding*> out;
  for (const auto& b : bindings) {
    if (b.data_source == table) out.push_back(&b);
  }
  return out;
}

std::vector<const MasterLink*> SchemaManifest::links_for_master(std::string_view table) const {
  std::vector<const MasterLink*> out;
  for (const auto& l : links) {
    if (l.master_table == table) out.push_back(&l);
  }
  return out;
}

std::vector<const LookupBinding*> SchemaManifest::bindings_for_parent(std::string_view table) const {
  std::vector<const LookupBinding*> out;
  for (const auto& b : bindings) {
    if (b.list_source == table) out.push_back(&b);
  }
  return out;
}

std::vector<const CalcFieldDef*> SchemaManifest::calc_fields_for(std::string_view table) const {
  std::vector<const CalcFieldDef*> out;
  for (const auto& c : calc_fields) {
    if (c.table == table) out.push_back(&c);
  }
  return out;
}

std::optional<std::string> lookup_key_field(const SchemaManifest& manifest,
                                            std::string_view table, const LookupTerm& term) {
  for (const auto& b : manifest.bindings) {
    if (b.data_source == table && b.data_field == term.local_field &&
        b.list_source == term.parent_table) {
      return b.key_field;
    }
  }
  if (auto link = manifest.link_for_detail(table)) {
    if (link->master_table == term.parent_table && link->field_pairs.size() == 1 &&
        link->field_pairs.front().detail_field == term.local_field) {
      return link->field_pairs.front().master_field;
    }
  }
  return std::nullopt;
}

namespace {

bool is_numeric(ValueType t) { return t == ValueType::Integer || t == ValueType::Decimal; }

[[noreturn]] void manifest_error(const std::string& what) {
  throw Error(ErrorCode::ManifestError, what);
}

}  // namespace

ExprPtr compile_expr(std::string_view text, const SchemaManifest& manifest, const TableDef& table,
                     std::string_view target_field) {
  ExprPtr expr = parse_expr(text);

  std::vector<std::string> refs;
  collect_field_refs(*expr, refs);
  for (const auto& ref : refs) {
    auto idx = table.find_field(ref);
    if (!idx) throw Error(ErrorCode::UnknownField, "unknown field " + table.name + "." + ref);
    const FieldDef& f = table.fields[*idx];
    if (ref == target_field) {
      throw Error(ErrorCode::UnknownField, "expression refers to its own target " + ref);
    }
    if (f.kind != FieldKind::Data) {
      throw Error(ErrorCode::UnknownField,
                  "expression may only reference data fields, " + ref + " is " +
                      std::string(to_string(f.kind)));
    }
  }
  std::vector<LookupTerm> terms;
  collect_lookup_terms(*expr, terms);
  for (const auto& term : terms) {
    const TableDef* parent = manifest.find_table(term.parent_table);
    if (!parent || !lookup_key_field(manifest, table.name, term)) {
      throw Error(ErrorCode::UnknownLookupTarget,
                  "no binding or link from " + table.name + "." + term.local_field + " to " +
                      term.parent_table);
    }
    auto idx = parent->find_field(term.parent_field);
    if (!idx || parent->fields[*idx].kind != FieldKind::Data) {
      throw Error(ErrorCode::UnknownField,
                  "unknown field " + term.parent_table + "." + term.parent_field);
    }
    if (!is_numeric(parent->fields[*idx].value_type)) {
      throw Error(ErrorCode::TypeError,
                  term.parent_table + "." + term.parent_field + " is not numeric");
    }
  }
  for (const auto& ref : refs) {
    if (!is_numeric(table.field(ref).value_type)) {
      throw Error(ErrorCode::TypeError, table.name + "." + ref + " is not numeric");
    }
  }
  return expr;
}

void validate_manifest(SchemaManifest& m) {
  if (m.locale.group_symbol == m.locale.decimal_symbol) {
    manifest_error("locale group and decimal symbols must differ");
  }

  std::set<std::string> table_names;
  for (auto& t : m.tables) {
    if (t.name.empty()) manifest_error("table with empty name");
    if (!table_names.insert(t.name).second) manifest_error("duplicate table " + t.name);
    if (t.source_file.empty()) manifest_error("table " + t.name + " has no source_file");
    std::set<std::string> field_names;
    for (auto& f : t.fields) {
      if (f.name.empty()) manifest_error("table " + t.name + " has a field with empty name");
      if (!field_names.insert(f.name).second) {
        manifest_error("duplicate field " + t.name + "." + f.name);
      }
      if (f.display_format) {
        if (!is_numeric(f.value_type)) {
          manifest_error("display_format on non-numeric field " + t.name + "." + f.name);
        }
        try {
          f.pattern = parse_pattern(*f.display_format);
        } catch (const SyntaxError& e) {
          manifest_error("display_format of " + t.name + "." + f.name + ": " + e.what());
        }
      }
      if (f.kind != FieldKind::Lookup && (f.lookup_binding || f.lookup_result)) {
        manifest_error("lookup settings on non-lookup field " + t.name + "." + f.name);
      }
    }
    if (t.primary_key.empty()) manifest_error("table " + t.name + " has no primary_key");
    std::set<std::string> seen;
    for (const auto& k : t.primary_key) {
      auto idx = t.find_field(k);
      if (!idx || t.fields[*idx].kind != FieldKind::Data) {
        manifest_error("primary_key of " + t.name + " names " + k + ", not a data field");
      }
      if (!seen.insert(k).second) manifest_error("primary_key of " + t.name + " repeats " + k);
    }
  }

  std::set<std::string> binding_names;
  for (const auto& b : m.bindings) {
    const std::string where = "binding " + b.name;
    if (b.name.empty()) manifest_error("binding with empty name");
    if (!binding_names.insert(b.name).second) manifest_error("duplicate " + where);
    const TableDef* child = m.find_table(b.data_source);
    if (!child) manifest_error(where + ": unknown data_source " + b.data_source);
    const TableDef* parent = m.find_table(b.list_source);
    if (!parent) manifest_error(where + ": unknown list_source " + b.list_source);
    auto df = child->find_field(b.data_field);
    if (!df || child->fields[*df].kind != FieldKind::Data) {
      manifest_error(where + ": data_field " + b.data_field + " is not a data field of " +
                     child->name);
    }
    auto kf = parent->find_field(b.key_field);
    if (!kf) manifest_error(where + ": unknown key_field " + b.key_field);
    if (parent->primary_key.size() != 1 || parent->primary_key.front() != b.key_field) {
      manifest_error(where + ": key_field " + b.key_field + " is not the single-field key of " +
                     parent->name);
    }
    if (child->fields[*df].value_type != parent->fields[*kf].value_type) {
      manifest_error(where + ": data_field and key_field types differ");
    }
    if (b.list_fields.empty()) manifest_error(where + ": list_fields is empty");
    for (const auto& lf : b.list_fields) {
      if (!parent->find_field(lf)) manifest_error(where + ": unknown list field " + lf);
    }
    if (!b.widget.empty() && b.widget != "combo" && b.widget != "list") {
      manifest_error(where + ": widget must be combo or list");
    }
  }

  std::set<std::string> detail_tables;
  for (const auto& l : m.links) {
    const std::string where = "link " + l.master_table + "->" + l.detail_table;
    const TableDef* master = m.find_table(l.master_table);
    const TableDef* detail = m.find_table(l.detail_table);
    if (!master) manifest_error(where + ": unknown master table");
    if (!detail) manifest_error(where + ": unknown detail table");
    if (!detail_tables.insert(l.detail_table).second) {
      manifest_error(where + ": detail table already has a master link");
    }
    if (l.field_pairs.empty()) manifest_error(where + ": no master_fields");
    std::set<std::string> master_fields;
    for (const auto& p : l.field_pairs) {
      auto mf = master->find_field(p.master_field);
      auto df = detail->find_field(p.detail_field);
      if (!mf || master->fields[*mf].kind != FieldKind::Data) {
        manifest_error(where + ": unknown master field " + p.master_field);
      }
      if (!df || detail->fields[*df].kind != FieldKind::Data) {
        manifest_error(where + ": unknown detail field " + p.detail_field);
      }
      if (master->fields[*mf].value_type != detail->fields[*df].value_type) {
        manifest_error(where + ": " + p.master_field + " and " + p.detail_field +
                       " have different types");
      }
      master_fields.insert(p.master_field);
    }
    std::set<std::string> pk(master->primary_key.begin(), master->primary_key.end());
    if (master_fields != pk) {
      manifest_error(where + ": master_fields must be the primary key of " + master->name);
    }
  }

  // Lookup fields need the binding table to exist first.
  for (auto& t : m.tables) {
    for (auto& f : t.fields) {
      if (f.kind != FieldKind::Lookup) continue;
      const std::string where = "lookup field " + t.name + "." + f.name;
      if (!f.lookup_binding) manifest_error(where + ": missing lookup_binding");
      const LookupBinding* b = m.find_binding(*f.lookup_binding);
      if (!b) manifest_error(where + ": unknown binding " + *f.lookup_binding);
      if (b->data_source != t.name) {
        manifest_error(where + ": binding " + b->name + " belongs to " + b->data_source);
      }
      const TableDef& parent = m.table(b->list_source);
      const std::string& result = f.lookup_result ? *f.lookup_result : b->display_field();
      auto rf = parent.find_field(result);
      if (!rf) manifest_error(where + ": unknown result field " + result);
      if (parent.fields[*rf].value_type != f.value_type) {
        manifest_error(where + ": type differs from " + parent.name + "." + result);
      }
    }
  }

  std::set<std::pair<std::string, std::string>> targets;
  for (auto& c : m.calc_fields) {
    const std::string where = "calc field " + c.table + "." + c.target_field;
    const TableDef* t = m.find_table(c.table);
    if (!t) manifest_error(where + ": unknown table");
    auto idx = t->find_field(c.target_field);
    if (!idx || t->fields[*idx].kind != FieldKind::Calculated) {
      manifest_error(where + ": target is not a Calculated field");
    }
    if (!is_numeric(t->fields[*idx].value_type)) {
      manifest_error(where + ": target must be numeric");
    }
    if (!targets.insert({c.table, c.target_field}).second) manifest_error("duplicate " + where);
    try {
      c.expr = compile_expr(c.source, m, *t, c.target_field);
    } catch (const Error& e) {
      manifest_error(where + ": " + e.what());
    }
  }
  for (const auto& t : m.tables) {
    for (const auto& f : t.fields) {
      if (f.kind == FieldKind::Calculated && !targets.count({t.name, f.name})) {
        manifest_error("calculated field " + t.name + "." + f.name + " has no expression");
      }
    }
  }
}

}  // namespace lookupdb
