#include "lookupdb/lookup.hpp"

#include <algorithm>
#include <set>

#include "lookupdb/calc.hpp"
#include "lookupdb/error.hpp"

namespace lookupdb {

namespace {

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> project_display(const Database& db, const LookupBinding& b,
                                         const TableStore& parent, const Row& row) {
  std::vector<std::string> out;
  out.reserve(b.list_fields.size());
  for (const auto& name : b.list_fields) {
    auto idx = parent.def.field_index(name);
    out.push_back(display_text(parent.def.fields[idx], row[idx], db.locale()));
  }
  return out;
}

std::vector<std::size_t> indices_of(const TableDef& def, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(def.field_index(n));
  return out;
}

bool row_matches(const Row& row, const std::vector<std::size_t>& idx,
                 const std::vector<Value>& values) {
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (compare_values(row[idx[k]], values[k]) != 0) return false;
  }
  return true;
}

}  // namespace

std::optional<std::size_t> find_parent_row(const TableStore& parent, std::string_view key_field,
                                           const Value& value) {
  if (is_null(value)) return std::nullopt;
  auto idx = parent.def.find_field(key_field);
  if (!idx) return std::nullopt;
  for (std::size_t r = 0; r < parent.rows.size(); ++r) {
    if (compare_values(parent.rows[r][*idx], value) == 0) return r;
  }
  return std::nullopt;
}

std::vector<LookupOption> lookup_rows(const Database& db, std::string_view binding) {
  const LookupBinding& b = db.manifest().binding(binding);
  const TableStore& parent = db.store(b.list_source);
  auto key_idx = parent.def.field_index(b.key_field);
  std::vector<LookupOption> out;
  out.reserve(parent.rows.size());
  for (const auto& row : parent.rows) {
    out.push_back({row[key_idx], project_display(db, b, parent, row)});
  }
  return out;
}

std::optional<std::vector<std::string>> resolve_display(const Database& db,
                                                        std::string_view binding,
                                                        const Value& key) {
  const LookupBinding& b = db.manifest().binding(binding);
  const TableStore& parent = db.store(b.list_source);
  auto r = find_parent_row(parent, b.key_field, key);
  if (!r) return std::nullopt;
  return project_display(db, b, parent, parent.rows[*r]);
}

bool validate_fk(const Database& db, const LookupBinding& binding, const Value& value) {
  if (is_null(value)) return true;
  return find_parent_row(db.store(binding.list_source), binding.key_field, value).has_value();
}

std::string ForeignKey::child_label() const { return join(child_fields, ';'); }

std::string ForeignKey::parent_label() const {
  return parent_table + "." + join(parent_fields, ';');
}

std::vector<ForeignKey> foreign_keys(const SchemaManifest& manifest) {
  std::vector<ForeignKey> out;
  for (const auto& b : manifest.bindings) {
    out.push_back({b.data_source, {b.data_field}, b.list_source, {b.key_field}, b.name});
  }
  for (const auto& l : manifest.links) {
    ForeignKey fk{l.detail_table, {}, l.master_table, {}, "link"};
    for (const auto& p : l.field_pairs) {
      fk.child_fields.push_back(p.detail_field);
      fk.parent_fields.push_back(p.master_field);
    }
    out.push_back(std::move(fk));
  }
  return out;
}

bool fk_satisfied(const Database& db, const ForeignKey& fk, const Row& child_row) {
  const TableDef& child = db.manifest().table(fk.child_table);
  std::vector<Value> values;
  for (auto i : indices_of(child, fk.child_fields)) {
    if (is_null(child_row[i])) return true;
    values.push_back(child_row[i]);
  }
  const TableStore& parent = db.store(fk.parent_table);
  auto idx = indices_of(parent.def, fk.parent_fields);
  return std::any_of(parent.rows.begin(), parent.rows.end(),
                     [&](const Row& row) { return row_matches(row, idx, values); });
}

std::size_t count_referencing_rows(const Database& db, const ForeignKey& fk,
                                   const Row& parent_row) {
  const TableDef& parent = db.manifest().table(fk.parent_table);
  std::vector<Value> values;
  for (auto i : indices_of(parent, fk.parent_fields)) {
    if (is_null(parent_row[i])) return 0;
    values.push_back(parent_row[i]);
  }
  const TableStore& child = db.store(fk.child_table);
  auto idx = indices_of(child.def, fk.child_fields);
  return static_cast<std::size_t>(
      std::count_if(child.rows.begin(), child.rows.end(),
                    [&](const Row& row) { return row_matches(row, idx, values); }));
}

std::string ValidationReport::to_text() const {
  std::string out;
  for (const auto& v : violations) {
    out += v.table + ' ' + key_to_string(v.row_key) + ' ' + v.field + ' ' + v.offending_value +
           " -> missing in " + v.expected_parent + '\n';
  }
  return out;
}

ValidationReport validate_database(const Database& db) {
  ValidationReport report;
  auto fks = foreign_keys(db.manifest());

  std::set<std::string> child_tables;
  for (const auto& fk : fks) child_tables.insert(fk.child_table);
  for (const auto& t : child_tables) report.checked_row_count += db.store(t).rows.size();

  for (const auto& fk : fks) {
    const TableStore& child = db.store(fk.child_table);
    auto idx = indices_of(child.def, fk.child_fields);
    for (const auto& row : child.rows) {
      if (fk_satisfied(db, fk, row)) continue;
      std::vector<std::string> values;
      for (auto i : idx) values.push_back(to_text(row[i]));
      report.violations.push_back(
          {fk.child_table, child.def.key_of(row), fk.child_label(), fk.parent_label(),
           join(values, ';')});
    }
  }

  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const Violation& a, const Violation& b) {
                     if (a.table != b.table) return a.table < b.table;
                     if (auto c = compare_keys(a.row_key, b.row_key); c != 0) return c < 0;
                     if (a.field != b.field) return a.field < b.field;
                     return a.expected_parent < b.expected_parent;
                   });
  return report;
}

std::string_view to_string(RelationshipKind kind) {
  switch (kind) {
    case RelationshipKind::OneToOne: return "OneToOne";
    case RelationshipKind::OneToMany: return "OneToMany";
    case RelationshipKind::ManyToMany: return "ManyToMany";
  }
  return "OneToMany";
}

namespace {

const ForeignKey* find_fk(const std::vector<ForeignKey>& fks, std::string_view child,
                          std::string_view parent) {
  for (const auto& fk : fks) {
    if (fk.child_table == child && fk.parent_table == parent) return &fk;
  }
  return nullptr;
}

bool fk_fields_required(const TableDef& def, const ForeignKey& fk) {
  return std::all_of(fk.child_fields.begin(), fk.child_fields.end(), [&](const std::string& f) {
    return def.field(f).required ||
           std::find(def.primary_key.begin(), def.primary_key.end(), f) != def.primary_key.end();
  });
}

}  // namespace

Relationship classify_relationship(const Database& db, std::string_view parent,
                                   std::string_view child) {
  const SchemaManifest& m = db.manifest();
  m.table(parent);
  m.table(child);
  auto fks = foreign_keys(m);

  if (const ForeignKey* fk = find_fk(fks, child, parent)) {
    const TableStore& store = db.store(child);
    auto idx = indices_of(store.def, fk->child_fields);
    std::set<Key, decltype([](const Key& a, const Key& b) { return compare_keys(a, b) < 0; })>
        seen;
    for (const auto& row : store.rows) {
      Key k;
      bool has_null = false;
      for (auto i : idx) {
        has_null = has_null || is_null(row[i]);
        k.push_back(row[i]);
      }
      if (has_null) continue;
      if (!seen.insert(std::move(k)).second) return {RelationshipKind::OneToMany, {}};
    }
    return {RelationshipKind::OneToOne, {}};
  }

  std::vector<std::string> names;
  for (const auto& t : m.tables) names.push_back(t.name);
  std::sort(names.begin(), names.end());
  for (const auto& junction : names) {
    if (junction == parent || junction == child) continue;
    const ForeignKey* to_parent = find_fk(fks, junction, parent);
    const ForeignKey* to_child = find_fk(fks, junction, child);
    if (!to_parent || !to_child) continue;
    const TableDef& def = m.table(junction);
    if (fk_fields_required(def, *to_parent) && fk_fields_required(def, *to_child)) {
      return {RelationshipKind::ManyToMany, junction};
    }
  }
  throw Error(ErrorCode::NoRelationship,
              "no relationship between " + std::string(parent) + " and " + std::string(child));
}

}  // namespace lookupdb
