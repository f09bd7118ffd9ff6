#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lookupdb/expr.hpp"
#include "lookupdb/format.hpp"
#include "lookupdb/value.hpp"

namespace lookupdb {

enum class FieldKind { Data, Lookup, Calculated };

std::string_view to_string(FieldKind kind);

struct FieldDef {
  std::string name;
  FieldKind kind = FieldKind::Data;
  ValueType value_type = ValueType::Text;
  bool required = false;
  std::optional<std::string> display_format;
  std::optional<std::string> display_label;
  // Lookup kind: the binding to follow and the parent field to show.
  // `lookup_result` defaults to the binding's grid display field.
  std::optional<std::string> lookup_binding;
  std::optional<std::string> lookup_result;

  // Filled in by manifest validation from display_format.
  std::optional<FormatPattern> pattern;

  bool persisted() const { return kind == FieldKind::Data; }
};

struct TableDef {
  std::string name;
  std::vector<FieldDef> fields;
  std::vector<std::string> primary_key;
  std::string source_file;

  std::optional<std::size_t> find_field(std::string_view field) const;
  // Throws Error(UnknownField).
  std::size_t field_index(std::string_view field) const;
  const FieldDef& field(std::string_view field) const { return fields[field_index(field)]; }

  std::vector<std::size_t> key_indices() const;
  std::vector<std::size_t> data_indices() const;
  Key key_of(const Row& row) const;
  Row empty_row() const { return Row(fields.size()); }
};

// Constrains child `data_source.data_field` to the values of
// `list_source.key_field` while presenting `list_fields` to the operator.
struct LookupBinding {
  std::string name;
  std::string data_source;
  std::string data_field;
  std::string list_source;
  std::vector<std::string> list_fields;
  std::string key_field;
  std::string widget;  // "combo", "list" or empty

  // The single column shown in grids: the last list field.
  const std::string& display_field() const { return list_fields.back(); }
};

struct FieldPair {
  std::string master_field;
  std::string detail_field;
};

struct MasterLink {
  std::string detail_table;
  std::string master_table;
  std::vector<FieldPair> field_pairs;
};

struct CalcFieldDef {
  std::string table;
  std::string target_field;
  std::string source;
  ExprPtr expr;
};

struct SchemaManifest {
  std::filesystem::path data_dir;
  LocaleSpec locale;
  std::vector<TableDef> tables;
  std::vector<LookupBinding> bindings;
  std::vector<MasterLink> links;
  std::vector<CalcFieldDef> calc_fields;

  const TableDef* find_table(std::string_view name) const;
  // Throws Error(UnknownTable).
  const TableDef& table(std::string_view name) const;
  const LookupBinding* find_binding(std::string_view name) const;
  // Throws Error(UnknownBinding).
  const LookupBinding& binding(std::string_view name) const;
  const MasterLink* link_for_detail(std::string_view table) const;

  std::vector<const LookupBinding*> bindings_for_child(std::string_view table) const;
  std::vector<const MasterLink*> links_for_master(std::string_view table) const;
  std::vector<const LookupBinding*> bindings_for_parent(std::string_view table) const;
  std::vector<const CalcFieldDef*> calc_fields_for(std::string_view table) const;
};

// Parent-side key field reached by `lookup(parent, local, ...)` from
// `table`: through a binding on the local field, or through a single-pair
// master link. std::nullopt when neither exists.
std::optional<std::string> lookup_key_field(const SchemaManifest& manifest,
                                            std::string_view table, const LookupTerm& term);

// Parses `text` and checks every reference against `table`. Throws
// SyntaxError, Error(UnknownField) or Error(UnknownLookupTarget).
ExprPtr compile_expr(std::string_view text, const SchemaManifest& manifest,
                     const TableDef& table, std::string_view target_field = {});

// Full static validation: cross references, key rules, patterns and calc
// expressions. Fills FieldDef::pattern and CalcFieldDef::expr. Throws
// Error(ManifestError) naming the offending item.
void validate_manifest(SchemaManifest& manifest);

// YAML manifest. A relative data_dir resolves against `base_dir`.
SchemaManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir);
SchemaManifest load_manifest(const std::filesystem::path& file);

}  // namespace lookupdb
