#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lookupdb/database.hpp"

namespace lookupdb {

// One row of a lookup widget: the value that gets stored, and the list
// fields the operator sees.
struct LookupOption {
  Value key;
  std::vector<std::string> display;
};

// Throws Error(UnknownBinding).
std::vector<LookupOption> lookup_rows(const Database& db, std::string_view binding);

// std::nullopt when no parent row has `key`.
std::optional<std::vector<std::string>> resolve_display(const Database& db,
                                                        std::string_view binding,
                                                        const Value& key);

// Null always passes; requiredness is checked separately.
bool validate_fk(const Database& db, const LookupBinding& binding, const Value& value);

// Index of the parent row whose `key_field` equals `value`.
std::optional<std::size_t> find_parent_row(const TableStore& parent, std::string_view key_field,
                                           const Value& value);

// A referential constraint from child fields to parent fields. Every
// binding yields one; every master link yields one as well.
struct ForeignKey {
  std::string child_table;
  std::vector<std::string> child_fields;
  std::string parent_table;
  std::vector<std::string> parent_fields;
  std::string origin;  // binding name, or "link"

  std::string child_label() const;   // fields joined by ';'
  std::string parent_label() const;  // Parent.Field[;Field]
};

std::vector<ForeignKey> foreign_keys(const SchemaManifest& manifest);

// True when any child field is null or a matching parent row exists.
bool fk_satisfied(const Database& db, const ForeignKey& fk, const Row& child_row);

// Child rows of `fk.child_table` that reference `parent_row`.
std::size_t count_referencing_rows(const Database& db, const ForeignKey& fk,
                                   const Row& parent_row);

struct Violation {
  std::string table;
  Key row_key;
  std::string field;
  std::string expected_parent;
  std::string offending_value;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::size_t checked_row_count = 0;

  bool ok() const { return violations.empty(); }
  // One line per violation:
  //   TABLE ROWKEY FIELD VALUE -> missing in PARENT.KEYFIELD
  std::string to_text() const;
};

// Violations ordered by table name, row key, then field.
ValidationReport validate_database(const Database& db);

enum class RelationshipKind { OneToOne, OneToMany, ManyToMany };

std::string_view to_string(RelationshipKind kind);

struct Relationship {
  RelationshipKind kind;
  std::string junction;  // set for ManyToMany

  bool operator==(const Relationship&) const = default;
};

// Direct FK from `child` to `parent`: OneToOne when the FK value is unique
// across the child's non-null rows, otherwise OneToMany. Without a direct
// FK, a junction table holding required FKs to both tables yields
// ManyToMany. Throws Error(NoRelationship).
Relationship classify_relationship(const Database& db, std::string_view parent,
                                   std::string_view child);

}  // namespace lookupdb
