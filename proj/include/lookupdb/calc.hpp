#pragma once

#include <optional>
#include <string>

#include "lookupdb/database.hpp"

namespace lookupdb {

// Leaf resolver over `row` of `table` and the parent stores in `db`.
EvalContext make_eval_context(const Database& db, const TableDef& table, const Row& row);

std::optional<Decimal> eval_calc(const Database& db, const CalcFieldDef& calc,
                                 const TableDef& table, const Row& row);

// Value of a Lookup-kind field: the parent row's result field, or null.
Value resolve_lookup_field(const Database& db, const FieldDef& field, const TableDef& table,
                           const Row& row);

// Refreshes every Lookup field, then every Calculated field in manifest
// order. Calculated fields only read Data fields, so order is irrelevant to
// the result.
void recalc(const Database& db, const TableDef& table, Row& row);

// Display text: numeric values with a display format are rendered, every
// other value uses its canonical text. Null renders empty.
std::string display_text(const FieldDef& field, const Value& value, const LocaleSpec& locale);

}  // namespace lookupdb
