#include "lookupdb/calc.hpp"

#include "lookupdb/lookup.hpp"

namespace lookupdb {

EvalContext make_eval_context(const Database& db, const TableDef& table, const Row& row) {
  EvalContext ctx;
  ctx.field = [&table, &row](const std::string& name) -> Value {
    auto idx = table.find_field(name);
    return idx ? row[*idx] : Value{};
  };
  ctx.lookup = [&db, &table, &row](const LookupTerm& term) -> Value {
    auto key_field = lookup_key_field(db.manifest(), table.name, term);
    auto local = table.find_field(term.local_field);
    if (!key_field || !local || !db.has_table(term.parent_table)) return Null{};
    const TableStore& parent = db.store(term.parent_table);
    auto parent_row = find_parent_row(parent, *key_field, row[*local]);
    auto field = parent.def.find_field(term.parent_field);
    if (!parent_row || !field) return Null{};
    return parent.rows[*parent_row][*field];
  };
  return ctx;
}

std::optional<Decimal> eval_calc(const Database& db, const CalcFieldDef& calc,
                                 const TableDef& table, const Row& row) {
  if (!calc.expr) return std::nullopt;
  return eval_expr(*calc.expr, make_eval_context(db, table, row));
}

Value resolve_lookup_field(const Database& db, const FieldDef& field, const TableDef& table,
                           const Row& row) {
  if (!field.lookup_binding) return Null{};
  const LookupBinding* b = db.manifest().find_binding(*field.lookup_binding);
  if (!b) return Null{};
  auto local = table.find_field(b->data_field);
  if (!local) return Null{};
  const TableStore& parent = db.store(b->list_source);
  auto parent_row = find_parent_row(parent, b->key_field, row[*local]);
  if (!parent_row) return Null{};
  const std::string& result = field.lookup_result ? *field.lookup_result : b->display_field();
  auto idx = parent.def.find_field(result);
  return idx ? parent.rows[*parent_row][*idx] : Value{};
}

void recalc(const Database& db, const TableDef& table, Row& row) {
  for (std::size_t i = 0; i < table.fields.size(); ++i) {
    if (table.fields[i].kind == FieldKind::Lookup) {
      row[i] = resolve_lookup_field(db, table.fields[i], table, row);
    }
  }
  for (const CalcFieldDef* calc : db.manifest().calc_fields_for(table.name)) {
    auto idx = table.find_field(calc->target_field);
    if (!idx) continue;
    auto result = eval_calc(db, *calc, table, row);
    if (!result) {
      row[*idx] = Null{};
    } else if (table.fields[*idx].value_type == ValueType::Integer) {
      // Integer targets keep the rounded whole part.
      row[*idx] = result->round_half_up(0).units() / Decimal::kUnit;
    } else {
      row[*idx] = *result;
    }
  }
}

std::string display_text(const FieldDef& field, const Value& value, const LocaleSpec& locale) {
  if (is_null(value)) return {};
  if (field.pattern) {
    if (auto d = as_decimal(value)) return render(*d, *field.pattern, locale);
  }
  return to_text(value);
}

}  // namespace lookupdb
