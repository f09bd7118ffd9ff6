#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lookupdb/decimal.hpp"
#include "lookupdb/value.hpp"

namespace lookupdb {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// `lookup(Parts, PartNo, ListPrice)`: follow the local FK field to the
// parent table and read one of its fields.
struct LookupTerm {
  std::string parent_table;
  std::string local_field;
  std::string parent_field;
};

struct FieldRef {
  std::string name;
};

enum class BinaryOp { Add, Sub, Mul, Div };

struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Negate {
  ExprPtr operand;
};

struct Expr {
  std::variant<Decimal, FieldRef, LookupTerm, Binary, Negate> node;
};

// Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | primary
//   primary:= number | ident | 'lookup' '(' ident ',' ident ',' ident ')'
//           | '(' expr ')'
// Throws SyntaxError with the offending position.
ExprPtr parse_expr(std::string_view text);

// Fully parenthesized source form, stable under re-parse.
std::string to_source(const Expr& expr);

void collect_field_refs(const Expr& expr, std::vector<std::string>& out);
void collect_lookup_terms(const Expr& expr, std::vector<LookupTerm>& out);

// Supplies leaf values during evaluation. Either callback may return null.
struct EvalContext {
  std::function<Value(const std::string& field)> field;
  std::function<Value(const LookupTerm& term)> lookup;
};

// Exact decimal evaluation. Null operands, failed lookups, non-numeric
// leaves, division by zero and overflow all yield std::nullopt.
std::optional<Decimal> eval_expr(const Expr& expr, const EvalContext& ctx);

}  // namespace lookupdb
