#include "lookupdb/expr.hpp"

#include <cctype>

#include "lookupdb/error.hpp"

namespace lookupdb {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr parse() {
    auto e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "unexpected character");
    return e;
  }

 private:
  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw SyntaxError(pos_, std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip_ws();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) {
      throw SyntaxError(pos_, "expected identifier");
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  static ExprPtr make(auto node) { return std::make_shared<const Expr>(Expr{std::move(node)}); }

  ExprPtr parse_sum() {
    auto lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = make(Binary{BinaryOp::Add, lhs, parse_product()});
      } else if (accept('-')) {
        lhs = make(Binary{BinaryOp::Sub, lhs, parse_product()});
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_product() {
    auto lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Binary{BinaryOp::Mul, lhs, parse_unary()});
      } else if (accept('/')) {
        lhs = make(Binary{BinaryOp::Div, lhs, parse_unary()});
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_unary() {
    if (accept('-')) return make(Negate{parse_unary()});
    return parse_primary();
  }

  ExprPtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = parse_sum();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        ++pos_;
      }
      auto d = Decimal::parse(text_.substr(start, pos_ - start));
      if (!d) throw SyntaxError(start, "invalid number literal");
      return make(*d);
    }
    if (ident_start(c)) {
      std::string name = identifier();
      skip_ws();
      if (name == "lookup" && pos_ < text_.size() && text_[pos_] == '(') {
        ++pos_;
        LookupTerm term;
        term.parent_table = identifier();
        expect(',');
        term.local_field = identifier();
        expect(',');
        term.parent_field = identifier();
        expect(')');
        return make(std::move(term));
      }
      return make(FieldRef{std::move(name)});
    }
    throw SyntaxError(pos_, "unexpected character");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

char op_char(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
  }
  return '?';
}

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string to_source(const Expr& expr) {
  struct Visitor {
    std::string operator()(const Decimal& d) const { return d.to_string(); }
    std::string operator()(const FieldRef& f) const { return f.name; }
    std::string operator()(const LookupTerm& t) const {
      return "lookup(" + t.parent_table + ", " + t.local_field + ", " + t.parent_field + ")";
    }
    std::string operator()(const Binary& b) const {
      return "(" + to_source(*b.lhs) + " " + op_char(b.op) + " " + to_source(*b.rhs) + ")";
    }
    std::string operator()(const Negate& n) const { return "(-" + to_source(*n.operand) + ")"; }
  };
  return std::visit(Visitor{}, expr.node);
}

void collect_field_refs(const Expr& expr, std::vector<std::string>& out) {
  if (auto f = std::get_if<FieldRef>(&expr.node)) {
    out.push_back(f->name);
  } else if (auto t = std::get_if<LookupTerm>(&expr.node)) {
    out.push_back(t->local_field);
  } else if (auto b = std::get_if<Binary>(&expr.node)) {
    collect_field_refs(*b->lhs, out);
    collect_field_refs(*b->rhs, out);
  } else if (auto n = std::get_if<Negate>(&expr.node)) {
    collect_field_refs(*n->operand, out);
  }
}

void collect_lookup_terms(const Expr& expr, std::vector<LookupTerm>& out) {
  if (auto t = std::get_if<LookupTerm>(&expr.node)) {
    out.push_back(*t);
  } else if (auto b = std::get_if<Binary>(&expr.node)) {
    collect_lookup_terms(*b->lhs, out);
    collect_lookup_terms(*b->rhs, out);
  } else if (auto n = std::get_if<Negate>(&expr.node)) {
    collect_lookup_terms(*n->operand, out);
  }
}

std::optional<Decimal> eval_expr(const Expr& expr, const EvalContext& ctx) {
  struct Visitor {
    const EvalContext& ctx;

    std::optional<Decimal> operator()(const Decimal& d) const { return d; }
    std::optional<Decimal> operator()(const FieldRef& f) const {
      return as_decimal(ctx.field(f.name));
    }
    std::optional<Decimal> operator()(const LookupTerm& t) const {
      return as_decimal(ctx.lookup(t));
    }
    std::optional<Decimal> operator()(const Negate& n) const {
      auto v = eval_expr(*n.operand, ctx);
      if (!v) return std::nullopt;
      return checked_sub(Decimal{}, *v);
    }
    std::optional<Decimal> operator()(const Binary& b) const {
      // Both sides are evaluated so that every leaf is visited.
      auto lhs = eval_expr(*b.lhs, ctx);
      auto rhs = eval_expr(*b.rhs, ctx);
      if (!lhs || !rhs) return std::nullopt;
      switch (b.op) {
        case BinaryOp::Add: return checked_add(*lhs, *rhs);
        case BinaryOp::Sub: return checked_sub(*lhs, *rhs);
        case BinaryOp::Mul: return checked_mul(*lhs, *rhs);
        case BinaryOp::Div: return checked_div(*lhs, *rhs);
      }
      return std::nullopt;
    }
  };
  return std::visit(Visitor{ctx}, expr.node);
}

}  // namespace lookupdb
