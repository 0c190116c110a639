#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "igl/sequent.hpp"

namespace igl {

// Text grammar (see docs/format.md for the normative version):
//   formula := imp
//   imp     := or ( ("->" | "~>") imp )?          right associative
//   or      := and ( "|" and )*
//   and     := unary ( "&" unary )*
//   unary   := "[]" unary | atom
//   atom    := "bot" | ident | "(" formula ")"
//   sequent := ( formula ("," formula)* )? "=>" formula
// The printer emits "->", minimal parentheses, and antecedents in canonical
// multiset order, so print-then-parse is the identity.

namespace detail {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse_formula_all() {
    Formula f = imp();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after formula");
    return f;
  }

  Sequent parse_sequent_all() {
    Sequent s = sequent();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after sequent");
    return s;
  }

 private:
  Sequent sequent() {
    FMultiset left;
    skip_ws();
    if (!peek_arrow()) {
      left.add(imp());
      skip_ws();
      while (peek_char(',')) {
        ++pos_;
        left.add(imp());
        skip_ws();
      }
    }
    if (!peek_arrow()) fail("expected '=>'");
    pos_ += 2;
    Formula r = imp();
    return Sequent{std::move(left), std::move(r)};
  }

  Formula imp() {
    Formula l = disj();
    skip_ws();
    if (match_imp_arrow()) {
      Formula r = imp();
      return Formula::imp(std::move(l), std::move(r));
    }
    return l;
  }

  Formula disj() {
    Formula l = conj();
    skip_ws();
    while (peek_char('|')) {
      ++pos_;
      Formula r = conj();
      l = Formula::disj(std::move(l), std::move(r));
      skip_ws();
    }
    return l;
  }

  Formula conj() {
    Formula l = unary();
    skip_ws();
    while (peek_char('&')) {
      ++pos_;
      Formula r = unary();
      l = Formula::conj(std::move(l), std::move(r));
      skip_ws();
    }
    return l;
  }

  Formula unary() {
    skip_ws();
    if (pos_ + 1 < text_.size() && text_[pos_] == '[' && text_[pos_ + 1] == ']') {
      pos_ += 2;
      return Formula::box(unary());
    }
    return atom();
  }

  Formula atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Formula f = imp();
      skip_ws();
      if (!peek_char(')')) fail("expected ')'");
      ++pos_;
      return f;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_' || text_[pos_] == '\''))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name == "bot") return Formula::bot();
      return Formula::var(std::move(name));
    }
    fail("expected formula");
    return Formula::bot();  // unreachable
  }

  bool peek_arrow() const {
    return pos_ + 1 < text_.size() && text_[pos_] == '=' && text_[pos_ + 1] == '>';
  }
  // Accepts both "->" and "~>".
  bool match_imp_arrow() {
    if (pos_ + 1 < text_.size() && (text_[pos_] == '-' || text_[pos_] == '~') &&
        text_[pos_ + 1] == '>') {
      pos_ += 2;
      return true;
    }
    return false;
  }
  bool peek_char(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Binding strength used for minimal parenthesisation; higher binds tighter.
inline int precedence(Kind k) {
  switch (k) {
    case Kind::Imp:
      return 1;
    case Kind::Or:
      return 2;
    case Kind::And:
      return 3;
    default:
      return 5;  // atoms and box
  }
}

inline void print_formula(const Formula& f, int min_prec, std::string& out) {
  int p = precedence(f.kind());
  bool paren = p < min_prec;
  if (paren) out += '(';
  switch (f.kind()) {
    case Kind::Bot:
      out += "bot";
      break;
    case Kind::Var:
      out += f.var_name();
      break;
    case Kind::Box:
      out += "[]";
      print_formula(f.body(), 5, out);
      break;
    case Kind::Imp:
      print_formula(f.lhs(), p + 1, out);
      out += " -> ";
      print_formula(f.rhs(), p, out);
      break;
    case Kind::Or:
      print_formula(f.lhs(), p, out);
      out += " | ";
      print_formula(f.rhs(), p + 1, out);
      break;
    case Kind::And:
      print_formula(f.lhs(), p, out);
      out += " & ";
      print_formula(f.rhs(), p + 1, out);
      break;
  }
  if (paren) out += ')';
}

}  // namespace detail

inline Formula parse_formula(std::string_view text) {
  return detail::FormulaParser(text).parse_formula_all();
}

inline Sequent parse_sequent(std::string_view text) {
  return detail::FormulaParser(text).parse_sequent_all();
}

inline std::string to_text(const Formula& f) {
  std::string out;
  detail::print_formula(f, 0, out);
  return out;
}

inline std::string to_text(const Sequent& s) {
  std::string out;
  bool first = true;
  for (const Formula& f : s.left.to_list()) {
    if (!first) out += ", ";
    detail::print_formula(f, 0, out);
    first = false;
  }
  if (!first) out += ' ';
  out += "=> ";
  detail::print_formula(s.right, 0, out);
  return out;
}

}  // namespace igl
