#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <utility>

#include "igl/errors.hpp"

namespace igl {

enum class Kind : unsigned char { Bot, Var, And, Or, Imp, Box };

// Immutable modal formula over variables, bot, &, |, ->, and the box prefix.
// Copies share structure; all observers are O(1) except compare.
class Formula {
 public:
  // Default-constructed formula is bot.
  Formula() : node_(bot_node()) {}

  static Formula bot() { return Formula(bot_node()); }
  static Formula var(std::string name) {
    return Formula(std::make_shared<const Node>(
        Node{Kind::Var, 1, hash_leaf(Kind::Var, name), std::move(name),
             nullptr, nullptr}));
  }
  static Formula conj(Formula l, Formula r) { return binary(Kind::And, std::move(l), std::move(r)); }
  static Formula disj(Formula l, Formula r) { return binary(Kind::Or, std::move(l), std::move(r)); }
  static Formula imp(Formula l, Formula r) { return binary(Kind::Imp, std::move(l), std::move(r)); }
  static Formula box(Formula body) {
    std::size_t h = combine(hash_leaf(Kind::Box, ""), body.hash());
    std::size_t sz = 1 + body.size();
    auto a = body.node_;
    return Formula(std::make_shared<const Node>(
        Node{Kind::Box, sz, h, std::string(), std::move(a), nullptr}));
  }

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }

  const std::string& var_name() const {
    require(Kind::Var);
    return node_->name;
  }
  Formula lhs() const {
    if (!is(Kind::And) && !is(Kind::Or) && !is(Kind::Imp))
      throw NotAnInstance("lhs() on non-binary formula");
    return Formula(node_->a);
  }
  Formula rhs() const {
    if (!is(Kind::And) && !is(Kind::Or) && !is(Kind::Imp))
      throw NotAnInstance("rhs() on non-binary formula");
    return Formula(node_->b);
  }
  Formula body() const {
    require(Kind::Box);
    return Formula(node_->a);
  }

  // Node count, counting variables and bot as one node each.
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }

  // Total order: by size, then kind, then structure (variable names
  // lexicographic, children left to right). Used everywhere a canonical
  // arrangement of formulas is needed.
  int compare(const Formula& o) const { return cmp(node_.get(), o.node_.get()); }

  bool operator==(const Formula& o) const {
    return node_ == o.node_ || (hash() == o.hash() && compare(o) == 0);
  }
  bool operator!=(const Formula& o) const { return !(*this == o); }
  bool operator<(const Formula& o) const { return compare(o) < 0; }
  bool operator<=(const Formula& o) const { return compare(o) <= 0; }
  bool operator>(const Formula& o) const { return compare(o) > 0; }
  bool operator>=(const Formula& o) const { return compare(o) >= 0; }

  // f & []f, the strong-box companion of a formula.
  Formula boxdot() const { return conj(*this, box(*this)); }

  struct Hash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
  };

 private:
  struct Node {
    Kind kind;
    std::size_t size;
    std::size_t hash;
    std::string name;
    std::shared_ptr<const Node> a, b;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  void require(Kind k) const {
    if (node_->kind != k) throw NotAnInstance("formula kind mismatch");
  }

  static Formula binary(Kind k, Formula l, Formula r) {
    std::size_t h = combine(combine(hash_leaf(k, ""), l.hash()), r.hash());
    std::size_t sz = 1 + l.size() + r.size();
    auto a = l.node_;
    auto b = r.node_;
    return Formula(std::make_shared<const Node>(
        Node{k, sz, h, std::string(), std::move(a), std::move(b)}));
  }

  static std::size_t hash_leaf(Kind k, const std::string& name) {
    std::size_t h = 1469598103934665603ull;
    h = (h ^ static_cast<std::size_t>(k)) * 1099511628211ull;
    for (char c : name) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    return h;
  }
  static std::size_t combine(std::size_t a, std::size_t b) {
    return (a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2)));
  }

  static int cmp(const Node* x, const Node* y) {
    if (x == y) return 0;
    if (x->size != y->size) return x->size < y->size ? -1 : 1;
    if (x->kind != y->kind) return x->kind < y->kind ? -1 : 1;
    switch (x->kind) {
      case Kind::Bot:
        return 0;
      case Kind::Var:
        return x->name.compare(y->name) < 0   ? -1
               : x->name.compare(y->name) > 0 ? 1
                                              : 0;
      case Kind::Box:
        return cmp(x->a.get(), y->a.get());
      default: {
        int c = cmp(x->a.get(), y->a.get());
        return c != 0 ? c : cmp(x->b.get(), y->b.get());
      }
    }
  }

  static const std::shared_ptr<const Node>& bot_node() {
    static const std::shared_ptr<const Node> n = std::make_shared<const Node>(
        Node{Kind::Bot, 1, hash_leaf(Kind::Bot, ""), std::string(), nullptr,
             nullptr});
    return n;
  }

  std::shared_ptr<const Node> node_;
};

// All subformulas of f, including f itself.
inline void collect_subformulas(const Formula& f, std::set<Formula>& out) {
  if (!out.insert(f).second) return;
  switch (f.kind()) {
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      collect_subformulas(f.lhs(), out);
      collect_subformulas(f.rhs(), out);
      break;
    case Kind::Box:
      collect_subformulas(f.body(), out);
      break;
    default:
      break;
  }
}

inline std::set<Formula> subformulas(const Formula& f) {
  std::set<Formula> out;
  collect_subformulas(f, out);
  return out;
}

}  // namespace igl
