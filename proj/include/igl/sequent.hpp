#pragma once

#include <set>

#include "igl/multiset.hpp"

namespace igl {

// Intuitionistic sequent: multiset of antecedents, single succedent.
struct Sequent {
  FMultiset left;
  Formula right;

  Sequent() = default;
  Sequent(FMultiset l, Formula r) : left(std::move(l)), right(std::move(r)) {}

  int compare(const Sequent& o) const {
    int c = right.compare(o.right);
    if (c != 0) return c;
    return left.compare(o.left);
  }
  bool operator==(const Sequent& o) const { return compare(o) == 0; }
  bool operator!=(const Sequent& o) const { return compare(o) != 0; }
  bool operator<(const Sequent& o) const { return compare(o) < 0; }
};

// Same succedent over the set part of the antecedents.
inline Sequent set_left(const Sequent& s) {
  return Sequent{s.left.set_part(), s.right};
}

// Formula reading of a sequent: conjunction of the antecedents (in canonical
// order, left-associated, with multiplicity) implying the succedent. The
// empty conjunction is bot -> bot.
inline Formula interpret(const Sequent& s) {
  Formula conj;
  bool first = true;
  for (const Formula& f : s.left.to_list()) {
    conj = first ? f : Formula::conj(conj, f);
    first = false;
  }
  if (first) conj = Formula::imp(Formula::bot(), Formula::bot());
  return Formula::imp(conj, s.right);
}

inline std::set<Formula> subformula_closure(const std::set<Formula>& fs) {
  std::set<Formula> out;
  for (const Formula& f : fs) collect_subformulas(f, out);
  return out;
}

inline std::set<Formula> subformula_closure(const Sequent& s) {
  std::set<Formula> out;
  for (const auto& [f, c] : s.left.entries()) collect_subformulas(f, out);
  collect_subformulas(s.right, out);
  return out;
}

}  // namespace igl
