#pragma once

// Shared helpers for the test suite: terse literals for formulas and
// sequents, exhaustive small-formula enumeration, and a seeded random
// generator. Everything deterministic; no global state.

#include <random>
#include <string>
#include <vector>

#include "igl/igl.hpp"

inline igl::Formula operator""_f(const char* s, std::size_t n) {
  return igl::parse_formula(std::string_view(s, n));
}

inline igl::Sequent operator""_s(const char* s, std::size_t n) {
  return igl::parse_sequent(std::string_view(s, n));
}

namespace tutil {

inline igl::FiniteProof node(igl::RuleName r, std::string_view seq,
                             std::vector<igl::FiniteProof> children = {}) {
  return igl::FiniteProof(igl::ProofLabel{igl::parse_sequent(seq), r},
                          std::move(children));
}

// All formulas over `vars` with at most `max_size` nodes, grouped by size.
// Size counts every node; bot and variables are size 1.
inline std::vector<std::vector<igl::Formula>> formulas_by_size(
    std::size_t max_size, const std::vector<std::string>& vars) {
  using igl::Formula;
  std::vector<std::vector<Formula>> by(max_size + 1);
  if (max_size >= 1) {
    by[1].push_back(Formula::bot());
    for (const auto& v : vars) by[1].push_back(Formula::var(v));
  }
  for (std::size_t s = 2; s <= max_size; ++s) {
    for (const auto& f : by[s - 1]) by[s].push_back(Formula::box(f));
    for (std::size_t a = 1; a + 1 < s; ++a) {
      std::size_t b = s - 1 - a;
      for (const auto& l : by[a])
        for (const auto& r : by[b]) {
          by[s].push_back(Formula::conj(l, r));
          by[s].push_back(Formula::disj(l, r));
          by[s].push_back(Formula::imp(l, r));
        }
    }
  }
  return by;
}

inline std::vector<igl::Formula> formulas_up_to(
    std::size_t max_size, const std::vector<std::string>& vars) {
  auto by = formulas_by_size(max_size, vars);
  std::vector<igl::Formula> all;
  for (const auto& bucket : by)
    for (const auto& f : bucket) all.push_back(f);
  return all;
}

// Every sequent over {p, q} with at most two antecedents and total formula
// size (antecedents plus succedent) at most five. 2229 sequents.
inline std::vector<igl::Sequent> small_sequent_pool() {
  using igl::FMultiset;
  using igl::Sequent;
  auto all = formulas_up_to(5, {"p", "q"});
  std::vector<Sequent> out;
  for (const auto& r : all)
    if (r.size() <= 5) out.push_back(Sequent{FMultiset{}, r});
  for (const auto& l : all)
    for (const auto& r : all)
      if (l.size() + r.size() <= 5)
        out.push_back(Sequent{FMultiset{}.plus(l), r});
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i; j < all.size(); ++j)
      for (const auto& r : all)
        if (all[i].size() + all[j].size() + r.size() <= 5)
          out.push_back(Sequent{FMultiset{}.plus(all[i]).plus(all[j]), r});
  return out;
}

// Seeded random structures. Shapes are uniform over connectives at each
// node, which gives a decent mix of provable and unprovable goals.
struct Gen {
  std::mt19937 rng;
  std::vector<std::string> vars{"p", "q", "r"};

  explicit Gen(unsigned seed) : rng(seed) {}

  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  }

  igl::Formula formula(unsigned depth) {
    using igl::Formula;
    if (depth == 0 || pick(4) == 0) {
      std::size_t k = pick(vars.size() + 1);
      if (k == vars.size()) return Formula::bot();
      return Formula::var(vars[k]);
    }
    switch (pick(4)) {
      case 0: return Formula::conj(formula(depth - 1), formula(depth - 1));
      case 1: return Formula::disj(formula(depth - 1), formula(depth - 1));
      case 2: return Formula::imp(formula(depth - 1), formula(depth - 1));
      default: return Formula::box(formula(depth - 1));
    }
  }

  igl::Sequent sequent(unsigned depth, std::size_t max_left) {
    igl::FMultiset left;
    std::size_t n = pick(max_left + 1);
    for (std::size_t i = 0; i < n; ++i) left.add(formula(depth));
    return igl::Sequent{std::move(left), formula(depth)};
  }
};

}  // namespace tutil
