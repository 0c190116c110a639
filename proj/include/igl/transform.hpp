#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "igl/proof.hpp"

namespace igl {

namespace detail {

inline void require_proof(const FiniteProof& p, const char* op) {
  CheckReport r = check_finite(p, System::iGLSeq);
  if (!r.ok())
    throw NotAProof(std::string(op) + ": input is not a proof: " +
                    r.entries.front().code + " at " +
                    r.entries.front().path.to_text());
}

// Adds delta to the antecedents of every sequent down to the first box-rule
// node on each path; there the addition stays in the conclusion (joining Pi)
// and the premise subtree is reused as is. Assumes p is a proof.
inline FiniteProof weaken_rec(const FiniteProof& p, const FMultiset& delta) {
  if (delta.empty()) return p;
  FiniteProof out;
  out.label.rule = p.label.rule;
  out.label.sequent = Sequent{p.label.sequent.left.plus(delta),
                              p.label.sequent.right};
  if (p.label.rule == RuleName::RK4 || p.label.rule == RuleName::RGL) {
    out.children = p.children;
    return out;
  }
  out.children.reserve(p.children.size());
  for (const auto& c : p.children) out.children.push_back(weaken_rec(c, delta));
  return out;
}

enum class LeftInversion { And, Or0, Or1, Imp };

inline FMultiset inversion_residue(LeftInversion kind, const Formula& f) {
  switch (kind) {
    case LeftInversion::And: return FMultiset{f.lhs(), f.rhs()};
    case LeftInversion::Or0: return FMultiset{f.lhs()};
    case LeftInversion::Or1: return FMultiset{f.rhs()};
    case LeftInversion::Imp: return FMultiset{f.rhs()};
  }
  return {};
}

// Height-non-increasing left inversion: turns a proof of G, f => r into a
// proof of G, residue(f) => r, consuming exactly one occurrence of f. Box
// rules only ever carry f in their side context Pi, so there the conclusion
// is relabeled and the premise kept; logical rules recurse.
inline FiniteProof invert_left_rec(const FiniteProof& p, LeftInversion kind,
                                   const Formula& f) {
  const Sequent& c = p.label.sequent;
  if (!c.left.contains(f))
    throw InternalError("inversion lost its principal formula");
  FMultiset residue = inversion_residue(kind, f);
  Sequent target{c.left.minus(f).plus(residue), c.right};

  // Principal hit: the root already decomposes this occurrence of f.
  switch (kind) {
    case LeftInversion::And:
      if (p.label.rule == RuleName::AndL &&
          p.children[0].label.sequent.left ==
              c.left.minus(f).plus(f.lhs()).plus(f.rhs()))
        return p.children[0];
      break;
    case LeftInversion::Or0:
    case LeftInversion::Or1:
      if (p.label.rule == RuleName::OrL &&
          p.children[0].label.sequent.left == c.left.minus(f).plus(f.lhs()) &&
          p.children[1].label.sequent.left == c.left.minus(f).plus(f.rhs()))
        return p.children[kind == LeftInversion::Or0 ? 0 : 1];
      break;
    case LeftInversion::Imp:
      if (p.label.rule == RuleName::ImpL &&
          p.children[0].label.sequent.right == f.lhs() &&
          p.children[0].label.sequent.left == c.left &&
          p.children[1].label.sequent.left == c.left.minus(f).plus(f.rhs()))
        return p.children[1];
      break;
  }

  auto relabel = [&](std::vector<FiniteProof> kids) {
    return FiniteProof{{target, p.label.rule}, std::move(kids)};
  };
  switch (p.label.rule) {
    case RuleName::Prop:
    case RuleName::Absurd:
      // f is a compound, never the matched variable or bot.
      return relabel({});
    case RuleName::RK4:
    case RuleName::RGL:
      // f sits in Pi (it is unboxed) and residue joins Pi.
      return relabel(p.children);
    case RuleName::AndR:
    case RuleName::OrR0:
    case RuleName::OrR1:
    case RuleName::ImpR:
    case RuleName::AndL:
    case RuleName::OrL:
    case RuleName::ImpL: {
      std::vector<FiniteProof> kids;
      kids.reserve(p.children.size());
      for (const auto& ch : p.children)
        kids.push_back(invert_left_rec(ch, kind, f));
      return relabel(std::move(kids));
    }
    default:
      throw InternalError("inversion hit an assumption leaf");
  }
}

// Proof of G, f => r from a proof of G, f, f => r, by lexicographic
// induction on (size of f, height of p). Inversions do not increase height,
// so the recursive calls below strictly descend.
inline FiniteProof contract_one_rec(const FiniteProof& p, const Formula& f) {
  const Sequent& c = p.label.sequent;
  if (c.left.count(f) < 2)
    throw InternalError("contraction needs two occurrences");
  Sequent target{c.left.minus(f), c.right};
  auto node = [&](RuleName r, std::vector<FiniteProof> kids) {
    return FiniteProof{{target, r}, std::move(kids)};
  };

  switch (p.label.rule) {
    case RuleName::Prop:
    case RuleName::Absurd:
      return node(p.label.rule, {});

    case RuleName::AndL: {
      if (f.is(Kind::And) &&
          p.children[0].label.sequent.left ==
              c.left.minus(f).plus(f.lhs()).plus(f.rhs())) {
        FiniteProof q = invert_left_rec(p.children[0], LeftInversion::And, f);
        q = contract_one_rec(q, f.lhs());
        q = contract_one_rec(q, f.rhs());
        return node(RuleName::AndL, {std::move(q)});
      }
      break;
    }
    case RuleName::OrL: {
      if (f.is(Kind::Or) &&
          p.children[0].label.sequent.left == c.left.minus(f).plus(f.lhs()) &&
          p.children[1].label.sequent.left == c.left.minus(f).plus(f.rhs())) {
        FiniteProof q0 = invert_left_rec(p.children[0], LeftInversion::Or0, f);
        q0 = contract_one_rec(q0, f.lhs());
        FiniteProof q1 = invert_left_rec(p.children[1], LeftInversion::Or1, f);
        q1 = contract_one_rec(q1, f.rhs());
        return node(RuleName::OrL, {std::move(q0), std::move(q1)});
      }
      break;
    }
    case RuleName::ImpL: {
      if (f.is(Kind::Imp) &&
          p.children[0].label.sequent.right == f.lhs() &&
          p.children[0].label.sequent.left == c.left &&
          p.children[1].label.sequent.left == c.left.minus(f).plus(f.rhs())) {
        FiniteProof q0 = contract_one_rec(p.children[0], f);
        FiniteProof q1 = invert_left_rec(p.children[1], LeftInversion::Imp, f);
        q1 = contract_one_rec(q1, f.rhs());
        return node(RuleName::ImpL, {std::move(q0), std::move(q1)});
      }
      break;
    }
    case RuleName::RK4:
    case RuleName::RGL: {
      auto split =
          p.label.rule == RuleName::RK4
              ? match_rk4(p.children[0].label.sequent, c)
              : match_rgl(p.children[0].label.sequent, c);
      if (!split) throw InternalError("box node no longer matches its rule");
      if (split->pi.contains(f)) return node(p.label.rule, p.children);
      // Both occurrences are boxed context: f = []s with s twice in gamma.
      Formula s = f.body();
      FiniteProof q = contract_one_rec(p.children[0], s);
      q = contract_one_rec(q, f);
      return node(p.label.rule, {std::move(q)});
    }
    default:
      break;
  }

  // Context case: every premise carries both occurrences of f.
  std::vector<FiniteProof> kids;
  kids.reserve(p.children.size());
  for (const auto& ch : p.children)
    kids.push_back(contract_one_rec(ch, f));
  return node(p.label.rule, std::move(kids));
}

}  // namespace detail

// Admissible weakening: from a proof of G => r, a proof of G + delta => r.
inline FiniteProof weaken(const FiniteProof& p, const FMultiset& delta) {
  detail::require_proof(p, "weaken");
  return detail::weaken_rec(p, delta);
}

// Inversion of AndL: proof of G, a, b => r from a proof of G, a^b => r.
inline FiniteProof invert_and_left(const FiniteProof& p, const Formula& f) {
  detail::require_proof(p, "invert_and_left");
  if (!f.is(Kind::And) || !conclusion(p).left.contains(f))
    throw NotAProof("invert_and_left: no such conjunction on the left");
  return detail::invert_left_rec(p, detail::LeftInversion::And, f);
}

// Inversion of OrL: proof of G, side => r from a proof of G, a v b => r.
inline FiniteProof invert_or_left(const FiniteProof& p, const Formula& f,
                                  std::size_t side) {
  detail::require_proof(p, "invert_or_left");
  if (!f.is(Kind::Or) || !conclusion(p).left.contains(f) || side > 1)
    throw NotAProof("invert_or_left: no such disjunction on the left");
  return detail::invert_left_rec(
      p, side == 0 ? detail::LeftInversion::Or0 : detail::LeftInversion::Or1,
      f);
}

// Right-premise inversion of ImpL: proof of G, b => r from G, a->b => r.
inline FiniteProof invert_imp_left(const FiniteProof& p, const Formula& f) {
  detail::require_proof(p, "invert_imp_left");
  if (!f.is(Kind::Imp) || !conclusion(p).left.contains(f))
    throw NotAProof("invert_imp_left: no such implication on the left");
  return detail::invert_left_rec(p, detail::LeftInversion::Imp, f);
}

// One step of admissible contraction: merges two antecedent occurrences.
inline FiniteProof contract_one(const FiniteProof& p, const Formula& f) {
  detail::require_proof(p, "contract_one");
  if (conclusion(p).left.count(f) < 2)
    throw NotAProof("contract_one: antecedent does not occur twice");
  return detail::contract_one_rec(p, f);
}

// Contraction down to a chosen multiset over the same support.
inline FiniteProof contract_to(const FiniteProof& p, const FMultiset& target) {
  detail::require_proof(p, "contract_to");
  const FMultiset& left = conclusion(p).left;
  if (!target.subset_of(left) || target.set_part() != left.set_part())
    throw NotAProof("contract_to: target is not reachable by contraction");
  FiniteProof cur = p;
  bool again = true;
  while (again) {
    again = false;
    for (const auto& [f, c] : cur.label.sequent.left.entries()) {
      if (c > target.count(f)) {
        cur = detail::contract_one_rec(cur, f);
        again = true;
        break;
      }
    }
  }
  return cur;
}

// Full contraction: proof of the set part of the antecedents.
inline FiniteProof contract(const FiniteProof& p) {
  detail::require_proof(p, "contract");
  return contract_to(p, conclusion(p).left.set_part());
}

struct SearchBudget {
  std::size_t max_depth = 200;
  std::size_t max_states = 1000000;
};

struct ProveResult {
  Sequent goal;
  std::optional<FiniteProof> proof;

  bool proved() const { return proof.has_value(); }
  explicit operator bool() const { return proved(); }
};

// Backward proof search for the GL system, deciding provability. Works on
// canonical sequents (set antecedents): provability is invariant under
// contraction and weakening of duplicates, and the canonical space under a
// fixed goal is finite, so tabled search terminates.
//
// Invertible rules are applied eagerly as the only option; the remaining
// choices (ImpL, the disjunction sides, the box rule with maximal unboxing)
// backtrack over a memo table. In-progress goals reached again fail with a
// taint recording the shallowest such ancestor; failures are cached only
// when independent of anything still on the stack. A searcher that threw
// ResourceLimit must be discarded.
class ProofSearcher {
 public:
  explicit ProofSearcher(SearchBudget budget = {}) : budget_(budget) {}

  // Decides the canonicalized goal; proofs conclude exactly set_left(goal).
  bool decide_canonical(const Sequent& goal) {
    return decide(set_left(goal), 0).first;
  }

  ProveResult prove(const Sequent& goal) {
    ProveResult out;
    out.goal = goal;
    Sequent canon = set_left(goal);
    if (decide(canon, 0).first) {
      const FiniteProof& p = memo_.at(canon).proof;
      out.proof = detail::weaken_rec(p, goal.left.minus(canon.left));
    }
    return out;
  }

  std::size_t states_explored() const { return states_; }

 private:
  enum class Status : unsigned char { InProgress, Proved, Refuted };
  struct Entry {
    Status status;
    std::size_t depth = 0;  // stack depth while InProgress
    FiniteProof proof;      // for Proved: proof of the canonical sequent
  };

  static constexpr std::size_t kNoTaint = static_cast<std::size_t>(-1);

  SearchBudget budget_;
  std::map<Sequent, Entry> memo_;
  std::size_t states_ = 0;

  // (proved, taint): taint is the shallowest stack depth this failure
  // depends on, kNoTaint when the failure is unconditional.
  std::pair<bool, std::size_t> decide(const Sequent& s, std::size_t depth) {
    auto it = memo_.find(s);
    if (it != memo_.end()) {
      switch (it->second.status) {
        case Status::Proved: return {true, kNoTaint};
        case Status::Refuted: return {false, kNoTaint};
        case Status::InProgress: return {false, it->second.depth};
      }
    }
    if (depth > budget_.max_depth)
      throw ResourceLimit("proof search exceeded depth " +
                          std::to_string(budget_.max_depth));
    if (++states_ > budget_.max_states)
      throw ResourceLimit("proof search exceeded " +
                          std::to_string(budget_.max_states) + " states");
    memo_[s] = Entry{Status::InProgress, depth, {}};

    std::size_t taint = kNoTaint;
    std::optional<FiniteProof> proof = expand(s, depth, taint);

    if (proof) {
      memo_[s] = Entry{Status::Proved, 0, std::move(*proof)};
      return {true, kNoTaint};
    }
    if (taint == kNoTaint || taint >= depth) {
      memo_[s] = Entry{Status::Refuted, 0, {}};
      return {false, kNoTaint};
    }
    memo_.erase(s);
    return {false, taint};
  }

  // Child call helper: decides a premise given as an exact multiset sequent
  // and on success yields a proof of exactly that sequent.
  std::optional<FiniteProof> premise(const Sequent& exact, std::size_t depth,
                                     std::size_t& taint) {
    Sequent canon = set_left(exact);
    auto [ok, t] = decide(canon, depth + 1);
    if (!ok) {
      taint = std::min(taint, t);
      return std::nullopt;
    }
    return detail::weaken_rec(memo_.at(canon).proof,
                              exact.left.minus(canon.left));
  }

  std::optional<FiniteProof> expand(const Sequent& s, std::size_t depth,
                                    std::size_t& taint) {
    const FMultiset& L = s.left;
    const Formula& r = s.right;

    // Leaves.
    if (L.contains(Formula::bot()))
      return FiniteProof{{s, RuleName::Absurd}, {}};
    if (r.is(Kind::Var) && L.contains(r))
      return FiniteProof{{s, RuleName::Prop}, {}};

    // Eager invertible rules: each, when applicable, preserves provability
    // exactly, so it is searched as the only option.
    for (const auto& [f, cnt] : L.entries()) {
      if (f.is(Kind::And)) {
        Sequent p{L.minus(f).plus(f.lhs()).plus(f.rhs()), r};
        auto q = premise(p, depth, taint);
        if (!q) return std::nullopt;
        return FiniteProof{{s, RuleName::AndL}, {std::move(*q)}};
      }
    }
    for (const auto& [f, cnt] : L.entries()) {
      if (f.is(Kind::Or)) {
        Sequent p0{L.minus(f).plus(f.lhs()), r};
        Sequent p1{L.minus(f).plus(f.rhs()), r};
        auto q0 = premise(p0, depth, taint);
        if (!q0) return std::nullopt;
        auto q1 = premise(p1, depth, taint);
        if (!q1) return std::nullopt;
        return FiniteProof{{s, RuleName::OrL},
                           {std::move(*q0), std::move(*q1)}};
      }
    }
    if (r.is(Kind::And)) {
      auto q0 = premise(Sequent{L, r.lhs()}, depth, taint);
      if (!q0) return std::nullopt;
      auto q1 = premise(Sequent{L, r.rhs()}, depth, taint);
      if (!q1) return std::nullopt;
      return FiniteProof{{s, RuleName::AndR},
                         {std::move(*q0), std::move(*q1)}};
    }
    if (r.is(Kind::Imp)) {
      auto q = premise(Sequent{L.plus(r.lhs()), r.rhs()}, depth, taint);
      if (!q) return std::nullopt;
      return FiniteProof{{s, RuleName::ImpR}, {std::move(*q)}};
    }

    // Choice rules, backtracking in canonical order.
    for (const auto& [f, cnt] : L.entries()) {
      if (!f.is(Kind::Imp)) continue;
      auto q0 = premise(Sequent{L, f.lhs()}, depth, taint);
      if (!q0) continue;
      auto q1 = premise(Sequent{L.minus(f).plus(f.rhs()), r}, depth, taint);
      if (!q1) continue;
      return FiniteProof{{s, RuleName::ImpL},
                         {std::move(*q0), std::move(*q1)}};
    }
    if (r.is(Kind::Or)) {
      if (auto q = premise(Sequent{L, r.lhs()}, depth, taint))
        return FiniteProof{{s, RuleName::OrR0}, {std::move(*q)}};
      if (auto q = premise(Sequent{L, r.rhs()}, depth, taint))
        return FiniteProof{{s, RuleName::OrR1}, {std::move(*q)}};
    }
    if (r.is(Kind::Box)) {
      // Maximal unboxing: any other split's premise weakens into this one,
      // so trying only the full set of unboxed formulas is complete.
      FMultiset gamma;
      for (const auto& [f, cnt] : L.entries())
        if (f.is(Kind::Box)) gamma.add(f.body());
      Sequent p{dnec(gamma).plus(r), r.body()};
      if (auto q = premise(p, depth, taint))
        return FiniteProof{{s, RuleName::RGL}, {std::move(*q)}};
    }
    return std::nullopt;
  }
};

// Decision procedure for provability of the goal; on success the returned
// proof concludes exactly the goal and passes the checker.
inline ProveResult prove(const Sequent& goal, SearchBudget budget = {}) {
  ProofSearcher searcher(budget);
  return searcher.prove(goal);
}

// The admissible rule discharging a boxed fixed point: from a proof whose
// conclusion decomposes as boxdots + boxes + []r => r, a proof without the
// []r. Conclusions of any other shape pass through unchanged. The witness is
// rebuilt by proof search; failure to find one would contradict the rule's
// admissibility and raises InternalError.
inline FiniteProof loeb(const FiniteProof& p, SearchBudget budget = {}) {
  detail::require_proof(p, "loeb");
  const Sequent& c = conclusion(p);
  Formula boxr = Formula::box(c.right);
  if (!c.left.contains(boxr)) return p;
  FMultiset rest = c.left.minus(boxr);
  for (const auto& [f, cnt] : rest.entries()) {
    if (f.is(Kind::Box)) continue;
    if (rest.count(Formula::box(f)) < cnt) return p;  // no boxdot pairing
  }
  ProveResult res = prove(Sequent{rest, c.right}, budget);
  if (!res.proved())
    throw InternalError("loeb: target sequent unexpectedly unprovable: " +
                        to_text(Sequent{rest, c.right}));
  return std::move(*res.proof);
}

}  // namespace igl
