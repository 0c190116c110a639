#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "igl/sequent.hpp"
#include "igl/text.hpp"

namespace igl {

// Rule labels. Assump marks an assumption leaf and matches no rule schema.
enum class RuleName : unsigned char {
  Assump,
  Prop,
  Absurd,
  AndL,
  AndR,
  OrL,
  OrR0,
  OrR1,
  ImpL,
  ImpR,
  RK4,
  RGL,
};

enum class System : unsigned char { iG3, iK4Seq, iGLSeq };

inline const char* to_text(RuleName r) {
  switch (r) {
    case RuleName::Assump: return "assump";
    case RuleName::Prop: return "Prop";
    case RuleName::Absurd: return "Absurd";
    case RuleName::AndL: return "AndL";
    case RuleName::AndR: return "AndR";
    case RuleName::OrL: return "OrL";
    case RuleName::OrR0: return "OrR0";
    case RuleName::OrR1: return "OrR1";
    case RuleName::ImpL: return "ImpL";
    case RuleName::ImpR: return "ImpR";
    case RuleName::RK4: return "RK4";
    case RuleName::RGL: return "RGL";
  }
  return "?";
}

inline std::optional<RuleName> parse_rule_name(std::string_view s) {
  for (RuleName r :
       {RuleName::Assump, RuleName::Prop, RuleName::Absurd, RuleName::AndL,
        RuleName::AndR, RuleName::OrL, RuleName::OrR0, RuleName::OrR1,
        RuleName::ImpL, RuleName::ImpR, RuleName::RK4, RuleName::RGL}) {
    if (s == to_text(r)) return r;
  }
  return std::nullopt;
}

inline const char* to_text(System s) {
  switch (s) {
    case System::iG3: return "iG3";
    case System::iK4Seq: return "iK4";
    case System::iGLSeq: return "iGL";
  }
  return "?";
}

inline std::optional<System> parse_system(std::string_view s) {
  if (s == "iG3") return System::iG3;
  if (s == "iK4") return System::iK4Seq;
  if (s == "iGL") return System::iGLSeq;
  return std::nullopt;
}

// Whether the rule belongs to the system. The propositional base is shared;
// the systems differ only in their box rule.
inline bool system_has(System s, RuleName r) {
  switch (r) {
    case RuleName::Assump:
      return false;
    case RuleName::RK4:
      return s == System::iK4Seq;
    case RuleName::RGL:
      return s == System::iGLSeq;
    default:
      return true;
  }
}

// One alleged rule application: named rule, premises in schema order,
// conclusion.
struct RuleInstance {
  std::vector<Sequent> premises;
  Sequent conclusion;
  RuleName rule;
};

// The unique G with dnec(G) == delta, when one exists. Processing formulas in
// ascending canonical order makes the defining equations triangular: a
// formula's own count is fixed before its boxed version is reached.
inline std::optional<FMultiset> solve_dnec(const FMultiset& delta) {
  FMultiset g;
  for (const auto& [f, c] : delta.entries()) {
    std::size_t from_pair = f.is(Kind::Box) ? g.count(f.body()) : 0;
    if (from_pair > c) return std::nullopt;
    g.add(f, c - from_pair);
  }
  if (dnec(g) != delta) return std::nullopt;
  return g;
}

// Decomposition of a box-rule instance: conclusion = pi, []gamma => []phi.
struct ModalSplit {
  FMultiset gamma;
  FMultiset pi;
  Formula phi;
};

// RK4: premise dnec(G) => phi, conclusion Pi, []G => []phi.
inline std::optional<ModalSplit> match_rk4(const Sequent& premise,
                                           const Sequent& conclusion) {
  if (!conclusion.right.is(Kind::Box)) return std::nullopt;
  if (conclusion.right.body() != premise.right) return std::nullopt;
  auto g = solve_dnec(premise.left);
  if (!g) return std::nullopt;
  FMultiset bg = boxed(*g);
  if (!bg.subset_of(conclusion.left)) return std::nullopt;
  return ModalSplit{std::move(*g), conclusion.left.minus(bg), premise.right};
}

// RGL: premise dnec(G), []phi => phi, conclusion Pi, []G => []phi.
inline std::optional<ModalSplit> match_rgl(const Sequent& premise,
                                           const Sequent& conclusion) {
  if (!conclusion.right.is(Kind::Box)) return std::nullopt;
  if (conclusion.right.body() != premise.right) return std::nullopt;
  Formula diag = conclusion.right;
  if (!premise.left.contains(diag)) return std::nullopt;
  auto g = solve_dnec(premise.left.minus(diag));
  if (!g) return std::nullopt;
  FMultiset bg = boxed(*g);
  if (!bg.subset_of(conclusion.left)) return std::nullopt;
  return ModalSplit{std::move(*g), conclusion.left.minus(bg), premise.right};
}

struct MatchResult {
  bool ok;
  std::string reason;  // empty when ok

  explicit operator bool() const { return ok; }
};

namespace detail {

inline MatchResult match_ok() { return {true, {}}; }
inline MatchResult match_fail(std::string reason) {
  return {false, std::move(reason)};
}

// Left rules with a displayed principal formula try every occurrence of the
// right shape; the instance is valid if any candidate works.
template <class TryPrincipal>
MatchResult match_left_principal(const RuleInstance& inst, Kind kind,
                                 TryPrincipal&& try_principal) {
  bool saw_candidate = false;
  for (const auto& [f, c] : inst.conclusion.left.entries()) {
    if (!f.is(kind)) continue;
    saw_candidate = true;
    if (try_principal(f)) return match_ok();
  }
  if (!saw_candidate)
    return match_fail("no antecedent of the required shape");
  return match_fail("no principal candidate matches the premises");
}

}  // namespace detail

// Validates the instance against its named rule's schema within the system.
// The reason string of a failed match names the first violated constraint.
inline MatchResult match_rule_diag(const RuleInstance& inst, System system) {
  using detail::match_fail;
  using detail::match_ok;
  const Sequent& c = inst.conclusion;
  const auto& prem = inst.premises;

  if (!system_has(system, inst.rule))
    return match_fail(std::string(to_text(inst.rule)) + " is not a rule of " +
                      to_text(system));

  auto arity = [&](std::size_t n) -> std::optional<MatchResult> {
    if (prem.size() != n)
      return match_fail(std::string(to_text(inst.rule)) + " takes " +
                        std::to_string(n) + " premises, got " +
                        std::to_string(prem.size()));
    return std::nullopt;
  };

  switch (inst.rule) {
    case RuleName::Assump:
      return match_fail("assumption leaves match no rule schema");

    case RuleName::Prop: {
      if (auto bad = arity(0)) return *bad;
      if (!c.right.is(Kind::Var))
        return match_fail("Prop needs a variable succedent");
      if (!c.left.contains(c.right))
        return match_fail("Prop needs the succedent among the antecedents");
      return match_ok();
    }

    case RuleName::Absurd: {
      if (auto bad = arity(0)) return *bad;
      if (!c.left.contains(Formula::bot()))
        return match_fail("Absurd needs bot among the antecedents");
      return match_ok();
    }

    case RuleName::AndL: {
      if (auto bad = arity(1)) return *bad;
      return detail::match_left_principal(inst, Kind::And, [&](const Formula& a) {
        return prem[0].right == c.right &&
               prem[0].left == c.left.minus(a).plus(a.lhs()).plus(a.rhs());
      });
    }

    case RuleName::AndR: {
      if (auto bad = arity(2)) return *bad;
      if (!c.right.is(Kind::And))
        return match_fail("AndR needs a conjunction succedent");
      if (prem[0].left != c.left || prem[1].left != c.left)
        return match_fail("AndR premises must keep the antecedents");
      if (prem[0].right != c.right.lhs() || prem[1].right != c.right.rhs())
        return match_fail("AndR premises must prove the two conjuncts in order");
      return match_ok();
    }

    case RuleName::OrL: {
      if (auto bad = arity(2)) return *bad;
      return detail::match_left_principal(inst, Kind::Or, [&](const Formula& a) {
        return prem[0].right == c.right && prem[1].right == c.right &&
               prem[0].left == c.left.minus(a).plus(a.lhs()) &&
               prem[1].left == c.left.minus(a).plus(a.rhs());
      });
    }

    case RuleName::OrR0:
    case RuleName::OrR1: {
      if (auto bad = arity(1)) return *bad;
      if (!c.right.is(Kind::Or))
        return match_fail("OrR needs a disjunction succedent");
      Formula side = inst.rule == RuleName::OrR0 ? c.right.lhs() : c.right.rhs();
      if (prem[0].left != c.left)
        return match_fail("OrR premise must keep the antecedents");
      if (prem[0].right != side)
        return match_fail("OrR premise must prove the stated disjunct");
      return match_ok();
    }

    case RuleName::ImpL: {
      if (auto bad = arity(2)) return *bad;
      return detail::match_left_principal(inst, Kind::Imp, [&](const Formula& a) {
        // The left premise keeps the implication among its antecedents.
        return prem[0].left == c.left && prem[0].right == a.lhs() &&
               prem[1].left == c.left.minus(a).plus(a.rhs()) &&
               prem[1].right == c.right;
      });
    }

    case RuleName::ImpR: {
      if (auto bad = arity(1)) return *bad;
      if (!c.right.is(Kind::Imp))
        return match_fail("ImpR needs an implication succedent");
      if (prem[0].left != c.left.plus(c.right.lhs()))
        return match_fail("ImpR premise must add the antecedent of the succedent");
      if (prem[0].right != c.right.rhs())
        return match_fail("ImpR premise must prove the consequent");
      return match_ok();
    }

    case RuleName::RK4: {
      if (auto bad = arity(1)) return *bad;
      if (!match_rk4(prem[0], c))
        return match_fail("premise is not dnec(G) => phi for boxed G in the conclusion");
      return match_ok();
    }

    case RuleName::RGL: {
      if (auto bad = arity(1)) return *bad;
      if (!match_rgl(prem[0], c))
        return match_fail(
            "premise is not dnec(G), []phi => phi for boxed G in the conclusion");
      return match_ok();
    }
  }
  return match_fail("unknown rule");
}

inline bool match_rule(const RuleInstance& inst, System system) {
  return match_rule_diag(inst, system).ok;
}

// Smallest system containing the rule; the propositional rules live in iG3.
inline System minimal_system(RuleName r) {
  switch (r) {
    case RuleName::RK4: return System::iK4Seq;
    case RuleName::RGL: return System::iGLSeq;
    default: return System::iG3;
  }
}

// Marker for the box rules, whose premise rearranges the whole conclusion.
struct AllPrincipal {};

// The displayed formula of a valid instance: the decomposed antecedent for
// left rules, the succedent for right rules, the matched variable or bot for
// the axioms, AllPrincipal for the box rules. Throws NotAnInstance when the
// instance does not match its rule in the given system.
inline std::variant<Formula, AllPrincipal> principal_formula(
    const RuleInstance& inst, System system) {
  auto ensure = [&](bool ok) {
    if (!ok)
      throw NotAnInstance(std::string("not a ") + to_text(inst.rule) +
                          " instance: " + match_rule_diag(inst, system).reason);
  };
  const Sequent& c = inst.conclusion;
  switch (inst.rule) {
    case RuleName::Prop:
    case RuleName::Absurd: {
      ensure(match_rule(inst, system));
      return inst.rule == RuleName::Prop ? c.right : Formula::bot();
    }
    case RuleName::AndR:
    case RuleName::OrR0:
    case RuleName::OrR1:
    case RuleName::ImpR: {
      ensure(match_rule(inst, system));
      return c.right;
    }
    case RuleName::RK4:
    case RuleName::RGL: {
      ensure(match_rule(inst, system));
      return AllPrincipal{};
    }
    case RuleName::AndL:
    case RuleName::OrL:
    case RuleName::ImpL: {
      ensure(match_rule(inst, system));
      Kind k = inst.rule == RuleName::AndL  ? Kind::And
               : inst.rule == RuleName::OrL ? Kind::Or
                                            : Kind::Imp;
      RuleInstance candidate = inst;
      for (const auto& [f, cnt] : c.left.entries()) {
        if (!f.is(k)) continue;
        // Re-check with the left side narrowed to force this candidate.
        bool fits = false;
        switch (inst.rule) {
          case RuleName::AndL:
            fits = inst.premises[0].left ==
                   c.left.minus(f).plus(f.lhs()).plus(f.rhs());
            break;
          case RuleName::OrL:
            fits = inst.premises[0].left == c.left.minus(f).plus(f.lhs()) &&
                   inst.premises[1].left == c.left.minus(f).plus(f.rhs());
            break;
          default:
            fits = inst.premises[0].right == f.lhs() &&
                   inst.premises[1].left == c.left.minus(f).plus(f.rhs());
            break;
        }
        if (fits) return f;
      }
      throw NotAnInstance("no principal candidate fits");  // unreachable after ensure
    }
    default:
      throw NotAnInstance("assumption leaves have no principal formula");
  }
}

inline std::variant<Formula, AllPrincipal> principal_formula(
    const RuleInstance& inst) {
  return principal_formula(inst, minimal_system(inst.rule));
}

}  // namespace igl
