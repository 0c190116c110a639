#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "igl/cyclic.hpp"
#include "igl/transform.hpp"

namespace igl {

// One corecursion step of a proof translation: destructs a finite proof into
// a produced node label and the seeds its children corecurse from.
using BetaStep =
    std::function<std::pair<ProofLabel, std::vector<FiniteProof>>(
        const FiniteProof&)>;

// The translation step that eliminates the GL box rule: an RGL node is
// relabeled RK4 and its premise is rebuilt without the boxed fixed point
// (loeb) and contracted to single occurrences (so the corecursion ranges
// over finitely many premise sequents). Every other node destructs as is.
inline BetaStep default_beta(SearchBudget budget = {}) {
  return [budget](const FiniteProof& t)
             -> std::pair<ProofLabel, std::vector<FiniteProof>> {
    if (t.label.rule != RuleName::RGL) return {t.label, t.children};
    auto split = match_rgl(t.children[0].label.sequent, t.label.sequent);
    if (!split)
      throw NotAProof("default_beta: box node does not match its rule");
    FiniteProof q = loeb(t.children[0], budget);
    q = contract_to(q, dnec(split->gamma.set_part()));
    return {ProofLabel{t.label.sequent, RuleName::RK4}, {std::move(q)}};
  };
}

// The ill-founded unfolding driven by a translation step. Memoized so
// revisits of a subtree do not recompute the step.
inline LazyProof trans(const FiniteProof& p, const BetaStep& beta) {
  return LazyProof::corecurse(p, [beta](const FiniteProof& t) {
           return beta(t);
         })
      .memoized();
}

// Node of the instrumented unfolding: the produced label plus the height of
// the finite proof seeding this node. Between two box-rule nodes the seed
// heights along any path strictly decrease, which is what makes depth-bounded
// exploration of the unfolding meaningful.
struct IotaStat {
  ProofLabel label;
  std::size_t iota_height = 0;
  bool clipped = false;
};

inline FinTree<IotaStat> walk_iota(const FiniteProof& p, const BetaStep& beta,
                                   std::size_t depth) {
  auto [label, kids] = beta(p);
  FinTree<IotaStat> out;
  out.label = IotaStat{label, p.height(), false};
  if (kids.empty()) return out;
  if (depth == 0) {
    out.label.clipped = true;
    return out;
  }
  out.children.reserve(kids.size());
  for (const auto& k : kids)
    out.children.push_back(walk_iota(k, beta, depth - 1));
  return out;
}

// Verifies the three conditions a translation step must satisfy, on given
// samples: children are proofs in the source system, the produced instance
// is a rule of the target system, and child seed heights strictly drop
// whenever the produced label is not the box rule. Returns violation lines;
// empty means all samples pass.
inline std::vector<std::string> validate_beta(
    const BetaStep& beta, const std::vector<FiniteProof>& samples) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const FiniteProof& p = samples[i];
    std::string tag = "sample " + std::to_string(i) + ": ";
    std::pair<ProofLabel, std::vector<FiniteProof>> step;
    try {
      step = beta(p);
    } catch (const Error& e) {
      out.push_back(tag + "step failed: " + e.what());
      continue;
    }
    const auto& [label, kids] = step;
    RuleInstance inst;
    inst.conclusion = label.sequent;
    inst.rule = label.rule;
    for (std::size_t k = 0; k < kids.size(); ++k) {
      CheckReport r = check_finite(kids[k], System::iGLSeq);
      if (!r.ok())
        out.push_back(tag + "child " + std::to_string(k) +
                      " is not a proof: " + r.entries.front().code);
      inst.premises.push_back(conclusion(kids[k]));
      if (label.rule != RuleName::RK4 && kids[k].height() >= p.height())
        out.push_back(tag + "child " + std::to_string(k) +
                      " does not decrease height under a non-box label");
    }
    MatchResult m = match_rule_diag(inst, System::iK4Seq);
    if (!m.ok) out.push_back(tag + "produced instance invalid: " + m.reason);
  }
  return out;
}

// Regularization: depth-first unfolding of trans(p, default_beta) that cuts
// a cycle whenever the sequent of a box-rule premise repeats along the path,
// backlinking to its earliest occurrence. The premise sequents live in a
// finite space (contracted closure sequents), so the depth-first walk
// terminates; the cap is a defensive bug signal, not a tunable.
inline CyclicDerivation fin_to_circ(const FiniteProof& p,
                                    std::size_t node_cap = 100000,
                                    SearchBudget budget = {}) {
  detail::require_proof(p, "fin_to_circ");
  LazyProof unfolding = trans(p, default_beta(budget));

  CyclicDerivation out;
  std::map<Sequent, Path> seen;  // box-premise sequents on the current path
  std::size_t nodes = 0;
  Path at;
  std::function<FiniteProof(const LazyProof&, bool)> go =
      [&](const LazyProof& t, bool box_premise) -> FiniteProof {
    if (++nodes > node_cap)
      throw ResourceLimit(
          "translation unfolding exceeded its defensive node cap");
    auto [label, kids] = t.destruct();
    if (box_premise) {
      auto it = seen.find(label.sequent);
      if (it != seen.end()) {
        out.backlinks.emplace(at, it->second);
        return FiniteProof{{label.sequent, RuleName::Assump}, {}};
      }
      seen.emplace(label.sequent, at);
    }
    FiniteProof node{label, {}};
    node.children.reserve(kids.size());
    for (std::size_t i = 0; i < kids.size(); ++i) {
      at.steps.push_back(i);
      node.children.push_back(go(kids[i], label.rule == RuleName::RK4));
      at.steps.pop_back();
    }
    if (box_premise) seen.erase(label.sequent);
    return node;
  };
  out.proof = go(unfolding, false);
  return out;
}

// The per-leaf assumption formulas of a derivation, split by whether the
// leaf sits under a box-rule node, plus the root's formula reading.
struct AssumptionFormulaBundle {
  std::set<Formula> nonboxed;  // boxdot of the leaf sequent's reading
  std::set<Formula> boxed;     // box of the leaf sequent's reading
  Formula goal;
};

inline AssumptionFormulaBundle assumption_formula(const CyclicDerivation& d) {
  AssumptionFormulaBundle out;
  out.goal = interpret(conclusion(d));
  AssumptionClasses cls = classify_assumptions(d.proof);
  for (const Path& a : cls.nonboxed)
    out.nonboxed.insert(interpret(d.proof.subtree(a).label.sequent).boxdot());
  for (const Path& a : cls.boxed)
    out.boxed.insert(
        Formula::box(interpret(d.proof.subtree(a).label.sequent)));
  return out;
}

// Cyclic to finitary: a closed cyclic proof under the box-progress condition
// guarantees its root is provable in the GL system, so the finite proof is
// rebuilt by search. An unprovable root here is a broken invariant, never a
// user error.
inline FiniteProof circ_to_fin(const CyclicDerivation& d,
                               SearchBudget budget = {}) {
  if (!d.open_assumptions.empty())
    throw NotAProof("circ_to_fin: derivation has open assumptions");
  CheckReport r = check_cyclic(d, k4circ_progress());
  if (!r.ok())
    throw NotAProof("circ_to_fin: input rejected: " +
                    r.entries.front().code + " at " +
                    r.entries.front().path.to_text());
  ProveResult res = prove(conclusion(d), budget);
  if (!res.proved())
    throw InternalError(
        "circ_to_fin: accepted cyclic proof with unprovable root " +
        to_text(conclusion(d)));
  return std::move(*res.proof);
}

}  // namespace igl
