#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "igl/proof.hpp"

namespace igl {

// Maps an assumption-leaf path to the strict ancestor its cycle returns to.
using BacklinkMap = std::map<Path, Path>;

// A finite tree with assumption leaves, some discharged by backlinks and the
// rest declared open. A cyclic proof is the special case where every Assump
// leaf is backlinked and nothing is open.
struct CyclicDerivation {
  FiniteProof proof;
  BacklinkMap backlinks;
  std::set<Sequent> open_assumptions;
};

inline const Sequent& conclusion(const CyclicDerivation& d) {
  return conclusion(d.proof);
}

// Decides whether the cycle closing at `leaf` makes progress. `trace` holds
// the labels from the root to the leaf inclusive (so trace.size() ==
// leaf.length() + 1) and `cycle_start` indexes the backlink target in it.
using ProgressPredicate = std::function<bool(
    const Path& leaf, const std::vector<ProofLabel>& trace,
    std::size_t cycle_start)>;

// Some RK4 application occurs at or after the point the cycle returns to.
inline ProgressPredicate k4circ_progress() {
  return [](const Path&, const std::vector<ProofLabel>& trace,
            std::size_t cycle_start) {
    for (std::size_t j = cycle_start; j < trace.size(); ++j)
      if (trace[j].rule == RuleName::RK4) return true;
    return false;
  };
}

// Vacuous condition: every backlink counts as progressing.
inline ProgressPredicate no_progress_required() {
  return [](const Path&, const std::vector<ProofLabel>&, std::size_t) {
    return true;
  };
}

// Empty condition: no backlink ever progresses, so only backlink-free
// derivations pass.
inline ProgressPredicate never_progress() {
  return [](const Path&, const std::vector<ProofLabel>&, std::size_t) {
    return false;
  };
}

// Some application of `rule` at or after the cycle start continues into its
// k-th premise on the way to the leaf.
inline ProgressPredicate kth_premise_progress(RuleName rule, std::size_t k) {
  return [rule, k](const Path& leaf, const std::vector<ProofLabel>& trace,
                   std::size_t cycle_start) {
    // trace[j] steps to trace[j+1] through premise leaf.steps[j].
    for (std::size_t j = cycle_start; j + 1 < trace.size(); ++j)
      if (trace[j].rule == rule && leaf.steps[j] == k) return true;
    return false;
  };
}

inline std::vector<Path> assumption_leaves(const FiniteProof& p) {
  std::vector<Path> out;
  p.walk([&](const Path& at, const FiniteProof& node) {
    if (node.label.rule == RuleName::Assump && node.leaf()) out.push_back(at);
  });
  return out;
}

// Checks the three cyclic-derivation conditions: the tree is a derivation in
// the system with its Assump leaves as assumptions, the backlink map is
// structurally valid (sources are Assump leaves, targets are strict ancestors
// with the same sequent), every Assump leaf is backlinked or open, and every
// backlinked leaf satisfies the progress predicate.
inline CheckReport check_cyclic(const CyclicDerivation& d,
                                const ProgressPredicate& progress,
                                System system = System::iK4Seq) {
  // Rule instances first, with every Assump-leaf sequent granted, so that
  // discharge bookkeeping below is the only assumption-related concern.
  std::set<Sequent> leaf_sequents;
  std::vector<Path> leaves = assumption_leaves(d.proof);
  std::set<Path> leaf_set(leaves.begin(), leaves.end());
  for (const Path& s : leaves)
    leaf_sequents.insert(d.proof.subtree(s).label.sequent);
  CheckReport report = check_finite(d.proof, system, leaf_sequents);

  for (const auto& [src, dst] : d.backlinks) {
    if (!leaf_set.count(src)) {
      report.entries.push_back({src, "backlink-not-assumption",
                                "backlink source is not an assumption leaf"});
      continue;
    }
    if (!dst.is_proper_prefix_of(src)) {
      report.entries.push_back(
          {src, "backlink-not-prefix",
           "target " + dst.to_text() + " is not a strict ancestor"});
      continue;
    }
    const Sequent& at_src = d.proof.subtree(src).label.sequent;
    const Sequent& at_dst = d.proof.subtree(dst).label.sequent;
    if (at_src != at_dst) {
      report.entries.push_back(
          {src, "backlink-sequent-mismatch",
           "leaf claims " + to_text(at_src) + " but target " + dst.to_text() +
               " claims " + to_text(at_dst)});
      continue;
    }
    std::vector<ProofLabel> trace;
    trace.reserve(src.length() + 1);
    const FiniteProof* node = &d.proof;
    trace.push_back(node->label);
    for (std::size_t i : src.steps) {
      node = &node->children[i];
      trace.push_back(node->label);
    }
    if (!progress(src, trace, dst.length())) {
      report.entries.push_back(
          {src, "no-progress",
           "cycle back to " + dst.to_text() + " does not progress"});
    }
  }

  for (const Path& s : leaves) {
    if (d.backlinks.count(s)) continue;
    if (!d.open_assumptions.count(d.proof.subtree(s).label.sequent)) {
      report.entries.push_back(
          {s, "assumption-unresolved",
           "assumption leaf is neither backlinked nor declared open"});
    }
  }
  return report;
}

struct AssumptionClasses {
  std::set<Path> boxed;     // leaves below some RK4-labeled strict ancestor
  std::set<Path> nonboxed;  // the rest
};

inline AssumptionClasses classify_assumptions(const FiniteProof& p) {
  AssumptionClasses out;
  std::size_t rk4_above = 0;
  std::function<void(const FiniteProof&, Path&)> go = [&](const FiniteProof& t,
                                                          Path& at) {
    if (t.label.rule == RuleName::Assump && t.leaf()) {
      (rk4_above > 0 ? out.boxed : out.nonboxed).insert(at);
      return;
    }
    if (t.label.rule == RuleName::RK4) ++rk4_above;
    for (std::size_t i = 0; i < t.children.size(); ++i) {
      at.steps.push_back(i);
      go(t.children[i], at);
      at.steps.pop_back();
    }
    if (t.label.rule == RuleName::RK4) --rk4_above;
  };
  Path root;
  go(p, root);
  return out;
}

// Splices a copy of the subtree at the backlink target over the leaf itself.
// Backlinks of the copied region are shifted with it; targets above the
// copied region keep pointing at the originals. The unrolled leaf's own copy
// ends up backlinked to the splice point.
inline CyclicDerivation unroll_once(const CyclicDerivation& d,
                                    const Path& leaf) {
  auto it = d.backlinks.find(leaf);
  if (it == d.backlinks.end())
    throw PathNotInTree("no backlink at " + leaf.to_text());
  const Path& target = it->second;
  FiniteProof sub = d.proof.subtree(target);

  CyclicDerivation out;
  out.proof = replace_subtree(d.proof, leaf, std::move(sub));
  out.open_assumptions = d.open_assumptions;
  auto shift = [&](const Path& p) {
    Path q = leaf;
    q.steps.insert(q.steps.end(), p.steps.begin() + target.length(),
                   p.steps.end());
    return q;
  };
  for (const auto& [src, dst] : d.backlinks) {
    if (src != leaf) out.backlinks.emplace(src, dst);
    if (target.is_prefix_of(src))
      out.backlinks.emplace(shift(src),
                            target.is_prefix_of(dst) ? shift(dst) : dst);
  }
  return out;
}

}  // namespace igl
