#pragma once

#include <set>
#include <string>
#include <vector>

#include "igl/rules.hpp"
#include "igl/tree.hpp"

namespace igl {

// One node of a proof tree: the sequent it claims plus the rule justifying it
// from the node's children.
struct ProofLabel {
  Sequent sequent;
  RuleName rule = RuleName::Assump;

  bool operator==(const ProofLabel& o) const {
    return rule == o.rule && sequent == o.sequent;
  }
  bool operator!=(const ProofLabel& o) const { return !(*this == o); }
};

inline std::string to_text(const ProofLabel& l) {
  return std::string(to_text(l.rule)) + ": " + to_text(l.sequent);
}

using FiniteProof = FinTree<ProofLabel>;
using LazyProof = LazyTree<ProofLabel>;

inline const Sequent& conclusion(const FiniteProof& p) {
  return p.label.sequent;
}

// The alleged rule application at a node, read off the tree structure.
inline RuleInstance instance_at(const FiniteProof& node) {
  RuleInstance inst;
  inst.conclusion = node.label.sequent;
  inst.rule = node.label.rule;
  inst.premises.reserve(node.children.size());
  for (const auto& c : node.children) inst.premises.push_back(c.label.sequent);
  return inst;
}

struct CheckEntry {
  Path path;
  std::string code;  // machine-readable: "not-an-instance", "assumption-not-declared", "assumption-interior"
  std::string message;
};

struct CheckReport {
  std::vector<CheckEntry> entries;

  bool ok() const { return entries.empty(); }
  explicit operator bool() const { return ok(); }

  std::string to_text() const {
    if (ok()) return "accepted\n";
    std::string out;
    for (const auto& e : entries) {
      out += e.path.to_text();
      out += " ";
      out += e.code;
      out += ": ";
      out += e.message;
      out += "\n";
    }
    return out;
  }
};

// Checks every node against its named rule in the system. With a nonempty
// assumption set this checks derivation-hood: Assump leaves are accepted
// exactly when their sequent is declared. With the default empty set it
// checks proof-hood. Failures are report entries, never exceptions.
inline CheckReport check_finite(const FiniteProof& p, System system,
                                const std::set<Sequent>& assumptions = {}) {
  CheckReport report;
  p.walk([&](const Path& at, const FiniteProof& node) {
    if (node.label.rule == RuleName::Assump) {
      if (!node.leaf()) {
        report.entries.push_back(
            {at, "assumption-interior",
             "assumption node has " + std::to_string(node.children.size()) +
                 " children"});
        return;
      }
      if (!assumptions.count(node.label.sequent)) {
        report.entries.push_back(
            {at, "assumption-not-declared",
             "assumption " + igl::to_text(node.label.sequent) +
                 " is not among the declared assumptions"});
      }
      return;
    }
    MatchResult m = match_rule_diag(instance_at(node), system);
    if (!m.ok) {
      report.entries.push_back(
          {at, "not-an-instance",
           std::string(to_text(node.label.rule)) + " at " +
               igl::to_text(node.label.sequent) + ": " + m.reason});
    }
  });
  return report;
}

}  // namespace igl
