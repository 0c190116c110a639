#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "igl/errors.hpp"

namespace igl {

// Address of a node: the sequence of child indices from the root.
struct Path {
  std::vector<std::size_t> steps;

  Path() = default;
  Path(std::initializer_list<std::size_t> s) : steps(s) {}

  std::size_t length() const { return steps.size(); }
  bool empty() const { return steps.empty(); }

  bool is_prefix_of(const Path& o) const {
    if (steps.size() > o.steps.size()) return false;
    return std::equal(steps.begin(), steps.end(), o.steps.begin());
  }
  bool is_proper_prefix_of(const Path& o) const {
    return steps.size() < o.steps.size() && is_prefix_of(o);
  }

  Path child(std::size_t i) const {
    Path p = *this;
    p.steps.push_back(i);
    return p;
  }
  Path parent() const {
    if (steps.empty()) throw PathNotInTree("root has no parent");
    Path p = *this;
    p.steps.pop_back();
    return p;
  }

  int compare(const Path& o) const {
    if (steps < o.steps) return -1;
    if (o.steps < steps) return 1;
    return 0;
  }
  bool operator==(const Path& o) const { return steps == o.steps; }
  bool operator!=(const Path& o) const { return steps != o.steps; }
  bool operator<(const Path& o) const { return steps < o.steps; }

  // "[]", "[0]", "[0.2.1]"
  std::string to_text() const {
    std::string out = "[";
    for (std::size_t i = 0; i < steps.size(); ++i) {
      if (i) out += '.';
      out += std::to_string(steps[i]);
    }
    out += ']';
    return out;
  }

  static Path parse(std::string_view text) {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
      throw ParseError("expected path like [0.1]");
    Path p;
    std::string_view body = text.substr(1, text.size() - 2);
    if (body.empty()) return p;
    std::size_t pos = 0;
    while (true) {
      std::size_t dot = body.find('.', pos);
      std::string_view part =
          body.substr(pos, dot == std::string_view::npos ? dot : dot - pos);
      if (part.empty()) throw ParseError("empty path component");
      std::size_t value = 0;
      for (char c : part) {
        if (c < '0' || c > '9') throw ParseError("path component not a number");
        value = value * 10 + static_cast<std::size_t>(c - '0');
      }
      p.steps.push_back(value);
      if (dot == std::string_view::npos) break;
      pos = dot + 1;
    }
    return p;
  }
};

// Finite rooted tree with labels of type A and ordered children.
template <class A>
struct FinTree {
  A label;
  std::vector<FinTree<A>> children;

  FinTree() = default;
  FinTree(A l, std::vector<FinTree<A>> c = {})
      : label(std::move(l)), children(std::move(c)) {}

  bool leaf() const { return children.empty(); }

  // Length in edges of the longest root-to-leaf path; a leaf has height 0.
  std::size_t height() const {
    std::size_t h = 0;
    for (const auto& c : children) h = std::max(h, c.height() + 1);
    return h;
  }

  std::size_t node_count() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.node_count();
    return n;
  }

  bool has_node(const Path& p) const {
    const FinTree* t = this;
    for (std::size_t i : p.steps) {
      if (i >= t->children.size()) return false;
      t = &t->children[i];
    }
    return true;
  }

  const FinTree& subtree(const Path& p) const {
    const FinTree* t = this;
    for (std::size_t i : p.steps) {
      if (i >= t->children.size())
        throw PathNotInTree("no node at " + p.to_text());
      t = &t->children[i];
    }
    return *t;
  }

  // Preorder traversal; f(path, node).
  template <class F>
  void walk(F&& f) const {
    Path p;
    walk_impl(f, p);
  }

  friend bool operator==(const FinTree& a, const FinTree& b) {
    return a.label == b.label && a.children == b.children;
  }
  friend bool operator!=(const FinTree& a, const FinTree& b) {
    return !(a == b);
  }

 private:
  template <class F>
  void walk_impl(F& f, Path& p) const {
    f(const_cast<const Path&>(p), *this);
    for (std::size_t i = 0; i < children.size(); ++i) {
      p.steps.push_back(i);
      children[i].walk_impl(f, p);
      p.steps.pop_back();
    }
  }
};

// Copy of t with the node at `at` (and everything below it) replaced.
template <class A>
FinTree<A> replace_subtree(const FinTree<A>& t, const Path& at,
                           FinTree<A> replacement) {
  if (at.empty()) return replacement;
  if (at.steps[0] >= t.children.size())
    throw PathNotInTree("no node at " + at.to_text());
  FinTree<A> out = t;
  FinTree<A>* cur = &out;
  for (std::size_t d = 0; d + 1 < at.steps.size(); ++d) {
    cur = &cur->children[at.steps[d]];
    if (at.steps[d + 1] >= cur->children.size())
      throw PathNotInTree("no node at " + at.to_text());
  }
  cur->children[at.steps.back()] = std::move(replacement);
  return out;
}

// Label wrapper used by depth-bounded unfolding: clipped marks a node whose
// children exist in the unclipped tree but were cut off by the depth bound.
template <class A>
struct Clipped {
  A value;
  bool clipped = false;
};

// Possibly infinite tree, represented by a suspended unfolding step. Steps
// must be pure: repeated destruct() calls yield equal results. Copies share
// the suspension. Safe for concurrent unfolding as long as the step function
// is; memoized() adds an internally synchronised cache on every node.
template <class A>
class LazyTree {
 public:
  using Step = std::pair<A, std::vector<LazyTree<A>>>;

  // Builds the unique tree whose node labelled by seed b unfolds to
  // beta(b) = (label, child seeds).
  template <class B, class Beta>
  static LazyTree corecurse(B seed, Beta beta) {
    auto shared_beta = std::make_shared<Beta>(std::move(beta));
    return corecurse_shared(std::move(seed), shared_beta);
  }

  static LazyTree embed(FinTree<A> t) {
    auto node = std::make_shared<FinTree<A>>(std::move(t));
    return LazyTree([node]() -> Step {
      std::vector<LazyTree> kids;
      kids.reserve(node->children.size());
      for (const auto& c : node->children) kids.push_back(embed(c));
      return {node->label, std::move(kids)};
    });
  }

  // One unfolding step: the label and the suspended children.
  Step destruct() const { return step_(); }

  // Same tree with every destruct() computed at most once.
  LazyTree memoized() const {
    struct Cell {
      std::once_flag once;
      std::optional<Step> value;
    };
    auto cell = std::make_shared<Cell>();
    LazyTree inner = *this;
    return LazyTree([cell, inner]() -> Step {
      std::call_once(cell->once, [&] {
        Step s = inner.destruct();
        for (auto& k : s.second) k = k.memoized();
        cell->value = std::move(s);
      });
      return *cell->value;
    });
  }

  LazyTree subtree(const Path& p) const {
    LazyTree t = *this;
    for (std::size_t i : p.steps) {
      Step s = t.destruct();
      if (i >= s.second.size()) throw PathNotInTree("no node at " + p.to_text());
      t = s.second[i];
    }
    return t;
  }

  bool has_node(const Path& p) const {
    LazyTree t = *this;
    for (std::size_t i : p.steps) {
      Step s = t.destruct();
      if (i >= s.second.size()) return false;
      t = s.second[i];
    }
    return true;
  }

 private:
  template <class B, class Beta>
  static LazyTree corecurse_shared(B seed, std::shared_ptr<Beta> beta) {
    return LazyTree([seed = std::move(seed), beta]() -> Step {
      auto [label, seeds] = (*beta)(seed);
      std::vector<LazyTree> kids;
      kids.reserve(seeds.size());
      for (auto& s : seeds) kids.push_back(corecurse_shared(std::move(s), beta));
      return {std::move(label), std::move(kids)};
    });
  }

  explicit LazyTree(std::function<Step()> step) : step_(std::move(step)) {}

  std::function<Step()> step_;
};

// First d levels of t. A node at depth d whose lazy children are nonempty is
// marked clipped and its children are dropped; everything else is copied.
template <class A>
FinTree<Clipped<A>> unfold_to_depth(const LazyTree<A>& t, std::size_t depth) {
  auto [label, kids] = t.destruct();
  FinTree<Clipped<A>> out;
  if (depth == 0) {
    out.label = Clipped<A>{std::move(label), !kids.empty()};
    return out;
  }
  out.label = Clipped<A>{std::move(label), false};
  out.children.reserve(kids.size());
  for (const auto& k : kids) out.children.push_back(unfold_to_depth(k, depth - 1));
  return out;
}

}  // namespace igl
