#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <vector>

#include "igl/formula.hpp"

namespace igl {

// Finite multiset of formulas. Entries are kept in the canonical formula
// order with strictly positive counts, so iteration order is deterministic.
class FMultiset {
 public:
  using Map = std::map<Formula, std::size_t>;

  FMultiset() = default;
  FMultiset(std::initializer_list<Formula> fs) {
    for (const Formula& f : fs) add(f);
  }
  static FMultiset from(const std::vector<Formula>& fs) {
    FMultiset m;
    for (const Formula& f : fs) m.add(f);
    return m;
  }

  bool empty() const { return m_.empty(); }
  // Number of elements counting multiplicity.
  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& [f, c] : m_) n += c;
    return n;
  }
  std::size_t distinct() const { return m_.size(); }
  std::size_t count(const Formula& f) const {
    auto it = m_.find(f);
    return it == m_.end() ? 0 : it->second;
  }
  bool contains(const Formula& f) const { return m_.count(f) != 0; }

  void add(const Formula& f, std::size_t n = 1) {
    if (n) m_[f] += n;
  }

  FMultiset plus(const Formula& f, std::size_t n = 1) const {
    FMultiset r = *this;
    r.add(f, n);
    return r;
  }
  FMultiset plus(const FMultiset& o) const {
    FMultiset r = *this;
    for (const auto& [f, c] : o.m_) r.add(f, c);
    return r;
  }
  // Truncated removal: drops at most the available occurrences.
  FMultiset minus(const Formula& f, std::size_t n = 1) const {
    FMultiset r = *this;
    auto it = r.m_.find(f);
    if (it != r.m_.end()) {
      if (it->second > n)
        it->second -= n;
      else
        r.m_.erase(it);
    }
    return r;
  }
  FMultiset minus(const FMultiset& o) const {
    FMultiset r = *this;
    for (const auto& [f, c] : o.m_) r = r.minus(f, c);
    return r;
  }

  bool subset_of(const FMultiset& o) const {
    for (const auto& [f, c] : m_)
      if (o.count(f) < c) return false;
    return true;
  }

  // Underlying set: every multiplicity lowered to one.
  FMultiset set_part() const {
    FMultiset r;
    for (const auto& [f, c] : m_) r.m_.emplace(f, 1);
    return r;
  }
  bool is_set() const {
    for (const auto& [f, c] : m_)
      if (c != 1) return false;
    return true;
  }

  const Map& entries() const { return m_; }

  // Canonical-order list with repeats.
  std::vector<Formula> to_list() const {
    std::vector<Formula> out;
    for (const auto& [f, c] : m_)
      for (std::size_t i = 0; i < c; ++i) out.push_back(f);
    return out;
  }

  int compare(const FMultiset& o) const {
    auto a = m_.begin();
    auto b = o.m_.begin();
    for (; a != m_.end() && b != o.m_.end(); ++a, ++b) {
      int c = a->first.compare(b->first);
      if (c != 0) return c;
      if (a->second != b->second) return a->second < b->second ? -1 : 1;
    }
    if (a != m_.end()) return 1;
    if (b != o.m_.end()) return -1;
    return 0;
  }
  bool operator==(const FMultiset& o) const { return compare(o) == 0; }
  bool operator!=(const FMultiset& o) const { return compare(o) != 0; }
  bool operator<(const FMultiset& o) const { return compare(o) < 0; }

 private:
  Map m_;
};

// []G: the multiset of boxed versions, multiplicities preserved.
inline FMultiset boxed(const FMultiset& g) {
  FMultiset r;
  for (const auto& [f, c] : g.entries()) r.add(Formula::box(f), c);
  return r;
}

// G, []G: each occurrence paired with its boxed version.
inline FMultiset dnec(const FMultiset& g) { return g.plus(boxed(g)); }

}  // namespace igl
