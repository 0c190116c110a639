#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "igl/sequent.hpp"
#include "igl/text.hpp"

namespace igl {

// Birelational frame over worlds 0..size-1. Rows are successor bitmasks:
// le[w] bit v set iff w <= v, prec[w] bit v set iff w -< v. The intuitionistic
// order le must be a partial order and le;prec must be contained in prec;
// is_frame checks both.
struct KripkeFrame {
  std::size_t size = 0;
  std::vector<std::uint32_t> le;
  std::vector<std::uint32_t> prec;

  std::uint32_t all() const {
    return size == 32 ? ~std::uint32_t{0}
                      : ((std::uint32_t{1} << size) - 1);
  }
};

inline bool is_partial_order(const std::vector<std::uint32_t>& r,
                             std::size_t n) {
  for (std::size_t w = 0; w < n; ++w) {
    if (!(r[w] >> w & 1)) return false;  // reflexive
    for (std::size_t v = 0; v < n; ++v) {
      if (!(r[w] >> v & 1)) continue;
      if ((r[v] & ~r[w]) != 0) return false;           // transitive
      if (v != w && (r[v] >> w & 1)) return false;     // antisymmetric
    }
  }
  return true;
}

// le a partial order and le;prec contained in prec.
inline bool is_frame(const KripkeFrame& f) {
  if (f.le.size() != f.size || f.prec.size() != f.size || f.size > 31)
    return false;
  std::uint32_t all = f.all();
  for (std::size_t w = 0; w < f.size; ++w)
    if ((f.le[w] & ~all) || (f.prec[w] & ~all)) return false;
  if (!is_partial_order(f.le, f.size)) return false;
  for (std::size_t w = 0; w < f.size; ++w)
    for (std::size_t v = 0; v < f.size; ++v)
      if (f.le[w] >> v & 1)
        if ((f.prec[v] & ~f.prec[w]) != 0) return false;
  return true;
}

struct FrameProperties {
  bool transitive = false;    // prec;prec contained in prec
  bool brilliant = false;     // prec;le contained in prec
  bool converse_wf = false;   // prec acyclic (finite frames), so irreflexive
};

inline FrameProperties check_frame_properties(const KripkeFrame& f) {
  FrameProperties out;
  out.transitive = true;
  out.brilliant = true;
  for (std::size_t w = 0; w < f.size; ++w) {
    for (std::size_t v = 0; v < f.size; ++v) {
      if (!(f.prec[w] >> v & 1)) continue;
      if ((f.prec[v] & ~f.prec[w]) != 0) out.transitive = false;
      if ((f.le[v] & ~f.prec[w]) != 0) out.brilliant = false;
    }
  }
  // Cycle check by repeated elimination of sink worlds (no prec-successors
  // among the remaining set).
  std::uint32_t remaining = f.all();
  bool changed = true;
  while (remaining && changed) {
    changed = false;
    for (std::size_t w = 0; w < f.size; ++w) {
      if (!(remaining >> w & 1)) continue;
      if ((f.prec[w] & remaining) == 0) {
        remaining &= ~(std::uint32_t{1} << w);
        changed = true;
      }
    }
  }
  out.converse_wf = remaining == 0;
  return out;
}

struct KripkeModel {
  KripkeFrame frame;
  std::map<std::string, std::uint32_t> valuation;  // variable -> worlds mask

  std::uint32_t value(const std::string& v) const {
    auto it = valuation.find(v);
    return it == valuation.end() ? 0 : it->second;
  }
};

// Every valuation set is closed upward along le.
inline bool monotone(const KripkeModel& m) {
  for (const auto& [v, mask] : m.valuation) {
    if (mask & ~m.frame.all()) return false;
    for (std::size_t w = 0; w < m.frame.size; ++w)
      if (mask >> w & 1)
        if ((m.frame.le[w] & ~mask) != 0) return false;
  }
  return true;
}

// Worlds satisfying f, as a bitmask. Implication quantifies over le
// successors, box over prec successors.
inline std::uint32_t sat_mask(const KripkeModel& m, const Formula& f) {
  std::map<Formula, std::uint32_t> memo;
  std::uint32_t all = m.frame.all();
  auto go = [&](auto&& self, const Formula& g) -> std::uint32_t {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    std::uint32_t mask = 0;
    switch (g.kind()) {
      case Kind::Bot:
        mask = 0;
        break;
      case Kind::Var:
        mask = m.value(g.var_name()) & all;
        break;
      case Kind::And:
        mask = self(self, g.lhs()) & self(self, g.rhs());
        break;
      case Kind::Or:
        mask = self(self, g.lhs()) | self(self, g.rhs());
        break;
      case Kind::Imp: {
        std::uint32_t bad = self(self, g.lhs()) & ~self(self, g.rhs());
        for (std::size_t w = 0; w < m.frame.size; ++w)
          if ((m.frame.le[w] & bad) == 0) mask |= std::uint32_t{1} << w;
        break;
      }
      case Kind::Box: {
        std::uint32_t body = self(self, g.body());
        for (std::size_t w = 0; w < m.frame.size; ++w)
          if ((m.frame.prec[w] & ~body) == 0) mask |= std::uint32_t{1} << w;
        break;
      }
    }
    memo.emplace(g, mask);
    return mask;
  };
  return go(go, f);
}

inline bool satisfies(const KripkeModel& m, std::size_t w, const Formula& f) {
  if (w >= m.frame.size)
    throw UnknownWorld("world " + std::to_string(w) + " of a " +
                       std::to_string(m.frame.size) + "-world model");
  return sat_mask(m, f) >> w & 1;
}

namespace detail {

// All iGL frames of exactly this size, one representative per isomorphism
// class: le any partial order, prec transitive, irreflexive and acyclic,
// brilliant, with le;prec contained in prec.
inline std::vector<KripkeFrame> enumerate_frames(std::size_t n) {
  std::vector<KripkeFrame> out;
  if (n == 0 || n > 5) return out;

  // Transitive relations where each off-diagonal unordered pair carries one
  // of: no edge, i->j, j->i. With the diagonal forced full this enumerates
  // partial orders; forced empty, strict orders (2-cycles would break
  // transitivity + irreflexivity).
  auto enumerate_orders = [n](bool reflexive) {
    std::vector<std::vector<std::uint32_t>> found;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
    std::vector<unsigned> choice(pairs.size(), 0);
    while (true) {
      std::vector<std::uint32_t> r(n, 0);
      if (reflexive)
        for (std::size_t i = 0; i < n; ++i) r[i] = std::uint32_t{1} << i;
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (choice[k] == 1) r[pairs[k].first] |= std::uint32_t{1} << pairs[k].second;
        if (choice[k] == 2) r[pairs[k].second] |= std::uint32_t{1} << pairs[k].first;
      }
      bool transitive = true;
      for (std::size_t w = 0; w < n && transitive; ++w)
        for (std::size_t v = 0; v < n; ++v)
          if (r[w] >> v & 1)
            if ((r[v] & ~r[w]) != 0) {
              transitive = false;
              break;
            }
      if (transitive) found.push_back(std::move(r));
      std::size_t k = 0;
      while (k < choice.size() && choice[k] == 2) choice[k++] = 0;
      if (k == choice.size()) break;
      ++choice[k];
    }
    return found;
  };

  std::vector<std::vector<std::uint32_t>> les = enumerate_orders(true);
  std::vector<std::vector<std::uint32_t>> precs = enumerate_orders(false);

  // Exact isomorphism dedup: keep a frame iff its encoding is minimal among
  // all permutations of its worlds.
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<std::size_t> perm(n);
  auto encode = [&](const KripkeFrame& f,
                    const std::vector<std::size_t>& p) {
    std::vector<std::uint64_t> e(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t lerow = 0, precrow = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (f.le[i] >> j & 1) lerow |= std::uint64_t{1} << p[j];
        if (f.prec[i] >> j & 1) precrow |= std::uint64_t{1} << p[j];
      }
      e[p[i]] = (lerow << 32) | precrow;
    }
    return e;
  };

  for (const auto& le : les) {
    for (const auto& prec : precs) {
      bool ok = true;
      for (std::size_t w = 0; w < n && ok; ++w) {
        for (std::size_t v = 0; v < n; ++v) {
          if (prec[w] >> v & 1) {
            if ((le[v] & ~prec[w]) != 0) {  // brilliant
              ok = false;
              break;
            }
          }
          if (le[w] >> v & 1) {
            if ((prec[v] & ~prec[w]) != 0) {  // le;prec
              ok = false;
              break;
            }
          }
        }
      }
      if (!ok) continue;
      KripkeFrame f{n, le, prec};
      // prec transitivity holds by construction; acyclicity: a transitive
      // irreflexive relation on a finite set has no cycles.
      // Keep only the permutation-minimal labeling of each iso class.
      std::iota(perm.begin(), perm.end(), 0);
      std::vector<std::uint64_t> self = encode(f, perm);
      bool canonical = true;
      while (std::next_permutation(perm.begin(), perm.end())) {
        if (encode(f, perm) < self) {
          canonical = false;
          break;
        }
      }
      if (canonical && seen.insert(self).second) out.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace detail

// Cached per size; enumeration cost is paid once per process.
inline const std::vector<KripkeFrame>& frames_of_size(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::vector<KripkeFrame>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, detail::enumerate_frames(n)).first;
  return it->second;
}

// All le-up-closed world sets of the frame, ascending as masks.
inline std::vector<std::uint32_t> up_closed_sets(const KripkeFrame& f) {
  std::vector<std::uint32_t> out;
  std::uint32_t all = f.all();
  for (std::uint32_t s = 0; s <= all; ++s) {
    bool ok = true;
    for (std::size_t w = 0; w < f.size && ok; ++w)
      if (s >> w & 1)
        if ((f.le[w] & ~s) != 0) ok = false;
    if (ok) out.push_back(s);
    if (s == all) break;
  }
  return out;
}

struct Countermodel {
  KripkeModel model;
  std::size_t world = 0;
};

struct ValidityVerdict {
  std::optional<Countermodel> counter;

  bool valid() const { return !counter.has_value(); }
  explicit operator bool() const { return valid(); }
};

// Exhaustive search for a countermodel over all frames of size 1..max_size
// and all monotone valuations of the formula's variables. Deterministic:
// frames in enumeration order, valuations in mask order, worlds ascending.
inline ValidityVerdict valid_up_to(const Formula& f, std::size_t max_size = 5,
                                   std::size_t size_cap = 5) {
  if (max_size < 1 || max_size > size_cap)
    throw ResourceLimit("frame size bound " + std::to_string(max_size) +
                        " outside 1.." + std::to_string(size_cap));
  std::vector<std::string> vars;
  {
    std::set<std::string> vs;
    for (const Formula& g : subformulas(f))
      if (g.is(Kind::Var)) vs.insert(g.var_name());
    vars.assign(vs.begin(), vs.end());
  }
  for (std::size_t n = 1; n <= max_size; ++n) {
    for (const KripkeFrame& frame : frames_of_size(n)) {
      std::vector<std::uint32_t> ups = up_closed_sets(frame);
      std::vector<std::size_t> pick(vars.size(), 0);
      while (true) {
        KripkeModel m;
        m.frame = frame;
        for (std::size_t i = 0; i < vars.size(); ++i)
          m.valuation[vars[i]] = ups[pick[i]];
        std::uint32_t sat = sat_mask(m, f);
        if (sat != frame.all()) {
          std::size_t w = 0;
          while (sat >> w & 1) ++w;
          return {Countermodel{std::move(m), w}};
        }
        std::size_t i = 0;
        while (i < pick.size() && pick[i] + 1 == ups.size()) pick[i++] = 0;
        if (i == pick.size()) break;
        ++pick[i];
      }
    }
  }
  return {};
}

// Instantiation pool entry for the rule-soundness validity obligations.
struct LemmaInstantiation {
  Formula phi;
  Formula psi;
  Formula chi;
  FMultiset gamma;
  FMultiset pi;
};

// Nine formulas, each expected valid: for every rule of the calculus, the
// implication from the interpretation of its premises to the interpretation
// of its conclusion, plus box distribution over its own iteration.
inline std::vector<Formula> lemma_table_obligations(
    const LemmaInstantiation& in) {
  auto seq = [](FMultiset l, Formula r) {
    return interpret(Sequent{std::move(l), std::move(r)});
  };
  const Formula& ph = in.phi;
  const Formula& ps = in.psi;
  const Formula& ch = in.chi;
  const FMultiset& g = in.gamma;
  std::vector<Formula> out;

  // AndL: (G, phi, psi => chi) -> (G, phi^psi => chi)
  out.push_back(Formula::imp(seq(g.plus(ph).plus(ps), ch),
                             seq(g.plus(Formula::conj(ph, ps)), ch)));
  // AndR: (G => phi) ^ (G => psi) -> (G => phi^psi)
  out.push_back(Formula::imp(Formula::conj(seq(g, ph), seq(g, ps)),
                             seq(g, Formula::conj(ph, ps))));
  // OrL: (G, phi => chi) ^ (G, psi => chi) -> (G, phi v psi => chi)
  out.push_back(Formula::imp(
      Formula::conj(seq(g.plus(ph), ch), seq(g.plus(ps), ch)),
      seq(g.plus(Formula::disj(ph, ps)), ch)));
  // OrR0 / OrR1
  out.push_back(Formula::imp(seq(g, ph), seq(g, Formula::disj(ph, ps))));
  out.push_back(Formula::imp(seq(g, ps), seq(g, Formula::disj(ph, ps))));
  // ImpL: (G, phi->psi => phi) ^ (G, psi => chi) -> (G, phi->psi => chi)
  Formula impf = Formula::imp(ph, ps);
  out.push_back(Formula::imp(
      Formula::conj(seq(g.plus(impf), ph), seq(g.plus(ps), ch)),
      seq(g.plus(impf), ch)));
  // ImpR: (G, phi => psi) -> (G => phi->psi)
  out.push_back(Formula::imp(seq(g.plus(ph), ps), seq(g, impf)));
  // RK4: box((dnec G => phi)) -> (Pi, box G => box phi)
  out.push_back(Formula::imp(
      Formula::box(seq(dnec(g), ph)),
      seq(in.pi.plus(boxed(g)), Formula::box(ph))));
  // box chi -> box box chi
  out.push_back(
      Formula::imp(Formula::box(ch), Formula::box(Formula::box(ch))));
  return out;
}

inline std::string to_text(const KripkeModel& m) {
  std::string out = "worlds: " + std::to_string(m.frame.size) + "\n";
  out += "le:";
  for (std::size_t w = 0; w < m.frame.size; ++w)
    for (std::size_t v = 0; v < m.frame.size; ++v)
      if (v != w && (m.frame.le[w] >> v & 1))
        out += " " + std::to_string(w) + "<=" + std::to_string(v);
  out += "\nprec:";
  for (std::size_t w = 0; w < m.frame.size; ++w)
    for (std::size_t v = 0; v < m.frame.size; ++v)
      if (m.frame.prec[w] >> v & 1)
        out += " " + std::to_string(w) + "-<" + std::to_string(v);
  out += "\n";
  for (const auto& [var, mask] : m.valuation) {
    out += var + ": {";
    bool first = true;
    for (std::size_t w = 0; w < m.frame.size; ++w)
      if (mask >> w & 1) {
        if (!first) out += ",";
        out += std::to_string(w);
        first = false;
      }
    out += "}\n";
  }
  return out;
}

}  // namespace igl
