#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "igl/cyclic.hpp"

namespace igl {

enum class DocKind : unsigned char { Finite, Cyclic };

inline const char* to_text(DocKind k) {
  return k == DocKind::Finite ? "finite" : "cyclic";
}

// Serialized proof: a small header followed by one node per line, nested by
// two-space indentation. Leaves read `assump: S` or `backlink [path]: S`;
// interior nodes read `Rule: S`. Full-line # comments are skipped. Printing
// then parsing is the identity on documents this library emits.
struct ProofDocument {
  System system = System::iGLSeq;
  DocKind kind = DocKind::Finite;
  std::optional<std::string> expect;  // "accept" or "reject", corpus hint
  std::vector<Sequent> assumptions;
  FiniteProof tree;
  BacklinkMap backlinks;
};

namespace detail {

struct DocLine {
  std::size_t depth = 0;
  ProofLabel label;
  std::optional<Path> backlink;
  std::size_t offset = 0;  // byte offset of the line, for errors
};

inline FiniteProof build_doc_tree(const std::vector<DocLine>& items,
                                  std::size_t& cursor, std::size_t depth,
                                  Path& at, BacklinkMap& backlinks) {
  const DocLine& line = items[cursor];
  if (line.depth != depth)
    throw ParseError("node is indented " + std::to_string(line.depth) +
                         " levels where " + std::to_string(depth) +
                         " was expected",
                     line.offset);
  ++cursor;
  if (line.backlink) backlinks.emplace(at, *line.backlink);
  FiniteProof node{line.label, {}};
  std::size_t i = 0;
  while (cursor < items.size() && items[cursor].depth > depth) {
    at.steps.push_back(i++);
    node.children.push_back(
        build_doc_tree(items, cursor, depth + 1, at, backlinks));
    at.steps.pop_back();
  }
  return node;
}

}  // namespace detail

inline ProofDocument parse_proof_document(std::string_view text) {
  ProofDocument doc;
  bool saw_system = false, saw_kind = false, saw_proof = false;
  std::vector<detail::DocLine> items;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    std::size_t offset = pos;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t indent = 0;
    while (indent < line.size() && line[indent] == ' ') ++indent;
    std::string_view body = line.substr(indent);
    if (body.empty() || body[0] == '#') continue;

    if (!saw_proof) {
      if (indent != 0)
        throw ParseError("header lines must not be indented", offset);
      if (body == "proof:") {
        saw_proof = true;
        continue;
      }
      std::size_t colon = body.find(':');
      if (colon == std::string_view::npos)
        throw ParseError("expected `key: value` in the header", offset);
      std::string_view key = body.substr(0, colon);
      std::string_view value = body.substr(colon + 1);
      while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
      if (key == "system") {
        auto s = parse_system(value);
        if (!s || saw_system)
          throw ParseError("bad or repeated system header", offset);
        doc.system = *s;
        saw_system = true;
      } else if (key == "kind") {
        if (saw_kind) throw ParseError("repeated kind header", offset);
        if (value == "finite")
          doc.kind = DocKind::Finite;
        else if (value == "cyclic")
          doc.kind = DocKind::Cyclic;
        else
          throw ParseError("kind must be finite or cyclic", offset);
        saw_kind = true;
      } else if (key == "expect") {
        if (doc.expect || (value != "accept" && value != "reject"))
          throw ParseError("expect must be accept or reject, once", offset);
        doc.expect = std::string(value);
      } else if (key == "assume") {
        doc.assumptions.push_back(parse_sequent(value));
      } else {
        throw ParseError("unknown header key `" + std::string(key) + "`",
                         offset);
      }
      continue;
    }

    if (indent % 2 != 0)
      throw ParseError("indentation must be two spaces per level", offset);
    detail::DocLine item;
    item.depth = indent / 2;
    item.offset = offset;
    std::size_t colon = body.find(':');
    if (colon == std::string_view::npos)
      throw ParseError("expected `rule: sequent`", offset);
    std::string_view head = body.substr(0, colon);
    std::string_view seq = body.substr(colon + 1);
    if (head.rfind("backlink ", 0) == 0) {
      item.backlink = Path::parse(head.substr(9));
      item.label.rule = RuleName::Assump;
    } else {
      auto r = parse_rule_name(head);
      if (!r)
        throw ParseError("unknown rule `" + std::string(head) + "`", offset);
      item.label.rule = *r;
    }
    item.label.sequent = parse_sequent(seq);
    items.push_back(std::move(item));
  }

  if (!saw_proof) throw ParseError("missing `proof:` section");
  if (items.empty()) throw ParseError("empty proof body");
  std::size_t cursor = 0;
  Path at;
  doc.tree =
      detail::build_doc_tree(items, cursor, 0, at, doc.backlinks);
  if (cursor != items.size())
    throw ParseError("more than one root node", items[cursor].offset);
  if (doc.kind == DocKind::Finite && !doc.backlinks.empty())
    throw ParseError("backlink leaves require kind: cyclic",
                     items.front().offset);
  for (const auto& [src, dst] : doc.backlinks)
    if (!doc.tree.has_node(dst))
      throw ParseError("backlink target " + dst.to_text() +
                       " is not a node of the tree");
  return doc;
}

inline std::string to_text(const ProofDocument& doc) {
  std::string out;
  out += "system: ";
  out += to_text(doc.system);
  out += "\nkind: ";
  out += to_text(doc.kind);
  out += "\n";
  if (doc.expect) out += "expect: " + *doc.expect + "\n";
  for (const Sequent& a : doc.assumptions) out += "assume: " + to_text(a) + "\n";
  out += "proof:\n";
  Path at;
  std::function<void(const FiniteProof&, std::size_t)> emit =
      [&](const FiniteProof& node, std::size_t depth) {
        out.append(depth * 2, ' ');
        auto bl = doc.backlinks.find(at);
        if (bl != doc.backlinks.end())
          out += "backlink " + bl->second.to_text();
        else
          out += to_text(node.label.rule);
        out += ": ";
        out += to_text(node.label.sequent);
        out += "\n";
        for (std::size_t i = 0; i < node.children.size(); ++i) {
          at.steps.push_back(i);
          emit(node.children[i], depth + 1);
          at.steps.pop_back();
        }
      };
  emit(doc.tree, 0);
  return out;
}

inline ProofDocument from_finite(const FiniteProof& p, System system) {
  ProofDocument doc;
  doc.system = system;
  doc.kind = DocKind::Finite;
  doc.tree = p;
  return doc;
}

inline ProofDocument from_cyclic(const CyclicDerivation& d,
                                 System system = System::iK4Seq) {
  ProofDocument doc;
  doc.system = system;
  doc.kind = DocKind::Cyclic;
  doc.tree = d.proof;
  doc.backlinks = d.backlinks;
  doc.assumptions.assign(d.open_assumptions.begin(),
                         d.open_assumptions.end());
  return doc;
}

inline CyclicDerivation to_cyclic(const ProofDocument& doc) {
  CyclicDerivation d;
  d.proof = doc.tree;
  d.backlinks = doc.backlinks;
  d.open_assumptions.insert(doc.assumptions.begin(), doc.assumptions.end());
  return d;
}

inline nlohmann::json to_json(const FiniteProof& p) {
  nlohmann::json node;
  node["rule"] = to_text(p.label.rule);
  node["sequent"] = to_text(p.label.sequent);
  nlohmann::json kids = nlohmann::json::array();
  for (const auto& c : p.children) kids.push_back(to_json(c));
  node["children"] = std::move(kids);
  return node;
}

inline nlohmann::json to_json(const ProofDocument& doc) {
  nlohmann::json j;
  j["system"] = to_text(doc.system);
  j["kind"] = to_text(doc.kind);
  if (doc.expect) j["expect"] = *doc.expect;
  nlohmann::json assumptions = nlohmann::json::array();
  for (const Sequent& a : doc.assumptions) assumptions.push_back(to_text(a));
  j["assumptions"] = std::move(assumptions);
  j["proof"] = to_json(doc.tree);
  nlohmann::json backlinks = nlohmann::json::object();
  for (const auto& [src, dst] : doc.backlinks)
    backlinks[src.to_text()] = dst.to_text();
  j["backlinks"] = std::move(backlinks);
  return j;
}

inline nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries) {
    nlohmann::json entry;
    entry["path"] = e.path.to_text();
    entry["code"] = e.code;
    entry["message"] = e.message;
    entries.push_back(std::move(entry));
  }
  nlohmann::json j;
  j["ok"] = r.ok();
  j["entries"] = std::move(entries);
  return j;
}

}  // namespace igl
