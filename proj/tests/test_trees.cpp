#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <string>
#include <utility>
#include <vector>

#include "igl/igl.hpp"
#include "test_util.hpp"

using namespace igl;

namespace {

using ITree = FinTree<int>;

ITree itree(int label, std::vector<ITree> kids = {}) {
  return ITree(label, std::move(kids));
}

// 1
// |- 2
// |  |- 4
// |  `- 5
// `- 3
ITree sample() {
  return itree(1, {itree(2, {itree(4), itree(5)}), itree(3)});
}

template <class A>
FinTree<A> strip(const FinTree<Clipped<A>>& t) {
  FinTree<A> out(t.label.value);
  for (const auto& c : t.children) out.children.push_back(strip(c));
  return out;
}

template <class A>
bool any_clipped(const FinTree<Clipped<A>>& t) {
  bool found = false;
  t.walk([&](const Path&, const FinTree<Clipped<A>>& n) {
    if (n.label.clipped) found = true;
  });
  return found;
}

}  // namespace

TEST_CASE("path text, prefixes, parents") {
  Path root;
  Path p{0, 2, 1};
  CHECK(root.to_text() == "[]");
  CHECK(p.to_text() == "[0.2.1]");
  CHECK(Path::parse("[]") == root);
  CHECK(Path::parse("[0.2.1]") == p);
  CHECK(Path::parse("[7]") == Path{7});

  CHECK(root.is_prefix_of(p));
  CHECK(root.is_proper_prefix_of(p));
  CHECK(p.is_prefix_of(p));
  CHECK_FALSE(p.is_proper_prefix_of(p));
  CHECK_FALSE((Path{0, 1}).is_prefix_of(Path{0, 2, 1}));
  CHECK((Path{0, 2}).is_proper_prefix_of(p));

  CHECK(root.child(3) == Path{3});
  CHECK(p.parent() == Path{0, 2});
  CHECK_THROWS_AS(root.parent(), PathNotInTree);

  CHECK_THROWS_AS(Path::parse("0.1"), ParseError);
  CHECK_THROWS_AS(Path::parse("[0..1]"), ParseError);
  CHECK_THROWS_AS(Path::parse("[a]"), ParseError);
  CHECK_THROWS_AS(Path::parse(""), ParseError);
}

TEST_CASE("finite tree shape queries") {
  ITree t = sample();
  CHECK(t.height() == 2);
  CHECK(t.node_count() == 5);
  CHECK_FALSE(t.leaf());
  CHECK(itree(9).leaf());
  CHECK(itree(9).height() == 0);

  CHECK(t.subtree(Path{}).label == 1);
  CHECK(t.subtree(Path{0, 1}).label == 5);
  CHECK(t.subtree(Path{1}).leaf());
  CHECK_THROWS_AS(t.subtree(Path{2}), PathNotInTree);
  CHECK_THROWS_AS(t.subtree(Path{0, 1, 0}), PathNotInTree);

  CHECK(t.has_node(Path{0, 0}));
  CHECK_FALSE(t.has_node(Path{0, 2}));

  // walk is preorder, children left to right
  std::vector<std::pair<std::string, int>> seen;
  t.walk([&](const Path& p, const ITree& n) {
    seen.emplace_back(p.to_text(), n.label);
  });
  std::vector<std::pair<std::string, int>> expected{
      {"[]", 1}, {"[0]", 2}, {"[0.0]", 4}, {"[0.1]", 5}, {"[1]", 3}};
  CHECK(seen == expected);
}

TEST_CASE("finite tree equality is structural") {
  CHECK(sample() == sample());
  CHECK_FALSE(sample() == itree(1, {itree(2), itree(3)}));
  ITree other = sample();
  other.children[0].children[1].label = 6;
  CHECK(sample() != other);
}

TEST_CASE("replace_subtree grafts a copy at the addressed node") {
  ITree t = sample();
  ITree grafted = replace_subtree(t, Path{0, 1}, itree(7, {itree(8)}));
  CHECK(grafted.subtree(Path{0, 1}).label == 7);
  CHECK(grafted.subtree(Path{0, 1, 0}).label == 8);
  CHECK(grafted.node_count() == 6);
  // untouched parts survive, original unchanged
  CHECK(grafted.subtree(Path{1}).label == 3);
  CHECK(grafted.subtree(Path{0, 0}).label == 4);
  CHECK(t == sample());

  CHECK(replace_subtree(t, Path{}, itree(0)) == itree(0));
  CHECK_THROWS_AS(replace_subtree(t, Path{5}, itree(0)), PathNotInTree);
  CHECK_THROWS_AS(replace_subtree(t, Path{1, 0}, itree(0)), PathNotInTree);
}

TEST_CASE("embed then unfold is the identity beyond the tree height") {
  ITree t = sample();
  auto lazy = LazyTree<int>::embed(t);
  for (std::size_t d : {2u, 3u, 10u}) {
    auto u = unfold_to_depth(lazy, d);
    CHECK(strip(u) == t);
    CHECK_FALSE(any_clipped(u));
  }
}

TEST_CASE("unfold_to_depth clips interior nodes, not leaves") {
  ITree t = sample();
  auto u = unfold_to_depth(LazyTree<int>::embed(t), 1);
  REQUIRE(u.children.size() == 2);
  // node 2 at the boundary has hidden children, node 3 is a genuine leaf
  CHECK(u.children[0].label.value == 2);
  CHECK(u.children[0].label.clipped);
  CHECK(u.children[0].leaf());
  CHECK(u.children[1].label.value == 3);
  CHECK_FALSE(u.children[1].label.clipped);

  auto u0 = unfold_to_depth(LazyTree<int>::embed(t), 0);
  CHECK(u0.label.clipped);
  CHECK(u0.leaf());
  auto leaf0 = unfold_to_depth(LazyTree<int>::embed(itree(9)), 0);
  CHECK_FALSE(leaf0.label.clipped);
}

TEST_CASE("corecursion unfolds seeds breadth by breadth") {
  // seed n has label n and children n+1, n+2, cut off above 3
  auto beta = [](int n) -> std::pair<int, std::vector<int>> {
    if (n > 3) return {n, {}};
    return {n, {n + 1, n + 2}};
  };
  auto t = LazyTree<int>::corecurse(1, beta);
  auto u = unfold_to_depth(t, 10);
  CHECK_FALSE(any_clipped(u));
  ITree expected =
      itree(1, {itree(2, {itree(3, {itree(4), itree(5)}), itree(4)}),
                itree(3, {itree(4), itree(5)})});
  CHECK(strip(u) == expected);
}

TEST_CASE("infinite unfoldings are clipped at the requested depth") {
  auto t = LazyTree<int>::corecurse(
      0, [](int n) -> std::pair<int, std::vector<int>> { return {n, {n + 1}}; });
  auto u = unfold_to_depth(t, 4);
  CHECK(u.node_count() == 5);
  CHECK(u.subtree(Path{0, 0, 0, 0}).label.value == 4);
  CHECK(u.subtree(Path{0, 0, 0, 0}).label.clipped);
  CHECK_FALSE(u.label.clipped);

  CHECK(t.has_node(Path{0, 0, 0, 0, 0, 0}));
  CHECK_FALSE(t.has_node(Path{1}));
  CHECK(t.subtree(Path{0, 0, 0}).destruct().first == 3);
  CHECK_THROWS_AS(t.subtree(Path{0, 1}), PathNotInTree);
}

TEST_CASE("bisimilar seeds unfold to equal trees") {
  // Two different seed representations of the same process: a countdown by
  // ones versus a pair counting down by halves of an even number.
  auto a = LazyTree<int>::corecurse(
      4, [](int n) -> std::pair<int, std::vector<int>> {
        if (n == 0) return {0, {}};
        return {n, {n - 1}};
      });
  auto b = LazyTree<int>::corecurse(
      std::pair<int, int>{8, 0},
      [](std::pair<int, int> s) -> std::pair<int, std::vector<std::pair<int, int>>> {
        int n = s.first / 2;
        if (n == 0) return {0, {}};
        return {n, {{(n - 1) * 2, 0}}};
      });
  for (std::size_t d = 0; d <= 6; ++d) {
    auto ua = unfold_to_depth(a, d);
    auto ub = unfold_to_depth(b, d);
    CHECK(strip(ua) == strip(ub));
  }
}

TEST_CASE("memoized computes each node's step once") {
  auto calls = std::make_shared<std::atomic<int>>(0);
  auto t = LazyTree<int>::corecurse(
      0,
      [calls](int n) -> std::pair<int, std::vector<int>> {
        ++*calls;
        if (n >= 5) return {n, {}};
        return {n, {n + 1}};
      });

  // Without memoization, repeated unfolds redo the work.
  (void)unfold_to_depth(t, 5);
  int first = calls->load();
  (void)unfold_to_depth(t, 5);
  CHECK(calls->load() == 2 * first);

  auto m = t.memoized();
  calls->store(0);
  (void)unfold_to_depth(m, 5);
  CHECK(calls->load() == 6);
  (void)unfold_to_depth(m, 5);
  (void)m.subtree(Path{0, 0}).destruct();
  CHECK(calls->load() == 6);
}

TEST_CASE("lazy proof trees carry proof labels") {
  // The alias used across the toolkit behaves like any other lazy tree.
  FiniteProof leaf = tutil::node(RuleName::Prop, "p => p");
  auto lazy = LazyProof::embed(leaf);
  auto [label, kids] = lazy.destruct();
  CHECK(label.rule == RuleName::Prop);
  CHECK(label.sequent == "p => p"_s);
  CHECK(kids.empty());
}
