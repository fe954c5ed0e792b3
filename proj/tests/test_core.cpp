#include <doctest.h>

#include <set>

#include "past/builder.hpp"
#include "past/core.hpp"

using namespace past;

namespace {

std::set<std::string> leaf_labels(const SuffixTree& tree, const Sequence& seq) {
  std::set<std::string> out;
  for (NodeId id = 0; id < tree.size(); ++id) {
    if (tree.node(id).is_leaf()) out.insert(node_path_label(tree, id, seq));
  }
  return out;
}

}  // namespace

TEST_CASE("sequence records must tile the text") {
  CHECK_NOTHROW(Sequence("acgt", {{0, 2}, {2, 2}}));
  CHECK_THROWS_AS(Sequence("acgt", {{0, 2}, {3, 1}}), Error);
  CHECK_THROWS_AS(Sequence("acgt", {{0, 3}}), Error);

  std::vector<std::string> parts{"acg", "", "tac"};
  Sequence seq = Sequence::from_parts(parts);
  REQUIRE(seq.records().size() == 3);
  CHECK(seq.record_of(0) == 0);
  CHECK(seq.record_of(2) == 0);
  CHECK(seq.record_of(3) == 2);
  CHECK(seq.record_of(5) == 2);
}

TEST_CASE("window_count ignores windows crossing records") {
  std::vector<std::string> parts{"acg", "tac"};
  CHECK(window_count(Sequence::from_parts(parts), 2) == 4);
  CHECK(window_count(Sequence("ab"), 5) == 0);
  CHECK(window_count(Sequence("abaabc"), 3) == 4);
}

TEST_CASE("abaabc with k=3 passes the invariant check") {
  Sequence seq("abaabc");
  SuffixTree tree = build_sequential(seq, 3);
  InvariantReport report = check_tree_invariants(tree, seq);
  CHECK_MESSAGE(report.ok(), report.summary());
  CHECK(tree.children(tree.root()).size() == 3);
  CHECK(leaf_labels(tree, seq) ==
        std::set<std::string>{"aba$", "baa$", "aab$", "abc$", "$"});
}

TEST_CASE("empty sequence tree is root plus terminal leaf") {
  Sequence seq("");
  SuffixTree tree = build_sequential(seq, 4);
  CHECK(check_tree_invariants(tree, seq).ok());
  REQUIRE(tree.size() == 2);
  auto kids = tree.children(tree.root());
  REQUIRE(kids.size() == 1);
  CHECK(tree.node(kids[0]).terminal_only());
}

TEST_CASE("hand-built single-child internal node is reported") {
  // "ab" with k = 2: root -> "$", root -> "a" -> "b$" (the "a" node has one child).
  Sequence seq("ab");
  Arena arena;
  arena.nodes.resize(4);
  arena.nodes[0] = {0, 0, false, 0, 2, 0, 0};
  arena.nodes[1] = {0, 0, true, 0, 0, 0, 0};
  arena.nodes[2] = {0, 1, false, 2, 1, 0, 0};
  arena.nodes[3] = {1, 1, true, 0, 0, 0, 1};
  arena.child_ids = {1, 2, 3};
  arena.occurrences = {0};
  SuffixTree tree(std::move(arena), 0, 2, seq.size());

  InvariantReport report = check_tree_invariants(tree, seq);
  CHECK(report.violations.size() == 1);
  CHECK(report.count(ViolationKind::SingleChildInternal) == 1);
}

TEST_CASE("invariant checker catches wrong occurrences and root edges") {
  Sequence seq("abab");
  SuffixTree good = build_sequential(seq, 2);
  REQUIRE(check_tree_invariants(good, seq).ok());

  Arena broken = good.arena();
  // Point one occurrence at a window that spells something else.
  for (Node& n : broken.nodes) {
    if (n.is_leaf() && n.occurrence_count > 0) {
      broken.occurrences[n.first_occurrence] =
          broken.occurrences[n.first_occurrence] == 1 ? 0 : 1;
      break;
    }
  }
  SuffixTree bad(std::move(broken), good.root(), good.k(), seq.size());
  InvariantReport report = check_tree_invariants(bad, seq);
  CHECK(report.count(ViolationKind::WindowMismatch) >= 1);
  CHECK(report.count(ViolationKind::WindowCoverage) >= 1);

  // Same arena claimed to be a k=3 tree: every leaf is too shallow.
  SuffixTree wrong_k(good.arena(), good.root(), 3, seq.size());
  CHECK(check_tree_invariants(wrong_k, seq).count(ViolationKind::LeafDepth) > 0);
}

TEST_CASE("node_path_label") {
  SUBCASE("leaf under the b branch of abaabc") {
    Sequence seq("abaabc");
    SuffixTree tree = build_sequential(seq, 3);
    auto b = tree.child(tree.root(), 'b', seq);
    REQUIRE(b);
    CHECK(tree.node(*b).is_leaf());
    CHECK(node_path_label(tree, *b, seq) == "baa$");
  }
  SUBCASE("root has the empty label") {
    Sequence seq("xyz");
    SuffixTree tree = build_sequential(seq, 2);
    CHECK(node_path_label(tree, tree.root(), seq).empty());
  }
  SUBCASE("leaf for the window at 3 of acgttacg") {
    Sequence seq("acgttacg");
    SuffixTree tree = build_sequential(seq, 4);
    NodeId found = kNoNode;
    for (NodeId id = 0; id < tree.size(); ++id) {
      auto occ = tree.occurrences(id);
      if (occ.size() == 1 && occ[0] == 3) found = id;
    }
    REQUIRE(found != kNoNode);
    CHECK(node_path_label(tree, found, seq) == "ttac$");
  }
  SUBCASE("unknown id") {
    Sequence seq("ab");
    SuffixTree tree = build_sequential(seq, 1);
    try {
      node_path_label(tree, 99, seq);
      FAIL("expected InvalidNode");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidNode);
    }
  }
}

TEST_CASE("edge labels are fixed-size index pairs") {
  // Storage per node does not grow with label length.
  static_assert(sizeof(Node) <= 32);
  Sequence longer(std::string(5000, 'a') + "b");
  SuffixTree tree = build_sequential(longer, 4000);
  CHECK(tree.size() == 5);  // root, $, shared a^3999 edge, two leaves
  CHECK(tree.arena().nodes.size() * sizeof(Node) < 1024);
}

TEST_CASE("deadline") {
  Deadline none;
  CHECK_FALSE(none.armed());
  CHECK_NOTHROW(none.check());
  Deadline past_due = Deadline::after(std::chrono::seconds(-1));
  CHECK(past_due.expired());
  CHECK_THROWS_AS(past_due.check(), Error);
}
