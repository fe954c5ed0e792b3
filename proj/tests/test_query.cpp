#include <doctest.h>

#include <map>
#include <random>

#include "oracle.hpp"
#include "past/baseline.hpp"
#include "past/builder.hpp"
#include "past/query.hpp"

using namespace past;

namespace {

std::vector<Pos> vec(std::initializer_list<Pos> v) { return v; }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ConfigError;
}

}  // namespace

TEST_CASE("find_node on the acgttacg k=4 tree") {
  Sequence seq("acgttacg");
  SuffixTree tree = build_sequential(seq, 4);

  Locus tac = find_node(tree, seq, "tac");
  CHECK(tac.matched);
  CHECK(tree.node(tac.node).is_leaf());
  CHECK(node_path_label(tree, tac.node, seq) == "tacg$");
  CHECK(tac.edge_offset == 2);  // "t" | "ac" of "acg$"

  CHECK(oracle::window_prefix_scan("acgttacg", oracle::single("acgttacg"), 4, "gg").empty());
  CHECK_FALSE(find_node(tree, seq, "gg").matched);

  CHECK(code_of([&] { find_node(tree, seq, "acgtt"); }) == ErrorCode::PatternTooLong);
  CHECK(code_of([&] { find_node(tree, seq, ""); }) == ErrorCode::EmptyPattern);
}

TEST_CASE("occurrences on small inputs") {
  SUBCASE("xabxac k=3") {
    Sequence seq("xabxac");
    CHECK(oracle::window_prefix_scan("xabxac", oracle::single("xabxac"), 3, "xa") == vec({0, 3}));
    CHECK(occurrences(build_sequential(seq, 3), seq, "xa") == vec({0, 3}));
  }
  SUBCASE("atatat k=2") {
    Sequence seq("atatat");
    CHECK(oracle::scan("atatat", "at") == vec({0, 2, 4}));
    CHECK(occurrences(build_sequential(seq, 2), seq, "at") == vec({0, 2, 4}));
  }
  SUBCASE("full tree of xabxac") {
    Sequence seq("xabxac");
    CHECK(occurrences(build_ukkonen(seq), seq, "xa") == vec({0, 3}));
    // No length limit on a full tree.
    CHECK(occurrences(build_ukkonen(seq), seq, "xabxac") == vec({0}));
    CHECK(occurrences(build_ukkonen(seq), seq, "xabxacx").empty());
  }
  SUBCASE("k-mer index hides starts past n - k") {
    Sequence seq("abcab");
    // "ab" occurs at 0 and 3, but only the window at 0 has length 3.
    CHECK(occurrences(build_sequential(seq, 3), seq, "ab") == vec({0}));
  }
}

TEST_CASE("enumerate_repeats") {
  SUBCASE("atatat k=2") {
    Sequence seq("atatat");
    auto hist = oracle::window_histogram("atatat", 2);
    REQUIRE(hist.at("at").size() == 3);
    REQUIRE(hist.at("ta").size() == 2);
    auto hits = enumerate_repeats(build_sequential(seq, 2), seq, 2);
    REQUIRE(hits.size() == 2);
    CHECK(hits[0] == RepeatHit{"at", 3, {0, 2, 4}});
    CHECK(hits[1] == RepeatHit{"ta", 2, {1, 3}});
  }
  SUBCASE("all windows distinct") {
    Sequence seq("abcdef");
    CHECK(enumerate_repeats(build_sequential(seq, 3), seq, 2).empty());
  }
  SUBCASE("acgttacg k=4") {
    Sequence seq("acgttacg");
    CHECK(enumerate_repeats(build_sequential(seq, 4), seq, 2).empty());
  }
  SUBCASE("errors") {
    Sequence seq("abab");
    CHECK(code_of([&] { enumerate_repeats(build_sequential(seq, 2), seq, 1); }) ==
          ErrorCode::InvalidThreshold);
    CHECK(code_of([&] { enumerate_repeats(build_ukkonen(seq), seq, 2); }) ==
          ErrorCode::KmerTreeRequired);
  }
}

TEST_CASE("queries agree with brute force on random input") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t sigma = std::vector<std::size_t>{2, 4, 20}[trial % 3];
    const std::size_t k = 1 + rng() % 8;
    const std::string text = oracle::random_text(rng, 1 + rng() % 200, sigma);
    Sequence seq(text);
    SuffixTree tree = build_sequential(seq, k);
    SuffixTree full = build_ukkonen(seq);
    const auto bounds = oracle::single(text);

    for (int q = 0; q < 20; ++q) {
      const std::size_t len = 1 + rng() % k;
      std::string pattern;
      if (q % 2 == 0 && text.size() >= len) {
        pattern = text.substr(rng() % (text.size() - len + 1), len);
      } else {
        pattern = oracle::random_text(rng, len, sigma);
      }
      const auto got = occurrences(tree, seq, pattern);
      CHECK(got == oracle::window_prefix_scan(text, bounds, k, pattern));

      // Extending the pattern can only remove hits.
      if (pattern.size() > 1) {
        const auto shorter = occurrences(tree, seq, pattern.substr(0, pattern.size() - 1));
        CHECK(std::includes(shorter.begin(), shorter.end(), got.begin(), got.end()));
      }

      // The full tree reports a superset; restricted to starts <= n - k they agree.
      std::vector<Pos> restricted;
      for (Pos p : occurrences(full, seq, pattern)) {
        if (p + k <= text.size()) restricted.push_back(p);
      }
      CHECK(restricted == got);
    }

    std::size_t total = 0;
    std::vector<RepeatHit> expected;
    for (const auto& [w, starts] : oracle::window_histogram(text, k)) {
      total += starts.size();
      if (starts.size() >= 2) {
        expected.push_back({w, starts.size(), std::vector<Pos>(starts.begin(), starts.end())});
      }
    }
    std::sort(expected.begin(), expected.end(), [](const RepeatHit& a, const RepeatHit& b) {
      return a.count != b.count ? a.count > b.count : a.kmer < b.kmer;
    });
    CHECK(enumerate_repeats(tree, seq, 2) == expected);
    CHECK(total == (text.size() >= k ? text.size() - k + 1 : 0));
  }
}
