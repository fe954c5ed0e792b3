#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "past/core.hpp"

namespace past {

/// Where a pattern walk stopped: `edge_offset` symbols into the incoming edge
/// of `node`.
struct Locus {
  NodeId node = 0;
  std::size_t edge_offset = 0;
  bool matched = false;
};

struct RepeatHit {
  std::string kmer;
  std::size_t count = 0;
  std::vector<Pos> positions;

  friend bool operator==(const RepeatHit&, const RepeatHit&) = default;
};

/// Walks `pattern` down from the root in O(|pattern|) symbol comparisons.
/// Throws EmptyPattern, and PatternTooLong when a k-mer tree cannot answer a
/// pattern longer than k.
Locus find_node(const SuffixTree& tree, const Sequence& seq,
                std::string_view pattern);

/// Ascending start positions of `pattern`. On a k-mer tree these are the
/// windows having `pattern` as a prefix, so starts beyond n - k are never
/// reported.
std::vector<Pos> occurrences(const SuffixTree& tree, const Sequence& seq,
                             std::string_view pattern);

/// Every distinct window occurring at least `min_count` times, ordered by
/// descending count then ascending k-mer. Throws InvalidThreshold when
/// min_count < 2 and KmerTreeRequired for a full tree.
std::vector<RepeatHit> enumerate_repeats(const SuffixTree& tree,
                                         const Sequence& seq,
                                         std::size_t min_count);

}  // namespace past
