#include "past/query.hpp"

#include <algorithm>

namespace past {

Locus find_node(const SuffixTree& tree, const Sequence& seq,
                std::string_view pattern) {
  if (pattern.empty()) throw Error(ErrorCode::EmptyPattern, "pattern is empty");
  if (tree.is_kmer_tree() && pattern.size() > tree.k()) {
    throw Error(ErrorCode::PatternTooLong,
                "pattern of length " + std::to_string(pattern.size()) +
                    " exceeds the index window k=" + std::to_string(tree.k()));
  }

  Locus locus{tree.root(), 0, false};
  std::size_t i = 0;
  while (i < pattern.size()) {
    auto next = tree.child(locus.node, static_cast<Symbol>(pattern[i]), seq);
    if (!next) return locus;
    locus.node = *next;
    locus.edge_offset = 0;
    const Node& n = tree.node(*next);
    while (locus.edge_offset < n.length && i < pattern.size()) {
      if (seq[n.start + locus.edge_offset] != static_cast<Symbol>(pattern[i])) {
        return locus;
      }
      ++locus.edge_offset;
      ++i;
    }
    if (i < pattern.size() && locus.edge_offset == n.length && n.is_leaf()) {
      return locus;  // only the terminal marker remains on this edge
    }
  }
  locus.matched = true;
  return locus;
}

std::vector<Pos> occurrences(const SuffixTree& tree, const Sequence& seq,
                             std::string_view pattern) {
  const Locus locus = find_node(tree, seq, pattern);
  std::vector<Pos> out;
  if (!locus.matched) return out;
  std::vector<NodeId> stack{locus.node};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    auto occ = tree.occurrences(id);
    out.insert(out.end(), occ.begin(), occ.end());
    for (NodeId c : tree.children(id)) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RepeatHit> enumerate_repeats(const SuffixTree& tree,
                                         const Sequence& seq,
                                         std::size_t min_count) {
  if (min_count < 2) {
    throw Error(ErrorCode::InvalidThreshold, "min_count must be >= 2");
  }
  if (!tree.is_kmer_tree()) {
    throw Error(ErrorCode::KmerTreeRequired,
                "repeat enumeration needs a fixed-k tree");
  }

  // Each window leaf spells its k-mer at any of its occurrences, so the
  // label is read straight from the sequence.
  std::vector<RepeatHit> hits;
  for (NodeId id = 0; id < tree.size(); ++id) {
    auto occ = tree.occurrences(id);
    if (!tree.node(id).is_leaf() || occ.size() < min_count) continue;
    hits.push_back({std::string(seq.text().substr(occ.front(), tree.k())),
                    occ.size(), std::vector<Pos>(occ.begin(), occ.end())});
  }
  std::sort(hits.begin(), hits.end(), [](const RepeatHit& a, const RepeatHit& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.kmer < b.kmer;
  });
  return hits;
}

}  // namespace past
