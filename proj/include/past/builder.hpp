#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "past/core.hpp"
#include "past/partition.hpp"

namespace past {

/// Sub-tree holding every window that starts with `symbol`. The arena is in
/// pre-order; node 0 is the top node that the merge grafts under the root.
/// An empty bucket gives an empty arena.
struct Branch {
  Symbol symbol = 0;
  Arena arena;

  bool empty() const noexcept { return arena.nodes.empty(); }
};

enum class ScanMode {
  /// Bucket every window in one pass, then build branches.
  SingleScan,
  /// Each branch task scans the whole sequence for its own symbol.
  PerSymbolScan,
};

struct BuildConfig {
  std::size_t k = 0;
  std::size_t workers = 1;
  ScanMode scan_mode = ScanMode::SingleScan;
  Deadline deadline;
};

/// Inserts the windows at `starts` (ascending) into a path-compressed trie.
/// One leaf per distinct window; its occurrences are the starts spelling it.
/// Throws ForeignStart if a start does not begin with `symbol` or its window
/// leaves its record, InvalidK if k == 0.
Branch build_branch(const Sequence& seq, std::size_t k, Symbol symbol,
                    std::span<const Pos> starts,
                    const Deadline& deadline = {});

/// Grafts the branches under a common root beside the bare "$" leaf,
/// terminal first then ascending symbol. Throws DuplicateBranch.
SuffixTree merge_branches(std::vector<Branch> branches, const Sequence& seq,
                          std::size_t k);

/// Parallel k-mer suffix tree construction: alphabet extraction, window
/// partitioning, concurrent per-symbol branch construction, barrier, merge.
/// The result does not depend on `workers` or `scan_mode`.
SuffixTree build_past(const Sequence& seq, const BuildConfig& cfg);

/// build_past with a single worker and no threads.
SuffixTree build_sequential(const Sequence& seq, std::size_t k,
                            const Deadline& deadline = {});

}  // namespace past
