#pragma once

#include "past/core.hpp"

namespace past {

/// Full suffix tree of `seq` followed by the terminal marker, built online in
/// linear time (Ukkonen). The tree has k() == 0 and n + 1 leaves; each leaf
/// holds the start of its suffix, the bare "$" leaf holds n. Suffix links are
/// discarded after construction. Throws SingleRecordRequired for multi-record
/// input and Timeout when `deadline` passes.
SuffixTree build_ukkonen(const Sequence& seq, const Deadline& deadline = {});

/// Independent check of a full suffix tree: n + 1 leaves, every suffix
/// spelled by exactly one leaf, no single-child internal node.
InvariantReport verify_full_tree(const SuffixTree& tree, const Sequence& seq);

}  // namespace past
