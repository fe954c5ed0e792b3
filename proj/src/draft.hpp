#pragma once

// Mutable construction-time tree shared by both builders, and the compaction
// step that turns it into the public pre-order Arena.

#include <algorithm>
#include <utility>
#include <vector>

#include "past/core.hpp"

namespace past::detail {

inline constexpr Pos kNoTag = static_cast<Pos>(-1);

/// Edge as seen by compaction. `tag` is kNoTag for internal nodes.
struct DraftEdge {
  Pos start;
  Pos length;
  bool terminal;
  NodeId first_child;
  NodeId next_sibling;
  Pos tag;
};

/// Pre-order compaction of the draft subtree rooted at `top`. Children are
/// ordered by edge key (terminal marker first). `describe(id)` yields the
/// DraftEdge of a draft node; `emit(tag, out)` appends a leaf's occurrences
/// in ascending order.
template <class Describe, class Emit>
Arena compact(NodeId top, const Sequence& seq, std::size_t node_hint,
              Describe&& describe, Emit&& emit) {
  Arena out;
  out.nodes.reserve(node_hint);
  out.child_ids.reserve(node_hint);

  struct Pending {
    NodeId draft;
    std::size_t slot;  // child_ids slot to receive the new id
  };
  constexpr std::size_t kNoSlot = static_cast<std::size_t>(-1);
  std::vector<Pending> stack{{top, kNoSlot}};
  std::vector<std::pair<int, NodeId>> kids;

  while (!stack.empty()) {
    Pending p = stack.back();
    stack.pop_back();
    const DraftEdge e = describe(p.draft);
    const auto id = static_cast<NodeId>(out.nodes.size());
    if (p.slot != kNoSlot) out.child_ids[p.slot] = id;

    Node n;
    n.start = e.start;
    n.length = e.length;
    n.terminal = e.terminal;

    kids.clear();
    for (NodeId c = e.first_child; c != kNoNode; c = describe(c).next_sibling) {
      const DraftEdge ce = describe(c);
      kids.emplace_back(ce.length == 0 ? kTerminalKey : static_cast<int>(seq[ce.start]), c);
    }
    std::sort(kids.begin(), kids.end());

    n.first_child = static_cast<NodeId>(out.child_ids.size());
    n.child_count = static_cast<NodeId>(kids.size());
    out.child_ids.resize(out.child_ids.size() + kids.size(), kNoNode);
    for (std::size_t i = kids.size(); i-- > 0;) {
      stack.push_back({kids[i].second, n.first_child + i});
    }

    n.first_occurrence = static_cast<Pos>(out.occurrences.size());
    if (e.tag != kNoTag) emit(e.tag, out.occurrences);
    n.occurrence_count =
        static_cast<Pos>(out.occurrences.size() - n.first_occurrence);
    out.nodes.push_back(n);
  }
  return out;
}

}  // namespace past::detail
