#include "past/baseline.hpp"

#include <utility>

#include "draft.hpp"

namespace past {

namespace {

constexpr Pos kOpen = static_cast<Pos>(-1);
constexpr int kTerminalSymbol = 256;

// Online construction over the text followed by one terminal position at n.
class Ukkonen {
 public:
  explicit Ukkonen(const Sequence& seq) : seq_(seq), n_(static_cast<Pos>(seq.size())) {
    nodes_.reserve(2 * std::size_t{n_} + 2);
    root_ = new_node(0, 0, kNoTag);
  }

  void run(const Deadline& deadline) {
    NodeId active_node = root_;
    Pos active_edge = 0;
    Pos active_length = 0;
    Pos remainder = 0;

    for (Pos pos = 0; pos <= n_; ++pos) {
      if ((pos & 0xffff) == 0) deadline.check();
      end_ = pos + 1;
      const int c = sym(pos);
      ++remainder;
      NodeId need_link = kNoNode;
      auto link_to = [&](NodeId target) {
        if (need_link != kNoNode) nodes_[need_link].link = target;
        need_link = target;
      };

      while (remainder > 0) {
        if (active_length == 0) active_edge = pos;
        auto [prev, next] = find(active_node, sym(active_edge));
        if (next == kNoNode) {
          attach(active_node, new_node(pos, kOpen, pos + 1 - remainder));
          link_to(active_node);
        } else {
          const Pos len = edge_length(next);
          if (active_length >= len) {
            active_edge += len;
            active_length -= len;
            active_node = next;
            continue;
          }
          if (sym(nodes_[next].start + active_length) == c) {
            ++active_length;
            link_to(active_node);
            break;
          }
          const Pos split_at = nodes_[next].start + active_length;
          const NodeId mid = new_node(nodes_[next].start, split_at, detail::kNoTag);
          replace_child(active_node, prev, next, mid);
          nodes_[next].start = split_at;
          nodes_[mid].first_child = next;
          attach(mid, new_node(pos, kOpen, pos + 1 - remainder));
          link_to(mid);
        }
        --remainder;
        if (active_node == root_ && active_length > 0) {
          --active_length;
          active_edge = pos + 1 - remainder;
        } else if (active_node != root_) {
          const NodeId l = nodes_[active_node].link;
          active_node = l == kNoNode ? root_ : l;
        }
      }
    }
  }

  SuffixTree finish() && {
    Arena arena = detail::compact(
        root_, seq_, nodes_.size(),
        [&](NodeId id) {
          const Raw& r = nodes_[id];
          const bool leaf = r.end == kOpen;
          const Pos end = leaf ? n_ : r.end;
          return detail::DraftEdge{r.start, end - std::min(r.start, end), leaf,
                                   r.first_child, r.next_sibling, r.suffix};
        },
        [](Pos suffix, std::vector<Pos>& out) { out.push_back(suffix); });
    nodes_ = {};
    return SuffixTree(std::move(arena), 0, 0, n_);
  }

 private:
  static constexpr Pos kNoTag = detail::kNoTag;

  struct Raw {
    Pos start;
    Pos end;  // exclusive; kOpen for leaves
    NodeId link = kNoNode;
    NodeId first_child = kNoNode;
    NodeId next_sibling = kNoNode;
    Pos suffix;
  };

  int sym(Pos i) const noexcept {
    return i < n_ ? static_cast<int>(seq_[i]) : kTerminalSymbol;
  }

  Pos edge_length(NodeId id) const noexcept {
    const Raw& r = nodes_[id];
    return (r.end == kOpen ? end_ : r.end) - r.start;
  }

  NodeId new_node(Pos start, Pos end, Pos suffix) {
    nodes_.push_back({start, end, kNoNode, kNoNode, kNoNode, suffix});
    return static_cast<NodeId>(nodes_.size() - 1);
  }

  std::pair<NodeId, NodeId> find(NodeId parent, int symbol) const {
    NodeId prev = kNoNode;
    for (NodeId c = nodes_[parent].first_child; c != kNoNode;
         prev = c, c = nodes_[c].next_sibling) {
      if (sym(nodes_[c].start) == symbol) return {prev, c};
    }
    return {prev, kNoNode};
  }

  void attach(NodeId parent, NodeId child) {
    nodes_[child].next_sibling = nodes_[parent].first_child;
    nodes_[parent].first_child = child;
  }

  void replace_child(NodeId parent, NodeId prev, NodeId old_child, NodeId new_child) {
    nodes_[new_child].next_sibling = nodes_[old_child].next_sibling;
    nodes_[old_child].next_sibling = kNoNode;
    if (prev == kNoNode) {
      nodes_[parent].first_child = new_child;
    } else {
      nodes_[prev].next_sibling = new_child;
    }
  }

  const Sequence& seq_;
  Pos n_;
  Pos end_ = 0;
  NodeId root_ = kNoNode;
  std::vector<Raw> nodes_;
};

}  // namespace

SuffixTree build_ukkonen(const Sequence& seq, const Deadline& deadline) {
  if (seq.records().size() > 1) {
    throw Error(ErrorCode::SingleRecordRequired,
                "the full-tree baseline indexes a single record, got " +
                    std::to_string(seq.records().size()));
  }
  Ukkonen builder(seq);
  builder.run(deadline);
  return std::move(builder).finish();
}

InvariantReport verify_full_tree(const SuffixTree& tree, const Sequence& seq) {
  InvariantReport report;
  auto add = [&](ViolationKind kind, NodeId id, std::string detail) {
    report.violations.push_back({kind, id, std::move(detail)});
  };
  const std::size_t n = seq.size();

  const std::size_t leaves = tree.leaf_count();
  if (leaves != n + 1) {
    add(ViolationKind::LeafCount, tree.root(),
        std::to_string(leaves) + " leaves, expected " + std::to_string(n + 1));
  }

  // Walk with the marker-stripped path label; a leaf labelled L must be the
  // suffix starting at n - |L|.
  std::vector<std::uint32_t> seen(n + 1, 0);
  struct Frame {
    NodeId id;
    std::size_t label_size;
  };
  std::vector<Frame> stack{{tree.root(), 0}};
  std::string label;
  std::vector<char> visited(tree.size(), 0);
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (!tree.contains(f.id) || visited[f.id]) {
      add(ViolationKind::MultiplePaths, f.id, "node missing or reached twice");
      continue;
    }
    visited[f.id] = 1;
    label.resize(f.label_size);
    const Node& node = tree.node(f.id);
    if (f.id != tree.root()) {
      if (std::size_t{node.start} + node.length > n) {
        add(ViolationKind::DanglingChild, f.id, "edge label outside sequence");
        continue;
      }
      label.append(seq.text().substr(node.start, node.length));
    }
    auto kids = tree.children(f.id);
    if (f.id != tree.root() && kids.size() == 1) {
      add(ViolationKind::SingleChildInternal, f.id, "internal node with one child");
    }
    if (kids.empty() && f.id != tree.root()) {
      if (label.size() > n || seq.text().substr(n - label.size()) != label) {
        add(ViolationKind::SuffixCoverage, f.id, "leaf label is not a suffix");
      } else if (!node.terminal) {
        add(ViolationKind::TerminalPlacement, f.id, "leaf edge lacks the terminal marker");
      } else {
        ++seen[n - label.size()];
      }
    }
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      stack.push_back({*it, label.size()});
    }
  }
  for (std::size_t i = 0; i <= n; ++i) {
    if (seen[i] != 1) {
      add(ViolationKind::SuffixCoverage, tree.root(),
          "suffix " + std::to_string(i) + " spelled by " + std::to_string(seen[i]) +
              " leaves");
    }
  }
  return report;
}

}  // namespace past
