#include "past/core.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace past {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::InvalidNode: return "InvalidNode";
    case ErrorCode::ForeignStart: return "ForeignStart";
    case ErrorCode::DuplicateBranch: return "DuplicateBranch";
    case ErrorCode::SingleRecordRequired: return "SingleRecordRequired";
    case ErrorCode::EmptyPattern: return "EmptyPattern";
    case ErrorCode::PatternTooLong: return "PatternTooLong";
    case ErrorCode::InvalidThreshold: return "InvalidThreshold";
    case ErrorCode::KmerTreeRequired: return "KmerTreeRequired";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::InvalidDuration: return "InvalidDuration";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::SequenceTooLong: return "SequenceTooLong";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Sequence

namespace {

void check_length(std::size_t n) {
  if (n > kMaxSequenceLength) {
    throw Error(ErrorCode::SequenceTooLong,
                "sequence of " + std::to_string(n) +
                    " symbols exceeds the 32-bit position range");
  }
}

}  // namespace

Sequence::Sequence(std::string data) : data_(std::move(data)) {
  check_length(data_.size());
  records_.push_back({0, static_cast<Pos>(data_.size())});
}

Sequence::Sequence(std::string data, std::vector<Record> records)
    : data_(std::move(data)), records_(std::move(records)) {
  check_length(data_.size());
  std::size_t expected = 0;
  for (const Record& r : records_) {
    if (r.start != expected) {
      throw Error(ErrorCode::FormatError,
                  "records do not tile the sequence at position " +
                      std::to_string(expected));
    }
    expected += r.length;
  }
  if (expected != data_.size()) {
    throw Error(ErrorCode::FormatError,
                "records cover " + std::to_string(expected) + " of " +
                    std::to_string(data_.size()) + " symbols");
  }
}

Sequence Sequence::from_parts(std::span<const std::string> parts) {
  std::string data;
  std::vector<Record> records;
  for (const std::string& p : parts) {
    records.push_back({static_cast<Pos>(data.size()), static_cast<Pos>(p.size())});
    data += p;
  }
  return Sequence(std::move(data), std::move(records));
}

std::size_t Sequence::record_of(std::size_t pos) const {
  auto it = std::upper_bound(
      records_.begin(), records_.end(), pos,
      [](std::size_t p, const Record& r) { return p < r.start; });
  // Zero-length records share a start with their successor; step back to the
  // one that actually contains pos.
  while (it != records_.begin()) {
    --it;
    if (pos < static_cast<std::size_t>(it->start) + it->length) break;
  }
  return static_cast<std::size_t>(it - records_.begin());
}

bool Alphabet::contains(Symbol s) const noexcept {
  return std::binary_search(symbols.begin(), symbols.end(), s);
}

std::size_t window_count(const Sequence& seq, std::size_t k) noexcept {
  if (k == 0) return 0;
  std::size_t total = 0;
  for (const auto& r : seq.records()) {
    if (r.length >= k) total += r.length - k + 1;
  }
  return total;
}

void Deadline::check() const {
  if (expired()) throw Error(ErrorCode::Timeout, "construction deadline exceeded");
}

// ---------------------------------------------------------------------------
// SuffixTree

SuffixTree::SuffixTree(Arena arena, NodeId root, std::size_t k,
                       std::size_t seq_len)
    : arena_(std::move(arena)), root_(root), k_(k), seq_len_(seq_len) {
  if (root_ >= arena_.nodes.size()) {
    throw Error(ErrorCode::InvalidNode, "root id outside the arena");
  }
  for (const Node& n : arena_.nodes) {
    if (std::size_t{n.first_child} + n.child_count > arena_.child_ids.size() ||
        std::size_t{n.first_occurrence} + n.occurrence_count >
            arena_.occurrences.size()) {
      throw Error(ErrorCode::InvalidNode, "node range outside the arena");
    }
  }
}

std::span<const NodeId> SuffixTree::children(NodeId id) const {
  const Node& n = node(id);
  return std::span<const NodeId>(arena_.child_ids).subspan(n.first_child,
                                                           n.child_count);
}

std::span<const Pos> SuffixTree::occurrences(NodeId id) const {
  const Node& n = node(id);
  return std::span<const Pos>(arena_.occurrences)
      .subspan(n.first_occurrence, n.occurrence_count);
}

std::optional<NodeId> SuffixTree::child(NodeId id, int key,
                                        const Sequence& seq) const {
  auto kids = children(id);
  auto it = std::lower_bound(kids.begin(), kids.end(), key,
                             [&](NodeId c, int want) {
                               return edge_key(arena_.nodes[c], seq) < want;
                             });
  if (it != kids.end() && edge_key(arena_.nodes[*it], seq) == key) return *it;
  return std::nullopt;
}

std::size_t SuffixTree::leaf_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      arena_.nodes.begin(), arena_.nodes.end(),
      [](const Node& n) { return n.is_leaf(); }));
}

std::string edge_text(const Node& node, const Sequence& seq) {
  std::string out(seq.text().substr(node.start, node.length));
  if (node.terminal) out += '$';
  return out;
}

namespace {

// Root-to-node path by depth-first search; there are no parent links.
bool find_path(const SuffixTree& tree, NodeId from, NodeId target,
               std::vector<NodeId>& path) {
  std::vector<std::pair<NodeId, std::size_t>> stack{{from, 0}};
  path.assign(1, from);
  std::vector<char> seen(tree.size(), 0);
  seen[from] = 1;
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    if (id == target) return true;
    auto kids = tree.children(id);
    if (next == kids.size()) {
      stack.pop_back();
      path.pop_back();
      continue;
    }
    NodeId c = kids[next++];
    if (c >= tree.size() || seen[c]) continue;
    seen[c] = 1;
    stack.emplace_back(c, 0);
    path.push_back(c);
  }
  return false;
}

}  // namespace

std::string node_path_label(const SuffixTree& tree, NodeId id,
                            const Sequence& seq) {
  if (!tree.contains(id)) {
    throw Error(ErrorCode::InvalidNode, "node " + std::to_string(id) +
                                            " is not in the tree");
  }
  std::vector<NodeId> path;
  if (!find_path(tree, tree.root(), id, path)) {
    throw Error(ErrorCode::InvalidNode, "node " + std::to_string(id) +
                                            " is unreachable from the root");
  }
  std::string label;
  for (std::size_t i = 1; i < path.size(); ++i) {
    label += edge_text(tree.node(path[i]), seq);
  }
  return label;
}

// ---------------------------------------------------------------------------
// Invariant checking

std::string_view violation_name(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::DanglingChild: return "DanglingChild";
    case ViolationKind::Unreachable: return "Unreachable";
    case ViolationKind::MultiplePaths: return "MultiplePaths";
    case ViolationKind::SingleChildInternal: return "SingleChildInternal";
    case ViolationKind::DuplicateSiblingKey: return "DuplicateSiblingKey";
    case ViolationKind::UnorderedChildren: return "UnorderedChildren";
    case ViolationKind::TerminalPlacement: return "TerminalPlacement";
    case ViolationKind::TerminalLeafCount: return "TerminalLeafCount";
    case ViolationKind::UnsortedOccurrences: return "UnsortedOccurrences";
    case ViolationKind::LeafDepth: return "LeafDepth";
    case ViolationKind::WindowMismatch: return "WindowMismatch";
    case ViolationKind::WindowCoverage: return "WindowCoverage";
    case ViolationKind::RootEdgeCount: return "RootEdgeCount";
    case ViolationKind::LeafCount: return "LeafCount";
    case ViolationKind::SuffixCoverage: return "SuffixCoverage";
  }
  return "Unknown";
}

std::size_t InvariantReport::count(ViolationKind kind) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(),
                    [kind](const Violation& v) { return v.kind == kind; }));
}

std::string InvariantReport::summary() const {
  std::ostringstream os;
  for (const Violation& v : violations) {
    os << violation_name(v.kind) << " @" << v.node << ": " << v.detail << '\n';
  }
  return os.str();
}

namespace {

class InvariantChecker {
 public:
  InvariantChecker(const SuffixTree& tree, const Sequence& seq)
      : tree_(tree), seq_(seq), visits_(tree.size(), 0) {}

  InvariantReport run() {
    walk();
    for (NodeId id = 0; id < tree_.size(); ++id) {
      if (visits_[id] == 0) add(ViolationKind::Unreachable, id, "not reachable from root");
    }
    check_root();
    if (tree_.is_kmer_tree()) check_coverage();
    return std::move(report_);
  }

 private:
  void add(ViolationKind kind, NodeId id, std::string detail) {
    report_.violations.push_back({kind, id, std::move(detail)});
  }

  // Iterative pre-order walk carrying the path label.
  void walk() {
    struct Frame {
      NodeId id;
      std::size_t label_size;
    };
    std::vector<Frame> stack{{tree_.root(), 0}};
    std::string label;
    while (!stack.empty()) {
      Frame f = stack.back();
      stack.pop_back();
      label.resize(f.label_size);
      if (visits_[f.id]++ > 0) {
        add(ViolationKind::MultiplePaths, f.id, "reached by more than one path");
        continue;
      }
      const Node& n = tree_.node(f.id);
      if (f.id != tree_.root()) {
        if (std::size_t{n.start} + n.length > seq_.size()) {
          add(ViolationKind::DanglingChild, f.id, "edge label outside sequence");
          continue;
        }
        label.append(seq_.text().substr(n.start, n.length));
      }
      check_node(f.id, n, label);
      auto kids = tree_.children(f.id);
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
        if (!tree_.contains(*it)) {
          add(ViolationKind::DanglingChild, f.id, "child id outside arena");
          continue;
        }
        stack.push_back({*it, label.size()});
      }
    }
  }

  void check_node(NodeId id, const Node& n, const std::string& label) {
    const bool is_root = id == tree_.root();
    auto kids = tree_.children(id);

    if (!is_root && !n.is_leaf() && kids.size() < 2) {
      add(ViolationKind::SingleChildInternal, id, "internal node with one child");
    }
    if (n.terminal && !n.is_leaf()) {
      add(ViolationKind::TerminalPlacement, id, "terminal marker on an internal edge");
    }
    if (!is_root && n.is_leaf() && !n.terminal) {
      add(ViolationKind::TerminalPlacement, id, "leaf edge lacks the terminal marker");
    }
    if (!is_root && !n.terminal && n.length == 0) {
      add(ViolationKind::TerminalPlacement, id, "empty edge label");
    }

    int prev = kTerminalKey - 1;
    for (NodeId c : kids) {
      if (!tree_.contains(c)) continue;
      const Node& cn = tree_.node(c);
      if (std::size_t{cn.start} + cn.length > seq_.size()) continue;
      int key = edge_key(cn, seq_);
      if (key == prev) {
        add(ViolationKind::DuplicateSiblingKey, id,
            "two children start with key " + std::to_string(key));
      } else if (key < prev) {
        add(ViolationKind::UnorderedChildren, id, "children not in key order");
      }
      prev = key;
    }

    auto occ = tree_.occurrences(id);
    for (std::size_t i = 1; i < occ.size(); ++i) {
      if (occ[i - 1] >= occ[i]) {
        add(ViolationKind::UnsortedOccurrences, id, "occurrences not strictly ascending");
        break;
      }
    }

    if (tree_.is_kmer_tree() && n.is_leaf() && !is_root) check_kmer_leaf(id, n, label, occ);
    if (!tree_.is_kmer_tree() && n.is_leaf() && !is_root) check_full_leaf(id, label, occ);
  }

  void check_kmer_leaf(NodeId id, const Node& n, const std::string& label,
                       std::span<const Pos> occ) {
    const std::size_t k = tree_.k();
    if (n.terminal_only() && label.empty()) {
      if (!occ.empty()) {
        add(ViolationKind::WindowMismatch, id, "bare terminal leaf carries occurrences");
      }
      return;
    }
    if (label.size() != k) {
      add(ViolationKind::LeafDepth, id,
          "leaf label length " + std::to_string(label.size()) + " != k");
      return;
    }
    if (occ.empty()) {
      add(ViolationKind::WindowMismatch, id, "window leaf without occurrences");
    }
    for (Pos p : occ) {
      bool inside = std::size_t{p} + k <= seq_.size() &&
                    seq_.record_of(p) == seq_.record_of(p + k - 1);
      if (!inside || seq_.text().substr(p, k) != label) {
        add(ViolationKind::WindowMismatch, id,
            "occurrence " + std::to_string(p) + " does not spell the leaf label");
        continue;
      }
      if (covered_.empty()) covered_.assign(seq_.size(), 0);
      ++covered_[p];
    }
  }

  void check_full_leaf(NodeId id, const std::string& label,
                       std::span<const Pos> occ) {
    if (occ.size() != 1) {
      add(ViolationKind::WindowMismatch, id, "suffix leaf must hold one start");
      return;
    }
    std::size_t start = occ[0];
    if (start > seq_.size() || seq_.text().substr(start) != label) {
      add(ViolationKind::WindowMismatch, id,
          "suffix " + std::to_string(start) + " does not spell the leaf label");
    }
  }

  void check_root() {
    const NodeId root = tree_.root();
    std::size_t terminal_kids = 0;
    for (NodeId c : tree_.children(root)) {
      if (tree_.contains(c) && tree_.node(c).terminal_only()) ++terminal_kids;
    }
    if (terminal_kids != 1) {
      add(ViolationKind::TerminalLeafCount, root,
          "root has " + std::to_string(terminal_kids) + " bare terminal children");
    }
    if (!tree_.is_kmer_tree()) return;

    std::vector<char> first(256, 0);
    const std::size_t k = tree_.k();
    for (const auto& r : seq_.records()) {
      if (r.length < k) continue;
      for (std::size_t i = r.start; i + k <= std::size_t{r.start} + r.length; ++i) {
        first[seq_[i]] = 1;
      }
    }
    std::size_t expected =
        static_cast<std::size_t>(std::count(first.begin(), first.end(), 1)) + 1;
    std::size_t actual = tree_.children(root).size();
    if (actual != expected) {
      add(ViolationKind::RootEdgeCount, root,
          "root has " + std::to_string(actual) + " edges, expected " +
              std::to_string(expected));
    }
  }

  void check_coverage() {
    const std::size_t k = tree_.k();
    if (covered_.empty()) covered_.assign(seq_.size(), 0);
    for (const auto& r : seq_.records()) {
      if (r.length < k) continue;
      for (std::size_t i = r.start; i + k <= std::size_t{r.start} + r.length; ++i) {
        if (covered_[i] != 1) {
          add(ViolationKind::WindowCoverage, tree_.root(),
              "window " + std::to_string(i) + " appears " +
                  std::to_string(covered_[i]) + " times");
        }
      }
    }
  }

  const SuffixTree& tree_;
  const Sequence& seq_;
  std::vector<std::uint32_t> visits_;
  std::vector<std::uint32_t> covered_;
  InvariantReport report_;
};

}  // namespace

InvariantReport check_tree_invariants(const SuffixTree& tree,
                                      const Sequence& seq) {
  return InvariantChecker(tree, seq).run();
}

}  // namespace past
