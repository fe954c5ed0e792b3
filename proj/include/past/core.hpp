#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "past/error.hpp"

namespace past {

using Pos = std::uint32_t;
using NodeId = std::uint32_t;
using Symbol = std::uint8_t;

inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

/// Child key of an edge that consists of the terminal marker alone. It orders
/// before every byte symbol.
inline constexpr int kTerminalKey = -1;

/// Largest symbol count a Sequence may hold (positions are 32-bit).
inline constexpr std::size_t kMaxSequenceLength = static_cast<Pos>(-1) - 1;

/// Immutable symbol text plus the records (FASTA entries) that tile it.
class Sequence {
 public:
  struct Record {
    Pos start = 0;
    Pos length = 0;
    friend bool operator==(const Record&, const Record&) = default;
  };

  Sequence() = default;
  /// One record spanning the whole text.
  explicit Sequence(std::string data);
  /// Throws FormatError unless `records` tile [0, data.size()) in order.
  Sequence(std::string data, std::vector<Record> records);

  /// Concatenates `parts`, one record per part.
  static Sequence from_parts(std::span<const std::string> parts);

  std::string_view text() const noexcept { return data_; }
  Symbol operator[](std::size_t i) const noexcept {
    return static_cast<Symbol>(data_[i]);
  }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  std::span<const Record> records() const noexcept { return records_; }

  /// Index of the record holding position `pos`; `pos` must be < size().
  std::size_t record_of(std::size_t pos) const;

 private:
  std::string data_;
  std::vector<Record> records_;
};

/// Distinct symbols of a sequence in ascending order.
struct Alphabet {
  std::vector<Symbol> symbols;

  std::size_t sigma() const noexcept { return symbols.size(); }
  bool contains(Symbol s) const noexcept;
  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

/// A tree node. The incoming edge label is the index pair
/// [start, start + length) into the sequence, followed by the terminal marker
/// when `terminal` is set. Children and occurrences are ranges into the
/// owning arena's flat arrays.
struct Node {
  Pos start = 0;
  Pos length = 0;
  bool terminal = false;
  NodeId first_child = 0;
  NodeId child_count = 0;
  Pos first_occurrence = 0;
  Pos occurrence_count = 0;

  bool is_leaf() const noexcept { return child_count == 0; }
  bool terminal_only() const noexcept { return terminal && length == 0; }
  friend bool operator==(const Node&, const Node&) = default;
};

/// Flat storage shared by SuffixTree and the builder's per-symbol branches.
struct Arena {
  std::vector<Node> nodes;
  std::vector<NodeId> child_ids;
  std::vector<Pos> occurrences;

  friend bool operator==(const Arena&, const Arena&) = default;
};

/// Key a node is stored under in its parent's child list.
inline int edge_key(const Node& node, const Sequence& seq) noexcept {
  return node.length == 0 ? kTerminalKey : static_cast<int>(seq[node.start]);
}

/// Immutable suffix tree. `k() == 0` marks a full (unbounded) suffix tree;
/// otherwise the tree indexes the length-k windows of the sequence.
class SuffixTree {
 public:
  /// Throws InvalidNode when a child or occurrence range points outside the
  /// arena. Structural properties are checked by check_tree_invariants.
  SuffixTree(Arena arena, NodeId root, std::size_t k, std::size_t seq_len);

  NodeId root() const noexcept { return root_; }
  std::size_t k() const noexcept { return k_; }
  bool is_kmer_tree() const noexcept { return k_ != 0; }
  std::size_t seq_len() const noexcept { return seq_len_; }
  std::size_t size() const noexcept { return arena_.nodes.size(); }
  bool contains(NodeId id) const noexcept { return id < arena_.nodes.size(); }

  const Node& node(NodeId id) const { return arena_.nodes.at(id); }
  std::span<const NodeId> children(NodeId id) const;
  std::span<const Pos> occurrences(NodeId id) const;
  const Arena& arena() const noexcept { return arena_; }

  /// Child of `id` whose edge starts with `key`; binary search over the
  /// sorted child list.
  std::optional<NodeId> child(NodeId id, int key, const Sequence& seq) const;

  std::size_t leaf_count() const noexcept;

 private:
  Arena arena_;
  NodeId root_ = 0;
  std::size_t k_ = 0;
  std::size_t seq_len_ = 0;
};

/// Edge label text with the terminal marker rendered as "$".
std::string edge_text(const Node& node, const Sequence& seq);

/// Concatenated edge labels from the root to `id`. Throws InvalidNode.
std::string node_path_label(const SuffixTree& tree, NodeId id,
                            const Sequence& seq);

enum class ViolationKind {
  DanglingChild,
  Unreachable,
  MultiplePaths,
  SingleChildInternal,
  DuplicateSiblingKey,
  UnorderedChildren,
  TerminalPlacement,
  TerminalLeafCount,
  UnsortedOccurrences,
  LeafDepth,
  WindowMismatch,
  WindowCoverage,
  RootEdgeCount,
  LeafCount,
  SuffixCoverage,
};

std::string_view violation_name(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  NodeId node;
  std::string detail;
};

/// Violations found by a structural check; empty means the tree passed.
struct InvariantReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::size_t count(ViolationKind kind) const noexcept;
  std::string summary() const;
};

/// Checks the path-compression, sibling, terminal-marker and (for k-mer
/// trees) window and root-edge rules. Never throws on a malformed tree.
InvariantReport check_tree_invariants(const SuffixTree& tree,
                                      const Sequence& seq);

/// Number of valid window starts (windows never cross a record boundary).
std::size_t window_count(const Sequence& seq, std::size_t k) noexcept;

/// Optional wall-clock cutoff polled by the builders.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  explicit Deadline(Clock::time_point at) : at_(at) {}
  static Deadline after(Clock::duration d) { return Deadline(Clock::now() + d); }

  bool armed() const noexcept { return at_.has_value(); }
  bool expired() const noexcept { return at_ && Clock::now() >= *at_; }
  /// Throws Timeout once expired.
  void check() const;

 private:
  std::optional<Clock::time_point> at_;
};

}  // namespace past
