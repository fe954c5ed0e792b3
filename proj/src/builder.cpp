#include "past/builder.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <utility>

#include "draft.hpp"

namespace past {

namespace {

using detail::DraftEdge;
using detail::kNoTag;

// Path-compressed trie of equal-length windows. Node 0 is a label-less root.
class BranchDraft {
 public:
  BranchDraft(const Sequence& seq, std::size_t k, std::size_t expected)
      : seq_(seq), k_(static_cast<Pos>(k)) {
    nodes_.reserve(2 * expected + 1);
    nodes_.push_back({0, 0, false, kNoNode, kNoNode, kNoTag});
  }

  /// Inserts the window at `at`; returns the tag of its leaf.
  Pos insert(Pos at) {
    NodeId parent = 0;
    Pos depth = 0;
    for (;;) {
      const Symbol want = seq_[at + depth];
      NodeId prev = kNoNode;
      NodeId c = nodes_[parent].first_child;
      while (c != kNoNode && seq_[nodes_[c].start] != want) {
        prev = c;
        c = nodes_[c].next_sibling;
      }
      if (c == kNoNode) return add_leaf(parent, at + depth, k_ - depth);

      const DraftEdge edge = nodes_[c];
      Pos m = 1;
      while (m < edge.length && seq_[edge.start + m] == seq_[at + depth + m]) ++m;

      if (m == edge.length) {
        depth += m;
        if (edge.tag != kNoTag) return edge.tag;  // window already present
        parent = c;
        continue;
      }

      // Split the edge at the first mismatch.
      const auto mid = static_cast<NodeId>(nodes_.size());
      nodes_.push_back({edge.start, m, false, c, edge.next_sibling, kNoTag});
      if (prev == kNoNode) {
        nodes_[parent].first_child = mid;
      } else {
        nodes_[prev].next_sibling = mid;
      }
      nodes_[c].start += m;
      nodes_[c].length -= m;
      nodes_[c].next_sibling = kNoNode;
      return add_leaf(mid, at + depth + m, k_ - depth - m);
    }
  }

  const DraftEdge& node(NodeId id) const { return nodes_[id]; }
  std::size_t size() const noexcept { return nodes_.size(); }
  Pos leaves() const noexcept { return leaves_; }

 private:
  Pos add_leaf(NodeId parent, Pos start, Pos length) {
    const auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back({start, length, true, kNoNode, nodes_[parent].first_child, leaves_});
    nodes_[parent].first_child = id;
    return leaves_++;
  }

  const Sequence& seq_;
  Pos k_;
  std::vector<DraftEdge> nodes_;
  Pos leaves_ = 0;
};

void check_starts(const Sequence& seq, std::size_t k, Symbol symbol,
                  std::span<const Pos> starts) {
  const auto records = seq.records();
  std::size_t rec = 0;
  for (std::size_t j = 0; j < starts.size(); ++j) {
    const std::size_t i = starts[j];
    if (j > 0 && starts[j - 1] >= i) {
      throw Error(ErrorCode::ForeignStart, "starts are not strictly ascending");
    }
    if (i >= seq.size() || seq[i] != symbol) {
      throw Error(ErrorCode::ForeignStart,
                  "start " + std::to_string(i) + " does not begin with the branch symbol");
    }
    while (rec < records.size() &&
           std::size_t{records[rec].start} + records[rec].length <= i) {
      ++rec;
    }
    if (rec == records.size() ||
        i + k > std::size_t{records[rec].start} + records[rec].length) {
      throw Error(ErrorCode::ForeignStart,
                  "window at " + std::to_string(i) + " leaves its record");
    }
  }
}

}  // namespace

Branch build_branch(const Sequence& seq, std::size_t k, Symbol symbol,
                    std::span<const Pos> starts, const Deadline& deadline) {
  if (k == 0) throw Error(ErrorCode::InvalidK, "window length k must be >= 1");
  check_starts(seq, k, symbol, starts);

  Branch branch;
  branch.symbol = symbol;
  if (starts.empty()) return branch;

  BranchDraft draft(seq, k, starts.size());
  std::vector<Pos> leaf_of(starts.size());
  for (std::size_t j = 0; j < starts.size(); ++j) {
    if ((j & 0xfff) == 0) deadline.check();
    leaf_of[j] = draft.insert(starts[j]);
  }

  // Counting sort of starts by leaf; starts are ascending so each leaf's list
  // comes out ascending.
  std::vector<Pos> offset(std::size_t{draft.leaves()} + 1, 0);
  for (Pos tag : leaf_of) ++offset[tag + 1];
  for (std::size_t t = 1; t < offset.size(); ++t) offset[t] += offset[t - 1];
  std::vector<Pos> grouped(starts.size());
  {
    std::vector<Pos> cursor(offset.begin(), offset.end() - 1);
    for (std::size_t j = 0; j < starts.size(); ++j) grouped[cursor[leaf_of[j]]++] = starts[j];
  }

  const NodeId top = draft.node(0).first_child;
  branch.arena = detail::compact(
      top, seq, draft.size() - 1,
      [&](NodeId id) -> const DraftEdge& { return draft.node(id); },
      [&](Pos tag, std::vector<Pos>& out) {
        out.insert(out.end(), grouped.begin() + offset[tag],
                   grouped.begin() + offset[tag + 1]);
      });
  return branch;
}

SuffixTree merge_branches(std::vector<Branch> branches, const Sequence& seq,
                          std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidK, "window length k must be >= 1");
  std::sort(branches.begin(), branches.end(),
            [](const Branch& a, const Branch& b) { return a.symbol < b.symbol; });
  for (std::size_t i = 1; i < branches.size(); ++i) {
    if (branches[i - 1].symbol == branches[i].symbol) {
      throw Error(ErrorCode::DuplicateBranch,
                  "two branches for symbol " + std::to_string(branches[i].symbol));
    }
  }
  std::erase_if(branches, [](const Branch& b) { return b.empty(); });
  for (const Branch& b : branches) {
    const Node& top = b.arena.nodes.front();
    if (top.length == 0 || top.start >= seq.size() || seq[top.start] != b.symbol) {
      throw Error(ErrorCode::ForeignStart,
                  "branch top edge does not start with its symbol");
    }
  }

  std::size_t total_nodes = 2, total_children = 1 + branches.size(), total_occ = 0;
  for (const Branch& b : branches) {
    total_nodes += b.arena.nodes.size();
    total_children += b.arena.child_ids.size();
    total_occ += b.arena.occurrences.size();
  }

  Arena arena;
  arena.nodes.reserve(total_nodes);
  arena.child_ids.reserve(total_children);
  arena.occurrences.reserve(total_occ);

  Node root;
  root.first_child = 0;
  root.child_count = static_cast<NodeId>(1 + branches.size());
  Node terminal_leaf;
  terminal_leaf.terminal = true;
  arena.nodes.push_back(root);
  arena.nodes.push_back(terminal_leaf);
  arena.child_ids.push_back(1);

  // Pre-order layout: root, "$", then each branch's own pre-order block.
  NodeId base = 2;
  for (const Branch& b : branches) {
    arena.child_ids.push_back(base);
    base += static_cast<NodeId>(b.arena.nodes.size());
  }
  for (Branch& b : branches) {
    const auto node_base = static_cast<NodeId>(arena.nodes.size());
    const auto child_base = static_cast<NodeId>(arena.child_ids.size());
    const auto occ_base = static_cast<Pos>(arena.occurrences.size());
    for (Node n : b.arena.nodes) {
      n.first_child += child_base;
      n.first_occurrence += occ_base;
      arena.nodes.push_back(n);
    }
    for (NodeId c : b.arena.child_ids) arena.child_ids.push_back(c + node_base);
    arena.occurrences.insert(arena.occurrences.end(), b.arena.occurrences.begin(),
                             b.arena.occurrences.end());
    b.arena = {};
  }
  return SuffixTree(std::move(arena), 0, k, seq.size());
}

namespace {

struct Task {
  Symbol symbol;
  std::size_t weight;
};

// Runs task(i) for i in [0, count) on up to `workers` threads, then joins.
// Slot i of the result belongs to task i alone.
template <class Fn>
void run_tasks(std::size_t count, std::size_t workers, bool dynamic, Fn&& fn) {
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          if (dynamic) {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
          } else {
            for (std::size_t i = w; i < count; i += workers) fn(i);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }  // sync
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

SuffixTree build_past(const Sequence& seq, const BuildConfig& cfg) {
  if (cfg.k == 0) throw Error(ErrorCode::InvalidK, "window length k must be >= 1");
  const std::size_t workers = std::max<std::size_t>(cfg.workers, 1);
  const Alphabet alphabet = extract_alphabet(seq);
  std::vector<Branch> branches;

  if (cfg.scan_mode == ScanMode::SingleScan) {
    const KmerPartition part = partition_windows(seq, cfg.k, alphabet);
    std::vector<Task> tasks;
    for (const auto& [symbol, starts] : part.buckets) {
      if (!starts.empty()) tasks.push_back({symbol, starts.size()});
    }
    // Largest bucket first bounds the imbalance of dynamic scheduling.
    std::stable_sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) {
      return a.weight > b.weight;
    });
    branches.resize(tasks.size());
    run_tasks(tasks.size(), workers, true, [&](std::size_t i) {
      branches[i] = build_branch(seq, cfg.k, tasks[i].symbol,
                                 part.bucket(tasks[i].symbol), cfg.deadline);
    });
  } else {
    // One symbol per task; each task scans all of the sequence for its symbol.
    branches.resize(alphabet.sigma());
    run_tasks(alphabet.sigma(), workers, false, [&](std::size_t i) {
      const Symbol s = alphabet.symbols[i];
      const std::vector<Pos> starts = scan_symbol(seq, cfg.k, s);
      branches[i] = build_branch(seq, cfg.k, s, starts, cfg.deadline);
    });
  }
  cfg.deadline.check();
  return merge_branches(std::move(branches), seq, cfg.k);
}

SuffixTree build_sequential(const Sequence& seq, std::size_t k,
                            const Deadline& deadline) {
  BuildConfig cfg;
  cfg.k = k;
  cfg.workers = 1;
  cfg.deadline = deadline;
  return build_past(seq, cfg);
}

}  // namespace past
