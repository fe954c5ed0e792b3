#include "past/partition.hpp"

#include <array>

namespace past {

std::span<const Pos> KmerPartition::bucket(Symbol s) const {
  auto it = buckets.find(s);
  if (it == buckets.end()) return {};
  return it->second;
}

Alphabet extract_alphabet(const Sequence& seq) {
  std::array<bool, 256> present{};
  for (char c : seq.text()) present[static_cast<Symbol>(c)] = true;
  Alphabet a;
  for (std::size_t s = 0; s < present.size(); ++s) {
    if (present[s]) a.symbols.push_back(static_cast<Symbol>(s));
  }
  return a;
}

namespace {

void require_k(std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidK, "window length k must be >= 1");
}

}  // namespace

KmerPartition partition_windows(const Sequence& seq, std::size_t k,
                                const Alphabet& alphabet) {
  require_k(k);
  KmerPartition part;
  part.k = k;

  std::array<std::size_t, 256> counts{};
  for (const auto& r : seq.records()) {
    if (r.length < k) continue;
    const std::size_t last = std::size_t{r.start} + r.length - k;
    for (std::size_t i = r.start; i <= last; ++i) ++counts[seq[i]];
  }

  std::array<std::vector<Pos>*, 256> slots{};
  for (Symbol s : alphabet.symbols) {
    auto& b = part.buckets[s];
    b.reserve(counts[s]);
    slots[s] = &b;
  }
  for (const auto& r : seq.records()) {
    if (r.length < k) continue;
    const std::size_t last = std::size_t{r.start} + r.length - k;
    for (std::size_t i = r.start; i <= last; ++i) {
      if (auto* b = slots[seq[i]]) {
        b->push_back(static_cast<Pos>(i));
        ++part.total_windows;
      }
    }
  }
  return part;
}

std::vector<Pos> scan_symbol(const Sequence& seq, std::size_t k, Symbol symbol) {
  require_k(k);
  std::vector<Pos> starts;
  for (const auto& r : seq.records()) {
    if (r.length < k) continue;
    const std::size_t last = std::size_t{r.start} + r.length - k;
    for (std::size_t i = r.start; i <= last; ++i) {
      if (seq[i] == symbol) starts.push_back(static_cast<Pos>(i));
    }
  }
  return starts;
}

}  // namespace past
