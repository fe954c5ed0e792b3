#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "past/core.hpp"

namespace past {

/// Window starts grouped by their first symbol. Every alphabet symbol has a
/// bucket, possibly empty.
struct KmerPartition {
  std::size_t k = 0;
  std::map<Symbol, std::vector<Pos>> buckets;
  std::size_t total_windows = 0;

  /// Bucket of `s`, or an empty span when `s` has none.
  std::span<const Pos> bucket(Symbol s) const;
  friend bool operator==(const KmerPartition&, const KmerPartition&) = default;
};

/// Distinct symbols of `seq`, ascending.
Alphabet extract_alphabet(const Sequence& seq);

/// One sequential scan over `seq`. Windows of length k that would cross a
/// record boundary or run past the end are skipped. Throws InvalidK when
/// k == 0.
KmerPartition partition_windows(const Sequence& seq, std::size_t k,
                                const Alphabet& alphabet);

/// Valid window starts whose first symbol is `symbol`, found by scanning the
/// whole sequence for that symbol alone. Produces the same list as the
/// matching bucket of partition_windows.
std::vector<Pos> scan_symbol(const Sequence& seq, std::size_t k, Symbol symbol);

}  // namespace past
