#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "past/bench_row.hpp"
#include "past/core.hpp"

namespace past {

struct RecordMeta {
  std::string id;  // FASTA header without '>', empty for plain text
  Pos global_start = 0;
  Pos length = 0;

  friend bool operator==(const RecordMeta&, const RecordMeta&) = default;
};

struct ReadOptions {
  bool normalize_case = false;  // ASCII uppercase before indexing
  bool strip_newlines = true;   // plain text only
};

struct LoadedSequence {
  Sequence seq;
  std::vector<RecordMeta> records;
};

enum class InputFormat { Fasta, Text, Auto };

/// '>' lines start records; sequence lines are trimmed and concatenated.
/// Throws IoError, or FormatError when sequence text precedes any header.
LoadedSequence read_fasta(const std::filesystem::path& path,
                          const ReadOptions& opts = {});

/// Whole file as one record. Throws IoError.
Sequence read_text(const std::filesystem::path& path, const ReadOptions& opts = {});

/// FASTA when the first byte is '>' under InputFormat::Auto.
LoadedSequence read_input(const std::filesystem::path& path, InputFormat format,
                          const ReadOptions& opts = {});

/// Parsers behind read_fasta/read_text, for in-memory content.
LoadedSequence parse_fasta(std::string_view content, const ReadOptions& opts = {});
Sequence parse_text(std::string_view content, const ReadOptions& opts = {});

/// Pre-order dump, one line per node: depth, TAB, incoming edge label, TAB,
/// comma-separated occurrences. The marker prints as "$"; a literal '$' byte
/// and non-printable bytes print as \xHH.
std::string to_canonical(const SuffixTree& tree, const Sequence& seq);

/// Graphviz digraph of the tree in pre-order.
std::string to_dot(const SuffixTree& tree, const Sequence& seq);

/// Header "text_size_mb,builder,k,workers,seconds"; timed-out runs print
/// "n/a" as seconds.
std::string format_bench_csv(std::span<const BenchRow> rows);
std::vector<BenchRow> parse_bench_csv(std::string_view csv);
/// Throws IoError, and ConfigError for an empty row list.
void write_bench_csv(std::span<const BenchRow> rows,
                     const std::filesystem::path& path);

/// Human table: one line per text size, the st_based column, then one column
/// per k (fastest PaST worker count).
std::string render_bench_table(std::span<const BenchRow> rows);

}  // namespace past
