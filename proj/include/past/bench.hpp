#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "past/bench_row.hpp"
#include "past/builder.hpp"
#include "past/core.hpp"

namespace past {

enum class SpeedupKind {
  /// st_based time over PaST time on the same input.
  BaselineOverPast,
  /// PaST with one worker over PaST with P workers.
  SelfRelative,
};

std::string_view speedup_kind_name(SpeedupKind kind) noexcept;

struct SpeedupPoint {
  std::uint64_t text_size = 0;
  std::optional<std::size_t> k;
  std::size_t workers = 1;  // P of the parallel side
  SpeedupKind kind = SpeedupKind::BaselineOverPast;
  double ratio = 0.0;
};

/// sequential / parallel. Throws InvalidDuration unless both are > 0.
double speedup(double sequential_seconds, double parallel_seconds);

struct TimingOptions {
  std::size_t repetitions = 1;
  std::optional<std::chrono::duration<double>> timeout;
  ScanMode scan_mode = ScanMode::SingleScan;
  /// Called with the bounds of every timed region (builder entry and exit).
  std::function<void(std::chrono::steady_clock::time_point,
                     std::chrono::steady_clock::time_point)>
      probe;
};

/// Times construction only (the sequence is already in memory) and reports
/// the fastest repetition. A run that hits the timeout marks the row as
/// timed out and stops the repetitions. Throws ConfigError when st_based is
/// given a k, PaST lacks one, or repetitions == 0.
BenchRow time_build(BuilderKind builder, const Sequence& seq,
                    std::optional<std::size_t> k, std::size_t workers,
                    const TimingOptions& opts = {});

struct BenchInput {
  Sequence seq;
  std::uint64_t text_size = 0;  // bytes; reported in the CSV as MB
};

struct SuiteConfig {
  std::vector<std::size_t> ks;
  std::vector<std::size_t> workers{1};
  bool baseline = false;
  TimingOptions timing;
};

struct SuiteResult {
  std::vector<BenchRow> rows;
  std::vector<SpeedupPoint> speedups;
};

/// Sweeps inputs x ks x workers with PaST and, when enabled, one st_based run
/// per input. Speedups: one BaselineOverPast point per (input, k) against the
/// largest worker count, and one SelfRelative point per (input, k, P > 1)
/// when a one-worker run exists. Timed-out runs yield no points.
SuiteResult run_suite(const std::vector<BenchInput>& inputs, const SuiteConfig& cfg);

// Synthetic inputs.

/// Symbol set used for a synthetic alphabet of size sigma: "ACGT" for 4, the
/// twenty amino-acid letters for 20, otherwise printable ASCII from 'A'.
std::string synthetic_symbols(std::size_t sigma);

/// Uniform random text over synthetic_symbols(sigma).
std::string uniform_text(std::size_t n, std::size_t sigma, std::uint64_t seed);

struct PlantedRepeat {
  std::string unit;
  std::size_t copies = 0;
  Pos position = 0;  // start of the first copy

  /// Starts of every copy of `unit`.
  std::vector<Pos> copy_starts() const;
};

struct PlantedText {
  std::string text;
  std::vector<PlantedRepeat> log;
};

/// Random background over "ACGT" with `count` tandem repeats written into
/// non-overlapping slots. Unit sizes cycle through [min_unit, max_unit];
/// each repeat has between min_copies and min_copies + 3 copies.
PlantedText plant_microsatellites(std::size_t n, std::size_t count,
                                  std::size_t min_unit, std::size_t max_unit,
                                  std::size_t min_copies, std::uint64_t seed);

}  // namespace past
