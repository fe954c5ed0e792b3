#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace past {

enum class BuilderKind { Past, StBased };
enum class RunStatus { Ok, Timeout };

std::string_view builder_name(BuilderKind kind) noexcept;

/// One timed construction.
struct BenchRow {
  std::uint64_t text_size = 0;  // bytes
  BuilderKind builder = BuilderKind::Past;
  std::optional<std::size_t> k;  // absent for st_based
  std::size_t workers = 1;
  double seconds = 0.0;
  RunStatus status = RunStatus::Ok;

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

}  // namespace past
