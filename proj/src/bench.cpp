#include "past/bench.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "past/baseline.hpp"

namespace past {

std::string_view speedup_kind_name(SpeedupKind kind) noexcept {
  return kind == SpeedupKind::BaselineOverPast ? "st_based/past" : "past1/pastP";
}

double speedup(double sequential_seconds, double parallel_seconds) {
  if (!(sequential_seconds > 0.0) || !(parallel_seconds > 0.0)) {
    throw Error(ErrorCode::InvalidDuration, "speedup needs two positive durations");
  }
  return sequential_seconds / parallel_seconds;
}

BenchRow time_build(BuilderKind builder, const Sequence& seq,
                    std::optional<std::size_t> k, std::size_t workers,
                    const TimingOptions& opts) {
  using Clock = std::chrono::steady_clock;
  if (opts.repetitions == 0) throw Error(ErrorCode::ConfigError, "repetitions must be >= 1");
  if (builder == BuilderKind::StBased && k) {
    throw Error(ErrorCode::ConfigError, "st_based builds the full tree and takes no k");
  }
  if (builder == BuilderKind::Past && (!k || *k == 0)) {
    throw Error(ErrorCode::ConfigError, "past needs a window length k >= 1");
  }
  if (workers == 0) throw Error(ErrorCode::ConfigError, "workers must be >= 1");

  BenchRow row;
  row.text_size = seq.size();
  row.builder = builder;
  row.k = k;
  row.workers = builder == BuilderKind::StBased ? 1 : workers;

  std::optional<Clock::duration> best;
  for (std::size_t rep = 0; rep < opts.repetitions; ++rep) {
    Deadline deadline;
    const Clock::time_point start = Clock::now();
    if (opts.timeout) {
      deadline = Deadline(start + std::chrono::duration_cast<Clock::duration>(*opts.timeout));
    }
    bool timed_out = false;
    try {
      if (builder == BuilderKind::Past) {
        BuildConfig cfg;
        cfg.k = *k;
        cfg.workers = workers;
        cfg.scan_mode = opts.scan_mode;
        cfg.deadline = deadline;
        SuffixTree tree = build_past(seq, cfg);
      } else {
        SuffixTree tree = build_ukkonen(seq, deadline);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Timeout) throw;
      timed_out = true;
    }
    const Clock::time_point stop = Clock::now();
    if (opts.probe) opts.probe(start, stop);
    const Clock::duration elapsed = std::max<Clock::duration>(stop - start, Clock::duration{1});
    if (timed_out || (opts.timeout && elapsed > *opts.timeout)) {
      row.status = RunStatus::Timeout;
      row.seconds = std::chrono::duration<double>(elapsed).count();
      return row;
    }
    if (!best || elapsed < *best) best = elapsed;
  }
  row.seconds = std::chrono::duration<double>(*best).count();
  return row;
}

SuiteResult run_suite(const std::vector<BenchInput>& inputs, const SuiteConfig& cfg) {
  if (inputs.empty() || cfg.ks.empty() || cfg.workers.empty()) {
    throw Error(ErrorCode::ConfigError, "suite needs inputs, ks and worker counts");
  }
  SuiteResult result;
  const std::size_t max_workers = *std::max_element(cfg.workers.begin(), cfg.workers.end());

  for (const BenchInput& in : inputs) {
    std::optional<BenchRow> base;
    if (cfg.baseline) {
      base = time_build(BuilderKind::StBased, in.seq, std::nullopt, 1, cfg.timing);
      base->text_size = in.text_size;
      result.rows.push_back(*base);
    }
    for (std::size_t k : cfg.ks) {
      std::map<std::size_t, BenchRow> by_workers;
      for (std::size_t w : cfg.workers) {
        BenchRow row = time_build(BuilderKind::Past, in.seq, k, w, cfg.timing);
        row.text_size = in.text_size;
        result.rows.push_back(row);
        by_workers.emplace(w, row);
      }
      auto ok = [](const BenchRow& r) { return r.status == RunStatus::Ok; };
      const BenchRow& widest = by_workers.at(max_workers);
      if (base && ok(*base) && ok(widest)) {
        result.speedups.push_back({in.text_size, k, max_workers,
                                   SpeedupKind::BaselineOverPast,
                                   speedup(base->seconds, widest.seconds)});
      }
      auto one = by_workers.find(1);
      if (one == by_workers.end() || !ok(one->second)) continue;
      for (const auto& [w, row] : by_workers) {
        if (w == 1 || !ok(row)) continue;
        result.speedups.push_back({in.text_size, k, w, SpeedupKind::SelfRelative,
                                   speedup(one->second.seconds, row.seconds)});
      }
    }
  }
  return result;
}

std::string synthetic_symbols(std::size_t sigma) {
  if (sigma == 4) return "ACGT";
  if (sigma == 20) return "ACDEFGHIKLMNPQRSTVWY";
  if (sigma == 0 || sigma > 94) {
    throw Error(ErrorCode::ConfigError, "synthetic alphabet size must be in 1..94");
  }
  std::string out;
  for (std::size_t i = 0; i < sigma; ++i) out += static_cast<char>('!' + i);
  return out;
}

std::string uniform_text(std::size_t n, std::size_t sigma, std::uint64_t seed) {
  const std::string symbols = synthetic_symbols(sigma);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, symbols.size() - 1);
  std::string out(n, '\0');
  for (char& c : out) c = symbols[pick(rng)];
  return out;
}

std::vector<Pos> PlantedRepeat::copy_starts() const {
  std::vector<Pos> out;
  for (std::size_t i = 0; i < copies; ++i) {
    out.push_back(static_cast<Pos>(position + i * unit.size()));
  }
  return out;
}

PlantedText plant_microsatellites(std::size_t n, std::size_t count,
                                  std::size_t min_unit, std::size_t max_unit,
                                  std::size_t min_copies, std::uint64_t seed) {
  if (min_unit == 0 || max_unit < min_unit || min_copies == 0) {
    throw Error(ErrorCode::ConfigError, "invalid repeat shape");
  }
  constexpr std::size_t kExtraCopies = 3;
  const std::size_t longest = max_unit * (min_copies + kExtraCopies);
  if (count > 0 && n / count < longest) {
    throw Error(ErrorCode::ConfigError, "background too short for the planted repeats");
  }

  PlantedText out{uniform_text(n, 4, seed), {}};
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const std::string bases = "ACGT";
  std::uniform_int_distribution<std::size_t> base(0, 3);
  std::uniform_int_distribution<std::size_t> extra(0, kExtraCopies);
  for (std::size_t i = 0; i < count; ++i) {
    PlantedRepeat rep;
    const std::size_t unit_size = min_unit + i % (max_unit - min_unit + 1);
    for (std::size_t j = 0; j < unit_size; ++j) rep.unit += bases[base(rng)];
    rep.copies = min_copies + extra(rng);
    const std::size_t slot = n / count;
    const std::size_t span = rep.unit.size() * rep.copies;
    std::uniform_int_distribution<std::size_t> offset(0, slot - span);
    rep.position = static_cast<Pos>(i * slot + offset(rng));
    for (std::size_t c = 0; c < rep.copies; ++c) {
      out.text.replace(rep.position + c * unit_size, unit_size, rep.unit);
    }
    out.log.push_back(std::move(rep));
  }
  return out;
}

}  // namespace past
