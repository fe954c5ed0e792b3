#include "past/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <new>
#include <optional>
#include <sstream>
#include <thread>

#include "past/baseline.hpp"
#include "past/bench.hpp"
#include "past/builder.hpp"
#include "past/ingest.hpp"
#include "past/query.hpp"

namespace past {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t default_workers() {
  if (const char* env = std::getenv("PAST_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct Options {
  std::string input;
  InputFormat format = InputFormat::Auto;
  std::size_t k = 0;
  std::size_t workers = 1;
  bool normalize_case = false;
  std::string output;
  std::string emit;
  ScanMode scan_mode = ScanMode::SingleScan;
  bool baseline = false;
  bool record_coords = false;
  std::string pattern;
  std::size_t min_count = 2;
  bool microsatellite = false;

  // bench
  std::vector<double> sizes_mb;
  std::vector<std::size_t> ks;
  std::vector<std::size_t> worker_list;
  double timeout = 0.0;
  std::size_t sigma = 4;
  std::uint64_t seed = 1;
  std::size_t repetitions = 1;
};

LoadedSequence load(const Options& o) {
  ReadOptions ro;
  ro.normalize_case = o.normalize_case;
  return read_input(o.input, o.format, ro);
}

SuffixTree build_tree(const Options& o, const Sequence& seq) {
  if (o.baseline) return build_ukkonen(seq);
  BuildConfig cfg;
  cfg.k = o.k;
  cfg.workers = o.workers;
  cfg.scan_mode = o.scan_mode;
  return build_past(seq, cfg);
}

std::string position_text(Pos p, const Options& o, const std::vector<RecordMeta>& meta) {
  if (!o.record_coords || meta.empty()) return std::to_string(p);
  auto it = std::upper_bound(meta.begin(), meta.end(), p,
                             [](Pos v, const RecordMeta& m) { return v < m.global_start; });
  while (it != meta.begin()) {
    --it;
    if (p < it->global_start + it->length) break;
  }
  const std::string id = it->id.empty() ? "seq" : it->id.substr(0, it->id.find(' '));
  return id + ":" + std::to_string(p - it->global_start);
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::IoError, "cannot open " + o.output);
  file << text;
  if (!file.flush()) throw Error(ErrorCode::IoError, "write failed for " + o.output);
}

void cmd_build(const Options& o, std::ostream& out) {
  if (!o.baseline && o.k == 0) throw UsageError("build needs --k (or --baseline)");
  const LoadedSequence in = load(o);
  const SuffixTree tree = build_tree(o, in.seq);
  const std::string& mode = o.emit.empty() ? std::string("canonical") : o.emit;
  if (mode == "canonical") {
    emit(o, to_canonical(tree, in.seq), out);
  } else if (mode == "dot") {
    emit(o, to_dot(tree, in.seq), out);
  } else {
    throw UsageError("build emits canonical or dot, not " + mode);
  }
}

void cmd_search(const Options& o, std::ostream& out) {
  if (!o.baseline && o.k == 0) throw UsageError("search needs --k (or --baseline)");
  const LoadedSequence in = load(o);
  const SuffixTree tree = build_tree(o, in.seq);
  const std::vector<Pos> hits = occurrences(tree, in.seq, o.pattern);
  std::ostringstream os;
  os << o.pattern << ": " << hits.size() << (hits.size() == 1 ? " occurrence" : " occurrences");
  for (std::size_t i = 0; i < hits.size(); ++i) {
    os << (i == 0 ? " at " : ", ") << position_text(hits[i], o, in.records);
  }
  os << '\n';
  emit(o, os.str(), out);
}

void cmd_repeats(const Options& o, std::ostream& out) {
  if (o.k == 0) throw UsageError("repeats needs --k");
  if (o.microsatellite && (o.k < 2 || o.k > 6)) {
    throw UsageError("--microsatellite restricts --k to 2..6");
  }
  const LoadedSequence in = load(o);
  Options past_opts = o;
  past_opts.baseline = false;
  const SuffixTree tree = build_tree(past_opts, in.seq);
  std::ostringstream os;
  for (const RepeatHit& hit : enumerate_repeats(tree, in.seq, o.min_count)) {
    os << hit.kmer << '\t' << hit.count << '\t';
    for (std::size_t i = 0; i < hit.positions.size(); ++i) {
      if (i) os << ',';
      os << position_text(hit.positions[i], o, in.records);
    }
    os << '\n';
  }
  emit(o, os.str(), out);
}

void cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.sizes_mb.empty() || o.ks.empty()) throw UsageError("bench needs --sizes and --ks");
  std::optional<LoadedSequence> source;
  if (!o.input.empty()) source = load(o);

  std::vector<BenchInput> inputs;
  for (std::size_t i = 0; i < o.sizes_mb.size(); ++i) {
    const double mb = o.sizes_mb[i];
    if (!(mb >= 0.0)) throw UsageError("--sizes must be non-negative");
    const auto bytes = static_cast<std::size_t>(std::llround(mb * 1024.0 * 1024.0));
    if (bytes > kMaxSequenceLength) {
      throw Error(ErrorCode::SequenceTooLong, "--sizes entry exceeds the 32-bit position range");
    }
    std::string text;
    if (source) {
      if (bytes > source->seq.size()) {
        throw Error(ErrorCode::ConfigError, "input holds fewer than " + std::to_string(bytes) +
                                                " symbols");
      }
      text = std::string(source->seq.text().substr(0, bytes));
    } else {
      text = uniform_text(bytes, o.sigma, o.seed + i);
    }
    inputs.push_back({Sequence(std::move(text)), bytes});
  }

  SuiteConfig cfg;
  cfg.ks = o.ks;
  cfg.workers = o.worker_list.empty() ? std::vector<std::size_t>{o.workers} : o.worker_list;
  cfg.baseline = o.baseline;
  cfg.timing.repetitions = o.repetitions;
  cfg.timing.scan_mode = o.scan_mode;
  if (o.timeout > 0.0) cfg.timing.timeout = std::chrono::duration<double>(o.timeout);

  const SuiteResult result = run_suite(inputs, cfg);
  const std::string& mode = o.emit.empty() ? std::string("csv") : o.emit;
  if (mode == "csv") {
    if (o.output.empty()) {
      out << format_bench_csv(result.rows);
    } else {
      write_bench_csv(result.rows, o.output);
    }
  } else if (mode == "table") {
    emit(o, render_bench_table(result.rows), out);
  } else {
    throw UsageError("bench emits csv or table, not " + mode);
  }
  for (const SpeedupPoint& p : result.speedups) {
    err << "speedup " << speedup_kind_name(p.kind) << " size_mb="
        << static_cast<double>(p.text_size) / (1024.0 * 1024.0)
        << " k=" << (p.k ? std::to_string(*p.k) : std::string("-")) << " P=" << p.workers
        << " ratio=" << p.ratio << '\n';
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parallel k-mer suffix tree construction, search and repeat detection"};
  app.require_subcommand(1);
  Options o;
  o.workers = default_workers();

  const std::map<std::string, InputFormat> formats{
      {"fasta", InputFormat::Fasta}, {"text", InputFormat::Text}, {"auto", InputFormat::Auto}};
  const std::map<std::string, ScanMode> scans{{"single", ScanMode::SingleScan},
                                              {"per-symbol", ScanMode::PerSymbolScan}};

  auto add_common = [&](CLI::App* sub, bool input_required) {
    auto* in = sub->add_option("--input", o.input, "Input file (FASTA or plain text)");
    if (input_required) in->required();
    sub->add_option("--format", o.format, "Input format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_flag("--normalize-case", o.normalize_case, "Uppercase ASCII letters before indexing");
    sub->add_option("--output", o.output, "Write to this file instead of stdout");
    sub->add_option("--scan-mode", o.scan_mode, "Window bucketing strategy")
        ->transform(CLI::CheckedTransformer(scans, CLI::ignore_case));
  };
  auto add_tree_opts = [&](CLI::App* sub) {
    add_common(sub, true);
    sub->add_option("--k", o.k, "Window length");
    sub->add_option("--workers", o.workers, "Parallel branch builders (default $PAST_WORKERS)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--record-coords", o.record_coords, "Report positions as record:offset");
  };

  CLI::App* build = app.add_subcommand("build", "Build a tree and print it");
  add_tree_opts(build);
  build->add_flag("--baseline", o.baseline, "Build the full tree sequentially instead");
  build->add_option("--emit", o.emit, "canonical or dot")
      ->check(CLI::IsMember({"canonical", "dot"}));

  CLI::App* search = app.add_subcommand("search", "Report occurrences of a pattern");
  add_tree_opts(search);
  search->add_flag("--baseline", o.baseline, "Search the full tree instead");
  search->add_option("--pattern", o.pattern, "Pattern to look up")->required();

  CLI::App* repeats = app.add_subcommand("repeats", "List k-mers occurring at least --min-count times");
  add_tree_opts(repeats);
  repeats->add_option("--min-count", o.min_count, "Minimum occurrence count");
  repeats->add_flag("--microsatellite", o.microsatellite, "Restrict --k to unit sizes 2..6");

  CLI::App* bench = app.add_subcommand("bench", "Time construction over a size/k/worker sweep");
  add_common(bench, false);
  bench->add_option("--sizes", o.sizes_mb, "Input sizes in MB")->delimiter(',')->required();
  bench->add_option("--ks", o.ks, "Window lengths")->delimiter(',')->required();
  bench->add_option("--workers", o.worker_list, "Worker counts")->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench->add_flag("--baseline", o.baseline, "Also time the sequential full-tree builder");
  bench->add_option("--timeout", o.timeout, "Per-run cutoff in seconds (0 = none)");
  bench->add_option("--sigma", o.sigma, "Synthetic alphabet size");
  bench->add_option("--seed", o.seed, "Synthetic input seed");
  bench->add_option("--repetitions", o.repetitions, "Runs per cell; the fastest is reported")
      ->check(CLI::PositiveNumber);
  bench->add_option("--emit", o.emit, "csv or table")->check(CLI::IsMember({"csv", "table"}));

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (build->parsed()) cmd_build(o, out);
    if (search->parsed()) cmd_search(o, out);
    if (repeats->parsed()) cmd_repeats(o, out);
    if (bench->parsed()) cmd_bench(o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return 1;
  }
  return 0;
}

}  // namespace past
