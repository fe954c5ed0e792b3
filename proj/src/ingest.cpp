#include "past/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace past {

std::string_view builder_name(BuilderKind kind) noexcept {
  return kind == BuilderKind::Past ? "past" : "st_based";
}

// ---------------------------------------------------------------------------
// Reading

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "read failed for " + path.string());
  return std::move(buf).str();
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

void upcase(std::string& s) {
  for (char& c : s) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
}

}  // namespace

LoadedSequence parse_fasta(std::string_view content, const ReadOptions& opts) {
  std::string data;
  std::vector<Sequence::Record> records;
  std::vector<RecordMeta> meta;

  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;

    if (!line.empty() && line.front() == '>') {
      meta.push_back({std::string(trim(line.substr(1))), static_cast<Pos>(data.size()), 0});
      records.push_back({static_cast<Pos>(data.size()), 0});
      continue;
    }
    line = trim(line);
    if (line.empty()) continue;
    if (meta.empty()) {
      throw Error(ErrorCode::FormatError,
                  "sequence data before the first '>' header; use plain-text mode");
    }
    data.append(line);
    if (data.size() > kMaxSequenceLength) {
      throw Error(ErrorCode::SequenceTooLong, "FASTA content exceeds the 32-bit position range");
    }
    records.back().length = static_cast<Pos>(data.size() - records.back().start);
    meta.back().length = records.back().length;
  }
  if (opts.normalize_case) upcase(data);
  return {Sequence(std::move(data), std::move(records)), std::move(meta)};
}

Sequence parse_text(std::string_view content, const ReadOptions& opts) {
  std::string data;
  if (opts.strip_newlines) {
    data.reserve(content.size());
    for (char c : content) {
      if (c != '\n' && c != '\r') data.push_back(c);
    }
  } else {
    data.assign(content);
  }
  if (opts.normalize_case) upcase(data);
  return Sequence(std::move(data));
}

LoadedSequence read_fasta(const std::filesystem::path& path, const ReadOptions& opts) {
  return parse_fasta(slurp(path), opts);
}

Sequence read_text(const std::filesystem::path& path, const ReadOptions& opts) {
  return parse_text(slurp(path), opts);
}

LoadedSequence read_input(const std::filesystem::path& path, InputFormat format,
                          const ReadOptions& opts) {
  const std::string content = slurp(path);
  if (format == InputFormat::Auto) {
    format = !content.empty() && content.front() == '>' ? InputFormat::Fasta
                                                         : InputFormat::Text;
  }
  if (format == InputFormat::Fasta) return parse_fasta(content, opts);
  Sequence seq = parse_text(content, opts);
  std::vector<RecordMeta> meta{{"", 0, static_cast<Pos>(seq.size())}};
  return {std::move(seq), std::move(meta)};
}

// ---------------------------------------------------------------------------
// Tree serialization

namespace {

void append_escaped(std::string& out, std::string_view text) {
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (c < 0x20 || c >= 0x7f || c == '$' || c == '\\' || c == '"') {
      char buf[5];
      std::snprintf(buf, sizeof buf, "\\x%02X", c);
      out += buf;
    } else {
      out += ch;
    }
  }
}

std::string label_of(const Node& n, const Sequence& seq) {
  std::string out;
  append_escaped(out, seq.text().substr(n.start, n.length));
  if (n.terminal) out += '$';
  return out;
}

void append_positions(std::string& out, std::span<const Pos> occ) {
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(occ[i]);
  }
}

// Pre-order visit with node depth.
template <class Visit>
void preorder(const SuffixTree& tree, Visit&& visit) {
  std::vector<std::pair<NodeId, std::size_t>> stack{{tree.root(), 0}};
  while (!stack.empty()) {
    auto [id, depth] = stack.back();
    stack.pop_back();
    visit(id, depth);
    auto kids = tree.children(id);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.emplace_back(*it, depth + 1);
  }
}

}  // namespace

std::string to_canonical(const SuffixTree& tree, const Sequence& seq) {
  std::string out;
  preorder(tree, [&](NodeId id, std::size_t depth) {
    out += std::to_string(depth);
    out += '\t';
    if (id != tree.root()) out += label_of(tree.node(id), seq);
    out += '\t';
    append_positions(out, tree.occurrences(id));
    out += '\n';
  });
  return out;
}

std::string to_dot(const SuffixTree& tree, const Sequence& seq) {
  // Ids in the output are pre-order ranks, so equal trees print equal text.
  std::vector<std::size_t> rank(tree.size(), 0);
  std::size_t next = 0;
  preorder(tree, [&](NodeId id, std::size_t) { rank[id] = next++; });

  std::string out = "digraph suffix_tree {\n";
  out += "  node [shape=circle, label=\"\", width=0.15];\n";
  preorder(tree, [&](NodeId id, std::size_t) {
    const std::string name = "n" + std::to_string(rank[id]);
    out += "  " + name;
    if (id == tree.root()) {
      out += " [shape=doublecircle];\n";
    } else if (tree.node(id).is_leaf()) {
      out += " [shape=box, label=\"";
      append_positions(out, tree.occurrences(id));
      out += "\"];\n";
    } else {
      out += ";\n";
    }
    for (NodeId c : tree.children(id)) {
      out += "  " + name + " -> n" + std::to_string(rank[c]) + " [label=\"" +
             label_of(tree.node(c), seq) + "\"];\n";
    }
  });
  out += "}\n";
  return out;
}

// ---------------------------------------------------------------------------
// Bench CSV

namespace {

constexpr double kBytesPerMb = 1024.0 * 1024.0;
constexpr std::string_view kCsvHeader = "text_size_mb,builder,k,workers,seconds";

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Up to six significant digits, for display only.
std::string compact(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

// Left-aligned in `width`, always followed by at least two spaces.
std::string column(const std::string& s, std::size_t width) {
  return s + std::string(s.size() + 2 > width ? 2 : width - s.size(), ' ');
}

std::string fixed3(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << v;
  return os.str();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    std::size_t next = line.find(sep, pos);
    out.push_back(line.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

template <class T>
T parse_number(std::string_view field, std::string_view what) {
  T value{};
  auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw Error(ErrorCode::FormatError,
                "bad " + std::string(what) + " field '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::string format_bench_csv(std::span<const BenchRow> rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const BenchRow& r : rows) {
    out += shortest(static_cast<double>(r.text_size) / kBytesPerMb);
    out += ',';
    out += builder_name(r.builder);
    out += ',';
    if (r.k) out += std::to_string(*r.k);
    out += ',';
    out += std::to_string(r.workers);
    out += ',';
    out += r.status == RunStatus::Timeout ? std::string("n/a") : fixed3(r.seconds);
    out += '\n';
  }
  return out;
}

std::vector<BenchRow> parse_bench_csv(std::string_view csv) {
  std::vector<BenchRow> rows;
  bool header = true;
  for (std::string_view line : split(csv, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      if (line != kCsvHeader) throw Error(ErrorCode::FormatError, "unexpected CSV header");
      header = false;
      continue;
    }
    auto f = split(line, ',');
    if (f.size() != 5) throw Error(ErrorCode::FormatError, "expected 5 CSV fields");
    BenchRow r;
    r.text_size = static_cast<std::uint64_t>(
        parse_number<double>(f[0], "text_size_mb") * kBytesPerMb + 0.5);
    if (f[1] == "past") {
      r.builder = BuilderKind::Past;
    } else if (f[1] == "st_based") {
      r.builder = BuilderKind::StBased;
    } else {
      throw Error(ErrorCode::FormatError, "unknown builder '" + std::string(f[1]) + "'");
    }
    if (!f[2].empty()) r.k = parse_number<std::size_t>(f[2], "k");
    r.workers = parse_number<std::size_t>(f[3], "workers");
    if (f[4] == "n/a") {
      r.status = RunStatus::Timeout;
    } else {
      r.seconds = parse_number<double>(f[4], "seconds");
    }
    rows.push_back(r);
  }
  return rows;
}

void write_bench_csv(std::span<const BenchRow> rows, const std::filesystem::path& path) {
  if (rows.empty()) throw Error(ErrorCode::ConfigError, "no benchmark rows to write");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  out << format_bench_csv(rows);
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::string render_bench_table(std::span<const BenchRow> rows) {
  std::set<std::uint64_t> sizes;
  std::set<std::size_t> ks;
  std::map<std::uint64_t, const BenchRow*> baseline;
  std::map<std::pair<std::uint64_t, std::size_t>, const BenchRow*> past;
  for (const BenchRow& r : rows) {
    sizes.insert(r.text_size);
    if (r.builder == BuilderKind::StBased) {
      baseline[r.text_size] = &r;
    } else if (r.k) {
      ks.insert(*r.k);
      auto& slot = past[{r.text_size, *r.k}];
      if (!slot || r.workers > slot->workers) slot = &r;
    }
  }
  auto cell = [](const BenchRow* r) -> std::string {
    if (!r) return "-";
    return r->status == RunStatus::Timeout ? "n/a" : fixed3(r->seconds);
  };

  std::ostringstream os;
  os << column("Text Size (MB)", 16) << column("ST-Based (s)", 14);
  for (std::size_t k : ks) os << column("k = " + std::to_string(k), 10);
  os << '\n';
  for (std::uint64_t size : sizes) {
    os << column(compact(static_cast<double>(size) / kBytesPerMb), 16);
    auto b = baseline.find(size);
    os << column(cell(b == baseline.end() ? nullptr : b->second), 14);
    for (std::size_t k : ks) {
      auto p = past.find({size, k});
      os << column(cell(p == past.end() ? nullptr : p->second), 10);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace past
