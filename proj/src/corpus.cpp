#include "gamesmell/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include "gamesmell/metrics.hpp"
#include "gamesmell/patterns.hpp"
#include "gamesmell/scope.hpp"
#include "gamesmell/smells.hpp"
#include "gamesmell/source_unit.hpp"

namespace gamesmell {

namespace fs = std::filesystem;

const std::array<std::string_view, 4> kStatisticRows = {
    "Number of smells",
    "Average smell in each game",
    "% out of all smells",
    "% of games containing smell",
};

namespace {

std::string read_file(const fs::path& path, bool& ok) {
  std::ifstream in(path, std::ios::binary);
  ok = static_cast<bool>(in);
  if (!ok) return {};
  std::stringstream buffer;
  buffer << in.rdbuf();
  ok = !in.bad();
  return buffer.str();
}

// Splits one CSV record; double quotes may wrap fields and "" escapes a quote.
std::optional<std::vector<std::string>> split_csv(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) return std::nullopt;
  fields.push_back(std::move(cur));
  for (auto& f : fields) {
    auto b = f.find_first_not_of(" \t");
    auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return fields;
}

std::optional<int> parse_int(const std::string& s) {
  int v = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size() || v < 0) return std::nullopt;
  return v;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_diagnostic(const std::string& path, const ParseDiagnostic& d, std::string_view level) {
  return path + ":" + std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + std::string(level) + ": " +
         d.message;
}

}  // namespace

GameManifest parse_manifest(std::string_view text, const fs::path& base_dir) {
  GameManifest manifest;
  std::vector<std::string> columns;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    std::string where = "manifest line " + std::to_string(line_no) + ": ";
    auto fields = split_csv(line);
    if (!fields) {
      manifest.diagnostics.push_back(where + "unterminated quote");
      continue;
    }
    if (columns.empty()) {
      columns = *fields;
      bool has_id = std::find(columns.begin(), columns.end(), "game_id") != columns.end();
      bool has_root = std::find(columns.begin(), columns.end(), "root") != columns.end();
      if (!has_id || !has_root) {
        manifest.diagnostics.push_back(where + "header must name game_id and root columns");
        return manifest;
      }
      continue;
    }
    if (fields->size() != columns.size()) {
      manifest.diagnostics.push_back(where + "expected " + std::to_string(columns.size()) + " fields, found " +
                                     std::to_string(fields->size()));
      continue;
    }
    ManifestEntry entry;
    std::string root;
    bool ok = true;
    for (std::size_t i = 0; i < columns.size() && ok; ++i) {
      const std::string& col = columns[i];
      const std::string& val = (*fields)[i];
      if (col == "game_id") {
        entry.game_id = val;
      } else if (col == "root") {
        root = val;
      } else if (col == "stars" || col == "issues") {
        if (val.empty()) continue;
        auto n = parse_int(val);
        if (!n) {
          manifest.diagnostics.push_back(where + col + " is not a non-negative integer: '" + val + "'");
          ok = false;
        }
        (col == "stars" ? entry.meta.stars : entry.meta.issues) = n;
      } else if (col == "category") {
        entry.meta.category = val;
      } else if (col == "url") {
        entry.meta.url = val;
      }
    }
    if (!ok) continue;
    if (entry.game_id.empty() || root.empty()) {
      manifest.diagnostics.push_back(where + "game_id and root are required");
      continue;
    }
    if (!seen.insert(entry.game_id).second) {
      manifest.diagnostics.push_back(where + "duplicate game_id '" + entry.game_id + "'");
      continue;
    }
    fs::path root_path(root);
    if (root_path.is_relative()) root_path = base_dir / root_path;
    std::error_code ec;
    if (!fs::exists(root_path, ec)) {
      manifest.diagnostics.push_back(where + "root '" + root + "' does not exist; skipping " + entry.game_id);
      continue;
    }
    entry.root = root_path.lexically_normal();
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

GameManifest load_manifest(const fs::path& path) {
  bool ok = false;
  std::string text = read_file(path, ok);
  std::error_code ec;
  if (!ok || fs::is_directory(path, ec)) throw ManifestError("cannot read manifest '" + path.string() + "'");
  return parse_manifest(text, path.parent_path());
}

std::vector<Kind> GameReport::violated_patterns() const {
  std::vector<Kind> out;
  for (Kind k : all_kinds())
    if (is_pattern(k) && counts[index(k)] > 0) out.push_back(k);
  return out;
}

std::vector<std::string> discover_files(const fs::path& root, const std::set<std::string>& ignore_dirs) {
  std::vector<std::string> out;
  std::error_code ec;
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec), end;
  for (; !ec && it != end; it.increment(ec)) {
    const auto& entry = *it;
    std::string name = entry.path().filename().string();
    std::error_code type_ec;
    if (entry.is_directory(type_ec)) {
      if (ignore_dirs.count(name)) it.disable_recursion_pending();
      continue;
    }
    if (!entry.is_regular_file(type_ec) || !source_kind_for(name)) continue;
    out.push_back(entry.path().lexically_relative(root).generic_string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

GameReport analyze_sources(std::string game_id, std::vector<SourceFile> files, const AnalysisConfig& cfg,
                           const KindSet& enabled) {
  std::sort(files.begin(), files.end(), [](const SourceFile& a, const SourceFile& b) { return a.path < b.path; });
  GameReport report;
  report.game_id = std::move(game_id);
  report.file_count = static_cast<int>(files.size());

  std::vector<SourceUnit> units;
  units.reserve(files.size());
  for (auto& file : files) {
    auto kind = source_kind_for(file.path).value_or(SourceKind::JS);
    units.push_back(parse_source(file.path, std::move(file.text), kind));
  }

  std::vector<std::unique_ptr<ScopeModel>> models;
  GameView game;
  auto add_script = [&](const SourceUnit& unit) {
    for (const auto& d : unit.diagnostics) report.diagnostics.push_back(format_diagnostic(unit.path, d, "error"));
    if (!unit.parsed()) return;
    models.push_back(std::make_unique<ScopeModel>(build_scopes(unit)));
    game.scripts.push_back({&unit, models.back().get()});
  };
  for (const auto& unit : units) {
    for (const auto& w : unit.warnings) report.diagnostics.push_back(format_diagnostic(unit.path, w, "warning"));
    if (unit.minified) report.minified_files.push_back(unit.path);
    if (unit.kind == SourceKind::JS) {
      add_script(unit);
      if (unit.parsed()) report.js_loc += count_loc(unit);
    } else {
      game.html_units.push_back(&unit);
      for (const auto& script : unit.embedded) add_script(*script.unit);
    }
  }

  report.findings = detect_smells(game, cfg, enabled);
  auto patterns = detect_patterns(game, cfg, enabled);
  report.findings.insert(report.findings.end(), std::make_move_iterator(patterns.begin()),
                         std::make_move_iterator(patterns.end()));
  sort_canonical(report.findings);
  for (const auto& f : report.findings) ++report.counts[index(f.kind)];
  return report;
}

GameReport analyze_game(const fs::path& root, const AnalysisConfig& cfg, const KindSet& enabled,
                        std::string game_id) {
  std::error_code ec;
  bool single_file = fs::is_regular_file(root, ec);
  if (game_id.empty()) {
    game_id = single_file ? root.stem().string() : root.filename().string();
    if (game_id.empty()) game_id = root.parent_path().filename().string();
  }
  std::vector<SourceFile> files;
  std::vector<std::string> unreadable;
  auto load = [&](const fs::path& full, std::string shown) {
    bool ok = false;
    std::string text = read_file(full, ok);
    if (!ok) {
      unreadable.push_back(shown + ": error: cannot read file");
      return;
    }
    files.push_back({std::move(shown), std::move(text)});
  };
  if (single_file) {
    load(root, root.filename().generic_string());
  } else {
    for (const auto& rel : discover_files(root, cfg.ignore_dirs)) load(root / rel, rel);
  }
  int discovered = static_cast<int>(files.size() + unreadable.size());
  GameReport report = analyze_sources(std::move(game_id), std::move(files), cfg, enabled);
  report.file_count = discovered;
  report.diagnostics.insert(report.diagnostics.end(), unreadable.begin(), unreadable.end());
  std::sort(report.diagnostics.begin(), report.diagnostics.end());
  return report;
}

std::string Ratio::to_fixed(int decimals) const {
  unsigned __int128 scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  if (den == 0) return decimals > 0 ? "0." + std::string(static_cast<std::size_t>(decimals), '0') : "0";
  auto n = static_cast<unsigned __int128>(num) * scale;
  auto d = static_cast<unsigned __int128>(den);
  unsigned __int128 q = n / d;
  unsigned __int128 r = n % d;
  if (2 * r > d || (2 * r == d && q % 2 == 1)) ++q;
  auto whole = static_cast<unsigned long long>(q / scale);
  auto frac = static_cast<unsigned long long>(q % scale);
  std::string out = std::to_string(whole);
  if (decimals > 0) {
    std::string f = std::to_string(frac);
    out += "." + std::string(static_cast<std::size_t>(decimals) - f.size(), '0') + f;
  }
  return out;
}

long long CorpusStats::smell_total() const {
  long long sum = 0;
  for (std::size_t i = 0; i < kSmellCount; ++i) sum += total[i];
  return sum;
}

Ratio CorpusStats::avg_per_game(Kind k) const {
  if (n_games == 0) return {0, 1};
  return {total[index(k)], n_games};
}

Ratio CorpusStats::pct_of_all(Kind k) const {
  long long all = smell_total();
  if (!is_smell(k) || all == 0) return {0, 1};
  return {100 * total[index(k)], all};
}

Ratio CorpusStats::pct_games_containing(Kind k) const {
  if (n_games == 0) return {0, 1};
  return {100 * games_containing[index(k)], n_games};
}

void StatsAccumulator::add_counts(const KindCounts& counts) {
  ++stats_.n_games;
  for (std::size_t i = 0; i < kKindCount; ++i) {
    stats_.total[i] += counts[i];
    if (counts[i] > 0) ++stats_.games_containing[i];
  }
}

void StatsAccumulator::add(const GameReport& report) { add_counts(report.counts); }

void StatsAccumulator::merge(const StatsAccumulator& other) {
  stats_.n_games += other.stats_.n_games;
  for (std::size_t i = 0; i < kKindCount; ++i) {
    stats_.total[i] += other.stats_.total[i];
    stats_.games_containing[i] += other.stats_.games_containing[i];
  }
}

CorpusStats aggregate_stats(const std::vector<GameReport>& reports) {
  StatsAccumulator acc;
  for (const auto& r : reports) acc.add(r);
  return acc.result();
}

std::string stats_csv(const CorpusStats& stats) {
  std::string out = "statistic";
  for (std::size_t i = 0; i < kSmellCount; ++i) out += "," + std::string(code(static_cast<Kind>(i)));
  out += "\n";
  for (std::size_t row = 0; row < kStatisticRows.size(); ++row) {
    out += csv_field(kStatisticRows[row]);
    for (std::size_t i = 0; i < kSmellCount; ++i) {
      Kind k = static_cast<Kind>(i);
      out += ",";
      switch (row) {
        case 0: out += std::to_string(stats.total[i]); break;
        case 1: out += stats.avg_per_game(k).to_fixed(2); break;
        case 2: out += stats.pct_of_all(k).to_fixed(2); break;
        default: out += stats.pct_games_containing(k).to_fixed(2); break;
      }
    }
    out += "\n";
  }
  return out;
}

std::string matrix_csv(const std::vector<GameReport>& reports) {
  std::string out = "game";
  for (std::size_t i = 0; i < kSmellCount; ++i) out += "," + std::string(code(static_cast<Kind>(i)));
  out += ",Violated Patterns\n";
  for (const auto& r : reports) {
    out += csv_field(r.game_id);
    for (std::size_t i = 0; i < kSmellCount; ++i) out += "," + std::to_string(r.counts[i]);
    std::string patterns;
    for (Kind k : r.violated_patterns()) {
      if (!patterns.empty()) patterns += ", ";
      patterns += code(k);
    }
    out += "," + csv_field(patterns) + "\n";
  }
  return out;
}

}  // namespace gamesmell
