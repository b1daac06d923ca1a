#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gamesmell/config.hpp"
#include "gamesmell/finding.hpp"

namespace gamesmell {

class ManifestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GameMeta {
  std::optional<int> stars;
  std::optional<int> issues;
  std::string category;
  std::string url;

  friend bool operator==(const GameMeta&, const GameMeta&) = default;
};

struct ManifestEntry {
  std::string game_id;
  std::filesystem::path root;
  GameMeta meta;
};

struct GameManifest {
  std::vector<ManifestEntry> entries;
  std::vector<std::string> diagnostics;
};

// CSV with header `game_id,root[,stars,issues,category,url]`. Relative roots
// resolve against the manifest's directory. Bad rows, duplicate ids and
// missing roots become diagnostics. Throws ManifestError if the file cannot
// be read.
GameManifest load_manifest(const std::filesystem::path& path);
GameManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir);

using KindCounts = std::array<long long, kKindCount>;

struct GameReport {
  std::string game_id;
  int file_count = 0;
  long long js_loc = 0;
  KindCounts counts{};
  std::vector<Finding> findings;
  std::vector<std::string> diagnostics;
  std::vector<std::string> minified_files;

  std::vector<Kind> violated_patterns() const;
};

struct SourceFile {
  std::string path;  // as reported in findings
  std::string text;
};

// `.js`, `.html` and `.htm` files under root, as sorted root-relative generic
// paths, skipping directories named in ignore_dirs.
std::vector<std::string> discover_files(const std::filesystem::path& root, const std::set<std::string>& ignore_dirs);

// Analyzes one game given its files in any order.
GameReport analyze_sources(std::string game_id, std::vector<SourceFile> files, const AnalysisConfig& cfg,
                           const KindSet& enabled = KindSet::all());

// Analyzes a game directory, or a single file treated as a one-file game.
GameReport analyze_game(const std::filesystem::path& root, const AnalysisConfig& cfg,
                        const KindSet& enabled = KindSet::all(), std::string game_id = {});

// Exact non-negative rational.
struct Ratio {
  long long num = 0;
  long long den = 1;

  double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }
  // Decimal rendering rounded half-to-even.
  std::string to_fixed(int decimals = 2) const;
  friend bool operator==(const Ratio& a, const Ratio& b) {
    return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
  }
};

struct CorpusStats {
  long long n_games = 0;
  KindCounts total{};
  KindCounts games_containing{};

  long long smell_total() const;
  Ratio avg_per_game(Kind k) const;
  // Share of all S1..S13 findings, in percent. Zero for pattern kinds.
  Ratio pct_of_all(Kind k) const;
  Ratio pct_games_containing(Kind k) const;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

// Additive partial aggregate: merge() of partials equals aggregating the
// union of their reports.
class StatsAccumulator {
 public:
  void add(const GameReport& report);
  void add_counts(const KindCounts& counts);
  void merge(const StatsAccumulator& other);
  const CorpusStats& result() const { return stats_; }

 private:
  CorpusStats stats_;
};

CorpusStats aggregate_stats(const std::vector<GameReport>& reports);

// Statistics layout: header `statistic,S1,...,S13` and four statistic rows.
std::string stats_csv(const CorpusStats& stats);
// Per-game layout: one row per game with S1..S13 counts and the violated
// patterns.
std::string matrix_csv(const std::vector<GameReport>& reports);

extern const std::array<std::string_view, 4> kStatisticRows;

}  // namespace gamesmell
