#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gamesmell/cli.hpp"
#include "gamesmell/corpus.hpp"
#include "gamesmell/report.hpp"
#include "harness.hpp"
#include "program_generator.hpp"
#include "properties.hpp"

using namespace gamesmell;
using namespace gamesmell::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

// Reference corpus statistics: totals, average per game and share of all smells.
constexpr long long kTotals[13] = {256687, 247, 1361, 8737, 0, 471533, 365789, 51816, 39028, 6233, 88606, 5885, 70};
constexpr double kAverages[13] = {711.04, 0.68, 3.77, 24.20, 0, 1306.18, 1013.26, 143.53, 108.11, 17.26, 245.44, 16.30, 0.19};
constexpr double kShares[13] = {19.80, 0.01, 0.1, 0.67, 0, 36.3, 28.22, 3.99, 3.01, 0.48, 6.83, 0.45, 0.005};

Outcome criterion1() {
  Outcome o;
  auto start = Clock::now();
  std::vector<GameReport> reports(361);
  for (std::size_t k = 0; k < kSmellCount; ++k) reports[0].counts[k] = kTotals[k];
  CorpusStats stats = aggregate_stats(reports);
  std::vector<std::string> misses;
  for (std::size_t k = 0; k < kSmellCount; ++k) {
    Kind kind = static_cast<Kind>(k);
    double avg = std::stod(stats.avg_per_game(kind).to_fixed(2));
    double share = std::stod(stats.pct_of_all(kind).to_fixed(2));
    if (std::fabs(avg - kAverages[k]) > 0.015 + 1e-9)
      misses.push_back(std::string(code(kind)) + " avg " + fmt(avg) + " vs " + fmt(kAverages[k]));
    if (std::fabs(share - kShares[k]) > 0.015 + 1e-9)
      misses.push_back(std::string(code(kind)) + " pct " + fmt(share) + " vs " + fmt(kShares[k], 3));
  }
  double elapsed = seconds_since(start);
  for (const auto& m : misses) o.fail(m);
  if (misses.size() > 1) o.detail += " (+" + std::to_string(misses.size() - 1) + " more)";
  if (elapsed >= 1.0) o.fail("took " + fmt(elapsed) + " s");
  if (o.pass) o.detail = "26 cells within 0.015 in " + fmt(elapsed * 1000, 1) + " ms";
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto start = Clock::now();
  const std::pair<const char*, Kind> cases[] = {
      {"Preloader.js", Kind::P1}, {"Storage.js", Kind::P2}, {"Boot.js", Kind::P3}, {"keyboard.js", Kind::P4}};
  for (const auto& [file, kind] : cases) {
    long long before = count_of(analyze_game(fixture_dir() / "games" / "original" / file, AnalysisConfig{}), kind);
    long long after = count_of(analyze_game(fixture_dir() / "games" / "refactored" / file, AnalysisConfig{}), kind);
    if (before < 1) o.fail(std::string(file) + ": no " + std::string(code(kind)) + " finding");
    if (after != 0) o.fail(std::string("refactored ") + file + ": " + std::to_string(after) + " " +
                           std::string(code(kind)) + " findings");
  }
  double elapsed = seconds_since(start);
  if (elapsed >= 5.0) o.fail("took " + fmt(elapsed) + " s");
  if (o.pass) o.detail = "P1..P4 fire on originals, silent on refactorings, " + fmt(elapsed * 1000, 1) + " ms";
  return o;
}

Outcome criterion3() {
  Outcome o;
  struct Case {
    const char* file;
    Kind kind;
    long long expected;
  };
  const Case cases[] = {
      {"s01_closure.js", Kind::S1, 1},        {"s02_coupling.js", Kind::S2, 1},
      {"s02_coupling.html", Kind::S2, 3},     {"s03_empty_catch.js", Kind::S3, 1},
      {"s04_globals.js", Kind::S4, 11},       {"s05_large_object.js", Kind::S5, 1},
      {"s06_lazy_object.js", Kind::S6, 1},    {"s07_message_chain.js", Kind::S7, 1},
      {"s08_long_method.js", Kind::S8, 1},    {"s09_parameters.js", Kind::S9, 1},
      {"s10_callbacks.js", Kind::S10, 1},     {"s11_refused_bequest.js", Kind::S11, 1},
      {"s12_switch.js", Kind::S12, 1},        {"s13_dead_code.js", Kind::S13, 1},
  };
  for (const auto& c : cases) {
    long long got = count_of(analyze_game(fixture_dir() / "smells" / c.file, AnalysisConfig{}), c.kind);
    if (got != c.expected)
      o.fail(std::string(c.file) + ": " + std::to_string(got) + " " + std::string(code(c.kind)) + ", expected " +
             std::to_string(c.expected));
  }
  if (o.pass) o.detail = "14 fixtures, exact counts for S1..S13";
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::mt19937 rng(4004);
  for (int i = 0; i < 100 && o.pass; ++i) {
    GeneratedProgram program = generate_program(rng);
    std::string violation = monotonicity_violation(program.source);
    if (!violation.empty()) o.fail("program " + std::to_string(i) + ": " + violation);
  }
  if (o.pass)
    o.detail = "100 programs x " + std::to_string(threshold_sweeps().size()) + " thresholds, no count grew";
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::mt19937 rng(5005);
  for (int i = 0; i < 200 && o.pass; ++i) {
    GeneratedProgram program = generate_program(rng);
    std::string mismatch = oracle_mismatch(program);
    if (!mismatch.empty()) o.fail("program " + std::to_string(i) + ": " + mismatch);
  }
  if (o.pass) o.detail = "200 programs: params, switch cases, chains, callbacks, globals, LOC agree";
  return o;
}

std::vector<SourceFile> load_dir(const std::filesystem::path& root) {
  std::vector<SourceFile> files;
  for (const auto& rel : discover_files(root, AnalysisConfig{}.ignore_dirs))
    files.push_back({rel, read_text(root / rel)});
  return files;
}

std::vector<GameReport> random_reports(std::mt19937& rng, int n) {
  std::vector<GameReport> out;
  std::uniform_int_distribution<int> count(0, 6);
  for (int i = 0; i < n; ++i) {
    GameReport r;
    r.game_id = "g" + std::to_string(i);
    for (auto& c : r.counts) c = count(rng) < 3 ? 0 : count(rng) * 37;
    out.push_back(std::move(r));
  }
  return out;
}

Outcome criterion6() {
  Outcome o;
  std::mt19937 rng(6006);
  std::vector<std::vector<SourceFile>> games = {load_dir(fixture_dir() / "games" / "original"),
                                                load_dir(fixture_dir() / "games" / "refactored"),
                                                load_dir(fixture_dir() / "smells")};
  const std::vector<std::string> ids = {"original", "refactored", "smells"};
  auto render = [&](bool shuffle) {
    std::vector<GameReport> reports;
    for (std::size_t g = 0; g < games.size(); ++g) {
      auto files = games[g];
      if (shuffle) std::shuffle(files.begin(), files.end(), rng);
      reports.push_back(analyze_sources(ids[g], std::move(files), AnalysisConfig{}));
    }
    if (shuffle) std::shuffle(reports.begin(), reports.end(), rng);
    return render_json(make_report(std::move(reports), AnalysisConfig{}));
  };
  std::string baseline = render(false);
  for (int i = 0; i < 10; ++i)
    if (render(true) != baseline) o.fail("JSON bytes differ after shuffle " + std::to_string(i));

  std::vector<GameReport> reports = random_reports(rng, 60);
  CorpusStats whole = aggregate_stats(reports);
  for (int p = 0; p < 20; ++p) {
    int parts = std::uniform_int_distribution<int>(1, 8)(rng);
    std::vector<StatsAccumulator> acc(static_cast<std::size_t>(parts));
    std::uniform_int_distribution<int> which(0, parts - 1);
    for (const auto& r : reports) acc[static_cast<std::size_t>(which(rng))].add(r);
    std::shuffle(acc.begin(), acc.end(), rng);
    // Pairwise tree reduction in a random grouping.
    while (acc.size() > 1) {
      std::size_t i = std::uniform_int_distribution<std::size_t>(0, acc.size() - 2)(rng);
      acc[i].merge(acc[i + 1]);
      acc.erase(acc.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
    if (!(acc[0].result() == whole)) o.fail("partition " + std::to_string(p) + " merged to different stats");
  }
  if (o.pass) o.detail = "10 shuffles byte-identical, 20 partitions merge to the same stats";
  return o;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  return out;
}

Outcome criterion7() {
  Outcome o;
  TempDir dir("gamesmell-corpus");
  std::mt19937 rng(7007);
  std::string manifest = "game_id,root,stars\n";
  for (int g = 0; g < 30; ++g) {
    std::string id = "game" + std::to_string(g);
    int files = std::uniform_int_distribution<int>(1, 6)(rng);
    for (int f = 0; f < files; ++f)
      dir.write(id + "/js/part" + std::to_string(f) + ".js", generate_program(rng).source);
    if (g % 3 == 0)
      dir.write(id + "/index.html",
                "<html><body onload=\"start()\"><script>var hud = { score: 0 };</script></body></html>\n");
    if (g % 5 == 0) dir.write(id + "/node_modules/dep/index.js", "var ignored = 1;\n");
    manifest += id + "," + id + "," + std::to_string(g * 3) + "\n";
  }
  dir.write("manifest.csv", manifest);

  RunOptions options;
  options.mode = RunMode::Corpus;
  options.inputs = {(dir.path() / "manifest.csv").string()};
  options.format = OutputFormat::Json;
  options.stats_csv_path = (dir.path() / "stats.csv").string();
  auto start = Clock::now();
  RunResult result = run(options);
  double elapsed = seconds_since(start);
  if (result.exit_code != kExitOk) o.fail("exit code " + std::to_string(result.exit_code) + ": " + result.err);
  if (elapsed >= 30.0) o.fail("took " + fmt(elapsed) + " s");

  auto doc = nlohmann::ordered_json::parse(result.out);
  if (doc["stats"]["n_games"] != 30) o.fail("n_games is " + doc["stats"]["n_games"].dump());

  std::vector<std::string> lines = split(read_text(dir.path() / "stats.csv"), '\n');
  if (lines.size() != 5) o.fail("stats CSV has " + std::to_string(lines.size()) + " lines");
  std::string header = "statistic";
  for (std::size_t k = 0; k < kSmellCount; ++k) header += "," + std::string(code(static_cast<Kind>(k)));
  if (lines.empty() || lines[0] != header) o.fail("unexpected header");
  for (std::size_t r = 1; r < lines.size(); ++r) {
    auto cells = split(lines[r], ',');
    if (cells.size() != 14) o.fail("row " + std::to_string(r) + " has " + std::to_string(cells.size()) + " cells");
    if (r - 1 < kStatisticRows.size() && (cells.empty() || cells[0] != kStatisticRows[r - 1]))
      o.fail("row " + std::to_string(r) + " is not '" + std::string(kStatisticRows[r - 1]) + "'");
  }
  if (o.pass) o.detail = "30 games in " + fmt(elapsed) + " s, CSV 14 columns x 4 statistic rows";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"corpus statistics arithmetic", criterion1},     {"game snippet fixtures", criterion2},
      {"smell definitional suite", criterion3}, {"threshold monotonicity", criterion4},
      {"oracle equivalence", criterion5},       {"determinism and merge", criterion6},
      {"corpus-scale smoke", criterion7},
  };
  int failed = 0;
  int number = 0;
  for (const auto& [title, check] : criteria) {
    ++number;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", number, title, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
