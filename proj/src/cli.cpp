#include "gamesmell/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "gamesmell/config.hpp"
#include "gamesmell/corpus.hpp"
#include "gamesmell/report.hpp"

namespace gamesmell {

namespace fs = std::filesystem;

KindSet parse_kind_list(const std::vector<std::string>& items) {
  KindSet set;
  for (const auto& item : items) {
    std::size_t pos = 0;
    while (pos <= item.size()) {
      std::size_t comma = item.find(',', pos);
      if (comma == std::string::npos) comma = item.size();
      std::string part = item.substr(pos, comma - pos);
      pos = comma + 1;
      if (part.empty()) continue;
      auto k = parse_kind(part);
      if (!k) throw std::invalid_argument("unknown kind '" + part + "' (expected S1..S13 or P1..P4)");
      set.insert(*k);
    }
  }
  return set;
}

RunResult run(const RunOptions& options) {
  RunResult result;
  if (options.inputs.empty()) {
    result.exit_code = kExitUsage;
    result.err = "error: no input path given\n";
    return result;
  }
  AnalysisConfig cfg;
  try {
    if (options.config_path) cfg = load_config(*options.config_path);
  } catch (const ConfigError& e) {
    result.exit_code = kExitUsage;
    result.err = std::string("error: ") + e.what() + "\n";
    return result;
  }
  for (const auto& d : options.ignore_dirs) cfg.ignore_dirs.insert(d);

  std::vector<GameReport> games;
  std::string diagnostics;
  if (options.mode == RunMode::Corpus) {
    for (const auto& input : options.inputs) {
      GameManifest manifest;
      try {
        manifest = load_manifest(input);
      } catch (const ManifestError& e) {
        result.exit_code = kExitUsage;
        result.err = std::string("error: ") + e.what() + "\n";
        return result;
      }
      for (const auto& d : manifest.diagnostics) diagnostics += input + ": " + d + "\n";
      for (const auto& entry : manifest.entries)
        games.push_back(analyze_game(entry.root, cfg, options.enabled, entry.game_id));
    }
  } else {
    for (const auto& input : options.inputs) {
      std::error_code ec;
      if (!fs::exists(input, ec)) {
        result.exit_code = kExitUsage;
        result.err = "error: path '" + input + "' does not exist\n";
        return result;
      }
      games.push_back(analyze_game(input, cfg, options.enabled));
    }
  }
  for (const auto& g : games)
    for (const auto& d : g.diagnostics) diagnostics += g.game_id + ": " + d + "\n";

  RunReport report = make_report(std::move(games), cfg);
  switch (options.format) {
    case OutputFormat::Json: result.out = render_json(report); break;
    case OutputFormat::Csv: result.out = matrix_csv(report.games); break;
    case OutputFormat::Text: result.out = render_text(report, options.mode == RunMode::Corpus); break;
  }
  if (options.stats_csv_path) {
    std::ofstream csv(*options.stats_csv_path, std::ios::binary);
    csv << stats_csv(report.stats);
    if (!csv) {
      result.exit_code = kExitUsage;
      result.err = diagnostics + "error: cannot write '" + *options.stats_csv_path + "'\n";
      return result;
    }
  }
  result.err = diagnostics;
  for (Kind k : options.fail_on.kinds())
    if (report.stats.total[index(k)] > 0) result.exit_code = kExitFindings;
  return result;
}

int cli_main(int argc, char** argv) {
  CLI::App app{"gamesmell: JavaScript code smells and game-pattern violations in web games"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string config_path;
  std::vector<std::string> enable;
  std::vector<std::string> fail_on;
  std::vector<std::string> ignore_dirs;
  std::string stats_csv_path;
  std::string input;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--config", config_path, "JSON config file with thresholds and lexicons");
    sub->add_option("--enable", enable, "Kinds to detect, e.g. S3,P1 (default: all)");
    sub->add_option("--fail-on", fail_on, "Exit with status 1 when findings of these kinds exist");
    sub->add_option("--ignore-dir", ignore_dirs, "Directory name to skip (repeatable)");
    sub->add_option("--stats-csv", stats_csv_path, "Write corpus statistics CSV to this path");
  };
  CLI::App* analyze = app.add_subcommand("analyze", "Analyze one file (one-file game) or one game directory");
  analyze->add_option("path", input, "JS/HTML file or game directory")->required();
  add_common(analyze);
  CLI::App* corpus = app.add_subcommand("corpus", "Analyze every game listed in a manifest CSV");
  corpus->add_option("manifest", input, "Manifest CSV: game_id,root[,stars,issues,category,url]")->required();
  add_common(corpus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  RunOptions options;
  options.inputs = {input};
  if (corpus->parsed()) {
    options.mode = RunMode::Corpus;
  } else {
    std::error_code ec;
    options.mode = fs::is_directory(input, ec) ? RunMode::Game : RunMode::File;
  }
  options.format = format == "json" ? OutputFormat::Json : format == "csv" ? OutputFormat::Csv : OutputFormat::Text;
  if (!config_path.empty()) options.config_path = config_path;
  if (!stats_csv_path.empty()) options.stats_csv_path = stats_csv_path;
  options.ignore_dirs = ignore_dirs;
  try {
    if (!enable.empty()) options.enabled = parse_kind_list(enable);
    options.fail_on = parse_kind_list(fail_on);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  RunResult result = run(options);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}

}  // namespace gamesmell
