#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gamesmell/finding.hpp"

namespace gamesmell {

enum class RunMode : std::uint8_t { File, Game, Corpus };
enum class OutputFormat : std::uint8_t { Text, Json, Csv };

struct RunOptions {
  RunMode mode = RunMode::Game;
  std::vector<std::string> inputs;
  OutputFormat format = OutputFormat::Text;
  std::optional<std::string> config_path;
  KindSet enabled = KindSet::all();
  KindSet fail_on = KindSet::none();
  std::vector<std::string> ignore_dirs;  // added to the configured set
  std::optional<std::string> stats_csv_path;
};

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitUsage = 2;

struct RunResult {
  int exit_code = kExitOk;
  std::string out;  // rendered report
  std::string err;  // diagnostics
};

RunResult run(const RunOptions& options);

// Parses "S3,P1" style lists; throws std::invalid_argument naming the
// offending entry.
KindSet parse_kind_list(const std::vector<std::string>& items);

// Command-line entry point: `analyze <path>` or `corpus <manifest>`.
int cli_main(int argc, char** argv);

}  // namespace gamesmell
