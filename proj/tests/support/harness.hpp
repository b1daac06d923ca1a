#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gamesmell/config.hpp"
#include "gamesmell/corpus.hpp"
#include "gamesmell/finding.hpp"
#include "gamesmell/scope.hpp"
#include "gamesmell/source_unit.hpp"

namespace gamesmell::testing {

std::filesystem::path fixture_dir();
std::string read_text(const std::filesystem::path& path);

// A parsed JS unit with its scope model, kept alive together.
struct Parsed {
  SourceUnit unit;
  ScopeModel scopes;
};
Parsed parse_js(std::string text, std::string path = "t.js");

// Analyzes one in-memory JS file as a one-file game.
GameReport analyze_js(std::string text, const AnalysisConfig& cfg = {},
                      const KindSet& enabled = KindSet::all(), std::string path = "t.js");

long long count_of(const GameReport& report, Kind kind);
std::vector<Finding> of_kind(const GameReport& report, Kind kind);

// Sorted metric values of one kind.
std::vector<int> metrics_of(const GameReport& report, Kind kind);

// Creates a fresh directory under the system temp dir and removes it on
// destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& stem);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  void write(const std::filesystem::path& relative, const std::string& text) const;

 private:
  std::filesystem::path path_;
};

}  // namespace gamesmell::testing
