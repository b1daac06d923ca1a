#include "harness.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace gamesmell::testing {

namespace fs = std::filesystem;

fs::path fixture_dir() { return GAMESMELL_FIXTURE_DIR; }

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Parsed parse_js(std::string text, std::string path) {
  Parsed p;
  p.unit = parse_source(std::move(path), std::move(text), SourceKind::JS);
  p.scopes = build_scopes(p.unit);
  return p;
}

GameReport analyze_js(std::string text, const AnalysisConfig& cfg, const KindSet& enabled, std::string path) {
  std::vector<SourceFile> files{{std::move(path), std::move(text)}};
  return analyze_sources("game", std::move(files), cfg, enabled);
}

long long count_of(const GameReport& report, Kind kind) { return report.counts[index(kind)]; }

std::vector<Finding> of_kind(const GameReport& report, Kind kind) {
  std::vector<Finding> out;
  for (const auto& f : report.findings)
    if (f.kind == kind) out.push_back(f);
  return out;
}

std::vector<int> metrics_of(const GameReport& report, Kind kind) {
  std::vector<int> out;
  for (const auto& f : report.findings)
    if (f.kind == kind && f.metric) out.push_back(static_cast<int>(*f.metric));
  std::sort(out.begin(), out.end());
  return out;
}

TempDir::TempDir(const std::string& stem) {
  std::random_device rd;
  for (int attempt = 0; attempt < 100; ++attempt) {
    fs::path candidate = fs::temp_directory_path() / (stem + "-" + std::to_string(rd()));
    if (fs::create_directories(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create temp dir");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void TempDir::write(const fs::path& relative, const std::string& text) const {
  fs::path target = path_ / relative;
  fs::create_directories(target.parent_path());
  std::ofstream out(target, std::ios::binary);
  out << text;
}

}  // namespace gamesmell::testing
