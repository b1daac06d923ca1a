#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gamesmell/corpus.hpp"
#include "json.hpp"

namespace gamesmell {

constexpr int kReportVersion = 1;

struct RunReport {
  int version = kReportVersion;
  nlohmann::ordered_json config_echo = nlohmann::ordered_json::object();
  std::vector<GameReport> games;  // sorted by game_id
  CorpusStats stats;
};

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RunReport make_report(std::vector<GameReport> games, const AnalysisConfig& cfg);

nlohmann::ordered_json to_json(const Finding& f);
nlohmann::ordered_json to_json(const GameReport& g);
nlohmann::ordered_json to_json(const CorpusStats& s);
nlohmann::ordered_json to_json(const RunReport& r);

Finding finding_from_json(const nlohmann::ordered_json& j);
GameReport game_from_json(const nlohmann::ordered_json& j);
CorpusStats stats_from_json(const nlohmann::ordered_json& j);

// Stable machine format; parse_report(render_json(r)) re-renders to the same
// bytes.
std::string render_json(const RunReport& report);
RunReport parse_report(std::string_view text);

// Human-oriented listing with advice; not stability-guaranteed.
std::string render_text(const RunReport& report, bool with_stats);

struct Advice {
  Kind kind = Kind::S1;
  std::string title;
  std::string body;
};

Advice advise(Kind kind);
Advice advise(const Finding& finding);

}  // namespace gamesmell
