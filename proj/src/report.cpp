#include "gamesmell/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gamesmell {

using json = nlohmann::ordered_json;

namespace {

json number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 9e15) return static_cast<long long>(v);
  return v;
}

json position(const Position& p) { return {{"line", p.line}, {"column", p.column}, {"offset", p.offset}}; }

Position position_from(const json& j) {
  return {j.at("offset").get<std::uint32_t>(), j.at("line").get<std::uint32_t>(),
          j.at("column").get<std::uint32_t>()};
}

Kind kind_from(const json& j) {
  auto k = parse_kind(j.get<std::string>());
  if (!k) throw ReportError("unknown kind '" + j.get<std::string>() + "'");
  return *k;
}

json kind_map(const KindCounts& counts, bool smells_only = false) {
  json out = json::object();
  for (Kind k : all_kinds()) {
    if (smells_only && !is_smell(k)) continue;
    out[std::string(code(k))] = counts[index(k)];
  }
  return out;
}

KindCounts kind_counts_from(const json& j) {
  KindCounts counts{};
  for (const auto& [key, value] : j.items()) {
    auto k = parse_kind(key);
    if (!k) throw ReportError("unknown kind '" + key + "'");
    counts[index(*k)] = value.get<long long>();
  }
  return counts;
}

json decimal(const Ratio& r) { return number(std::stod(r.to_fixed(2))); }

std::string format_metric(double v) {
  json j = number(v);
  return j.dump();
}

}  // namespace

RunReport make_report(std::vector<GameReport> games, const AnalysisConfig& cfg) {
  RunReport r;
  std::stable_sort(games.begin(), games.end(),
                   [](const GameReport& a, const GameReport& b) { return a.game_id < b.game_id; });
  r.config_echo = to_json(cfg);
  r.stats = aggregate_stats(games);
  r.games = std::move(games);
  return r;
}

json to_json(const Finding& f) {
  json j = json::object();
  j["kind"] = code(f.kind);
  j["name"] = name(f.kind);
  j["path"] = f.path;
  j["span"] = {{"start", position(f.span.start)}, {"end", position(f.span.end)}};
  if (!f.subkind.empty()) j["subkind"] = f.subkind;
  if (f.metric) j["metric"] = number(*f.metric);
  if (f.threshold) j["threshold"] = number(*f.threshold);
  j["evidence"] = f.evidence;
  j["rule"] = f.rule;
  return j;
}

Finding finding_from_json(const json& j) {
  Finding f;
  f.kind = kind_from(j.at("kind"));
  f.path = j.at("path").get<std::string>();
  f.span.start = position_from(j.at("span").at("start"));
  f.span.end = position_from(j.at("span").at("end"));
  if (j.contains("subkind")) f.subkind = j.at("subkind").get<std::string>();
  if (j.contains("metric")) f.metric = j.at("metric").get<double>();
  if (j.contains("threshold")) f.threshold = j.at("threshold").get<double>();
  f.evidence = j.at("evidence").get<std::string>();
  f.rule = j.at("rule").get<std::string>();
  return f;
}

json to_json(const GameReport& g) {
  json j = json::object();
  j["game_id"] = g.game_id;
  j["file_count"] = g.file_count;
  j["js_loc"] = g.js_loc;
  j["counts"] = kind_map(g.counts);
  json patterns = json::array();
  for (Kind k : g.violated_patterns()) patterns.push_back(code(k));
  j["violated_patterns"] = patterns;
  json findings = json::array();
  for (const auto& f : g.findings) findings.push_back(to_json(f));
  j["findings"] = findings;
  j["diagnostics"] = g.diagnostics;
  j["minified_files"] = g.minified_files;
  return j;
}

GameReport game_from_json(const json& j) {
  GameReport g;
  g.game_id = j.at("game_id").get<std::string>();
  g.file_count = j.at("file_count").get<int>();
  g.js_loc = j.at("js_loc").get<long long>();
  g.counts = kind_counts_from(j.at("counts"));
  for (const auto& f : j.at("findings")) g.findings.push_back(finding_from_json(f));
  g.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
  g.minified_files = j.at("minified_files").get<std::vector<std::string>>();
  return g;
}

json to_json(const CorpusStats& s) {
  json j = json::object();
  j["n_games"] = s.n_games;
  j["total"] = kind_map(s.total);
  j["games_containing"] = kind_map(s.games_containing);
  json avg = json::object();
  json pct_all = json::object();
  json pct_games = json::object();
  for (Kind k : all_kinds()) {
    std::string c(code(k));
    avg[c] = decimal(s.avg_per_game(k));
    if (is_smell(k)) pct_all[c] = decimal(s.pct_of_all(k));
    pct_games[c] = decimal(s.pct_games_containing(k));
  }
  j["avg_per_game"] = avg;
  j["pct_of_all"] = pct_all;
  j["pct_games_containing"] = pct_games;
  return j;
}

CorpusStats stats_from_json(const json& j) {
  CorpusStats s;
  s.n_games = j.at("n_games").get<long long>();
  s.total = kind_counts_from(j.at("total"));
  s.games_containing = kind_counts_from(j.at("games_containing"));
  return s;
}

json to_json(const RunReport& r) {
  json j = json::object();
  j["version"] = r.version;
  j["config_echo"] = r.config_echo;
  json games = json::array();
  for (const auto& g : r.games) games.push_back(to_json(g));
  j["games"] = games;
  j["stats"] = to_json(r.stats);
  return j;
}

std::string render_json(const RunReport& report) { return to_json(report).dump(2) + "\n"; }

RunReport parse_report(std::string_view text) {
  try {
    json j = json::parse(text);
    RunReport r;
    r.version = j.at("version").get<int>();
    if (r.version != kReportVersion) throw ReportError("unsupported report version " + std::to_string(r.version));
    r.config_echo = j.at("config_echo");
    for (const auto& g : j.at("games")) r.games.push_back(game_from_json(g));
    r.stats = stats_from_json(j.at("stats"));
    return r;
  } catch (const json::exception& e) {
    throw ReportError(std::string("malformed report: ") + e.what());
  }
}

Advice advise(Kind kind) {
  Advice a;
  a.kind = kind;
  a.title = std::string(code(kind)) + " " + std::string(name(kind));
  switch (kind) {
    case Kind::S1:
      a.body = "Flatten nested functions, rename shadowing variables and capture `this` explicitly (arrow "
               "function or bind) instead of relying on the inner function's receiver.";
      break;
    case Kind::S2:
      a.body = "Keep markup in HTML, styles in CSS and behavior in JavaScript: attach handlers with "
               "addEventListener, build DOM through templates, and toggle classes instead of inline styles.";
      break;
    case Kind::S3:
      a.body = "An empty catch lets the exception meet with no response; log it, recover, or rethrow.";
      break;
    case Kind::S4:
      a.body = "Too many global variables couple modules; wrap state in a module or namespace object.";
      break;
    case Kind::S5:
      a.body = "The object carries too many tasks; divide it into smaller modules with one responsibility each.";
      break;
    case Kind::S6:
      a.body = "The object does too little work to pay for itself; merge it into a related object.";
      break;
    case Kind::S7:
      a.body = "Long message chains are hard to follow; introduce an intermediate variable or a method that "
               "hides the navigation.";
      break;
    case Kind::S8:
      a.body = "Split the long function into smaller named functions.";
      break;
    case Kind::S9:
      a.body = "Pass a parameter object or split the function to shorten its parameter list.";
      break;
    case Kind::S10:
      a.body = "Replace deeply nested callbacks with named functions, promises or an event queue.";
      break;
    case Kind::S11:
      a.body = "The inheritor neither uses nor overrides most inherited members; prefer composition or move "
               "the unused members out of the parent.";
      break;
    case Kind::S12:
      a.body = "Replace the switch with a lookup table or polymorphic handlers so new cases do not modify "
               "existing code.";
      break;
    case Kind::S13:
      a.body = "Remove unreachable statements and bindings that are never used.";
      break;
    case Kind::P1:
      a.body = "Split the per-component calls (graphics, audio, physics, ...) into different function calls "
               "or component objects so each component can change independently.";
      break;
    case Kind::P2:
      a.body = "Introduce an EventQueue class with methods such as Add() and PublishEvents(): producers Add() "
               "events to the central queue and PublishEvents() dispatches them at the end of the frame.";
      break;
    case Kind::P3:
      a.body = "Store the frequently used fields contiguously, e.g. refactored as an array object (array "
               "layout), so reads hit the CPU cache.";
      break;
    case Kind::P4:
      a.body = "Create an ObjectPool handler class that preallocates objects and lets callers fetch and "
               "recycle them instead of allocating new ones in hot code.";
      break;
  }
  return a;
}

Advice advise(const Finding& finding) { return advise(finding.kind); }

std::string render_text(const RunReport& report, bool with_stats) {
  std::ostringstream out;
  for (const auto& g : report.games) {
    out << "== " << g.game_id << " (" << g.file_count << " files, " << g.js_loc << " JS LOC)\n";
    for (const auto& f : g.findings) {
      out << f.path << ":" << f.span.start.line << ":" << f.span.start.column << ": " << code(f.kind) << " "
          << name(f.kind);
      if (!f.subkind.empty()) out << " [" << f.subkind << "]";
      if (!f.evidence.empty()) out << " " << f.evidence;
      if (f.metric && f.threshold)
        out << " (metric " << format_metric(*f.metric) << ", threshold " << format_metric(*f.threshold) << ")";
      out << "\n";
    }
    for (const auto& d : g.diagnostics) out << d << "\n";
    for (const auto& m : g.minified_files) out << m << ": note: minified file\n";
    out << "counts:";
    for (Kind k : all_kinds()) out << " " << code(k) << "=" << g.counts[index(k)];
    out << "\n";
    std::vector<Kind> present;
    for (Kind k : all_kinds())
      if (g.counts[index(k)] > 0 && is_pattern(k)) present.push_back(k);
    if (!present.empty()) {
      out << "advice:\n";
      for (Kind k : present) {
        Advice a = advise(k);
        out << "  " << a.title << ": " << a.body << "\n";
      }
    }
    out << "\n";
  }
  if (with_stats) {
    const auto& s = report.stats;
    out << "corpus statistics (" << s.n_games << " games)\n";
    out << "statistic";
    for (std::size_t i = 0; i < kSmellCount; ++i) out << "\t" << code(static_cast<Kind>(i));
    out << "\n";
    for (std::size_t row = 0; row < kStatisticRows.size(); ++row) {
      out << kStatisticRows[row];
      for (std::size_t i = 0; i < kSmellCount; ++i) {
        Kind k = static_cast<Kind>(i);
        out << "\t";
        if (row == 0) out << s.total[i];
        if (row == 1) out << s.avg_per_game(k).to_fixed(2);
        if (row == 2) out << s.pct_of_all(k).to_fixed(2);
        if (row == 3) out << s.pct_games_containing(k).to_fixed(2);
      }
      out << "\n";
    }
    out << "violated patterns:";
    for (Kind k : all_kinds())
      if (is_pattern(k)) out << " " << code(k) << "=" << s.games_containing[index(k)] << " games";
    out << "\n";
  }
  return out.str();
}

}  // namespace gamesmell
