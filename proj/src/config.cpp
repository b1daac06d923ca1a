#include "gamesmell/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <regex>
#include <sstream>

namespace gamesmell {

using json = nlohmann::ordered_json;

std::string to_string(const Fraction& f) { return std::to_string(f.num) + "/" + std::to_string(f.den); }

std::optional<Fraction> parse_fraction(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  Fraction f;
  auto a = text.substr(0, slash);
  auto b = text.substr(slash + 1);
  auto ra = std::from_chars(a.data(), a.data() + a.size(), f.num);
  auto rb = std::from_chars(b.data(), b.data() + b.size(), f.den);
  if (ra.ec != std::errc{} || ra.ptr != a.data() + a.size()) return std::nullopt;
  if (rb.ec != std::errc{} || rb.ptr != b.data() + b.size()) return std::nullopt;
  if (f.den <= 0 || f.num < 0) return std::nullopt;
  return f;
}

ComponentLexicon ComponentLexicon::defaults() {
  ComponentLexicon lex;
  lex.categories = {
      {"ai", {"ai", "pathfind*", "behavior"}},
      {"audio", {"audio", "sound", "sfx", "music", "play*"}},
      {"graphics", {"canvas", "ctx", "draw*", "render*", "sprite", "image", "atlas", "texture", "webgl"}},
      {"network", {"fetch", "xmlhttprequest", "websocket", "socket"}},
      {"physics", {"velocity", "gravity", "collide*", "physics", "impulse"}},
      {"storage", {"localstorage", "sessionstorage", "indexeddb"}},
  };
  return lex;
}

HotPathLexicon HotPathLexicon::defaults() {
  return {{"update", "render", "draw", "tick", "step", "loop", "frame", "animate", "poll", "query", "key",
           "input"}};
}

namespace {

bool is_lowercase(const std::string& s) {
  for (char c : s)
    if (c >= 'A' && c <= 'Z') return false;
  return true;
}

void check_regex(const std::string& field, const std::string& pattern) {
  try {
    std::regex re(pattern, std::regex::icase);
  } catch (const std::regex_error&) {
    throw ConfigError(field + ": invalid regular expression '" + pattern + "'");
  }
}

struct IntField {
  const char* key;
  int AnalysisConfig::*member;
};

constexpr IntField kIntFields[] = {
    {"closure_depth", &AnalysisConfig::closure_depth},
    {"globals_max", &AnalysisConfig::globals_max},
    {"large_object_props", &AnalysisConfig::large_object_props},
    {"lazy_object_props", &AnalysisConfig::lazy_object_props},
    {"chain_min", &AnalysisConfig::chain_min},
    {"method_loc_max", &AnalysisConfig::method_loc_max},
    {"params_max", &AnalysisConfig::params_max},
    {"callback_depth", &AnalysisConfig::callback_depth},
    {"bequest_min_inherited", &AnalysisConfig::bequest_min_inherited},
    {"switch_cases_min", &AnalysisConfig::switch_cases_min},
    {"html_string_min_tags", &AnalysisConfig::html_string_min_tags},
    {"p1_min_categories", &AnalysisConfig::p1_min_categories},
    {"monolithic_methods", &AnalysisConfig::monolithic_methods},
    {"monolithic_loc", &AnalysisConfig::monolithic_loc},
    {"p2_async_depth", &AnalysisConfig::p2_async_depth},
    {"p3_min_props", &AnalysisConfig::p3_min_props},
    {"p3_min_functions", &AnalysisConfig::p3_min_functions},
    {"p3_parallel_min", &AnalysisConfig::p3_parallel_min},
};

std::vector<std::string> string_list(const json& value, const std::string& field) {
  if (!value.is_array()) throw ConfigError(field + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& v : value) {
    if (!v.is_string()) throw ConfigError(field + ": expected an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::string string_value(const json& value, const std::string& field) {
  if (!value.is_string()) throw ConfigError(field + ": expected a string");
  return value.get<std::string>();
}

Fraction fraction_value(const json& value) {
  if (value.is_string()) {
    if (auto f = parse_fraction(value.get<std::string>())) return *f;
    throw ConfigError("bequest_ratio: expected \"p/q\" or a number in (0, 1]");
  }
  if (value.is_number()) {
    // Decimal thresholds become an exact fraction over 10^6.
    double d = value.get<double>();
    constexpr long long kScale = 1000000;
    long long num = std::llround(d * kScale);
    long long g = std::gcd(num, kScale);
    if (g == 0) g = 1;
    return {num / g, kScale / g};
  }
  throw ConfigError("bequest_ratio: expected \"p/q\" or a number in (0, 1]");
}

}  // namespace

void validate(const AnalysisConfig& cfg) {
  for (const auto& f : kIntFields)
    if (cfg.*f.member <= 0) throw ConfigError(std::string(f.key) + ": must be > 0");
  const Fraction& r = cfg.bequest_ratio;
  if (r.den <= 0 || r.num <= 0 || r.num > r.den) throw ConfigError("bequest_ratio: must be in (0, 1]");
  if (cfg.components.categories.empty()) throw ConfigError("components: must not be empty");
  for (const auto& [category, patterns] : cfg.components.categories) {
    if (category.empty()) throw ConfigError("components: empty category name");
    if (patterns.empty()) throw ConfigError("components." + category + ": must not be empty");
    for (const auto& p : patterns) {
      if (p.empty() || p == "*") throw ConfigError("components." + category + ": empty pattern");
      if (!is_lowercase(p)) throw ConfigError("components." + category + ": pattern '" + p + "' must be lowercase");
    }
  }
  if (cfg.hot_paths.name_patterns.empty()) throw ConfigError("hot_paths: must not be empty");
  for (const auto& p : cfg.hot_paths.name_patterns)
    if (p.empty()) throw ConfigError("hot_paths: empty pattern");
  check_regex("queue_pattern", cfg.queue_pattern);
  check_regex("pool_pattern", cfg.pool_pattern);
}

json to_json(const AnalysisConfig& cfg) {
  json doc = json::object();
  for (const auto& f : kIntFields) doc[f.key] = cfg.*f.member;
  doc["bequest_ratio"] = to_string(cfg.bequest_ratio);
  doc["queue_pattern"] = cfg.queue_pattern;
  doc["pool_pattern"] = cfg.pool_pattern;
  json components = json::object();
  for (const auto& [category, patterns] : cfg.components.categories) components[category] = patterns;
  doc["components"] = components;
  doc["hot_paths"] = cfg.hot_paths.name_patterns;
  doc["ignore_dirs"] = std::vector<std::string>(cfg.ignore_dirs.begin(), cfg.ignore_dirs.end());
  return doc;
}

AnalysisConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  AnalysisConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    bool handled = false;
    for (const auto& f : kIntFields) {
      if (key != f.key) continue;
      if (!value.is_number_integer()) throw ConfigError(key + ": expected an integer");
      cfg.*f.member = value.get<int>();
      handled = true;
    }
    if (handled) continue;
    if (key == "bequest_ratio") {
      cfg.bequest_ratio = fraction_value(value);
    } else if (key == "queue_pattern") {
      cfg.queue_pattern = string_value(value, key);
    } else if (key == "pool_pattern") {
      cfg.pool_pattern = string_value(value, key);
    } else if (key == "components") {
      if (!value.is_object()) throw ConfigError("components: expected an object");
      cfg.components.categories.clear();
      for (const auto& [category, patterns] : value.items())
        cfg.components.categories[category] = string_list(patterns, "components." + category);
    } else if (key == "hot_paths") {
      cfg.hot_paths.name_patterns = string_list(value, key);
    } else if (key == "ignore_dirs") {
      auto dirs = string_list(value, key);
      cfg.ignore_dirs = std::set<std::string>(dirs.begin(), dirs.end());
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  validate(cfg);
  return cfg;
}

AnalysisConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  return config_from_json(doc);
}

}  // namespace gamesmell
