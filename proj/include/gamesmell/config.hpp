#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace gamesmell {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact fraction used for ratio thresholds.
struct Fraction {
  long long num = 1;
  long long den = 3;

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

std::string to_string(const Fraction& f);  // "1/3"
std::optional<Fraction> parse_fraction(std::string_view text);

// Category name to identifier/member-name patterns. A trailing `*` makes a
// prefix pattern; all patterns are lowercase and matched case-insensitively.
struct ComponentLexicon {
  std::map<std::string, std::vector<std::string>> categories;

  static ComponentLexicon defaults();
  friend bool operator==(const ComponentLexicon&, const ComponentLexicon&) = default;
};

// Substrings matched case-insensitively against function names.
struct HotPathLexicon {
  std::vector<std::string> name_patterns;

  static HotPathLexicon defaults();
  friend bool operator==(const HotPathLexicon&, const HotPathLexicon&) = default;
};

struct AnalysisConfig {
  // Smell thresholds.
  int closure_depth = 4;
  int globals_max = 10;
  int large_object_props = 20;
  int lazy_object_props = 3;
  int chain_min = 4;
  int method_loc_max = 50;
  int params_max = 4;
  int callback_depth = 3;
  Fraction bequest_ratio{1, 3};
  int bequest_min_inherited = 3;
  int switch_cases_min = 3;
  int html_string_min_tags = 2;

  // Pattern thresholds.
  int p1_min_categories = 2;
  int monolithic_methods = 20;
  int monolithic_loc = 500;
  int p2_async_depth = 2;
  int p3_min_props = 4;
  int p3_min_functions = 2;
  int p3_parallel_min = 3;
  std::string queue_pattern = "queue|event(list|buffer|stack)";
  std::string pool_pattern = "pool";

  ComponentLexicon components = ComponentLexicon::defaults();
  HotPathLexicon hot_paths = HotPathLexicon::defaults();
  std::set<std::string> ignore_dirs = {".git", "build", "dist", "node_modules", "vendor"};

  friend bool operator==(const AnalysisConfig&, const AnalysisConfig&) = default;
};

// Throws ConfigError naming the offending field.
void validate(const AnalysisConfig& cfg);

nlohmann::ordered_json to_json(const AnalysisConfig& cfg);
// Missing keys keep their defaults; unknown keys and bad values throw
// ConfigError.
AnalysisConfig config_from_json(const nlohmann::ordered_json& doc);
AnalysisConfig load_config(const std::string& path);

}  // namespace gamesmell
