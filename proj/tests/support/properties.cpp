#include "properties.hpp"

#include <algorithm>
#include <sstream>

#include "gamesmell/metrics.hpp"
#include "harness.hpp"
#include "line_oracle.hpp"

namespace gamesmell::testing {

namespace {

std::string join(const std::vector<int>& values) {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
  return out.str();
}

std::vector<int> positive_sorted(std::vector<int> values, int min) {
  std::erase_if(values, [min](int v) { return v < min; });
  std::sort(values.begin(), values.end());
  return values;
}

template <typename Field>
ThresholdSweep int_sweep(std::string name, Field field, std::vector<int> values) {
  ThresholdSweep sweep{std::move(name), {}};
  for (int v : values) sweep.steps.push_back([field, v](AnalysisConfig& c) { c.*field = v; });
  return sweep;
}

}  // namespace

std::string oracle_mismatch(const GeneratedProgram& program) {
  AnalysisConfig cfg;
  cfg.params_max = 0;
  cfg.chain_min = 1;
  cfg.callback_depth = 1;
  cfg.switch_cases_min = 1;
  KindSet enabled;
  for (Kind k : {Kind::S7, Kind::S9, Kind::S10, Kind::S12}) enabled.insert(k);
  GameReport report = analyze_js(program.source, cfg, enabled);
  if (!report.diagnostics.empty()) return "parse failure: " + report.diagnostics.front();

  auto compare = [](const char* what, const std::vector<int>& expected, const std::vector<int>& actual) {
    if (expected == actual) return std::string();
    return std::string(what) + ": expected [" + join(expected) + "] got [" + join(actual) + "]";
  };
  std::string diff;
  if (diff = compare("params", positive_sorted(program.param_counts, 1), metrics_of(report, Kind::S9)); !diff.empty())
    return diff;
  if (diff = compare("switch cases", positive_sorted(program.switch_cases, 1), metrics_of(report, Kind::S12));
      !diff.empty())
    return diff;
  if (diff = compare("chains", positive_sorted(program.chain_lengths, 1), metrics_of(report, Kind::S7));
      !diff.empty())
    return diff;
  if (diff = compare("callbacks", positive_sorted(program.callback_depths, 1), metrics_of(report, Kind::S10));
      !diff.empty())
    return diff;

  Parsed parsed = parse_js(program.source);
  std::set<std::string> globals = parsed.scopes.defined_globals();
  if (globals != program.globals) {
    std::string text = "globals differ:";
    for (const auto& g : program.globals)
      if (!globals.count(g)) text += " missing " + g;
    for (const auto& g : globals)
      if (!program.globals.count(g)) text += " extra " + g;
    return text;
  }
  int loc = count_loc(parsed.unit);
  int scanned = classify_code_lines(program.source);
  if (loc != program.loc || scanned != program.loc)
    return "loc: generator " + std::to_string(program.loc) + ", engine " + std::to_string(loc) + ", scanner " +
           std::to_string(scanned);
  return {};
}

std::vector<ThresholdSweep> threshold_sweeps() {
  using C = AnalysisConfig;
  std::vector<ThresholdSweep> sweeps;
  // Minimum-style thresholds tighten upward.
  sweeps.push_back(int_sweep("closure_depth", &C::closure_depth, {1, 2, 3, 4, 6}));
  sweeps.push_back(int_sweep("globals_max", &C::globals_max, {0, 1, 2, 5, 10, 30}));
  sweeps.push_back(int_sweep("large_object_props", &C::large_object_props, {1, 2, 5, 10, 20, 40}));
  sweeps.push_back(int_sweep("chain_min", &C::chain_min, {1, 2, 3, 4, 6, 8}));
  sweeps.push_back(int_sweep("method_loc_max", &C::method_loc_max, {1, 2, 5, 10, 50}));
  sweeps.push_back(int_sweep("params_max", &C::params_max, {1, 2, 3, 4, 6, 8}));
  sweeps.push_back(int_sweep("callback_depth", &C::callback_depth, {1, 2, 3, 4, 6}));
  sweeps.push_back(int_sweep("bequest_min_inherited", &C::bequest_min_inherited, {1, 2, 3, 5}));
  sweeps.push_back(int_sweep("switch_cases_min", &C::switch_cases_min, {1, 2, 3, 5, 7}));
  sweeps.push_back(int_sweep("html_string_min_tags", &C::html_string_min_tags, {1, 2, 3, 5}));
  sweeps.push_back(int_sweep("p1_min_categories", &C::p1_min_categories, {1, 2, 3, 6}));
  sweeps.push_back(int_sweep("monolithic_methods", &C::monolithic_methods, {1, 2, 5, 20}));
  sweeps.push_back(int_sweep("monolithic_loc", &C::monolithic_loc, {1, 5, 20, 500}));
  sweeps.push_back(int_sweep("p2_async_depth", &C::p2_async_depth, {1, 2, 3}));
  sweeps.push_back(int_sweep("p3_min_props", &C::p3_min_props, {1, 2, 4, 8}));
  sweeps.push_back(int_sweep("p3_min_functions", &C::p3_min_functions, {1, 2, 3}));
  sweeps.push_back(int_sweep("p3_parallel_min", &C::p3_parallel_min, {1, 2, 3, 5}));
  // Lazy objects are those below the bound, refused bequests those below
  // the ratio: both tighten downward.
  sweeps.push_back(int_sweep("lazy_object_props", &C::lazy_object_props, {8, 5, 3, 2, 1}));
  ThresholdSweep ratio{"bequest_ratio", {}};
  for (auto [num, den] : {std::pair{1, 1}, {2, 3}, {1, 2}, {1, 3}, {1, 5}, {1, 100}})
    ratio.steps.push_back([num, den](C& c) { c.bequest_ratio = {num, den}; });
  sweeps.push_back(std::move(ratio));
  return sweeps;
}

std::string monotonicity_violation(const std::string& source) {
  for (const auto& sweep : threshold_sweeps()) {
    KindCounts previous{};
    for (std::size_t i = 0; i < sweep.steps.size(); ++i) {
      AnalysisConfig cfg;
      sweep.steps[i](cfg);
      KindCounts counts = analyze_js(source, cfg).counts;
      if (i > 0) {
        for (Kind k : all_kinds()) {
          if (counts[index(k)] > previous[index(k)])
            return sweep.name + " step " + std::to_string(i) + ": " + std::string(code(k)) + " grew from " +
                   std::to_string(previous[index(k)]) + " to " + std::to_string(counts[index(k)]);
        }
      }
      previous = counts;
    }
  }
  return {};
}

}  // namespace gamesmell::testing
