#pragma once

#include <vector>

#include "gamesmell/config.hpp"
#include "gamesmell/finding.hpp"
#include "gamesmell/scope.hpp"
#include "gamesmell/source_unit.hpp"

namespace gamesmell {

// A parsed script: a JS file or a code fragment embedded in an HTML file.
struct ScriptUnit {
  const SourceUnit* unit = nullptr;
  const ScopeModel* scopes = nullptr;
};

// Everything one game consists of. Script units hold all JavaScript code
// (files and HTML fragments); html_units are the HTML files themselves.
struct GameView {
  std::vector<ScriptUnit> scripts;
  std::vector<const SourceUnit*> html_units;
};

// Unit-scoped detectors. Unparsed units give no findings, except that
// detect_s2 also reports inline JavaScript of HTML units.
std::vector<Finding> detect_s1_closure(const SourceUnit& unit, const ScopeModel& scopes, const AnalysisConfig& cfg);
std::vector<Finding> detect_s2_coupling(const SourceUnit& unit, const ScopeModel& scopes, const AnalysisConfig& cfg);
std::vector<Finding> detect_s3_empty_catch(const SourceUnit& unit, const ScopeModel& scopes, const AnalysisConfig& cfg);
std::vector<Finding> detect_s5_large_object(const SourceUnit& unit, const ScopeModel& scopes, const AnalysisConfig& cfg);
std::vector<Finding> detect_s6_lazy_object(const SourceUnit& unit, const ScopeModel& scopes, const AnalysisConfig& cfg);
std::vector<Finding> detect_s7_long_message_chain(const SourceUnit& unit, const ScopeModel& scopes, const AnalysisConfig& cfg);
std::vector<Finding> detect_s8_long_method(const SourceUnit& unit, const ScopeModel& scopes, const AnalysisConfig& cfg);
std::vector<Finding> detect_s9_long_parameter_list(const SourceUnit& unit, const ScopeModel& scopes, const AnalysisConfig& cfg);
std::vector<Finding> detect_s10_nested_callback(const SourceUnit& unit, const ScopeModel& scopes, const AnalysisConfig& cfg);
std::vector<Finding> detect_s12_switch_statement(const SourceUnit& unit, const ScopeModel& scopes, const AnalysisConfig& cfg);

// Game-scoped detectors: globals, inheritance and references are pooled over
// all script units of the game.
std::vector<Finding> detect_s4_excessive_globals(const GameView& game, const AnalysisConfig& cfg);
std::vector<Finding> detect_s11_refused_bequest(const GameView& game, const AnalysisConfig& cfg);
std::vector<Finding> detect_s13_dead_code(const GameView& game, const AnalysisConfig& cfg);

// Single-unit forms of the game-scoped detectors (the unit is the game).
std::vector<Finding> detect_s4_excessive_globals(const SourceUnit& unit, const ScopeModel& scopes, const AnalysisConfig& cfg);
std::vector<Finding> detect_s11_refused_bequest(const SourceUnit& unit, const ScopeModel& scopes, const AnalysisConfig& cfg);
std::vector<Finding> detect_s13_dead_code(const SourceUnit& unit, const ScopeModel& scopes, const AnalysisConfig& cfg);

// Runs the enabled smell detectors over a game.
std::vector<Finding> detect_smells(const GameView& game, const AnalysisConfig& cfg, const KindSet& enabled);

// Own LOC of a function body: lines inside the braces, nested functions
// excluded.
int function_body_loc(const Node& fn, const SourceUnit& unit);

// Own property and method count of an object literal or class.
int object_member_count(const Node& object);

// Number of HTML tag tokens such as <div>, </b>, <br/> in a string.
int count_html_tags(std::string_view text);

}  // namespace gamesmell
