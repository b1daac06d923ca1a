#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gamesmell/config.hpp"
#include "gamesmell/finding.hpp"
#include "gamesmell/smells.hpp"

namespace gamesmell {

// Identifier and member-name tokens of an Identifier/Member/Call chain,
// lowercased and in source order (`this` and literals are skipped).
std::vector<std::string> chain_tokens(const Node& node);

// True when a lowercase token matches a lexicon pattern (exact, or prefix for
// patterns ending in `*`).
bool pattern_matches(std::string_view pattern, std::string_view token);

// First category, in alphabetical order, with a pattern matching any token of
// the node's chain.
std::optional<std::string> classify_component(const Node& node, const ComponentLexicon& lexicon);

std::vector<Finding> detect_p1_component_decoupling(const GameView& game, const AnalysisConfig& cfg);
std::vector<Finding> detect_p2_event_queue_decoupling(const GameView& game, const AnalysisConfig& cfg);
std::vector<Finding> detect_p3_data_locality(const GameView& game, const AnalysisConfig& cfg);
std::vector<Finding> detect_p4_object_pool(const GameView& game, const AnalysisConfig& cfg);

std::vector<Finding> detect_patterns(const GameView& game, const AnalysisConfig& cfg, const KindSet& enabled);

}  // namespace gamesmell
