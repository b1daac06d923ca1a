#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gamesmell/config.hpp"
#include "program_generator.hpp"

namespace gamesmell::testing {

// Compares what the engines measure on a generated program with the facts
// the generator recorded. Returns an empty string on agreement, otherwise a
// description of the first mismatch.
std::string oracle_mismatch(const GeneratedProgram& program);

// A numeric threshold and the values it takes from loosest to tightest.
struct ThresholdSweep {
  std::string name;
  std::vector<std::function<void(AnalysisConfig&)>> steps;
};

std::vector<ThresholdSweep> threshold_sweeps();

// Checks that per-kind finding counts never grow along any sweep. Returns an
// empty string when they do not.
std::string monotonicity_violation(const std::string& source);

}  // namespace gamesmell::testing
