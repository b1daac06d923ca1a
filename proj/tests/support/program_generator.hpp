#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

namespace gamesmell::testing {

// A random JavaScript program and the facts the generator knows about it by
// construction, independent of the parser.
struct GeneratedProgram {
  std::string source;
  std::vector<int> param_counts;     // one per function, method and arrow
  std::vector<int> switch_cases;     // non-default cases per switch
  std::vector<int> chain_lengths;    // one per maximal member/call chain
  std::vector<int> callback_depths;  // one per innermost callback
  std::set<std::string> globals;     // defined global names
  int loc = 0;                       // non-blank, non-comment lines
};

GeneratedProgram generate_program(std::mt19937& rng);

}  // namespace gamesmell::testing
