#include <random>

#include "doctest.h"
#include "gamesmell/metrics.hpp"
#include "gamesmell/parser.hpp"
#include "harness.hpp"
#include "line_oracle.hpp"
#include "program_generator.hpp"
#include "properties.hpp"

using namespace gamesmell;
using namespace gamesmell::testing;

TEST_CASE("generated programs parse and match their recorded facts") {
  std::mt19937 rng(20240601);
  for (int i = 0; i < 100; ++i) {
    GeneratedProgram program = generate_program(rng);
    std::string mismatch = oracle_mismatch(program);
    INFO("program ", i, ":\n", program.source);
    CHECK(mismatch == "");
  }
}

TEST_CASE("line scanner agrees with the engine LOC on generated files") {
  std::mt19937 rng(7);
  for (int i = 0; i < 100; ++i) {
    GeneratedProgram program = generate_program(rng);
    Parsed parsed = parse_js(program.source);
    CHECK(count_loc(parsed.unit) == classify_code_lines(program.source));
  }
}

TEST_CASE("printing a generated program reparses to the same tree") {
  std::mt19937 rng(99);
  for (int i = 0; i < 30; ++i) {
    GeneratedProgram program = generate_program(rng);
    auto first = parse_program(program.source);
    std::string printed = print_js(*first.program);
    auto second = parse_program(printed);
    CHECK(print_js(*second.program) == printed);
  }
}

TEST_CASE("finding counts do not grow as thresholds tighten") {
  std::mt19937 rng(31337);
  for (int i = 0; i < 15; ++i) {
    GeneratedProgram program = generate_program(rng);
    INFO("program ", i, ":\n", program.source);
    CHECK(monotonicity_violation(program.source) == "");
  }
}
