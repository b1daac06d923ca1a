#pragma once

#include <string_view>

namespace gamesmell::testing {

// Counts lines holding anything besides whitespace and comments, scanning
// characters with a small state machine (code, string, template, line and
// block comment). Regex literals are treated as code.
int classify_code_lines(std::string_view source);

}  // namespace gamesmell::testing
