#include "line_oracle.hpp"

namespace gamesmell::testing {

int classify_code_lines(std::string_view src) {
  enum class State { Code, Single, Double, Template, LineComment, BlockComment };
  State state = State::Code;
  int count = 0;
  bool line_has_code = false;
  for (std::size_t i = 0; i < src.size(); ++i) {
    char c = src[i];
    char next = i + 1 < src.size() ? src[i + 1] : '\0';
    if (c == '\n') {
      if (line_has_code) ++count;
      line_has_code = false;
      if (state == State::LineComment) state = State::Code;
      // Strings and templates spanning lines keep the next line as code.
      if (state == State::Template) line_has_code = true;
      continue;
    }
    switch (state) {
      case State::Code:
        if (c == '/' && next == '/') {
          state = State::LineComment;
          ++i;
        } else if (c == '/' && next == '*') {
          state = State::BlockComment;
          ++i;
        } else if (c != ' ' && c != '\t' && c != '\r') {
          line_has_code = true;
          if (c == '\'') state = State::Single;
          if (c == '"') state = State::Double;
          if (c == '`') state = State::Template;
        }
        break;
      case State::Single:
      case State::Double:
        if (c == '\\') {
          ++i;
        } else if ((c == '\'' && state == State::Single) || (c == '"' && state == State::Double)) {
          state = State::Code;
        }
        break;
      case State::Template:
        if (c == '\\') {
          ++i;
        } else if (c == '`') {
          state = State::Code;
        }
        break;
      case State::LineComment:
        break;
      case State::BlockComment:
        if (c == '*' && next == '/') {
          state = State::Code;
          ++i;
        }
        break;
    }
  }
  if (line_has_code) ++count;
  return count;
}

}  // namespace gamesmell::testing
