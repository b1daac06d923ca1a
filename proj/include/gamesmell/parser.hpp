#pragma once

#include <memory>
#include <string_view>

#include "gamesmell/ast.hpp"
#include "gamesmell/lexer.hpp"

namespace gamesmell {

enum class ParseGoal : std::uint8_t {
  Script,
  // Inline handler code (event attributes, javascript: URLs): a function body,
  // so top-level `return` is allowed.
  HandlerBody,
};

struct ParseOutput {
  std::unique_ptr<Node> program;
  LexResult lex;
};

// Parses ES5 plus let/const, arrow functions, classes, template literals,
// default and rest parameters, spread, shorthand properties and for-of.
// Throws SyntaxError on anything else.
ParseOutput parse_program(std::string_view source, ParseGoal goal = ParseGoal::Script);

// Renders a tree back to JavaScript. Expressions are fully parenthesized, so
// the output reparses to the same tree shape.
std::string print_js(const Node& node);

}  // namespace gamesmell
