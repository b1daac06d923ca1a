#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gamesmell/ast.hpp"

namespace gamesmell {

enum class TokenKind : std::uint8_t {
  Identifier,  // identifier names, including reserved words
  Punct,
  Number,
  String,
  Template,  // see Token::template_part
  RegExp,
  End,
};

enum class TemplatePart : std::uint8_t { NoSubstitution, Head, Middle, Tail };

struct Token {
  TokenKind kind = TokenKind::End;
  TemplatePart template_part = TemplatePart::NoSubstitution;
  // Raw source text (identifier name, punctuator, literal as written).
  std::string_view text;
  // Cooked value for strings and template parts.
  std::string value;
  Span span;
  bool newline_before = false;

  bool is(std::string_view punct) const { return kind == TokenKind::Punct && text == punct; }
  bool is_word(std::string_view word) const {
    return kind == TokenKind::Identifier && text == word;
  }
};

struct SyntaxError : std::runtime_error {
  SyntaxError(const std::string& message, Position where)
      : std::runtime_error(message), position(where) {}
  Position position;
};

struct LexResult {
  std::vector<Token> tokens;  // always terminated by an End token
  std::vector<Span> comments;
};

// Tokenizes the whole input. Regular expression literals are recognized from
// the preceding token. Throws SyntaxError on malformed input.
LexResult tokenize(std::string_view source);

bool is_reserved_word(std::string_view word);

}  // namespace gamesmell
