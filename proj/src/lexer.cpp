#include "gamesmell/lexer.hpp"

#include <algorithm>
#include <array>
#include <span>

namespace gamesmell {
namespace {

constexpr std::array<std::string_view, 49> kPunctuators = {
    ">>>=", "...", "===", "!==", "**=", "<<=", ">>=", ">>>", "=>", "==", "!=", "<=", ">=",
    "&&",   "||",  "++",  "--",  "+=",  "-=",  "*=",  "/=",  "%=",  "&=", "|=", "^=", "<<",
    ">>",   "**",  "{",   "}",   "(",   ")",   "[",   "]",   ";",   ",",  "<",  ">",  "+",
    "-",    "*",   "/",   "%",   "&",   "|",   "^",   "!",   "~",   "?"};

constexpr std::array<std::string_view, 5> kMorePunctuators = {":", "=", ".", "@", "#"};

// Keywords after which a `/` starts a regular expression.
constexpr std::array<std::string_view, 14> kRegexAfterWords = {
    "return", "typeof", "instanceof", "in", "of", "new", "delete",
    "void",   "throw",  "case",       "do", "else", "yield", "await"};

bool is_id_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '$' || c == '_' || c == '\\' ||
         c >= 0x80;
}

bool is_id_part(unsigned char c) { return is_id_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool is_hex(unsigned char c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  LexResult run() {
    LexResult result;
    bool newline = false;
    for (;;) {
      newline |= skip_trivia(result.comments);
      Position start = pos_;
      if (at_end()) {
        Token end;
        end.kind = TokenKind::End;
        end.span = {start, start};
        end.newline_before = true;
        result.tokens.push_back(std::move(end));
        break;
      }
      Token tok = next_token(result.tokens);
      tok.span.start = start;
      tok.span.end = pos_;
      tok.text = src_.substr(start.offset, pos_.offset - start.offset);
      tok.newline_before = newline;
      newline = false;
      result.tokens.push_back(std::move(tok));
    }
    if (!template_depth_.empty()) throw SyntaxError("unterminated template literal", pos_);
    return result;
  }

 private:
  bool at_end() const { return pos_.offset >= src_.size(); }
  unsigned char peek(std::size_t ahead = 0) const {
    std::size_t i = pos_.offset + ahead;
    return i < src_.size() ? static_cast<unsigned char>(src_[i]) : 0;
  }

  // Line terminator length at the cursor (LF, CR, CRLF, U+2028, U+2029).
  std::size_t newline_length() const {
    unsigned char c = peek();
    if (c == '\n') return 1;
    if (c == '\r') return peek(1) == '\n' ? 2 : 1;
    if (c == 0xE2 && peek(1) == 0x80 && (peek(2) == 0xA8 || peek(2) == 0xA9)) return 3;
    return 0;
  }

  void advance() {
    if (std::size_t n = newline_length()) {
      pos_.offset += static_cast<std::uint32_t>(n);
      ++pos_.line;
      pos_.column = 1;
      return;
    }
    unsigned char c = peek();
    ++pos_.offset;
    // Columns count code points, not continuation bytes.
    if ((c & 0xC0) != 0x80) ++pos_.column;
    while (!at_end() && (peek() & 0xC0) == 0x80) ++pos_.offset;
  }

  bool skip_trivia(std::vector<Span>& comments) {
    bool newline = false;
    while (!at_end()) {
      unsigned char c = peek();
      if (newline_length()) {
        newline = true;
        advance();
      } else if (c == ' ' || c == '\t' || c == '\v' || c == '\f') {
        advance();
      } else if (c == 0xC2 && peek(1) == 0xA0) {
        advance();
      } else if (c == 0xEF && peek(1) == 0xBB && peek(2) == 0xBF) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        Position start = pos_;
        while (!at_end() && !newline_length()) advance();
        comments.push_back({start, pos_});
      } else if (c == '/' && peek(1) == '*') {
        Position start = pos_;
        advance();
        advance();
        for (;;) {
          if (at_end()) throw SyntaxError("unterminated comment", start);
          if (peek() == '*' && peek(1) == '/') {
            advance();
            advance();
            break;
          }
          if (newline_length()) newline = true;
          advance();
        }
        comments.push_back({start, pos_});
      } else {
        break;
      }
    }
    return newline;
  }

  static bool regex_allowed(const std::vector<Token>& tokens) {
    if (tokens.empty()) return true;
    const Token& prev = tokens.back();
    switch (prev.kind) {
      case TokenKind::Punct:
        return !(prev.text == ")" || prev.text == "]" || prev.text == "}" || prev.text == "++" ||
                 prev.text == "--");
      case TokenKind::Identifier:
        return std::find(kRegexAfterWords.begin(), kRegexAfterWords.end(), prev.text) !=
               kRegexAfterWords.end();
      case TokenKind::Template:
        return prev.template_part == TemplatePart::Head ||
               prev.template_part == TemplatePart::Middle;
      default:
        return false;
    }
  }

  Token next_token(const std::vector<Token>& tokens) {
    Token tok;
    unsigned char c = peek();
    if (is_id_start(c)) {
      tok.kind = TokenKind::Identifier;
      while (!at_end() && is_id_part(peek())) {
        if (peek() == '\\') {
          advance();
          if (peek() != 'u') throw SyntaxError("invalid escape in identifier", pos_);
        }
        advance();
      }
      return tok;
    }
    if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
      lex_number();
      tok.kind = TokenKind::Number;
      return tok;
    }
    if (c == '"' || c == '\'') {
      tok.kind = TokenKind::String;
      tok.value = lex_string(static_cast<char>(c));
      return tok;
    }
    if (c == '`') {
      advance();
      tok.kind = TokenKind::Template;
      tok.value = lex_template_chars(tok.template_part, true);
      return tok;
    }
    if (c == '}' && !template_depth_.empty() && template_depth_.back() == 0) {
      template_depth_.pop_back();
      advance();
      tok.kind = TokenKind::Template;
      tok.value = lex_template_chars(tok.template_part, false);
      return tok;
    }
    if (c == '/' && regex_allowed(tokens)) {
      lex_regex();
      tok.kind = TokenKind::RegExp;
      return tok;
    }
    std::string_view rest = src_.substr(pos_.offset);
    for (auto group : {std::span<const std::string_view>(kPunctuators),
                       std::span<const std::string_view>(kMorePunctuators)}) {
      for (std::string_view p : group) {
        if (rest.starts_with(p)) {
          for (std::size_t i = 0; i < p.size(); ++i) advance();
          tok.kind = TokenKind::Punct;
          if (!template_depth_.empty()) {
            if (p == "{") ++template_depth_.back();
            if (p == "}") --template_depth_.back();
          }
          return tok;
        }
      }
    }
    throw SyntaxError("unexpected character", pos_);
  }

  void lex_number() {
    Position start = pos_;
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X' || peek(1) == 'o' || peek(1) == 'O' ||
                          peek(1) == 'b' || peek(1) == 'B')) {
      advance();
      advance();
      if (!is_hex(peek())) throw SyntaxError("malformed number", start);
      while (is_hex(peek()) || peek() == '_') advance();
    } else {
      while (is_digit(peek()) || peek() == '_') advance();
      if (peek() == '.') {
        advance();
        while (is_digit(peek()) || peek() == '_') advance();
      }
      if (peek() == 'e' || peek() == 'E') {
        advance();
        if (peek() == '+' || peek() == '-') advance();
        if (!is_digit(peek())) throw SyntaxError("malformed exponent", start);
        while (is_digit(peek())) advance();
      }
    }
    if (is_id_start(peek())) throw SyntaxError("identifier directly after number", pos_);
  }

  std::uint32_t read_hex(std::size_t digits) {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      unsigned char h = peek();
      if (!is_hex(h)) throw SyntaxError("malformed escape sequence", pos_);
      v = v * 16 + static_cast<std::uint32_t>(is_digit(h) ? h - '0' : (h | 0x20) - 'a' + 10);
      advance();
    }
    return v;
  }

  // Consumes the character after a backslash and appends its cooked value.
  void lex_escape(std::string& out) {
    if (std::size_t n = newline_length()) {
      (void)n;
      advance();  // line continuation
      return;
    }
    unsigned char e = peek();
    switch (e) {
      case 'n': out += '\n'; advance(); return;
      case 't': out += '\t'; advance(); return;
      case 'r': out += '\r'; advance(); return;
      case 'b': out += '\b'; advance(); return;
      case 'f': out += '\f'; advance(); return;
      case 'v': out += '\v'; advance(); return;
      case '0':
        if (!is_digit(peek(1))) {
          out += '\0';
          advance();
          return;
        }
        break;
      case 'x': advance(); append_utf8(out, read_hex(2)); return;
      case 'u':
        advance();
        if (peek() == '{') {
          advance();
          std::uint32_t v = 0;
          while (is_hex(peek())) v = v * 16 + read_hex(1);
          if (peek() != '}') throw SyntaxError("malformed unicode escape", pos_);
          advance();
          append_utf8(out, v);
        } else {
          append_utf8(out, read_hex(4));
        }
        return;
      default: break;
    }
    std::size_t before = pos_.offset;
    advance();
    out.append(src_.substr(before, pos_.offset - before));
  }

  std::string lex_string(char quote) {
    Position start = pos_;
    advance();
    std::string value;
    for (;;) {
      if (at_end() || newline_length()) throw SyntaxError("unterminated string literal", start);
      unsigned char c = peek();
      if (c == static_cast<unsigned char>(quote)) {
        advance();
        return value;
      }
      if (c == '\\') {
        advance();
        if (at_end()) throw SyntaxError("unterminated string literal", start);
        lex_escape(value);
        continue;
      }
      std::size_t before = pos_.offset;
      advance();
      value.append(src_.substr(before, pos_.offset - before));
    }
  }

  // Scans template characters after a backtick or a substitution's closing
  // brace, up to and including the next backtick or `${`.
  std::string lex_template_chars(TemplatePart& part, bool opened_by_backtick) {
    Position start = pos_;
    std::string value;
    for (;;) {
      if (at_end()) throw SyntaxError("unterminated template literal", start);
      unsigned char c = peek();
      if (c == '`') {
        advance();
        part = opened_by_backtick ? TemplatePart::NoSubstitution : TemplatePart::Tail;
        return value;
      }
      if (c == '$' && peek(1) == '{') {
        advance();
        advance();
        part = opened_by_backtick ? TemplatePart::Head : TemplatePart::Middle;
        template_depth_.push_back(0);
        return value;
      }
      if (c == '\\') {
        advance();
        if (at_end()) throw SyntaxError("unterminated template literal", start);
        lex_escape(value);
        continue;
      }
      std::size_t before = pos_.offset;
      advance();
      value.append(src_.substr(before, pos_.offset - before));
    }
  }

  void lex_regex() {
    Position start = pos_;
    advance();
    bool in_class = false;
    for (;;) {
      if (at_end() || newline_length()) throw SyntaxError("unterminated regular expression", start);
      unsigned char c = peek();
      if (c == '\\') {
        advance();
        if (at_end() || newline_length())
          throw SyntaxError("unterminated regular expression", start);
        advance();
        continue;
      }
      if (c == '[') in_class = true;
      if (c == ']') in_class = false;
      advance();
      if (c == '/' && !in_class) break;
    }
    while (!at_end() && is_id_part(peek())) advance();
  }

  std::string_view src_;
  Position pos_;
  // Brace depth inside each open template substitution.
  std::vector<int> template_depth_;
};

}  // namespace

LexResult tokenize(std::string_view source) { return Lexer(source).run(); }

bool is_reserved_word(std::string_view word) {
  static constexpr std::array<std::string_view, 36> kReserved = {
      "break",  "case",    "catch",   "class",    "const",    "continue",   "debugger",
      "default", "delete", "do",      "else",     "enum",     "export",     "extends",
      "false",  "finally", "for",     "function", "if",       "import",     "in",
      "instanceof", "new", "null",    "return",   "super",    "switch",     "this",
      "throw",  "true",    "try",     "typeof",   "var",      "void",       "while",
      "with"};
  return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end();
}

}  // namespace gamesmell
