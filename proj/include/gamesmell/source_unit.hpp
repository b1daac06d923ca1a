#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gamesmell/ast.hpp"

namespace gamesmell {

enum class SourceKind : std::uint8_t { JS, HTML };
enum class ScriptOrigin : std::uint8_t { ScriptTag, EventAttribute, JavascriptHref };

std::string_view to_string(ScriptOrigin origin);

struct ParseDiagnostic {
  std::string message;
  std::uint32_t line = 1;
  std::uint32_t column = 1;
};

struct SourceUnit;

struct EmbeddedScript {
  ScriptOrigin origin = ScriptOrigin::ScriptTag;
  // Location of the code inside the HTML file.
  Span html_span;
  // Attribute name for EventAttribute/JavascriptHref origins.
  std::string attribute;
  std::string code;
  std::shared_ptr<const SourceUnit> unit;
};

// Source lines covered by one token.
struct TokenLines {
  std::uint32_t offset = 0;
  std::uint32_t first_line = 0;
  std::uint32_t last_line = 0;
};

struct SourceUnit {
  std::string path;
  SourceKind kind = SourceKind::JS;
  std::string text;
  std::shared_ptr<const Node> ast;
  // Parse failures. For JS units, non-empty exactly when ast is absent.
  std::vector<ParseDiagnostic> diagnostics;
  // Encoding repairs and similar notes that do not prevent analysis.
  std::vector<ParseDiagnostic> warnings;
  std::vector<EmbeddedScript> embedded;
  std::vector<TokenLines> tokens;
  std::vector<Span> comments;
  bool minified = false;

  // Set for code embedded in an HTML file: origin and where the fragment
  // starts, so spans can be mapped back to file coordinates.
  std::optional<ScriptOrigin> fragment_origin;
  std::uint32_t line_offset = 0;
  std::uint32_t column_offset = 0;
  std::uint32_t offset_base = 0;

  bool parsed() const { return ast != nullptr; }
  Position to_file(Position p) const;
  Span to_file(Span s) const;
};

// Parses JS or HTML text. Never throws on bad input: syntax errors become
// diagnostics and invalid UTF-8 is replaced with U+FFFD plus a warning.
SourceUnit parse_source(std::string path, std::string text, SourceKind kind);

// Parses a script fragment extracted from an HTML file.
std::shared_ptr<const SourceUnit> parse_fragment(std::string path, std::string code,
                                                 ScriptOrigin origin, Position at);

// Tag/attribute-level scan for inline scripts, on* event attributes and
// javascript: URLs. Fragments are not parsed here.
std::vector<EmbeddedScript> extract_embedded_scripts(std::string_view html);

std::optional<SourceKind> source_kind_for(std::string_view path);

}  // namespace gamesmell
