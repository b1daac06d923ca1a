#include "gamesmell/source_unit.hpp"

#include <algorithm>
#include <cctype>

#include "gamesmell/parser.hpp"

namespace gamesmell {
namespace {

constexpr std::size_t kMinifiedLineLength = 5000;
constexpr double kMinifiedAverageLineLength = 500.0;

// Length of the valid UTF-8 sequence at i, or 0.
std::size_t utf8_sequence_length(std::string_view s, std::size_t i) {
  auto b = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
  unsigned char c = b(i);
  std::size_t n = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
  if (n == 0 || i + n > s.size()) return 0;
  for (std::size_t k = 1; k < n; ++k)
    if ((b(i + k) & 0xC0) != 0x80) return 0;
  if (n == 2 && c < 0xC2) return 0;
  return n;
}

// Replaces invalid UTF-8 with U+FFFD. Returns the number of replacements.
std::size_t sanitize_utf8(std::string& text) {
  std::size_t bad = 0;
  std::string out;
  for (std::size_t i = 0; i < text.size();) {
    std::size_t n = utf8_sequence_length(text, i);
    if (n == 0) {
      if (bad == 0) out.assign(text, 0, i);
      ++bad;
      out += "\xEF\xBF\xBD";
      ++i;
      continue;
    }
    if (bad) out.append(text, i, n);
    i += n;
  }
  if (bad) text = std::move(out);
  return bad;
}

bool looks_minified(std::string_view text) {
  std::size_t lines = 0;
  std::size_t longest = 0;
  std::size_t current = 0;
  for (char c : text) {
    if (c == '\n') {
      ++lines;
      longest = std::max(longest, current);
      current = 0;
    } else {
      ++current;
    }
  }
  if (current > 0) ++lines;
  longest = std::max(longest, current);
  if (lines == 0) return false;
  return longest > kMinifiedLineLength ||
         static_cast<double>(text.size()) / static_cast<double>(lines) > kMinifiedAverageLineLength;
}

void parse_js_into(SourceUnit& unit, ParseGoal goal) {
  try {
    ParseOutput out = parse_program(unit.text, goal);
    unit.tokens.reserve(out.lex.tokens.size());
    for (const Token& t : out.lex.tokens) {
      if (t.kind == TokenKind::End) continue;
      unit.tokens.push_back({t.span.start.offset, t.span.start.line, t.span.end.line});
    }
    unit.comments = std::move(out.lex.comments);
    unit.ast = std::shared_ptr<const Node>(std::move(out.program));
  } catch (const SyntaxError& e) {
    unit.diagnostics.push_back({e.what(), e.position.line, e.position.column});
  }
}

std::vector<std::uint32_t> line_starts(std::string_view text) {
  std::vector<std::uint32_t> starts{0};
  for (std::size_t i = 0; i < text.size(); ++i)
    if (text[i] == '\n') starts.push_back(static_cast<std::uint32_t>(i + 1));
  return starts;
}

Position position_at(std::string_view text, const std::vector<std::uint32_t>& starts,
                     std::size_t offset) {
  auto it = std::upper_bound(starts.begin(), starts.end(), offset);
  std::size_t line = static_cast<std::size_t>(it - starts.begin());
  std::uint32_t column = 1;
  for (std::size_t i = starts[line - 1]; i < offset; ++i)
    if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) ++column;
  return {static_cast<std::uint32_t>(offset), static_cast<std::uint32_t>(line), column};
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool iequals_prefix(std::string_view text, std::size_t at, std::string_view prefix) {
  if (at + prefix.size() > text.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(text[at + i])) != prefix[i]) return false;
  return true;
}

std::size_t ifind(std::string_view text, std::string_view needle, std::size_t from) {
  for (std::size_t i = from; i + needle.size() <= text.size(); ++i)
    if (iequals_prefix(text, i, needle)) return i;
  return std::string_view::npos;
}

std::string decode_entities(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out += s[i];
      continue;
    }
    std::size_t semi = s.find(';', i);
    if (semi == std::string_view::npos || semi - i > 10) {
      out += s[i];
      continue;
    }
    std::string_view name = s.substr(i + 1, semi - i - 1);
    if (name == "quot") out += '"';
    else if (name == "amp") out += '&';
    else if (name == "lt") out += '<';
    else if (name == "gt") out += '>';
    else if (name == "apos" || name == "#39") out += '\'';
    else {
      out += s[i];
      continue;
    }
    i = semi;
  }
  return out;
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

bool is_script_type(std::string_view type) {
  std::string t = lower(type);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  return t.empty() || t == "text/javascript" || t == "application/javascript" ||
         t == "application/x-javascript" || t == "text/ecmascript" || t == "module" ||
         t == "text/babel";
}

struct Attribute {
  std::string name;  // lowercased
  std::string_view raw_value;
  std::size_t value_offset = 0;
  bool has_value = false;
};

// Parses attributes from just after the tag name to the closing '>'.
// Returns the offset just past the tag.
std::size_t scan_attributes(std::string_view html, std::size_t i, std::vector<Attribute>& attrs) {
  auto space = [&](std::size_t k) { return k < html.size() && std::isspace(static_cast<unsigned char>(html[k])); };
  for (;;) {
    while (space(i)) ++i;
    if (i >= html.size()) return i;
    if (html[i] == '>') return i + 1;
    if (html[i] == '/' && i + 1 < html.size() && html[i + 1] == '>') return i + 2;
    if (html[i] == '/') {
      ++i;
      continue;
    }
    std::size_t name_start = i;
    while (i < html.size() && !space(i) && html[i] != '>' && html[i] != '=' &&
           !(html[i] == '/' && i + 1 < html.size() && html[i + 1] == '>'))
      ++i;
    Attribute attr;
    attr.name = lower(html.substr(name_start, i - name_start));
    while (space(i)) ++i;
    if (i < html.size() && html[i] == '=') {
      ++i;
      while (space(i)) ++i;
      attr.has_value = true;
      if (i < html.size() && (html[i] == '"' || html[i] == '\'')) {
        char q = html[i++];
        std::size_t end = html.find(q, i);
        if (end == std::string_view::npos) end = html.size();
        attr.value_offset = i;
        attr.raw_value = html.substr(i, end - i);
        i = std::min(end + 1, html.size());
      } else {
        std::size_t start = i;
        while (i < html.size() && !space(i) && html[i] != '>') ++i;
        attr.value_offset = start;
        attr.raw_value = html.substr(start, i - start);
      }
    }
    if (!attr.name.empty()) attrs.push_back(std::move(attr));
  }
}

bool is_event_attribute(std::string_view name) {
  if (name.size() < 3 || name[0] != 'o' || name[1] != 'n') return false;
  return std::all_of(name.begin() + 2, name.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

std::size_t skip_past(std::string_view html, std::size_t from, std::string_view closing) {
  std::size_t at = ifind(html, closing, from);
  if (at == std::string_view::npos) return html.size();
  std::size_t gt = html.find('>', at);
  return gt == std::string_view::npos ? html.size() : gt + 1;
}

}  // namespace

std::string_view to_string(ScriptOrigin origin) {
  switch (origin) {
    case ScriptOrigin::ScriptTag: return "script-tag";
    case ScriptOrigin::EventAttribute: return "event-attribute";
    case ScriptOrigin::JavascriptHref: return "javascript-href";
  }
  return "script-tag";
}

Position SourceUnit::to_file(Position p) const {
  if (!fragment_origin) return p;
  Position out = p;
  out.offset = p.offset + offset_base;
  if (p.line == 1) out.column = p.column + column_offset;
  out.line = p.line + line_offset;
  return out;
}

Span SourceUnit::to_file(Span s) const { return {to_file(s.start), to_file(s.end)}; }

std::vector<EmbeddedScript> extract_embedded_scripts(std::string_view html) {
  std::vector<EmbeddedScript> out;
  auto starts = line_starts(html);
  auto span_of = [&](std::size_t begin, std::size_t end) {
    return Span{position_at(html, starts, begin), position_at(html, starts, end)};
  };
  std::size_t i = 0;
  while (i < html.size()) {
    std::size_t lt = html.find('<', i);
    if (lt == std::string_view::npos) break;
    if (html.substr(lt, 4) == "<!--") {
      std::size_t end = html.find("-->", lt + 4);
      i = end == std::string_view::npos ? html.size() : end + 3;
      continue;
    }
    if (lt + 1 < html.size() && (html[lt + 1] == '!' || html[lt + 1] == '?' || html[lt + 1] == '/')) {
      std::size_t gt = html.find('>', lt);
      i = gt == std::string_view::npos ? html.size() : gt + 1;
      continue;
    }
    std::size_t n = lt + 1;
    if (n >= html.size() || !std::isalpha(static_cast<unsigned char>(html[n]))) {
      i = lt + 1;
      continue;
    }
    while (n < html.size() && (std::isalnum(static_cast<unsigned char>(html[n])) || html[n] == '-')) ++n;
    std::string tag = lower(html.substr(lt + 1, n - lt - 1));
    std::vector<Attribute> attrs;
    std::size_t after = scan_attributes(html, n, attrs);

    for (const Attribute& a : attrs) {
      if (!a.has_value) continue;
      if (is_event_attribute(a.name)) {
        std::string code = decode_entities(a.raw_value);
        if (is_blank(code)) continue;
        EmbeddedScript s;
        s.origin = ScriptOrigin::EventAttribute;
        s.attribute = a.name;
        s.code = std::move(code);
        s.html_span = span_of(a.value_offset, a.value_offset + a.raw_value.size());
        out.push_back(std::move(s));
      } else if (a.name == "href" || a.name == "src" || a.name == "action") {
        std::string value = decode_entities(a.raw_value);
        std::size_t lead = 0;
        while (lead < value.size() && std::isspace(static_cast<unsigned char>(value[lead]))) ++lead;
        if (!iequals_prefix(value, lead, "javascript:")) continue;
        std::string code = value.substr(lead + 11);
        if (is_blank(code)) continue;
        EmbeddedScript s;
        s.origin = ScriptOrigin::JavascriptHref;
        s.attribute = a.name;
        s.code = std::move(code);
        std::size_t code_offset = a.value_offset + std::min(a.raw_value.size(), lead + 11);
        s.html_span = span_of(code_offset, a.value_offset + a.raw_value.size());
        out.push_back(std::move(s));
      }
    }

    if (tag == "script") {
      std::size_t close = ifind(html, "</script", after);
      std::size_t body_end = close == std::string_view::npos ? html.size() : close;
      bool has_src = std::any_of(attrs.begin(), attrs.end(), [](const Attribute& a) { return a.name == "src"; });
      auto type = std::find_if(attrs.begin(), attrs.end(), [](const Attribute& a) { return a.name == "type"; });
      bool js = type == attrs.end() || is_script_type(type->raw_value);
      std::string_view body = html.substr(after, body_end - after);
      if (!has_src && js && !is_blank(body)) {
        EmbeddedScript s;
        s.origin = ScriptOrigin::ScriptTag;
        s.code = std::string(body);
        s.html_span = span_of(after, body_end);
        out.push_back(std::move(s));
      }
      i = close == std::string_view::npos ? html.size() : skip_past(html, close, "</script");
      continue;
    }
    if (tag == "style" || tag == "textarea" || tag == "title") {
      i = skip_past(html, after, "</" + tag);
      continue;
    }
    i = after;
  }
  return out;
}

std::shared_ptr<const SourceUnit> parse_fragment(std::string path, std::string code,
                                                 ScriptOrigin origin, Position at) {
  auto unit = std::make_shared<SourceUnit>();
  unit->path = std::move(path);
  unit->kind = SourceKind::JS;
  unit->text = std::move(code);
  unit->fragment_origin = origin;
  unit->line_offset = at.line - 1;
  unit->column_offset = at.column - 1;
  unit->offset_base = at.offset;
  parse_js_into(*unit, origin == ScriptOrigin::ScriptTag ? ParseGoal::Script : ParseGoal::HandlerBody);
  for (auto& d : unit->diagnostics) {
    Position p = unit->to_file(Position{0, d.line, d.column});
    d.line = p.line;
    d.column = p.column;
  }
  return unit;
}

SourceUnit parse_source(std::string path, std::string text, SourceKind kind) {
  SourceUnit unit;
  unit.path = std::move(path);
  unit.kind = kind;
  unit.text = std::move(text);
  if (std::size_t bad = sanitize_utf8(unit.text)) {
    unit.warnings.push_back({"replaced " + std::to_string(bad) + " invalid UTF-8 byte(s)", 1, 1});
  }
  unit.minified = looks_minified(unit.text);
  if (kind == SourceKind::JS) {
    parse_js_into(unit, ParseGoal::Script);
    return unit;
  }
  unit.embedded = extract_embedded_scripts(unit.text);
  for (auto& script : unit.embedded)
    script.unit = parse_fragment(unit.path, script.code, script.origin, script.html_span.start);
  return unit;
}

std::optional<SourceKind> source_kind_for(std::string_view path) {
  auto dot = path.rfind('.');
  if (dot == std::string_view::npos) return std::nullopt;
  std::string ext = lower(path.substr(dot));
  if (ext == ".js") return SourceKind::JS;
  if (ext == ".html" || ext == ".htm") return SourceKind::HTML;
  return std::nullopt;
}

}  // namespace gamesmell
