#include "doctest.h"
#include "gamesmell/lexer.hpp"
#include "gamesmell/metrics.hpp"
#include "gamesmell/parser.hpp"
#include "gamesmell/source_unit.hpp"
#include "harness.hpp"

using namespace gamesmell;
using namespace gamesmell::testing;

namespace {

const Node* find_first(const Node& root, NodeKind kind) {
  const Node* found = nullptr;
  walk(root, [&](const Node& n) {
    if (!found && n.kind == kind) found = &n;
    return !found;
  });
  return found;
}

std::string sexpr_of(std::string_view src) { return to_sexpr(*parse_program(src).program); }

}  // namespace

TEST_CASE("lexer splits regex from division by the previous token") {
  auto lex = tokenize("a = b / c; d = /x+/g.test(s);");
  int regex = 0;
  for (const auto& t : lex.tokens) regex += t.kind == TokenKind::RegExp;
  CHECK(regex == 1);
}

TEST_CASE("lexer keeps comments apart from tokens") {
  auto lex = tokenize("// one\nx /* two */ + 1");
  CHECK(lex.comments.size() == 2);
  CHECK(lex.tokens.size() == 4);  // x + 1 End
  CHECK(lex.tokens[0].newline_before);
}

TEST_CASE("lexer cooks escapes and template parts") {
  auto lex = tokenize("'a\\nb' `x${1}y`");
  REQUIRE(lex.tokens.size() >= 4);
  CHECK(lex.tokens[0].value == "a\nb");
  CHECK(lex.tokens[1].template_part == TemplatePart::Head);
}

TEST_CASE("lexer rejects an unterminated string") {
  CHECK_THROWS_AS(tokenize("'abc"), SyntaxError);
}

TEST_CASE("minimal program parses to Program[VarDecl]") {
  SourceUnit unit = parse_source("a.js", "var x = 1;", SourceKind::JS);
  REQUIRE(unit.parsed());
  CHECK(unit.diagnostics.empty());
  REQUIRE(unit.ast->size() == 1);
  CHECK(unit.ast->child(0).kind == NodeKind::VarDecl);
}

TEST_CASE("syntax error leaves no tree and one diagnostic on line 1") {
  SourceUnit unit = parse_source("a.js", "function (", SourceKind::JS);
  CHECK_FALSE(unit.parsed());
  REQUIRE(unit.diagnostics.size() == 1);
  CHECK(unit.diagnostics[0].line == 1);
}

TEST_CASE("onclick attribute becomes an event-attribute script") {
  SourceUnit unit = parse_source("p.html", "<button onclick=\"f()\">", SourceKind::HTML);
  REQUIRE(unit.embedded.size() == 1);
  CHECK(unit.embedded[0].origin == ScriptOrigin::EventAttribute);
  CHECK(unit.embedded[0].code == "f()");
}

TEST_CASE("script tags and javascript: URLs are extracted with their origin") {
  auto scripts = extract_embedded_scripts(
      "<html><script>var a = 1;</script><a href=\"javascript:go()\">x</a>"
      "<script src=\"lib.js\"></script></html>");
  REQUIRE(scripts.size() == 2);
  CHECK(scripts[0].origin == ScriptOrigin::ScriptTag);
  CHECK(scripts[0].code == "var a = 1;");
  CHECK(scripts[1].origin == ScriptOrigin::JavascriptHref);
  CHECK(scripts[1].code == "go()");
}

TEST_CASE("fragment spans map back to file coordinates") {
  std::string html = "<p>\n<script>\nvar x;\ntry { f(); } catch (e) {}\n</script>\n";
  GameReport report = analyze_sources("g", {{"index.html", html}}, AnalysisConfig{});
  auto s3 = of_kind(report, Kind::S3);
  REQUIRE(s3.size() == 1);
  CHECK(s3[0].span.start.line == 4);
  CHECK(html.substr(s3[0].span.start.offset, 5) == "catch");
}

TEST_CASE("handler bodies allow a top-level return") {
  CHECK_NOTHROW(parse_program("return false;", ParseGoal::HandlerBody));
  CHECK_THROWS_AS(parse_program("return false;"), SyntaxError);
}

TEST_CASE("ES2015 constructs inside the supported subset parse") {
  const char* src =
      "let a = 1; const b = [...xs];\n"
      "class C extends D { constructor(x = 1, ...r) { super(x); } static m() { return `t${a}`; } }\n"
      "for (const v of list) { f(v); }\n"
      "var o = { a, [k]: 1, get g() { return 1; }, m() {} };\n"
      "var h = (p) => ({ p });\n";
  CHECK_NOTHROW(parse_program(src));
}

TEST_CASE("parse is deterministic and printing reparses to the same tree") {
  const char* src =
      "var a = b + c * d, e = (f, g);\n"
      "if (a) { x = y ? 1 : 2; } else for (var i in o) continue;\n"
      "label: while (true) { break label; }\n"
      "var fn = function named(a, b) { return a.b[c](d).e; };\n";
  CHECK(sexpr_of(src) == sexpr_of(src));
  std::string printed = print_js(*parse_program(src).program);
  CHECK(sexpr_of(printed) == sexpr_of(src));
}

TEST_CASE("invalid UTF-8 is replaced and warned about") {
  std::string text = "var s = '\xff';";
  SourceUnit unit = parse_source("a.js", text, SourceKind::JS);
  CHECK(unit.parsed());
  CHECK_FALSE(unit.warnings.empty());
}

TEST_CASE("function parameters: rest and defaults counted") {
  auto out = parse_program("function f(a, b = 2, ...r) {}");
  const Node* fn = find_first(*out.program, NodeKind::FunctionDecl);
  REQUIRE(fn);
  CHECK(fn->param_count == 3);
}

TEST_CASE("count_loc: a 3-line function with one blank line") {
  Parsed p = parse_js("function f() {\n\n}\n");
  const Node* fn = find_first(*p.unit.ast, NodeKind::FunctionDecl);
  CHECK(count_loc(fn->span, p.unit) == 2);
}

TEST_CASE("count_loc: a body holding only a comment counts the code lines") {
  Parsed one_line = parse_js("function f() { /* todo */ }");
  CHECK(count_loc(find_first(*one_line.unit.ast, NodeKind::FunctionDecl)->span, one_line.unit) == 1);
  Parsed three_lines = parse_js("function f() {\n  // todo\n}\n");
  CHECK(count_loc(find_first(*three_lines.unit.ast, NodeKind::FunctionDecl)->span, three_lines.unit) == 2);
}

TEST_CASE("count_loc: empty span is 0 and whole units skip comments") {
  Parsed p = parse_js("// header\n\nvar a = 1; /* x */\n/*\n multi\n*/\nvar b = `\nline\n`;\n");
  CHECK(count_loc(Span{}, p.unit) == 0);
  CHECK(count_loc(p.unit) == 4);
}

TEST_CASE("member chains are maximal") {
  SUBCASE("a.b.c.d has length 3") {
    Parsed p = parse_js("a.b.c.d;");
    auto chains = extract_chains(p.unit);
    REQUIRE(chains.size() == 1);
    CHECK(chains[0].length == 3);
  }
  SUBCASE("a() has length 1") {
    Parsed p = parse_js("a();");
    auto chains = extract_chains(p.unit);
    REQUIRE(chains.size() == 1);
    CHECK(chains[0].length == 1);
  }
  SUBCASE("prefixes of a.b.c.d.e() are not separate chains") {
    Parsed p = parse_js("x = a.b.c.d.e();");
    auto chains = extract_chains(p.unit);
    REQUIRE(chains.size() == 1);
    CHECK(chains[0].length == 5);
  }
  SUBCASE("arguments start their own chains") {
    Parsed p = parse_js("a.b(c.d.e);");
    auto chains = extract_chains(p.unit);
    REQUIRE(chains.size() == 2);
  }
}

TEST_CASE("source kinds come from the extension") {
  CHECK(source_kind_for("x/y.js") == SourceKind::JS);
  CHECK(source_kind_for("INDEX.HTM") == SourceKind::HTML);
  CHECK_FALSE(source_kind_for("style.css").has_value());
}
