#include "doctest.h"
#include "gamesmell/parser.hpp"
#include "gamesmell/patterns.hpp"
#include "harness.hpp"

using namespace gamesmell;
using namespace gamesmell::testing;

namespace {

std::optional<std::string> classify(const char* expr) {
  auto out = parse_program(expr);
  const Node& e = out.program->child(0).child(0);
  return classify_component(e, ComponentLexicon::defaults());
}

GameReport snippet_game(const char* variant) {
  return analyze_game(fixture_dir() / "games" / variant, AnalysisConfig{});
}

GameReport snippet_file(const char* variant, const char* file) {
  return analyze_game(fixture_dir() / "games" / variant / file, AnalysisConfig{});
}

}  // namespace

TEST_CASE("component classification from the chain tokens") {
  CHECK(classify("this.load.audio('sfx', 'a.mp3');") == "audio");
  CHECK(classify("this.load.image('tweet','assets/twit.png');") == "graphics");
  CHECK_FALSE(classify("console.log(x);").has_value());
  CHECK(classify("ctx.drawImage(img, 0, 0);") == "graphics");
}

TEST_CASE("chain tokens skip this and literals") {
  auto out = parse_program("this.load.audio('sfx');");
  auto tokens = chain_tokens(out.program->child(0).child(0));
  CHECK(tokens == std::vector<std::string>{"load", "audio"});
}

TEST_CASE("lexicon patterns: exact or trailing-star prefix") {
  CHECK(pattern_matches("draw*", "drawimage"));
  CHECK(pattern_matches("canvas", "canvas"));
  CHECK_FALSE(pattern_matches("canvas", "canvases"));
  CHECK_FALSE(pattern_matches("draw*", "redraw"));
}

TEST_CASE("P1 component decoupling") {
  CHECK(count_of(snippet_file("original", "Preloader.js"), Kind::P1) == 1);
  CHECK(count_of(analyze_js("function f(){ ctx.drawImage(a); sprite.x = 1; }"), Kind::P1) == 0);
  std::string methods = "var Big = {";
  for (int i = 0; i < 25; ++i) methods += (i ? ", m" : "m") + std::to_string(i) + ": function(){}";
  methods += "};\n";
  auto p1 = of_kind(analyze_js(methods), Kind::P1);
  REQUIRE(p1.size() == 1);
  CHECK(p1[0].subkind == "monolithic");
}

TEST_CASE("P2 event queue decoupling") {
  auto p2 = of_kind(snippet_file("original", "Storage.js"), Kind::P2);
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].subkind == "async-chain");
  CHECK(count_of(analyze_js("document.addEventListener('keydown', function(evt){ eventQueue.push(evt); });"),
                 Kind::P2) == 0);
  CHECK(count_of(analyze_js("function f(){ return 1; }"), Kind::P2) == 0);
  CHECK(count_of(analyze_js("document.addEventListener('keydown', function(evt){ player.jump(evt); });"),
                 Kind::P2) == 1);
}

TEST_CASE("P3 data locality") {
  auto p3 = of_kind(snippet_file("original", "Boot.js"), Kind::P3);
  REQUIRE(p3.size() == 1);
  CHECK(p3[0].subkind == "hot-struct");
  auto parallel = of_kind(analyze_js("function f(){ var a={x:1},b={x:2},c={x:3}; return [a,b,c]; }"), Kind::P3);
  REQUIRE(parallel.size() == 1);
  CHECK(parallel[0].subkind == "parallel-objects");
  CHECK(count_of(analyze_js("function f(){ var p = {x:1, y:2}; return p.x; }"), Kind::P3) == 0);
}

TEST_CASE("P4 object pool") {
  auto p4 = of_kind(snippet_file("original", "keyboard.js"), Kind::P4);
  REQUIRE(p4.size() == 1);
  CHECK(p4[0].subkind == "transient-container");
  auto loop = of_kind(analyze_js("function tick(){ for (var i = 0; i < 9; i++) { list.push({x:i}); } }"), Kind::P4);
  REQUIRE(loop.size() == 1);
  CHECK(loop[0].subkind == "alloc-in-loop");
  CHECK(count_of(analyze_js("var cache = new Map();\n"), Kind::P4) == 0);
  CHECK(count_of(analyze_js("function pooledAlloc(){ for (var i = 0; i < 9; i++) { list.push({x:i}); } }"),
                 Kind::P4) == 0);
}

TEST_CASE("game snippets as one game trigger every pattern kind") {
  GameReport report = snippet_game("original");
  CHECK(report.file_count == 4);
  for (Kind k : {Kind::P1, Kind::P2, Kind::P3, Kind::P4}) CHECK(count_of(report, k) >= 1);
  CHECK(report.violated_patterns() == std::vector<Kind>{Kind::P1, Kind::P2, Kind::P3, Kind::P4});
}

TEST_CASE("refactored snippets trigger none of their pattern kinds") {
  CHECK(count_of(snippet_file("refactored", "Preloader.js"), Kind::P1) == 0);
  CHECK(count_of(snippet_file("refactored", "Storage.js"), Kind::P2) == 0);
  CHECK(count_of(snippet_file("refactored", "Boot.js"), Kind::P3) == 0);
  CHECK(count_of(snippet_file("refactored", "keyboard.js"), Kind::P4) == 0);
}

TEST_CASE("disabled kinds are not reported") {
  KindSet only_p4;
  only_p4.insert(Kind::P4);
  GameReport report = analyze_game(fixture_dir() / "games" / "original", AnalysisConfig{}, only_p4);
  for (const auto& f : report.findings) CHECK(f.kind == Kind::P4);
  CHECK(count_of(report, Kind::P4) >= 1);
}
