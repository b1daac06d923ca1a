#include <fstream>

#include "doctest.h"
#include "gamesmell/cli.hpp"
#include "gamesmell/config.hpp"
#include "gamesmell/report.hpp"
#include "harness.hpp"

using namespace gamesmell;
using namespace gamesmell::testing;

namespace {

RunOptions file_options(const std::filesystem::path& path, OutputFormat format = OutputFormat::Json) {
  RunOptions o;
  o.mode = RunMode::File;
  o.inputs = {path.string()};
  o.format = format;
  return o;
}

std::string snippet_manifest(const TempDir& dir) {
  std::string text = "game_id,root\n";
  for (const char* f : {"Preloader.js", "Storage.js", "Boot.js", "keyboard.js"})
    text += std::string(f) + "," + (fixture_dir() / "games" / "original" / f).string() + "\n";
  dir.write("manifest.csv", text);
  return (dir.path() / "manifest.csv").string();
}

}  // namespace

TEST_CASE("kind names and parsing") {
  CHECK(code(Kind::S10) == "S10");
  CHECK(name(Kind::P4) == "Object Pool");
  CHECK(parse_kind("s3") == Kind::S3);
  CHECK(parse_kind("P4") == Kind::P4);
  CHECK_FALSE(parse_kind("S14").has_value());
  CHECK_FALSE(parse_kind("X1").has_value());
}

TEST_CASE("evidence is clipped on a UTF-8 boundary") {
  std::string text(199, 'a');
  text += "\xc3\xa9tail";
  std::string clipped = clip_evidence(text);
  CHECK(clipped.size() <= 200);
  CHECK(clipped == std::string(199, 'a'));
}

TEST_CASE("config defaults, overrides and validation") {
  AnalysisConfig defaults;
  CHECK_NOTHROW(validate(defaults));
  CHECK(config_from_json(to_json(defaults)) == defaults);

  auto cfg = config_from_json(nlohmann::ordered_json::parse(R"({"params_max": 6, "bequest_ratio": "1/2"})"));
  CHECK(cfg.params_max == 6);
  CHECK(cfg.bequest_ratio == Fraction{1, 2});
  CHECK(config_from_json(nlohmann::ordered_json::parse(R"({"bequest_ratio": 0.25})")).bequest_ratio ==
        (Fraction{1, 4}));

  CHECK_THROWS_AS(config_from_json(nlohmann::ordered_json::parse(R"({"param_max": 6})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::ordered_json::parse(R"({"chain_min": 0})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::ordered_json::parse(R"({"bequest_ratio": "3/2"})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::ordered_json::parse(R"({"queue_pattern": "("})")), ConfigError);
}

TEST_CASE("advice for every pattern kind and for smells") {
  Finding f;
  f.kind = Kind::P3;
  CHECK(advise(f).body.find("array layout") != std::string::npos);
  f.kind = Kind::P2;
  CHECK(advise(f).body.find("Add()") != std::string::npos);
  CHECK(advise(f).body.find("PublishEvents()") != std::string::npos);
  f.kind = Kind::S3;
  CHECK(advise(f).body.find("exception") != std::string::npos);
  CHECK(advise(Kind::P4).body.find("fetch") != std::string::npos);
  CHECK(advise(Kind::P1).body.find("function") != std::string::npos);
  for (Kind k : all_kinds()) CHECK_FALSE(advise(k).body.empty());
}

TEST_CASE("JSON report round-trips byte for byte") {
  std::vector<GameReport> games;
  games.push_back(analyze_game(fixture_dir() / "games" / "original", AnalysisConfig{}));
  games.push_back(analyze_game(fixture_dir() / "smells", AnalysisConfig{}));
  RunReport report = make_report(games, AnalysisConfig{});
  std::string text = render_json(report);
  CHECK(render_json(parse_report(text)) == text);
  auto doc = nlohmann::ordered_json::parse(text);
  CHECK(doc["version"] == 1);
  CHECK(doc["config_echo"]["params_max"] == 4);
  CHECK(doc["games"].size() == 2);
  CHECK(doc["games"][0]["game_id"] == "original");
  CHECK_THROWS_AS(parse_report(R"({"version": 9})"), ReportError);
}

TEST_CASE("run: file mode JSON on the empty-catch fixture") {
  RunResult r = run(file_options(fixture_dir() / "smells" / "s03_empty_catch.js"));
  CHECK(r.exit_code == kExitOk);
  auto doc = nlohmann::ordered_json::parse(r.out);
  auto findings = doc["games"][0]["findings"];
  REQUIRE(findings.size() == 1);
  CHECK(findings[0]["kind"] == "S3");
}

TEST_CASE("run: corpus of the game snippets fails on P4") {
  TempDir dir("gamesmell-cli");
  RunOptions o;
  o.mode = RunMode::Corpus;
  o.inputs = {snippet_manifest(dir)};
  o.fail_on.insert(Kind::P4);
  o.stats_csv_path = (dir.path() / "stats.csv").string();
  RunResult r = run(o);
  CHECK(r.exit_code == kExitFindings);
  CHECK(read_text(dir.path() / "stats.csv").rfind("statistic,S1", 0) == 0);
  o.fail_on = KindSet::none();
  CHECK(run(o).exit_code == kExitOk);
}

TEST_CASE("run: --enable filters kinds") {
  TempDir dir("gamesmell-enable");
  dir.write("both.js", "function f(a,b,c,d,e){ try{ g(); }catch(x){} }\nf();\n");
  RunOptions o = file_options(dir.path() / "both.js");
  CHECK(count_of(analyze_game(dir.path() / "both.js", AnalysisConfig{}), Kind::S9) == 1);
  o.enabled = parse_kind_list({"S3"});
  auto doc = nlohmann::ordered_json::parse(run(o).out);
  auto findings = doc["games"][0]["findings"];
  REQUIRE(findings.size() == 1);
  CHECK(findings[0]["kind"] == "S3");
}

TEST_CASE("run: usage and config errors exit 2") {
  TempDir dir("gamesmell-errors");
  CHECK(run(file_options(dir.path() / "absent.js")).exit_code == kExitUsage);
  RunOptions corpus;
  corpus.mode = RunMode::Corpus;
  corpus.inputs = {(dir.path() / "absent.csv").string()};
  CHECK(run(corpus).exit_code == kExitUsage);
  dir.write("bad.json", R"({"no_such_key": 1})");
  dir.write("a.js", "var a;");
  RunOptions o = file_options(dir.path() / "a.js");
  o.config_path = (dir.path() / "bad.json").string();
  RunResult r = run(o);
  CHECK(r.exit_code == kExitUsage);
  CHECK(r.err.find("no_such_key") != std::string::npos);
  CHECK_THROWS_AS(parse_kind_list({"S3,Q7"}), std::invalid_argument);
}

TEST_CASE("cli_main parses subcommands and rejects unknown flags") {
  std::string path = (fixture_dir() / "smells" / "s03_empty_catch.js").string();
  std::vector<std::string> ok = {"gamesmell", "analyze", path, "--format", "csv", "--fail-on", "S3"};
  std::vector<std::string> bad = {"gamesmell", "analyze", path, "--bogus"};
  std::vector<std::string> bad_kind = {"gamesmell", "analyze", path, "--enable", "S99"};
  auto call = [](std::vector<std::string> args) {
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return cli_main(static_cast<int>(argv.size()), argv.data());
  };
  CHECK(call(ok) == kExitFindings);
  CHECK(call(bad) == kExitUsage);
  CHECK(call(bad_kind) == kExitUsage);
}

TEST_CASE("text output lists findings with advice") {
  RunResult r = run(file_options(fixture_dir() / "games" / "original" / "keyboard.js", OutputFormat::Text));
  CHECK(r.out.find("P4") != std::string::npos);
  CHECK(r.out.find("fetch") != std::string::npos);
}
