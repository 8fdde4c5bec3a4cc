// Tests for the command-line driver: flag validation, exit codes, and the
// deterministic text / line-delimited JSON report formats. The `all`
// subcommand is covered by the dedicated acceptance binary, not here.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ci/cli.hpp"
#include "ci/exceptions.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = ci::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> parse_lines(const std::string& text) {
  std::vector<nlohmann::json> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    lines.push_back(nlohmann::json::parse(line));
  }
  return lines;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help exits cleanly and lists every subcommand") {
  const CliResult r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK(r.out.find("civerify") != std::string::npos);
  for (const char* sub : {"certify", "eigen", "varieties", "birres", "torelli",
                          "exceptions", "all"})
    CHECK_MESSAGE(r.out.find(sub) != std::string::npos, sub);
}

TEST_CASE("bad invocations are rejected with a nonzero exit") {
  CHECK(run({}).code != 0);                       // subcommand required
  CHECK(run({"exceptions", "--nope"}).code != 0); // unknown flag
  CHECK(run({"exceptions", "--format", "yaml"}).code != 0);
  CHECK(run({"exceptions", "--emit", "bogus"}).code != 0);
  CHECK(run({"torelli", "--q", "4"}).code != 0);  // q must be prime
  CHECK(run({"certify", "--degrees", "2,3"}).code != 0);  // needs --n

  const CliResult r = run({"exceptions", "--nope"});
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("structured exception report is valid, sorted, and deterministic") {
  const std::vector<std::string> args = {"exceptions", "--n-max", "6",
                                         "--emit", "theorem", "--format",
                                         "structured"};
  const CliResult r1 = run(args);
  const CliResult r2 = run(args);
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);  // byte-identical across runs

  const auto lines = parse_lines(r1.out);
  REQUIRE(lines.size() >= 3);

  const auto& meta = lines.front();
  CHECK(meta.at("type") == "meta");
  CHECK(meta.at("tool") == "civerify");
  CHECK(meta.at("version") == "0.1.0");
  CHECK(meta.at("schema_version") == 1);
  CHECK(meta.at("command") == "exceptions");
  CHECK(meta.at("config").at("n_max") == 6);
  CHECK(meta.at("config").at("emit") == "theorem");

  const auto& summary = lines.back();
  CHECK(summary.at("type") == "summary");
  CHECK(summary.at("result") == "ok");
  CHECK(summary.at("incomplete") == false);
  CHECK(summary.at("records") == lines.size() - 2);

  std::vector<std::string> keys;
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    const auto& rec = lines[i];
    CHECK(rec.at("type") == "record");
    CHECK(rec.at("kind") == "theorem-exception");
    CHECK(rec.at("status") == "info");
    keys.push_back(rec.at("key").get<std::string>());
  }
  const std::vector<std::string> expected_keys = {"(5,2,3)", "(6,2,3)",
                                                  "(6,2,4)", "(6,3,3)"};
  CHECK(keys == expected_keys);
  CHECK(lines[1].at("payload").at("ambient") == 5);
  CHECK(lines[1].at("payload").at("degrees") == nlohmann::json({2, 3}));
}

TEST_CASE("structured sweep emission matches the library enumeration") {
  const CliResult r = run({"exceptions", "--n-max", "6", "--emit", "lemma44",
                           "--format", "structured"});
  CHECK(r.code == 0);
  const auto lines = parse_lines(r.out);
  REQUIRE(lines.size() >= 3);
  const std::size_t n_records = lines.size() - 2;
  CHECK(n_records == ci::enumerate_lemma44(6).size());

  bool saw_53 = false, saw_63 = false;
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    const auto& rec = lines[i];
    CHECK(rec.at("kind") == "lemma44-record");
    CHECK(rec.at("status") == "info");
    CHECK(rec.at("payload").at("is_exception") == true);
    const std::string key = rec.at("key").get<std::string>();
    if (key == "l=02/(5,3)") saw_53 = true;
    if (key == "l=02/(6,3)") saw_63 = true;
  }
  CHECK(saw_53);
  CHECK(saw_63);
}

TEST_CASE("detailed certify run emits one passing record per weight class") {
  const CliResult r = run({"certify", "--n", "4", "--degrees", "2,3",
                           "--p-max", "2", "--format", "structured"});
  CHECK(r.code == 0);
  const auto lines = parse_lines(r.out);
  REQUIRE(lines.size() == 4);  // meta + two weight classes + summary
  CHECK(lines[1].at("key") == "(4,2,3)/p=02/a=(3,2)");
  CHECK(lines[2].at("key") == "(4,2,3)/p=02/a=(4,1)");
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    const auto& rec = lines[i];
    CHECK(rec.at("kind") == "certificate");
    CHECK(rec.at("status") == "pass");
    const auto& certs = rec.at("payload").at("certificates");
    REQUIRE(certs.is_array());
    REQUIRE_FALSE(certs.empty());
    for (const auto& c : certs) {
      CHECK(c.at("holds") == true);
      CHECK(c.contains("lhs"));
      CHECK(c.contains("rhs"));
      CHECK(c.contains("case"));
    }
  }
  CHECK(lines.back().at("result") == "ok");
}

TEST_CASE("a shape outside every case engine is an internal error") {
  const CliResult r = run({"certify", "--n", "4", "--degrees", "2,2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("civerify: error:") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("small eigen sweep aggregates its checks per (n, p) cell") {
  const CliResult r = run({"eigen", "--n-max", "3", "--p-max", "2",
                           "--format", "structured"});
  CHECK(r.code == 0);
  const auto lines = parse_lines(r.out);
  REQUIRE(lines.size() == 3);  // meta + one cell + summary
  const auto& rec = lines[1];
  CHECK(rec.at("kind") == "dimension-bounds");
  CHECK(rec.at("key") == "n=03/p=02");
  CHECK(rec.at("status") == "pass");
  CHECK(rec.at("payload").at("classes") == 2);
  CHECK(rec.at("payload").at("gap_checks") == 14);
  CHECK(rec.at("payload").at("max_checks") == 12);
  CHECK(rec.at("payload").at("violations") == 0);
}

TEST_CASE("small birres sweep reports both record kinds as passing") {
  const CliResult r = run({"birres", "--random-maps", "1", "--n-max", "4",
                           "--seed", "5", "--format", "structured"});
  CHECK(r.code == 0);
  const auto lines = parse_lines(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[1].at("kind") == "arc-correspondence");
  CHECK(lines[1].at("key") == "sweep");
  CHECK(lines[1].at("status") == "pass");
  CHECK(lines[2].at("kind") == "flag-duality");
  CHECK(lines[2].at("key") == "sweep");
  CHECK(lines[2].at("status") == "pass");
}

TEST_CASE("small torelli sweep distinguishes certified from flagged rows") {
  const CliResult r =
      run({"torelli", "--n-max", "3", "--format", "structured"});
  CHECK(r.code == 0);
  const auto lines = parse_lines(r.out);
  REQUIRE(lines.size() == 6);  // meta + four shapes + summary
  const std::vector<std::string> keys = {"(3,2)", "(3,3)", "(3,4)", "(3,5)"};
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto& rec = lines[i + 1];
    CHECK(rec.at("kind") == "torelli");
    CHECK(rec.at("key") == keys[i]);
    CHECK(rec.at("status") == (keys[i] == "(3,5)" ? "pass" : "info"));
  }
  CHECK(lines.back().at("result") == "ok");
  CHECK(lines.back().at("incomplete") == false);
}

TEST_CASE("--out writes the report to a file instead of stdout") {
  const auto path = std::filesystem::temp_directory_path() /
                    "civerify_cli_test_out.jsonl";
  const std::vector<std::string> base = {"exceptions", "--n-max", "6",
                                         "--format", "structured"};
  const CliResult direct = run(base);
  REQUIRE(direct.code == 0);

  std::vector<std::string> with_out = base;
  with_out.push_back("--out");
  with_out.push_back(path.string());
  const CliResult filed = run(with_out);
  CHECK(filed.code == 0);
  CHECK(filed.out.empty());

  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream content;
  content << in.rdbuf();
  CHECK(content.str() == direct.out);
  in.close();
  std::filesystem::remove(path);
}

TEST_CASE("default text format renders a header, records, and a verdict") {
  const CliResult r = run({"exceptions", "--n-max", "6"});
  CHECK(r.code == 0);
  CHECK(r.out.find("civerify 0.1.0 - exceptions") != std::string::npos);
  CHECK(r.out.find("[INFO] theorem-exception (5,2,3)") != std::string::npos);
  CHECK(r.out.find("result: OK") != std::string::npos);
}

}  // TEST_SUITE
