#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "wrank/json_io.hpp"

using wrank::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string binary_path() {
  const char* env = std::getenv("WRANK_BIN");
  return env ? env : "../tools/wrank";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string out_path = "cli_out_" + std::to_string(counter) + ".txt";
  const std::string err_path = "cli_err_" + std::to_string(counter) + ".txt";
  ++counter;
  const std::string cmd =
      binary_path() + " " + args + " >" + out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  res.out = slurp(out_path);
  res.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return res;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("state build emits stable exact json") {
  const RunResult first = run_cli("state build w --power 2");
  REQUIRE(first.exit_code == 0);
  const json j = json::parse(first.out);
  CHECK(j.at("mode") == "exact");
  CHECK(j.at("shape") == json::array({4, 4, 4}));
  CHECK(j.at("entries").size() == 9);

  const RunResult second = run_cli("state build w --power 2");
  CHECK(second.out == first.out);

  const RunResult ghz = run_cli("state build ghz");
  REQUIRE(ghz.exit_code == 0);
  CHECK(json::parse(ghz.out).at("entries").size() == 2);
}

TEST_CASE("file input matches builtin input") {
  const RunResult built = run_cli("state build w --power 2 --out cli_w2.json");
  REQUIRE(built.exit_code == 0);

  const RunResult from_builtin =
      run_cli("cert span --state builtin:w --power 2 --spanning builtin:w2-seven");
  const RunResult from_file =
      run_cli("cert span --state cli_w2.json --spanning builtin:w2-seven");
  REQUIRE(from_builtin.exit_code == 0);
  REQUIRE(from_file.exit_code == 0);
  CHECK(from_builtin.out == from_file.out);
  const json j = json::parse(from_file.out);
  CHECK(j.at("verdict") == true);
  CHECK(j.at("upper_bound") == 7);
  std::remove("cli_w2.json");
}

TEST_CASE("rank bounds text and json") {
  const RunResult j = run_cli("rank bounds w --power 2");
  REQUIRE(j.exit_code == 0);
  CHECK(json::parse(j.out).at("resolved") == "7");

  const RunResult t = run_cli("--format text rank bounds w --power 2");
  REQUIRE(t.exit_code == 0);
  CHECK(t.out.find("resolved") != std::string::npos);
  CHECK(t.out.find("7") != std::string::npos);
}

TEST_CASE("decomp verify distinguishes exact and defective decompositions") {
  const RunResult good = run_cli(
      "decomp verify --target builtin:w --power 2 --decomp builtin:w2-seven "
      "--exact");
  CHECK(good.exit_code == 0);
  CHECK(json::parse(good.out).at("ok") == true);

  const RunResult bad = run_cli(
      "decomp verify --target builtin:w --power 2 "
      "--decomp builtin:w2-seven-printed --exact");
  CHECK(bad.exit_code == 1);
  const json jb = json::parse(bad.out);
  CHECK(jb.at("ok") == false);
  CHECK(jb.at("residual_norm2") == "22");

  const RunResult audit = run_cli(
      "decomp verify --target builtin:w --power 2 "
      "--decomp builtin:w2-seven-printed --exact --audit-orderings");
  CHECK(audit.exit_code == 1);
  const json ja = json::parse(audit.out);
  REQUIRE(ja.at("orderings").size() == 6);
  for (const auto& row : ja.at("orderings")) {
    CHECK(row.at("ok") == false);
  }
}

TEST_CASE("decomp from-cert produces a verifiable decomposition") {
  const RunResult made = run_cli(
      "decomp from-cert --state builtin:w --power 2 "
      "--spanning builtin:w2-seven --out cli_d7.json");
  REQUIRE(made.exit_code == 0);

  const RunResult check = run_cli(
      "decomp verify --target builtin:w --power 2 --decomp cli_d7.json --exact");
  CHECK(check.exit_code == 0);
  CHECK(json::parse(check.out).at("ok") == true);
  std::remove("cli_d7.json");

  const RunResult neg = run_cli(
      "decomp from-cert --state builtin:w --power 2 "
      "--spanning builtin:w2-seven-printed");
  CHECK(neg.exit_code == 1);
}

TEST_CASE("lemma2 witness command") {
  const RunResult ok = run_cli("lemma2 witness --n 3 --trials 20 --seed 5");
  CHECK(ok.exit_code == 0);
  const json j = json::parse(ok.out);
  CHECK(j.at("verdict") == true);
  CHECK(j.at("expected_rank") == 8);

  const RunResult bad = run_cli("lemma2 witness --n 0");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("slocc commands") {
  const RunResult table = run_cli("slocc table --max-m 3 --max-n 2");
  REQUIRE(table.exit_code == 0);
  const json j = json::parse(table.out);
  REQUIRE(j.at("rows").size() == 6);
  const auto& last = j.at("rows")[5];
  CHECK(last.at("m") == 3);
  CHECK(last.at("n") == 2);
  CHECK(last.at("theorem_b").at("verdict") == false);
  CHECK(last.at("rank_based").at("verdict") == true);

  const RunResult mm = run_cli("slocc minimal-m --n 2");
  REQUIRE(mm.exit_code == 0);
  CHECK(json::parse(mm.out).at("theorem_b") == 5);

  const RunResult text = run_cli("--format text slocc table --max-m 2 --max-n 1");
  REQUIRE(text.exit_code == 0);
  CHECK(text.out.find("m") != std::string::npos);
}

TEST_CASE("decomp search and probe") {
  const RunResult fit = run_cli(
      "decomp search --target builtin:w --rank 3 --restarts 6 --seed 1");
  REQUIRE(fit.exit_code == 0);
  const json j = json::parse(fit.out);
  CHECK(j.at("rank") == 3);
  CHECK(j.at("residual").get<double>() < 1e-6);

  const RunResult probe = run_cli(
      "decomp probe --target builtin:w --max-rank 2 --restarts 2 --sweeps 400 "
      "--seed 1");
  REQUIRE(probe.exit_code == 0);
  std::istringstream lines(probe.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    const json row = json::parse(line);
    ++rows;
    CHECK(row.at("r") == rows);
    CHECK(row.contains("residual"));
  }
  CHECK(rows == 2);
}

TEST_CASE("error paths exit with code 2") {
  const RunResult unknown = run_cli("state build q");
  CHECK(unknown.exit_code == 2);

  const RunResult missing = run_cli(
      "decomp verify --target no_such.json --decomp builtin:w2-seven");
  CHECK(missing.exit_code == 2);
  CHECK(missing.err.find("no_such.json") != std::string::npos);

  write_file("cli_bad.json", "{\"mode\": \"exact\", \"shape\": [2, 2]}");
  const RunResult malformed =
      run_cli("cert span --state cli_bad.json --spanning builtin:w2-seven");
  CHECK(malformed.exit_code == 2);
  CHECK(malformed.err.find("shape") != std::string::npos);
  std::remove("cli_bad.json");

  const RunResult no_sub = run_cli("");
  CHECK(no_sub.exit_code == 2);

  const RunResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("state") != std::string::npos);
}
