#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "cflobdd-cli");
  std::ostringstream out, err;
  int code = cflobdd::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("bench reports sizes as json") {
  Result r = run({"bench", "eq", "--level", "1", "--json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["vertices"] == 8);
  CHECK(j["edges"] == 11);
  CHECK(j["suite"] == "eq");
  for (const char* key : {"groupings", "value_edges", "time_ms", "seed", "params"}) CHECK(j.contains(key));

  Result x = run({"bench", "xor", "--nvars", "256", "--json"});
  REQUIRE(x.code == 0);
  CHECK(nlohmann::json::parse(x.out)["groupings"] == 9);
  CHECK(run({"bench", "hadamard", "--level", "5"}).code == 0);
  CHECK(run({"bench", "add", "--level", "3"}).code == 0);
  CHECK(run({"bench", "matmult", "--level", "3"}).code == 0);
}

TEST_CASE("quantum subcommands") {
  Result g = run({"quantum", "ghz", "--qubits", "8", "--shots", "20", "--seed", "4", "--json"});
  REQUIRE(g.code == 0);
  auto j = nlohmann::json::parse(g.out);
  CHECK(j["success"] == true);
  CHECK(j["samples"].size() == 20);
  CHECK(j["steps"].size() > 0);

  Result b = run({"quantum", "bv", "--qubits", "5", "--secret", "10011", "--json"});
  REQUIRE(b.code == 0);
  CHECK(nlohmann::json::parse(b.out)["answer"] == "10011");

  CHECK(run({"quantum", "dj", "--qubits", "4", "--oracle", "balanced"}).code == 0);
  CHECK(run({"quantum", "grover", "--qubits", "3", "--marked", "6", "--shots", "50"}).code == 0);
  CHECK(run({"quantum", "qft", "--qubits", "3", "--input", "5"}).code == 0);
  CHECK(run({"quantum", "qft", "--qubits", "3", "--input", "5", "--float"}).code == 0);
  int s = run({"quantum", "simon", "--qubits", "4", "--secret", "0110", "--seed", "1"}).code;
  CHECK((s == 0 || s == 4));
}

TEST_CASE("same seed gives the same samples") {
  std::vector<std::string> args{"quantum", "ghz", "--qubits", "6", "--shots", "30", "--seed", "17", "--json"};
  auto a = nlohmann::json::parse(run(args).out);
  auto b = nlohmann::json::parse(run(args).out);
  CHECK(a["samples"] == b["samples"]);
}

TEST_CASE("argument errors and guards") {
  CHECK(run({"bench", "nope", "--level", "2"}).code == 2);
  CHECK(run({"bench", "eq"}).code == 2);
  CHECK(run({"bench", "xor", "--nvars", "6"}).code == 2);
  CHECK(run({"quantum", "bv", "--qubits", "3", "--secret", "10"}).code == 2);
  CHECK(run({"quantum", "dj", "--qubits", "3", "--oracle", "weird"}).code == 2);
  CHECK(run({"bench", "hadamard", "--level", "30"}).code == 3);
  CHECK(run({"bench", "hadamard", "--level", "8", "--max-level", "6"}).code == 3);
  CHECK(run({"quantum", "ghz", "--qubits", "4", "--shots", "5000000"}).code == 3);
  Result r = run({"frobnicate"});
  CHECK(r.code == 2);
  CHECK(!r.err.empty());
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("dump round trip through a file") {
  Result d = run({"dump", "--text", "--structure", "hadamard:2"});
  REQUIRE(d.code == 0);
  CHECK(d.out.find("values:") != std::string::npos);
  std::string path = "cli_dump_test.txt";
  {
    std::ofstream f(path);
    f << d.out;
  }
  Result back = run({"dump", "--text", "--from", path});
  CHECK(back.code == 0);
  CHECK(back.out == d.out);
  {
    std::ofstream f(path);
    f << "level:0 kind:F A:- ART:[] B:[] BRT:[] exits:2\nlevel:1 kind:X\n";
  }
  Result bad = run({"dump", "--text", "--from", path});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line 2") != std::string::npos);
  std::remove(path.c_str());
  CHECK(run({"dump", "--dot", "--structure", "eq:1"}).out.find("digraph") != std::string::npos);
  CHECK(run({"dump", "--dot", "--text", "--structure", "eq:1"}).code == 2);
}
