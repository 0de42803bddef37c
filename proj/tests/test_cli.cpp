#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "doctest.h"
#include "fszlab/cli.hpp"

using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = fszlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  const Run r = run(std::move(args));
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("qrdiff over F_5 gives four matching rows") {
  const json doc = run_json({"qrdiff", "--q", "5"});
  const auto& rows = doc["outputs"]["rows"];
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    CHECK(row["match"] == true);
    CHECK(row["closed"] == row["enum"]);
  }
  // |QR ∩ (QR + c)| over F_5: c = ±1 give 2, c = ±2 give 1.
  CHECK(rows[0]["closed"] == 2);
  CHECK(rows[1]["closed"] == 1);
  CHECK(doc["oracle_match"] == true);
  CHECK(count_lines(run({"qrdiff", "--q", "5", "--output", "csv"}).out) == 5);
  CHECK(run_json({"qrdiff", "--q", "9", "--c", "[0,1] mod (3,2)"})["outputs"]["rows"].size() == 1);
}

TEST_CASE("sylow fsz reports non-FSZ_5 for Sp_6(5)") {
  const json doc = run_json({"sylow", "fsz", "--p", "5", "--q", "5", "--j", "1"});
  const auto& out = doc["outputs"];
  CHECK(out["verdict"] == "non-FSZ_5");
  CHECK(out["group"] == "P(Sp_6(5))");
  CHECK(out["m"] == 5);
  CHECK(out["witness"] == "U");
  CHECK(out["rows"][1]["counts"]["1"] == 0);
  CHECK(out["rows"][1]["counts"]["2"] == 62500);
  CHECK(out["rows"][0]["counts"]["3"] == 250000);
  REQUIRE(out["beta"].size() == 4);
  for (const auto& b : out["beta"]) CHECK(b["rational"] == false);
  CHECK(doc["oracle_match"] == true);
}

TEST_CASE("budget refusal names the required power") {
  const Run r = run({"sylow", "count", "--p", "7", "--q", "7", "--j", "1", "--mode", "brute"});
  CHECK(r.code == 2);
  CHECK(r.err.find("7^16") != std::string::npos);
  CHECK(r.err.find("33232930569601") != std::string::npos);
  CHECK(r.out.empty());
  const Run small = run({"sylow", "enumerate", "--q", "5", "--n", "3", "--budget", "1000"});
  CHECK(small.code == 2);
  CHECK(small.err.find("5^9") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"qr"}).code == 2);
  CHECK(run({"qr", "--q", "12"}).code == 2);
  CHECK(run({"qr", "--q", "8"}).code == 2);
  CHECK(run({"field", "--p", "9"}).code == 2);
  CHECK(run({"sylow", "count", "--q", "5", "--mode", "slow"}).code == 2);
  CHECK(run({"sylow", "count", "--q", "25", "--p", "3"}).code == 2);
  CHECK(run({"sylow", "solve", "--q", "5", "--d", "1", "--x", "2"}).code == 2);
  CHECK(run({"sylow", "solve", "--q", "5", "--d", "0"}).code == 2);
  CHECK(run({"sylow", "fsz", "--q", "5", "--budget", "0"}).code == 2);
  CHECK(run({"sylow", "fsz", "--q", "5", "--u", "/nonexistent/u.json"}).code == 2);
  CHECK(run({"qr", "--q", "5", "--output", "xml"}).code == 2);
  CHECK(run({"binom", "--p", "5", "--k", "3"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("every report carries anchor, inputs, outputs and oracle_match") {
  const std::vector<std::vector<std::string>> commands = {
      {"field", "--p", "7", "--n", "2", "--elem", "3"},
      {"qr", "--q", "11"},
      {"qrdiff", "--q", "25"},
      {"gauss", "--p", "5", "--n", "2"},
      {"fibers", "--p", "3", "--n", "3", "--all"},
      {"binom", "--p", "3", "--j", "2"},
      {"sylow", "solve", "--q", "5", "--d", "2", "--x", "2"},
      {"sylow", "count", "--q", "5", "--samples", "200"},
      {"sylow", "fsz", "--q", "3", "--u", "all"},
      {"sylow", "beta", "--q", "5", "--zparam", "2"},
      {"sylow", "enumerate", "--q", "3", "--n", "2", "--limit", "3"},
      {"centralizer", "check", "--q", "5", "--samples", "40"},
      {"verify", "quick"},
  };
  for (const auto& c : commands) {
    INFO(c[0]);
    const json doc = run_json(c);
    CHECK(doc["paper_anchor"].is_string());
    CHECK_FALSE(doc["paper_anchor"].get<std::string>().empty());
    CHECK(doc["inputs"].is_object());
    CHECK(doc["outputs"].is_object());
    CHECK(doc["oracle_match"] == true);
    // Exact output only: no floating point anywhere in the report.
    std::vector<const json*> stack{&doc};
    while (!stack.empty()) {
      const json* v = stack.back();
      stack.pop_back();
      CHECK_FALSE(v->is_number_float());
      if (v->is_structured())
        for (const auto& child : *v) stack.push_back(&child);
    }
  }
}

TEST_CASE("json output is deterministic across runs and thread counts") {
  const std::vector<std::string> base = {"sylow", "fsz", "--q", "3", "--u", "all", "--mode", "brute"};
  auto with_threads = [&](const char* t) {
    auto a = base;
    a.insert(a.end(), {"--threads", t});
    return run(a);
  };
  const Run one = with_threads("1"), four = with_threads("4"), again = with_threads("4");
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
  CHECK(four.out == again.out);
  const Run c1 = run({"centralizer", "check", "--q", "5", "--samples", "30", "--seed", "9"});
  const Run c2 = run({"centralizer", "check", "--q", "5", "--samples", "30", "--seed", "9"});
  CHECK(c1.out == c2.out);
  CHECK(run_json({"verify", "quick"}).dump().find("seconds") == std::string::npos);
}

TEST_CASE("exhaustive P(Sp_4(3)) verdict agrees between modes") {
  const json fast = run_json({"sylow", "fsz", "--q", "3", "--u", "all"});
  const json brute = run_json({"sylow", "fsz", "--q", "3", "--u", "all", "--mode", "brute"});
  CHECK(fast["outputs"]["rows"] == brute["outputs"]["rows"]);
  CHECK(fast["outputs"]["rows"].size() == 81);
  CHECK(fast["outputs"]["verdict"] == brute["outputs"]["verdict"]);
  CHECK(fast["outputs"]["verdict"] != "inconclusive");
}

TEST_CASE("u read from a file") {
  const std::string path = "test_cli_u.json";
  {
    std::ofstream f(path);
    f << R"({"n": 3, "q": 5, "L_upper": [1, 0, 0], "A": [[1, 4, 0], [0, 0, 0], [0, 0, 0]]})";
  }
  const json doc = run_json({"sylow", "fsz", "--q", "5", "--u", path});
  CHECK(doc["outputs"]["rows"][0]["counts"]["1"] == 0);
  CHECK(doc["outputs"]["verdict"] == "non-FSZ_5");
  {
    std::ofstream f(path);
    f << R"({"n": 3, "q": 5, "L_upper": [1, 0, 0], "A": [[1, 0, 0], [0, 0, 0], [0, 0, 0]]})";
  }
  CHECK(run({"sylow", "fsz", "--q", "5", "--u", path}).code == 2);  // AL not symmetric
  std::remove(path.c_str());
}

TEST_CASE("verify exits 1 and names the failing check when the modulus is corrupted") {
  const Run r = run({"verify", "quick", "--corrupt-modulus"});
  CHECK(r.code == 1);
  CHECK(r.err.find("AC1 failed [quadratic-residue-count]") != std::string::npos);
  CHECK(r.err.find("|QR(9)| = 4") != std::string::npos);
  const json doc = json::parse(r.out);
  CHECK(doc["oracle_match"] == false);
  CHECK(doc["outputs"]["tiers"].size() == 7);
  CHECK(doc["outputs"]["tiers"][4]["pass"] == true);
}

TEST_CASE("pretty and csv renderings") {
  const Run pretty = run({"sylow", "fsz", "--q", "5", "--output", "pretty"});
  CHECK(pretty.code == 0);
  CHECK(pretty.out.find("verdict: non-FSZ_5") != std::string::npos);
  CHECK(pretty.out.find("elapsed:") != std::string::npos);
  const Run csv = run({"fibers", "--p", "5", "--n", "1", "--output", "csv"});
  CHECK(csv.out.substr(0, csv.out.find('\n')) == "z,y,closed,enum,match");
  CHECK(count_lines(csv.out) == 6);
}
