#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "dsrgkit/errors.hpp"
#include "dsrgkit/json_io.hpp"

using namespace dsrgkit;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("dsrgkit-test-" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

const char* kD3 = R"({"group": {"factors": [3]}, "f": {"images": [[2]]}, "alpha": [0]})";
const char* kD5 = R"({"group": {"factors": [5]}, "f": {"images": [[4]]}, "alpha": [0]})";

}  // namespace

TEST_CASE("json readers") {
  const Json g = parse_json(kD3, "d3");
  const ExtensionSpec G = extension_from_json(g);
  CHECK(G.order() == 6);
  CHECK(extension_from_json(Json{{"extension", g}}).order() == 6);
  CHECK(to_json(G) == g);

  const ConnectionSet S = set_from_json(G.base(), parse_json(R"({"X": [[1]], "Y": [[-2], [0]]})", "s"));
  CHECK(S == ConnectionSet{{1}, {0, 1}});

  CHECK(params_from_json(parse_json("[6,2,1,0,1]", "p")) == DsrgParams{6, 2, 1, 0, 1});
  CHECK(params_from_json(parse_json(R"({"n":6,"k":2,"mu":1,"lambda":0,"t":1})", "p")) == DsrgParams{6, 2, 1, 0, 1});

  const AlgElem x = algelem_from_json(G, parse_json(R"({"carrier": "G", "coeffs": [[[1, 1], 2], [[0, 0], -1]]})", "a"));
  CHECK(x[0] == -1);
  CHECK(x[4] == 2);
  CHECK(to_json(G, x) == parse_json(R"({"carrier": "G", "coeffs": [[[0, 0], -1], [[1, 1], 2]]})", "b"));
}

TEST_CASE("json diagnostics name the location") {
  try {
    parse_json("{\"group\": {\"factors\": [3]", "g.json");
    FAIL("expected an input error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("g.json:1:") != std::string::npos);
  }
  try {
    extension_from_json(parse_json(R"({"group": {"factors": [3]}, "f": {"images": [[2, 1]]}, "alpha": [0]})", "g"));
    FAIL("expected an input error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("f.images[0]") != std::string::npos);
  }
  CHECK_THROWS_AS(params_from_json(parse_json("[6,2,1]", "p")), InputError);
}

TEST_CASE("verify exit codes") {
  TempDir dir;
  const auto g3 = dir.write("d3.json", kD3);
  const auto s3 = dir.write("s3.json", R"({"X": [[1]], "Y": [[1]]})");
  const Run ok = run({"verify", "--group", g3, "--set", s3});
  CHECK(ok.code == cli::kOk);
  const Json rep = parse_json(ok.out, "report");
  CHECK(rep["dsrg"] == true);
  CHECK(params_from_json(rep["params"]) == DsrgParams{6, 2, 1, 0, 1});
  CHECK(rep["oracle_agrees"] == true);
  CHECK(rep["config"]["command"] == "verify");

  const auto g5 = dir.write("d5.json", kD5);
  const auto s5 = dir.write("s5.json", R"({"X": [[1], [2]], "Y": [[0]]})");
  const Run no = run({"verify", "--group", g5, "--set", s5});
  CHECK(no.code == cli::kNegative);
  const Json nrep = parse_json(no.out, "report");
  CHECK(nrep["dsrg"] == false);
  CHECK(nrep["violation"]["kind"] == "coeff_mismatch");

  const auto bad = dir.write("bad.json", R"({"X": [[1]], "Y": [[1])");
  const Run trunc = run({"verify", "--group", g3, "--set", bad});
  CHECK(trunc.code == cli::kInputError);
  CHECK(trunc.err.find("bad.json:") != std::string::npos);

  CHECK(run({"verify", "--group", g3, "--set", dir.path("missing.json")}).code == cli::kInputError);
  CHECK(run({"verify", "--group", "dihedral:3", "--set", s3, "--params", "[6,2,1,0,2]"}).code == cli::kNegative);
  CHECK(run({"verify", "--group", "dihedral:3", "--set", s3, "--params", "[6,2,1,0,1]"}).code == cli::kOk);
  CHECK(run({"bogus"}).code == cli::kInputError);
}

TEST_CASE("the order cap maps to exit code 3") {
  TempDir dir;
  const auto s = dir.write("s.json", R"({"X": [[1]], "Y": [[1]]})");
  CHECK(run({"census", "--group", "dihedral:14", "--workers", "1"}).code == cli::kCapError);
  const Run low = run({"census", "--group", "dihedral:6", "--workers", "1", "--max-candidates", "100"});
  CHECK(low.code == cli::kCapError);
  CHECK(low.err.find("at least 2048") != std::string::npos);
  CHECK(run({"census", "--group", "dihedral:6", "--workers", "1", "--max-candidates", "2048"}).code == cli::kOk);
  CHECK(run({"census", "--group", "dihedral:40", "--workers", "1"}).err.find("2^64") != std::string::npos);
  CHECK(run({"spectrum", "--group", "dihedral:3", "--set", s, "--of", "sideways"}).code == cli::kInputError);
}

TEST_CASE("export") {
  TempDir dir;
  const auto s = dir.write("s.json", R"({"X": [[1]], "Y": []})");
  const Run dot = run({"export", "--group", "dihedral:3", "--set", s, "--format", "dot"});
  CHECK(dot.code == cli::kOk);
  std::size_t arcs = 0;
  for (std::size_t p = dot.out.find("->"); p != std::string::npos; p = dot.out.find("->", p + 1)) ++arcs;
  CHECK(arcs == 6);
  CHECK(dot.out.find("\"(1)b\"") != std::string::npos);
  CHECK(run({"export", "--group", "dihedral:3", "--set", s, "--format", "dot"}).out == dot.out);

  const auto s5 = dir.write("s5.json", R"({"X": [[1], [2]], "Y": [[1], [2]]})");
  const Run mat = run({"export", "--group", "dihedral:5", "--set", s5, "--format", "matrix"});
  std::istringstream rows(mat.out);
  std::string line;
  int count = 0;
  while (std::getline(rows, line)) {
    std::istringstream cells(line);
    int v, sum = 0;
    while (cells >> v) sum += v;
    CHECK(sum == 4);
    ++count;
  }
  CHECK(count == 10);

  const auto out = dir.path("round.json");
  CHECK(run({"export", "--group", "dihedral:5", "--set", s5, "--format", "json", "--out", out}).code == cli::kOk);
  const Run again = run({"verify", "--group", out, "--set", out});
  CHECK(again.code == cli::kOk);
  CHECK(params_from_json(parse_json(again.out, "r")["params"]) == DsrgParams{10, 4, 2, 1, 2});

  CHECK(run({"export", "--group", "dihedral:3", "--set", s, "--format", "png"}).code == cli::kInputError);
}

TEST_CASE("construct, certify, census and spectrum commands") {
  const Run c5 = run({"construct", "--rule", "cor5", "--n", "4"});
  CHECK(c5.code == cli::kOk);
  const Json cons = parse_json(c5.out, "c")["constructions"];
  REQUIRE(cons.size() == 2);
  for (const auto& c : cons) CHECK(params_from_json(c["certificate"]["params"]) == DsrgParams{8, 3, 1, 1, 2});

  TempDir dir;
  const auto s5 = dir.write("s5.json", R"({"X": [[1], [2]], "Y": [[1], [2]]})");
  const Run t3 = run({"certify", "--rule", "thm3", "--group", "dihedral:5", "--set", s5});
  CHECK(t3.code == cli::kOk);
  const Json cert = parse_json(t3.out, "t3");
  CHECK(cert["verdict"] == "dsrg");
  REQUIRE(cert["conditions"].size() == 4);
  for (const auto& k : cert["conditions"]) CHECK(k["holds"] == true);

  const Run f3 = run({"census", "--group", "dihedral:8", "--mode", "f3", "--ell", "2", "--workers", "1"});
  CHECK(f3.code == cli::kOk);
  bool found = false;
  const Json f3_report = parse_json(f3.out, "f3");
  for (const auto& h : f3_report["hits"])
    found = found || h["X"] == parse_json("[[1],[2],[5],[6]]", "x");
  CHECK(found);

  const Run inf = run({"construct", "--rule", "cor3", "--group", "dihedral:8", "--subgroup", "[[0],[4]]",
                       "--choice", "0"});
  CHECK(inf.code == cli::kNegative);
  CHECK(parse_json(inf.out, "inf").contains("infeasible"));

  const Run summary = run({"census", "--group", "dihedral:3", "--summary", "--workers", "1"});
  CHECK(summary.out.rfind("n\tk\tmu\tlambda\tt\tcount\n", 0) == 0);
  CHECK(summary.out.find("6\t2\t1\t0\t1\t6") != std::string::npos);

  const Run sp = run({"spectrum", "--group", "dihedral:5", "--set", s5});
  CHECK(sp.code == cli::kOk);
  const Json spec = parse_json(sp.out, "sp");
  CHECK(spec["all_integral"] == true);
  CHECK(spec["eigenvalues"].size() == 3);
}

TEST_CASE("output is byte-deterministic") {
  const std::vector<std::string> args{"census", "--group", "dihedral:5", "--workers", "1"};
  const Run a = run(args);
  std::vector<std::string> more = args;
  more[4] = "3";
  const Run b = run(more);
  CHECK(a.code == cli::kOk);
  // Only the worker echo differs.
  Json ja = parse_json(a.out, "a"), jb = parse_json(b.out, "b");
  ja.erase("config");
  jb.erase("config");
  CHECK(ja.dump() == jb.dump());
  CHECK(run(args).out == a.out);
}
