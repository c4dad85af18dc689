#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "subdyn/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = subdyn::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string spec_file(const std::string& name, const std::string& text) {
  const auto dir = fs::temp_directory_path() / "subdyn_cli_tests";
  fs::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

const std::string fib = spec_file("fib.sub", "a -> ab\nb -> a\n");
const std::string pair = spec_file("pair.sub", "# coincidence example\na -> aab\nb -> ba\n");
const std::string tm_spec = spec_file("tm_spec.sub", "a -> ab\nb -> ba\n");
const std::string trib = spec_file("trib.sub", "a -> ab\nb -> ac\nc -> a\n");
const std::string dup_spec = spec_file("dup_spec.sub", "a -> ab\na -> ba\n");
const std::string two_seed = spec_file("twoseed.sub", "a -> aab\nb -> bbaab\n");

}  // namespace

TEST_CASE("classify") {
  const auto r = run({"classify", fib});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["char_poly"] == json::array({-1, -1, 1}));
  CHECK(j["pisot"] == "yes");
  CHECK(j["irreducible"] == true);
  CHECK(run({"classify", fib, "--format", "text"}).out.find("x^2 - x - 1") != std::string::npos);
  CHECK(run({"classify", dup_spec}).code == 2);
  CHECK(run({"classify", "/nonexistent/spec.sub"}).code == 2);
  CHECK(run({"classify"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("deterministic output") {
  CHECK(run({"classify", trib}).out == run({"classify", trib}).out);
  CHECK(run({"strand", "scan", trib, "--word", "a"}).out == run({"strand", "scan", trib, "--word", "a"}).out);
}

TEST_CASE("expand, occurrences, gaps, proximal") {
  CHECK(run({"expand", fib, "--seed", "a", "--length", "12", "--format", "text"}).out == "abaababaabaa\n");
  CHECK(run({"expand", fib, "--seed", "b", "--length", "12"}).code == 2);
  CHECK(run({"occurrences", fib, "--seed", "a", "--factor", "ab", "--horizon", "13", "--format", "text"}).out ==
        "0\n3\n5\n8\n11\n");
  CHECK(run({"occurrences", fib, "--seed", "a", "--factor", "ax"}).code == 2);
  CHECK(run({"occurrences", fib, "--seed", "a", "--factor", "a", "--horizon", "0"}).code == 2);
  const auto gaps = json::parse(run({"gaps", fib, "--seed", "a", "--factor", "b", "--horizons", "13,1000"}).out);
  CHECK(gaps["gaps"][0]["max_gap"] == 3);
  CHECK(run({"proximal", tm_spec, "--seeds", "a,b", "--min-window", "1", "--horizon", "1000", "--expect-evidence"}).code == 1);
  CHECK(run({"proximal", tm_spec, "--seeds", "a,b", "--min-window", "1", "--horizon", "1000"}).code == 0);
  CHECK(run({"proximal", tm_spec, "--seeds", "a"}).code == 2);
}

TEST_CASE("coincide") {
  const auto r = run({"coincide", pair, "--seeds", "a,b"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["k"] == 3);
  CHECK(j["c"] == "a");
  CHECK(j["s"] == "aab");
  CHECK(j["t"] == "baa");
  CHECK(j["validated"] == true);
  CHECK(run({"coincide", tm_spec, "--seeds", "a,b", "--horizon", "5000", "--expect-witness"}).code == 1);
  CHECK(run({"coincide", tm_spec, "--seeds", "a,b", "--horizon", "5000"}).code == 0);
  CHECK(run({"coincide", tm_spec, "--horizon", "1000", "--deep", "8000", "--expect-witness"}).code == 1);
  const auto all = json::parse(run({"coincide", pair, "--horizon", "1000"}).out);
  CHECK(all["pairs"].size() == 1);
}

TEST_CASE("num") {
  CHECK(run({"num", "encode", fib, "--start", "a", "7", "--format", "text"}).out == "a: a.e.a.e\n");
  CHECK(run({"num", "encode", fib, "--start", "a", "x7"}).code == 2);
  CHECK(run({"num", "encode", fib, "--start", "b", "7"}).code == 2);
  CHECK(run({"num", "decode", fib, "a: a.e.a.e", "--format", "text"}).out == "7\n");
  CHECK(run({"num", "decode", fib, "a: b"}).code == 2);
  CHECK(run({"num", "decode", two_seed, "b: b.e", "--materialize", "--format", "text"}).out == "5 bbaab\n");
  const auto g = json::parse(run({"num", "graph", two_seed}).out);
  CHECK(g["edges"].size() == 8);
  const auto list = run({"num", "list", fib, "--start", "a", "--count", "3", "--format", "text"});
  CHECK(list.out == "0\ta:\n1\ta: a\n2\ta: a.e\n");
  CHECK(json::parse(run({"num", "sync", two_seed, "--seeds", "a,b", "--from", "0", "--to", "50"}).out)["l_max"] == 50);
  CHECK(run({"num", "weights", fib, "--levels", "2"}).out.rfind("level,vertex,label,weight\n", 0) == 0);
  CHECK(run({"num"}).code == 2);
}

TEST_CASE("num round trip on fuzzed integers") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    std::string value = std::to_string(rng() % 1000000000000ULL);
    if (trial % 10 == 0) value += std::to_string(rng());
    const auto enc = run({"num", "encode", trib, "--start", "a", value, "--format", "text"});
    REQUIRE(enc.code == 0);
    const std::string path = enc.out.substr(0, enc.out.size() - 1);
    CHECK(run({"num", "decode", trib, path, "--format", "text"}).out == value + "\n");
  }
}

TEST_CASE("ipset") {
  const auto built = run({"ipset", "build", pair, "--seeds", "a,b", "--count", "2", "--verify", "--expect-pass"});
  REQUIRE(built.code == 0);
  const auto j = json::parse(built.out);
  CHECK(j["generators"] == json::array({23, 1097}));
  CHECK(j["verification"]["verdict"] == "pass");
  CHECK(run({"ipset", "build", tm_spec, "--seeds", "a,b", "--horizon", "1000"}).code == 1);
  CHECK(run({"ipset", "verify", fib, "--seed", "a", "--factor", "a", "--generators", "1", "--expect-pass"}).code == 1);
  CHECK(run({"ipset", "verify", fib, "--seed", "a", "--factor", "a", "--generators", "2,3,8", "--expect-pass"}).code == 0);
  CHECK(run({"ipset", "verify", fib, "--seed", "a", "--factor", "a", "--generators", "3,2"}).code == 2);
  const auto found = json::parse(run({"ipset", "search", fib, "--seed", "a", "--factor", "a", "--depth", "3", "--horizon", "20"}).out);
  CHECK(found["generators"] == json::array({2, 3, 8}));
  CHECK(run({"ipset", "search", fib, "--seed", "a", "--factor", "bb", "--horizon", "50", "--expect-found"}).code == 1);
}

TEST_CASE("strand") {
  const auto scan = run({"strand", "scan", fib, "--word", "a", "--iterations", "10", "--seeds", "a,a",
                         "--delta-horizon", "100", "--expect-bounded"});
  REQUIRE(scan.code == 0);
  const auto j = json::parse(scan.out);
  CHECK(j["envelope"].size() == 10);
  CHECK(j["bounded"] == true);
  CHECK(j["delta"]["max_stable_norm"] == 0.0);
  CHECK(run({"strand", "scan", tm_spec, "--word", "a"}).code == 2);
  const auto dir = fs::temp_directory_path() / "subdyn_cli_tests";
  const auto csv = (dir / "trib.csv").string(), svg = (dir / "trib.svg").string();
  CHECK(run({"strand", "export", trib, "--word", "a", "--iterations", "6", "--csv", csv, "--svg", svg}).code == 0);
  CHECK(fs::file_size(csv) > 0);
  CHECK(fs::file_size(svg) > 0);
}

TEST_CASE("horizon environment default") {
  setenv("SUBDYN_HORIZON", "13", 1);
  const auto j = json::parse(run({"occurrences", fib, "--seed", "a", "--factor", "ab"}).out);
  CHECK(j["horizon"] == 13);
  setenv("SUBDYN_HORIZON", "zero", 1);
  CHECK(run({"occurrences", fib, "--seed", "a", "--factor", "ab"}).code == 2);
  unsetenv("SUBDYN_HORIZON");
}

TEST_CASE("output file") {
  const auto path = (fs::temp_directory_path() / "subdyn_cli_tests" / "out.json").string();
  CHECK(run({"classify", fib, "--output", path}).code == 0);
  std::ifstream in(path);
  CHECK(json::parse(in)["pisot"] == "yes");
}
