#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "matchsig/io.hpp"
#include "oracles.hpp"

using namespace matchsig;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("matchsig_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("signature json round-trip") {
  matchsig::Rng rng(71);
  for (const Field& f : {Field::prime(5), Field::gf4(), Field::gf9(), Field::rational()}) {
    std::vector<Element> v;
    for (int k = 0; k < 8; ++k) v.push_back(f.is_finite() ? random_element(f, rng) : oracle::random_rational(f, rng));
    const Signature s(3, f, v);
    CHECK(signature_from_json(Json::parse(signature_to_json(s).dump())) == s);
  }
}

TEST_CASE("matrix and matchgate json round-trip") {
  const Field f = Field::prime(7);
  const SkewMatrix m(3, f, {f.from_int(1), f.from_int(2), f.from_int(3)});
  CHECK(matrix_from_json(matrix_to_json(m)) == m);
  const Matchgate g(f, {0, 1, 2}, {{0, 1, f.from_int(4)}, {1, 2, f.one()}}, {2, 0});
  const Matchgate back = matchgate_from_json(matchgate_to_json(g));
  CHECK(back.nodes() == g.nodes());
  CHECK(back.io() == g.io());
  CHECK(matchgate_signature(back) == matchgate_signature(g));
}

TEST_CASE("json accepts integers and rejects malformed input") {
  const Signature s = signature_from_json(Json::parse(R"({"n": 1, "field": "gf3", "values": [1, 5]})"));
  CHECK(s[1] == Field::prime(3).from_int(2));
  CHECK_THROWS_AS(signature_from_json(Json::parse(R"({"n": 1, "values": [1, 0]})")), std::invalid_argument);
  CHECK_THROWS_AS(signature_from_json(Json::parse(R"({"n": "1", "field": "gf3", "values": [1, 0]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(signature_from_json(Json::parse(R"({"n": 2, "field": "gf3", "values": [1, 0]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(signature_from_json(Json::parse(R"({"n": 1, "field": "gf3", "values": [true, 0]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(matchgate_from_json(Json::parse(R"({"field": "gf3", "nodes": [0, 1], "edges": [[0, 1]], "io": []})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(load_json_file("/nonexistent/file.json"), std::invalid_argument);
  CHECK_THROWS_AS(load_json_file(temp_file("bad.json", "{not json")), std::invalid_argument);
}

TEST_CASE("verdict json") {
  const Field f = Field::prime(5);
  const Signature s(2, f, {f.one(), f.one(), f.zero(), f.zero()});
  const Json j = verdict_to_json(recognize_fast(s), 2);
  CHECK(j["status"] == "not-standard");
  CHECK(j["witness"]["kind"] == "parity");
  CHECK(j["witness"]["first"] == "00");
  CHECK(j["witness"]["second"] == "01");
}

}  // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("documented outputs") {
  CHECK(first_line(run({"count", "--s", "2", "--n", "3"}).out) == "all=31 odd=15 normalized=8");
  CHECK(run({"gamma", "--s", "2", "--digits", "6"}).out == "2.384231\n");
  const Result six = run({"sixbit", "--check"});
  CHECK(six.code == 0);
  CHECK(six.out == "32 even-weight entries verified; f(111111): 15 monomials\n");
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"count", "--s", "2"}).code == 2);
  CHECK(run({"count", "--s", "two", "--n", "3"}).code == 2);
  CHECK(run({"count", "--s", "1", "--n", "3"}).code == 1);
  CHECK(run({"sparsity", "--s", "2"}).code == 2);
  CHECK(run({"sparsity", "--s", "2", "--n", "3", "--limit"}).code == 2);
  CHECK(run({"recognize", "/nonexistent.json"}).code == 1);
  CHECK(run({"recognize", temp_file("garbage.json", "[1, 2")}).code == 1);
  CHECK(run({"sample", "--field", "gf6", "--n", "3"}).code == 1);
  CHECK(run({"sample", "--field", "rational", "--n", "3"}).code == 1);
  CHECK(run({"enumerate", "--field", "gf2", "--n", "5", "--space", "full"}).code == 1);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"count", "--help"}).code == 0);
}

TEST_CASE("sampled files are recognized") {
  for (const std::string parity : {"even", "odd", "normalized"})
    for (const std::string seed : {"0", "1", "2"}) {
      const std::string path = temp_file("sample_" + parity + seed + ".json", "");
      REQUIRE(run({"sample", "--field", "gf5", "--n", "5", "--parity", parity, "--seed", seed, "-o", path}).code == 0);
      const Result fast = run({"recognize", path});
      CHECK(first_line(fast.out) == "verdict: standard");
      const Result naive = run({"recognize", path, "--naive", "--format", "json"});
      CHECK(Json::parse(naive.out)["status"] == "standard");
      const Result sparse = run({"recognize", path, "--sparse", "--format", "json"});
      CHECK(Json::parse(sparse.out)["status"] == "standard");
    }
}

TEST_CASE("sampling is reproducible") {
  const Result a = run({"sample", "--field", "gf3", "--n", "4", "--trials", "5"});
  const Result b = run({"sample", "--field", "gf3", "--n", "4", "--trials", "5", "--seed", "0"});
  CHECK(a.out == b.out);
  CHECK(a.out != run({"sample", "--field", "gf3", "--n", "4", "--trials", "5", "--seed", "9"}).out);
  const Result stat = run({"sample", "--field", "gf2", "--n", "6", "--trials", "2000", "--stat", "--format", "json"});
  REQUIRE(stat.code == 0);
  const Json j = Json::parse(stat.out);
  CHECK(j["accepted"] == 2000);
  CHECK(j["trials"] == 2000);
}

TEST_CASE("json output is parseable") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"count", "--s", "3", "--n", "4", "--format", "json"},
           {"gamma", "--s", "5", "--format", "json"},
           {"sparsity", "--s", "2", "--n", "10", "--format", "json"},
           {"sparsity", "--s", "2", "--limit", "--format", "json"},
           {"compare", "--s", "3", "--n", "4", "--format", "json"},
           {"tables", "--format", "json"},
           {"sixbit", "--format", "json"},
           {"crossover", "--max-n", "4", "--format", "json"}}) {
    const Result r = run(args);
    CHECK(r.code == 0);
    CHECK(Json::accept(r.out));
  }
  const Json c = Json::parse(run({"count", "--s", "2", "--n", "4", "--format", "json"}).out);
  CHECK(c["all"] == "271");
}

TEST_CASE("tables") {
  const Result csv = run({"tables", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.find("s,gamma\n2,2.384231\n3,1.564934\n") != std::string::npos);
  CHECK(csv.out.find("s,inverse_gamma,one_minus_inverse_s\n2,0.419422,1/2\n3,0.639005,2/3\n") != std::string::npos);
  const Result text = run({"tables", "--table", "sparsity"});
  CHECK(text.out.find("0.857142") != std::string::npos);
  CHECK(text.out.find("gamma(s)\n") == std::string::npos);
}

TEST_CASE("enumerate, compare and sparsity") {
  CHECK(run({"enumerate", "--field", "gf3", "--n", "2", "--count-only"}).out == "standard=17 examined=81\n");
  const Result listing = run({"enumerate", "--field", "gf2", "--n", "2"});
  CHECK(std::count(listing.out.begin(), listing.out.end(), '\n') == 8);
  CHECK(run({"sparsity", "--s", "2", "--n", "2"}).out == "2/3 ~ 0.666667\n");
  CHECK(run({"sparsity", "--s", "2", "--limit"}).out == "0.419422\n");
  const Result cmp = run({"compare", "--s", "2", "--n", "4", "--format", "csv"});
  CHECK(cmp.out.find("standard signatures,271") != std::string::npos);
}

TEST_CASE("perfmatch and minors") {
  const std::string gate = std::string(MATCHSIG_GATE_DIR) + "/edge.json";
  CHECK(run({"perfmatch", gate}).out == "perfmatch=3\n");
  const Result sig = run({"perfmatch", gate, "--signature", "--format", "json"});
  const Json j = Json::parse(sig.out);
  CHECK(j["signature"]["values"] == Json::array({"3", "0", "0", "1"}));
  CHECK(j["verdict"]["status"] == "standard");

  const std::string m = temp_file("matrix.json", R"({"n": 4, "field": "gf5", "upper": [0, 1, 0, 0, 1, 0]})");
  const Json f = Json::parse(run({"minors", m, "--format", "json"}).out);
  CHECK(f["values"][0b1111] == "4");
  CHECK(f["values"][0b0101] == "1");
}

}  // TEST_SUITE
