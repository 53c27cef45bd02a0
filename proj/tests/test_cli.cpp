#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "fiberorder/cli.hpp"

namespace {

using Json = nlohmann::ordered_json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "fiberorder");
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = fiberorder::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

const char* kDiamond = R"({"elements":["a","b","c","d"],"le":[["a","b"],["a","c"],["b","d"],["c","d"]]})";
const char* kLiftOk =
    R"({"n":2,"c":["1/4","1/4"],"alpha":[{"set":[1],"value":"1/2"},{"set":[2],"value":"1/4"},{"set":[1,2],"value":"1/4"}]})";
const char* kLiftBad = R"({"n":1,"c":["1/2"],"alpha":[{"set":[1],"value":"1/2"}]})";
const char* kImage =
    R"({"K":["a","b","c"],"L":["x","y"],"g":{"a":"x","b":"x","c":"y"},"U":[["a"],["c"]],"c":["1/3","1/4"],"lambda":{"x":"1/2","y":"1/2"}})";

}  // namespace

TEST_CASE("lift on a feasible instance") {
  const auto r = run({"lift"}, kLiftOk);
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j.at("max_flow") == j.at("min_cut"));
  CHECK(j.at("beta").size() == 4);
  CHECK(j.at("beta")[0].at("value") == "1/2");
}

TEST_CASE("lift on an infeasible instance") {
  const auto r = run({"lift"}, kLiftBad);
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(Json::parse(r.err) == Json::parse(R"({"error":"infeasible","violated":[1]})"));
}

TEST_CASE("factor on the diamond") {
  const auto r = run({"factor"}, kDiamond);
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  REQUIRE(j.at("irreducible_factors").size() == 2);
  for (const auto& f : j.at("irreducible_factors")) CHECK(f.at("elements").size() == 2);
  CHECK(j.at("witness").size() == 4);
  const auto dot = run({"factor", "--format", "dot"}, kDiamond);
  CHECK(dot.code == 0);
  CHECK(dot.out.find("digraph") != std::string::npos);
}

TEST_CASE("compare") {
  const char* pts = R"([["8/10","2/10","0","0"],["7/10","1/10","1/10","1/10"]])";
  const auto r = run({"compare", "--space", "pk", "--k", "2"}, pts);
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j.at("verdict") == "LE");
  CHECK(j.at("coupling").is_array());
  const char* pts3 = R"([["7/10","3/10","0","0"],["7/10","1/10","1/10","1/10"]])";
  CHECK(Json::parse(run({"compare", "--space", "pk", "--k", "2"}, pts3).out).at("verdict") == "INCOMPARABLE");
  const auto ok = run({"compare", "--space", "ok", "--k", "2", "--format", "text"}, R"([["0","1"],["1","1"]])");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("LE") != std::string::npos);
  CHECK(run({"compare", "--space", "ok", "--k", "2", "--m", "2"}, R"([["0","1/3"],["1","1"]])").code == 2);
}

TEST_CASE("upsets and flow") {
  const auto u = run({"upsets", "--k", "2"});
  REQUIRE(u.code == 0);
  CHECK(Json::parse(u.out).at("count") == 6);
  const auto f = run({"flow"}, R"({"vertices":["s","a","b","t"],"arcs":[["s","a","2"],["s","b","3"],["a","t","3"],["b","t","1"]],"source":"s","sink":"t"})");
  REQUIRE(f.code == 0);
  const auto j = Json::parse(f.out);
  CHECK(j.at("value") == "3");
  CHECK(j.at("min_cut").at("capacity") == "3");
}

TEST_CASE("image") {
  const auto r = run({"image"}, kImage);
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j.at("member") == true);
  CHECK(j.at("witness") == Json::parse(R"({"a":"1/2","c":"1/2"})"));
  std::string tight = kImage;
  tight.replace(tight.find("1/4"), 3, "1/2");
  const auto no = run({"image"}, tight);
  CHECK(no.code == 0);
  const auto n = Json::parse(no.out);
  CHECK(n.at("member") == false);
  CHECK(n.at("violated") == Json::parse("[2]"));
}

TEST_CASE("fiber") {
  const auto r = run({"fiber", "--family", "sigma", "--params", R"({"M":["1","2","3","4"],"N":["1","2"],"n":2})",
                      "--base", R"(["1"])"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out).at("fiber") == Json::parse(R"(["{1}","{1,3}","{1,4}"])"));
  const auto p = run({"fiber", "--family", "star", "--params",
                      R"({"K":["m","a","b"],"L":["w"],"g":{"m":"w","a":"w","b":"w"},"varpi":"w","m":"m"})",
                      "--base", R"(["w","w"])", "--emit", "poset", "--m", "2", "--format", "dot"});
  CHECK(p.code == 0);
  CHECK(p.out.find("digraph") != std::string::npos);
}

TEST_CASE("error exit codes") {
  CHECK(run({"lift"}, "{not json").code == 2);
  CHECK(run({"lift"}, R"({"n":1,"c":[0.5],"alpha":[]})").code == 2);
  CHECK(run({"bogus"}).code == 2);
  const auto nc = run({"factor"}, R"({"elements":["a","b"],"le":[]})");
  CHECK(nc.code == 1);
  CHECK(Json::parse(nc.err).at("error") == "not_connected");
}

TEST_CASE("batches keep input order with several jobs") {
  const std::string batch = std::string("[") + kLiftOk + "," + kLiftBad + "," + kLiftOk + "]";
  const auto one = run({"lift"}, batch);
  const auto many = run({"lift", "--jobs", "3"}, batch);
  CHECK(one.out == many.out);
  const auto j = Json::parse(many.out);
  REQUIRE(j.size() == 3);
  CHECK(j[0].contains("beta"));
  CHECK(j[1].at("error") == "infeasible");
  CHECK(j[2] == j[0]);
}

TEST_CASE("output is deterministic") {
  for (int i = 0; i < 3; ++i) {
    CHECK(run({"lift"}, kLiftOk).out == run({"lift"}, kLiftOk).out);
    CHECK(run({"factor"}, kDiamond).out == run({"factor"}, kDiamond).out);
    CHECK(run({"image"}, kImage).out == run({"image"}, kImage).out);
  }
}
