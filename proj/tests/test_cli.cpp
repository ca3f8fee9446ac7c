#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

const std::string kW012 = R"({"dim":1,"weights":[[0],[1],[2]]})";
const std::string kSquare = R"({"dim":2,"weights":[[0,0],[2,0],[0,2],[2,2]]})";

struct Run {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = vgit::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("classify reports level-one M") {
  auto r = run({"classify", "--weights", kW012, "--lin", R"({"p":[1],"d":2})", "--point", R"({"0":1,"1":1,"2":1})"});
  REQUIRE(r.code == 0);
  const auto res = r.doc().at("result");
  CHECK(res.at("class") == "Stable");
  CHECK(res.at("M") == json{{"sign", -1}, {"sq", "1/4"}});
  CHECK(res.at("M_level") == json{{"sign", -1}, {"sq", "1"}});
  CHECK(r.doc().at("command") == "classify");
  CHECK(r.doc().contains("version"));

  auto u = run({"classify", "--weights", kW012, "--lin", R"({"p":["1/2"],"d":1})", "--point", R"({"2":"3/5"})"});
  REQUIRE(u.code == 0);
  CHECK(u.doc()["result"]["class"] == "Unstable");
  CHECK(u.doc()["result"]["beta"] == json{"3/2"});
}

TEST_CASE("chambers, cells, walls and crossing on {0,1,2}") {
  auto c = run({"chambers", "--weights", kW012});
  REQUIRE(c.code == 0);
  const json ch = c.doc()["result"]["chambers"];
  REQUIRE(ch.size() == 2);
  CHECK(ch[0]["witness"] == json{"1/2"});
  CHECK(ch[1]["witness"] == json{"3/2"});

  CHECK(run({"cells", "--weights", kW012}).doc()["result"]["count"] == 5);
  auto w = run({"walls", "--weights", kW012}).doc()["result"];
  CHECK(w["count"] == 3);
  CHECK(w["interior_count"] == 1);

  auto x = run({"cross", "--weights", kW012, "--cell-at", "[1]"});
  REQUIRE(x.code == 0);
  const json comp = x.doc()["result"]["components"][0];
  CHECK(comp["d_plus"] == 0);
  CHECK(comp["d_minus"] == 0);
  CHECK(comp["codim"] == 1);
}

TEST_CASE("class, stratify and cone") {
  auto c = run({"class", "--weights", kW012, "--lin", R"({"p":[1],"d":1})"});
  REQUIRE(c.code == 0);
  CHECK(c.doc()["result"]["kind"] == "WallCell");
  auto off = run({"class", "--weights", kW012, "--lin", R"({"p":[3],"d":1})"});
  CHECK(off.doc()["result"]["effective"] == false);
  CHECK(off.doc()["result"]["signature"].is_null());

  auto s = run({"stratify", "--weights", kW012, "--lin", R"({"p":["1/2"],"d":1})", "--point", R"({"2":1})"});
  REQUIRE(s.code == 0);
  const json res = s.doc()["result"];
  CHECK(res["strata"][0]["beta"] == json{"0"});
  CHECK(res["strata"][res["assigned"].get<std::size_t>()]["beta"] == json{"3/2"});

  auto k = run({"cone", "--weights", kSquare});
  CHECK(k.doc()["result"]["slice_vertices"].size() == 4);
}

TEST_CASE("point configuration commands") {
  const std::string pts = R"({"n":1,"points":[[1,0],[1,1],[1,2],[1,3]]})";
  auto r = run({"config-stability", "--points", pts, "--k", "[1,1,1,1]"});
  REQUIRE(r.code == 0);
  CHECK(r.doc()["result"]["class"] == "Stable");
  CHECK(r.doc()["result"]["pluecker_class"] == "Stable");

  auto w = run({"config-walls", "--n", "1", "--m", "4"});
  CHECK(w.doc()["result"]["count"] == 3);
  CHECK(w.doc()["result"]["vertices"] == 6);

  auto g = run({"gm-check", "--n", "1", "--m", "4"});
  REQUIRE(g.code == 0);
  CHECK(g.doc()["result"]["match"] == true);
}

TEST_CASE("exit codes") {
  auto bad = run({"chambers", "--weights", "/nonexistent.json"});
  CHECK(bad.code == 2);
  CHECK_FALSE(bad.err.empty());
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"classify", "--weights", kW012, "--lin", R"({"p":[1,2],"d":1})", "--point", R"({"0":1})"}).code == 2);
  CHECK(run({"classify", "--weights", kW012, "--lin", "{oops", "--point", R"({"0":1})"}).code == 2);

  auto chamber = run({"cross", "--weights", kW012, "--cell-at", R"(["1/2"])"});
  CHECK(chamber.code == 1);
  CHECK(chamber.doc()["error"]["code"] == "IsChamber");
  auto corner = run({"cross", "--weights", kSquare, "--cell-at", "[1,1]"});
  CHECK(corner.doc()["error"]["code"] == "NotCodimOne");
  auto flat = run({"chambers", "--weights", R"({"dim":2,"weights":[[0,0],[1,1],[2,2]]})"});
  CHECK(flat.code == 1);
  CHECK(flat.doc()["error"]["code"] == "ImproperWall");
}

TEST_CASE("scale guards") {
  json big{{"dim", 1}, {"weights", json::array()}};
  for (int i = 0; i < 17; ++i) big["weights"].push_back({i});
  auto r = run({"walls", "--weights", big.dump()});
  CHECK(r.code == 1);
  CHECK(r.doc()["error"]["code"] == "TooLarge");
  CHECK(run({"config-walls", "--n", "6", "--m", "14"}).code == 1);

  ::setenv("VGIT_MAX_SUBSETS", "4000", 1);
  CHECK(run({"config-walls", "--n", "6", "--m", "14"}).code == 0);
  ::unsetenv("VGIT_MAX_SUBSETS");
}

TEST_CASE("determinism") {
  auto a = run({"cells", "--weights", kSquare});
  auto b = run({"cells", "--weights", kSquare});
  CHECK(a.out == b.out);
}

TEST_CASE("plots") {
  auto strip = run({"plot", "--weights", kW012});
  REQUIRE(strip.code == 0);
  CHECK(count(strip.out, "class=\"wall interior\"") == 1);
  CHECK(count(strip.out, "class=\"marker chamber\"") == 2);

  const std::string equator =
      R"({"origin":["1/2","1/2","1/2","1/2"],"u":["1/2","-1/2",0,0],"v":[0,0,"1/2","-1/2"],"bounds":[-1,1,-1,1]})";
  auto sq = run({"plot", "--n", "1", "--m", "4", "--section", equator});
  REQUIRE(sq.code == 0);
  CHECK(count(sq.out, "class=\"wall interior\"") == 2);
  // The section polygon is a square.
  const auto slice = sq.out.substr(sq.out.find("class=\"slice\""));
  const auto pts = slice.substr(slice.find("points=\"") + 8);
  CHECK(count(pts.substr(0, pts.find('"')), ",") == 4);

  auto tri = run({"plot", "--weights", R"({"dim":2,"weights":[[0,0],[1,0],[0,1]]})"});
  REQUIRE(tri.code == 0);
  CHECK(count(tri.out, "class=\"wall interior\"") == 0);
  CHECK(count(tri.out, "class=\"region chamber\"") == 1);

  auto miss = run({"plot", "--weights", kSquare, "--section", R"({"origin":[5,5],"u":[1,0],"v":[0,1],"bounds":[0,1,0,1]})"});
  CHECK(miss.code == 1);

  auto hl = run({"plot", "--weights", kSquare, "--cell-at", R"(["1/2","1/2"])"});
  CHECK(count(hl.out, "class=\"highlight\"") >= 1);
}
