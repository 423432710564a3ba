#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "rschain/errors.hpp"
#include "rschain/json_io.hpp"

using namespace rschain;
namespace io = rschain::json;
using Json = nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool same_curve(const PiecewiseCurve& a, const PiecewiseCurve& b) {
  if (a.domain_lo() != b.domain_lo() || a.segments().size() != b.segments().size()) return false;
  for (std::size_t k = 0; k < a.segments().size(); ++k) {
    const Segment& x = a.segments()[k];
    const Segment& y = b.segments()[k];
    if (x.lo != y.lo || x.hi != y.hi || x.alpha != y.alpha || x.beta != y.beta || x.gamma != y.gamma) return false;
  }
  return true;
}

bool same_situation(const RSSituation& a, const RSSituation& b) {
  if (a.c != b.c || a.n() != b.n() || !same_curve(a.w, b.w)) return false;
  for (int i = 1; i <= a.n(); ++i)
    if (!same_curve(a.price(i), b.price(i))) return false;
  return true;
}

const char* kLine = R"({"domain_lo": 0, "segments": [{"lo": 0, "hi": "inf", "alpha": 7, "beta": -1, "gamma": 0}]})";

}  // namespace

TEST_CASE("curve documents") {
  const PiecewiseCurve c = io::curve_from_json(io::parse(kLine));
  CHECK(c.eval(2) == 5);
  CHECK(std::isinf(c.segments().back().hi));
  CHECK(io::to_json(c)["segments"][0]["hi"] == "inf");
  CHECK(same_curve(io::curve_from_json(io::to_json(c)), c));

  SUBCASE("domain_lo defaults to zero, segment fields are required") {
    const auto d = io::curve_from_json(
        io::parse(R"({"segments": [{"lo": 0, "hi": "inf", "alpha": 3, "beta": 0, "gamma": 0}]})"));
    CHECK(d.domain_lo() == 0);
    CHECK(d.eval(10) == 3);
    CHECK_THROWS_AS(io::curve_from_json(io::parse(R"({"segments": [{"lo": 0, "hi": "inf", "alpha": 3}]})")),
                    ParseError);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(io::curve_from_json(io::parse(R"({"segments": [{"lo": 0, "hi": "infinity", "alpha": 3, "beta": 0, "gamma": 0}]})")),
                    ParseError);
    CHECK_THROWS_AS(io::curve_from_json(io::parse(R"({"segments": [{"lo": 0, "hi": "inf", "alpha": 3, "beta": 0, "gamma": 0, "delta": 1}]})")),
                    ParseError);
    CHECK_THROWS_AS(io::curve_from_json(io::parse(R"({"segments": [{"lo": 0, "alpha": 3, "beta": 0, "gamma": 0}]})")), ParseError);
    CHECK_THROWS_AS(io::curve_from_json(io::parse(R"({"segments": [{"lo": "0", "hi": "inf", "alpha": 3, "beta": 0, "gamma": 0}]})")),
                    ParseError);
    CHECK_THROWS_AS(io::curve_from_json(io::parse(R"({"segments": {}})")), ParseError);
    CHECK_THROWS_AS(io::curve_from_json(io::parse("[1, 2]")), ParseError);
  }
}

TEST_CASE("malformed text") {
  CHECK_THROWS_AS(io::parse("{\"c\": 2,"), ParseError);
  CHECK_THROWS_AS(io::parse(""), ParseError);
  try {
    io::parse("{oops}");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("malformed JSON") != std::string::npos);
  }
}

TEST_CASE("data files hold the reference situations") {
  for (const char* name : {"single-unique", "single-two-optima", "pair-convex", "pair-steep", "pair-bulk"}) {
    std::string file = name;
    for (char& ch : file)
      if (ch == '-') ch = '_';
    CAPTURE(file);
    const RSSituation from_file =
        io::any_situation_from_json(io::parse(slurp(std::string(RSCHAIN_DATA_DIR) + "/" + file + ".json")));
    CHECK(same_situation(from_file, fixtures::situation(name)));
  }
}

TEST_CASE("situation documents") {
  const RSSituation sit = fixtures::situation("pair-bulk");
  CHECK(same_situation(io::situation_from_json(io::to_json(sit)), sit));
  CHECK(same_situation(io::situation_from_json(io::parse(io::to_json(sit).dump())), sit));

  const Json single = {{"c", 2}, {"w", Json::parse(kLine)}, {"p", Json::parse(kLine)}};
  CHECK(io::any_situation_from_json(single).n() == 1);
  CHECK(io::problem_from_json(single).c == 2);

  SUBCASE("retailer ids") {
    Json bad = io::to_json(sit);
    bad["retailers"][1]["id"] = 3;
    CHECK_THROWS_AS(io::situation_from_json(bad), ParseError);
    bad["retailers"][1]["id"] = 0;
    CHECK_THROWS_AS(io::situation_from_json(bad), ParseError);
    bad["retailers"][1]["id"] = 1;
    CHECK_THROWS_AS(io::situation_from_json(bad), ParseError);
    bad["retailers"][1]["id"] = 1.5;
    CHECK_THROWS_AS(io::situation_from_json(bad), ParseError);
  }
  SUBCASE("retailers may be listed out of order") {
    Json swapped = io::to_json(sit);
    std::swap(swapped["retailers"][0], swapped["retailers"][1]);
    CHECK(same_situation(io::situation_from_json(swapped), sit));
  }
  SUBCASE("missing and unknown fields") {
    Json j = io::to_json(sit);
    j.erase("c");
    CHECK_THROWS_AS(io::situation_from_json(j), ParseError);
    j = io::to_json(sit);
    j["retailers"] = Json::array();
    CHECK_THROWS_AS(io::situation_from_json(j), ParseError);
    j = io::to_json(sit);
    j["extra"] = 1;
    CHECK_THROWS_AS(io::situation_from_json(j), ParseError);
  }
}

TEST_CASE("game documents") {
  const RSGame& g = fixtures::game("pair-convex");
  const Json j = io::to_json(g);
  CHECK(j["n"] == 2);
  REQUIRE(j["values"].size() == 7);
  std::vector<std::vector<int>> order;
  for (const auto& e : j["values"]) order.push_back(e["coalition"].get<std::vector<int>>());
  CHECK(order == std::vector<std::vector<int>>{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}});
  CHECK(j["values"][3]["v"] == 6.25);

  const RSGame back = io::game_from_json(j);
  CHECK(back.values() == g.values());
  CHECK(io::to_json(back).dump() == j.dump());

  SUBCASE("import errors") {
    Json missing = j;
    missing["values"].erase(missing["values"].begin() + 2);
    CHECK_THROWS_AS(io::game_from_json(missing), ParseError);
    Json twice = j;
    twice["values"].push_back(j["values"][0]);
    CHECK_THROWS_AS(io::game_from_json(twice), ParseError);
    Json out_of_range = j;
    out_of_range["values"][0]["coalition"] = {3};
    CHECK_THROWS_AS(io::game_from_json(out_of_range), ParseError);
    Json repeated = j;
    repeated["values"][3]["coalition"] = {0, 0};
    CHECK_THROWS_AS(io::game_from_json(repeated), ParseError);
    Json empty_nonzero = j;
    empty_nonzero["values"].push_back({{"coalition", Json::array()}, {"v", 1}});
    CHECK_THROWS_AS(io::game_from_json(empty_nonzero), ParseError);
    Json empty_zero = j;
    empty_zero["values"].push_back({{"coalition", Json::array()}, {"v", 0}});
    CHECK(io::game_from_json(empty_zero).values() == g.values());
  }
}

TEST_CASE("allocation and price documents") {
  const Allocation x{{3, 4.75, 7.5}, AllocationLabel::mgpc};
  const Json j = io::to_json(x);
  CHECK(j["label"] == "mgpc");
  const Allocation back = io::allocation_from_json(j);
  CHECK(back.payoffs == x.payoffs);
  CHECK(back.label == AllocationLabel::mgpc);
  CHECK(io::allocation_from_json(Json{{"payoffs", {1, 2}}}).label == AllocationLabel::user);
  CHECK_THROWS_AS(io::allocation_from_json(Json{{"label", "fair"}, {"payoffs", {1}}}), ParseError);
  CHECK_THROWS_AS(io::allocation_from_json(Json{{"payoffs", {"1"}}}), ParseError);

  const PriceVector w{{1.8, 2.25}};
  CHECK(io::prices_from_json(io::to_json(w)).prices == w.prices);
  CHECK_THROWS_AS(io::prices_from_json(Json{{"wholesale", {1}}}), ParseError);
}

TEST_CASE("dump is byte-stable") {
  const Json a = io::to_json(fixtures::situation("pair-steep"));
  const Json b = io::to_json(io::situation_from_json(io::parse(a.dump())));
  CHECK(a.dump() == b.dump());
  CHECK(a.dump(2) == b.dump(2));
}
