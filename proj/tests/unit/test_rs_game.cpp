#include <doctest.h>

#include "fixtures.hpp"
#include "rschain/core_analysis.hpp"
#include "rschain/errors.hpp"
#include "rschain/rs_game.hpp"

using namespace rschain;

namespace {

std::vector<double> table(const RSGame& g) {
  std::vector<double> out;
  for (Coalition s : display_order(g)) out.push_back(g.v(s));
  return out;
}

void check_table(const RSGame& g, const std::vector<double>& want) {
  const auto got = table(g);
  REQUIRE(got.size() == want.size());
  for (std::size_t k = 0; k < want.size(); ++k) CHECK(fixtures::rel_err(got[k], want[k]) <= 1e-6);
}

}  // namespace

TEST_CASE("coalition encoding and display order") {
  CHECK(Coalition::of({0, 2}).to_string() == "{0,2}");
  CHECK(Coalition::grand(2).bits() == 0b111);
  CHECK(Coalition::retailers(2).bits() == 0b110);
  CHECK(nonempty_subsets(Coalition::retailers(3)).size() == 7);
  const RSGame g = fixtures::pair_game({0, 1, 2, 3, 4, 5, 6});
  std::vector<std::string> order;
  for (Coalition s : display_order(g)) order.push_back(s.to_string());
  CHECK(order == std::vector<std::string>{"{0}", "{1}", "{2}", "{0,1}", "{0,2}", "{1,2}", "{0,1,2}"});
}

TEST_CASE("build_game on the reference situations") {
  check_table(fixtures::game("pair-convex"), {0, 3.25, 6, 6.25, 9, 12.25, 15.25});
  check_table(fixtures::game("pair-bulk"), {0, 1100.5, 1100.5, 1161.62, 1161.62, 2301, 2323.24});

  const RSGame& g = fixtures::game("pair-convex");
  CHECK(g.v(g.grand()) == doctest::Approx(g.v(Coalition::of({0, 1})) + g.v(Coalition::of({0, 2}))).epsilon(1e-15));
  REQUIRE(g.provenance(Coalition::of({1, 2})) != nullptr);
  CHECK(g.provenance(Coalition::of({1, 2}))->quantities.size() == 2);
  CHECK(g.provenance(Coalition::of({0})) == nullptr);
}

TEST_CASE("smallest game") {
  const RSSituation sit = fixtures::situation("single-unique");
  const RSGame g = build_game(sit);
  CHECK(g.n() == 1);
  CHECK(display_order(g).size() == 3);
  CHECK(g.v(Coalition::of({0})) == 0.0);
  CHECK(g.v(Coalition::of({1})) == solve_retailer(sit.problem(1)).value);
  CHECK(g.v(Coalition::of({0, 1})) == solve_with_supplier(sit, Coalition::of({1})).value);
}

TEST_CASE("game construction errors") {
  CHECK_THROWS_AS(RSGame(2, std::vector<double>(4, 0.0)), ArgumentError);
  std::vector<double> bad(8, 0.0);
  bad[0] = 1.0;
  CHECK_THROWS_AS(RSGame(2, bad), ArgumentError);
  RSSituation big = fixtures::situation("pair-bulk");
  big.prices.assign(13, big.prices.front());
  CHECK_THROWS_AS(build_game(big), ArgumentError);
}

TEST_CASE("check_structure") {
  CHECK(check_structure(fixtures::game("pair-convex")).ok());
  CHECK(check_structure(fixtures::game("pair-bulk")).ok());
  CHECK(check_structure(fixtures::game("pair-bulk")).monotonicity_margin > 0.0);

  SUBCASE("broken decomposition is reported at the grand coalition") {
    const RSGame g = fixtures::pair_game({0, 3.25, 6, 6.25, 9, 12.25, 16});
    const StructureReport r = check_structure(g);
    CHECK_FALSE(r.decomposition);
    bool at_grand = false;
    for (const auto& f : r.failures) at_grand = at_grand || (f.property == "decomposition" && f.s == g.grand());
    CHECK(at_grand);
  }
  SUBCASE("superadditivity and monotonicity failures") {
    const RSGame g = fixtures::pair_game({0, 3.25, 6, 6.25, 9, 5, 15.25});
    const StructureReport r = check_structure(g);
    CHECK_FALSE(r.superadditivity);
    CHECK_FALSE(r.monotonicity);
    CHECK(r.decomposition);
  }
  SUBCASE("positivity and normalization") {
    std::vector<double> v(8, 0.0);
    v[0b001] = 1.0;  // v({0}) != 0
    const StructureReport r = check_structure(RSGame(2, v));
    CHECK_FALSE(r.normalization);
    CHECK_FALSE(r.positivity);
  }
}

TEST_CASE("subgame") {
  const RSGame& g = fixtures::game("pair-convex");
  const RSGame sub = subgame(g, Coalition::of({0, 1}));
  CHECK(sub.n() == 1);
  CHECK(table(sub) == std::vector<double>{0, g.v(Coalition::of({1})), g.v(Coalition::of({0, 1}))});
  CHECK(subgame(g, g.grand()).values() == g.values());

  const RSGame& bulk = fixtures::game("pair-bulk");
  const RSGame second = subgame(bulk, Coalition::of({0, 2}));
  CHECK(second.v(Coalition::of({1})) == bulk.v(Coalition::of({2})));
  CHECK(in_core_full(second, altruistic(second)).member);

  CHECK_THROWS_AS(subgame(g, Coalition::of({3})), ArgumentError);
}

TEST_CASE("convexity diagnostic") {
  CHECK(is_convex(fixtures::game("pair-convex")));
  CHECK_FALSE(is_convex(fixtures::game("pair-bulk")));
}

TEST_CASE("property: games built from random situations keep their structure") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int n = 1 + static_cast<int>(seed % 3);
    const RSSituation sit = random_situation(n, seed);
    const RSGame g = build_game(sit);
    const StructureReport r = check_structure(g);
    CHECK(r.ok());
    CHECK(r.monotonicity_margin > 0.0);
    for (Coalition s : nonempty_subsets(g.retailers())) {
      CHECK(g.v(s.with(0)) > g.v(s));
      const CoalitionSolution* sol = g.provenance(s);
      REQUIRE(sol != nullptr);
      // replay the stored quantities
      double total = 0, value = 0;
      for (double q : sol->quantities) total += q;
      const auto ids = s.players();
      for (std::size_t k = 0; k < ids.size(); ++k)
        value += retailer_profit(sit.price(ids[k]), sol->quantities[k], sit.w.eval(total));
      CHECK(std::abs(value - g.v(s)) <= 1e-9 * std::max(1.0, g.v(s)));
    }
  }
}

TEST_CASE("property: building is deterministic") {
  const RSSituation sit = random_situation(3, 77);
  CHECK(build_game(sit).values() == build_game(sit).values());
}
