// Acceptance run: one PASS/FAIL line per criterion. Expected values are
// written out here rather than taken from the CLI's reference table.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracle_check.hpp"
#include "rschain/cli/verify.hpp"
#include "rschain/core_analysis.hpp"
#include "rschain/json_io.hpp"
#include "rschain/rs_game.hpp"
#include "rschain/rs_model.hpp"
#include "rschain/solutions.hpp"

using namespace rschain;

namespace {

constexpr double kRel = 1e-6;

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
  void close(double got, double want, const std::string& what, double rel = kRel) {
    const bool c = std::abs(got - want) <= rel * std::max(1.0, std::abs(want));
    std::ostringstream s;
    s.precision(12);
    s << what << ": got " << got << ", want " << want;
    expect(c, s.str());
  }
  void close(const std::vector<double>& got, const std::vector<double>& want, const std::string& what,
             double rel = kRel) {
    if (got.size() != want.size()) {
      expect(false, what + ": size mismatch");
      return;
    }
    for (std::size_t k = 0; k < got.size(); ++k) close(got[k], want[k], what + "[" + std::to_string(k) + "]", rel);
  }
};

RSSituation load(const std::string& file) {
  std::ifstream in(std::string(RSCHAIN_DATA_DIR) + "/" + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return json::any_situation_from_json(json::parse(ss.str()));
}

std::vector<double> display_values(const RSGame& g) {
  std::vector<double> out;
  for (Coalition s : display_order(g)) out.push_back(g.v(s));
  return out;
}

int failures = 0;

void criterion(int id, const std::string& what, double limit_s, const std::function<Check()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Check c;
  try {
    c = body();
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "took %.3f s, limit %.1f s", secs, limit_s);
    c.expect(secs < limit_s, buf);
  }
  if (!c.ok) ++failures;
  std::printf("criterion %d: %s %s (%.3f s)%s%s\n", id, c.ok ? "PASS" : "FAIL", what.c_str(), secs,
              c.ok ? "" : ": ", c.detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  criterion(1, "single retailer with a unique optimum", 0.1, [] {
    Check c;
    const CoalitionSolution s = solve_retailer(load("single_unique.json").problem(1));
    c.expect(s.alternates.size() == 1, "expected one maximizer");
    c.close(s.quantities.at(0), 2.5, "q*");
    c.close(s.value, 3.25, "retailer profit");
    c.close((s.unit_price - 2.0) * s.quantities.at(0), 3.0, "supplier profit");
    return c;
  });

  criterion(2, "single retailer with two optimal order sizes", 0, [] {
    Check c;
    const RSProblem prob = load("single_two_optima.json").problem(1);
    const CoalitionSolution s = solve_retailer(prob);
    c.close(s.value, 1.25, "value");
    c.expect(s.alternates.size() == 2, "expected exactly two maximizers, got " + std::to_string(s.alternates.size()));
    if (s.alternates.size() == 2) {
      std::vector<double> q, sup;
      for (const auto& o : s.alternates) {
        q.push_back(o.at(0));
        sup.push_back((prob.w.eval(o.at(0)) - prob.c) * o.at(0));
      }
      c.close(q, {1.5, 2.5}, "maximizers");
      c.close(sup, {4, 5.625}, "supplier profits");
    }
    return c;
  });

  criterion(3, "game of the convex two-retailer situation", 1.0, [] {
    Check c;
    c.close(display_values(build_game(load("pair_convex.json"))), {0, 3.25, 6, 6.25, 9, 12.25, 15.25}, "v");
    return c;
  });

  criterion(4, "game of the bulk-discount two-retailer situation", 0, [] {
    Check c;
    c.close(display_values(build_game(load("pair_bulk.json"))), {0, 1100.5, 1100.5, 1161.62, 1161.62, 2301, 2323.24},
            "v");
    return c;
  });

  criterion(5, "mgpc, altruistic and Shapley allocations", 0, [] {
    Check c;
    const RSGame convex = build_game(load("pair_convex.json"));
    const RSGame steep = build_game(load("pair_steep.json"));
    const RSGame bulk = build_game(load("pair_bulk.json"));
    c.close(mgpc(convex).allocation.payoffs, {3, 4.75, 7.5}, "convex mgpc");
    c.close(altruistic(convex).payoffs, {0, 6.25, 9}, "convex altruistic");
    c.close(shapley(convex).payoffs, {2, 5.25, 8}, "convex Shapley");
    c.close(mgpc(steep).allocation.payoffs, {10.375, 1.0625, 3.8125}, "steep mgpc");
    c.close(shapley(steep).payoffs, {5 + 31.0 / 48, 3 + 71.0 / 96, 5 + 83.0 / 96}, "steep Shapley");
    c.close(mgpc(bulk).allocation.payoffs, {22.24, 1150.5, 1150.5}, "bulk mgpc");
    c.close(shapley(bulk).payoffs, {27 + 59.0 / 75, 1147 + 109.0 / 150, 1147 + 109.0 / 150}, "bulk Shapley");
    c.expect(in_core_full(convex, shapley(convex)).member, "convex Shapley should be in the core");
    c.expect(in_core_full(steep, shapley(steep)).member, "steep Shapley should be in the core");
    c.expect(!in_core_full(bulk, shapley(bulk)).member, "bulk Shapley should be outside the core");
    return c;
  });

  criterion(6, "price bounds and the allocation/price correspondence", 0, [] {
    Check c;
    const RSSituation sit = load("pair_bulk.json");
    const RSGame g = build_game(sit);
    const auto bounds = price_constraints(sit, g);
    c.expect(bounds.size() == 3, "expected three price constraints");
    if (bounds.size() == 3) {
      c.close(bounds[0].rhs / bounds[0].weights[0], 3 + 82.0 / 1205, "cap on w1");
      c.close(bounds[1].rhs / bounds[1].weights[0], 3 + 82.0 / 1205, "cap on w2");
      c.close(bounds[2].rhs / bounds[2].weights[0], 4 + 74.0 / 1205, "cap on w1 + w2");
    }
    c.close(supplier_optimum(sit).prices, {25.9, 25.9}, "p_i at the supplier optimum");
    c.close(prices_from_allocation(sit, g, altruistic(g)).prices, {1.8, 1.8}, "floor prices");

    // Both directions on a grid of core allocations and admissible prices.
    double worst = 0.0;
    for (double a = 0.0; a <= 1.0; a += 0.125) {
      for (double b = 0.0; b <= 1.0 - a; b += 0.125) {
        const PriceVector w{{1.8 + a * (4 + 74.0 / 1205 - 3.6), 1.8 + b * (4 + 74.0 / 1205 - 3.6)}};
        const Allocation x = allocation_from_prices(sit, g, w);
        const PriceVector back = prices_from_allocation(sit, g, x);
        for (int i = 0; i < 2; ++i) worst = std::max(worst, std::abs(back.prices[i] - w.prices[i]));
        const Allocation again = allocation_from_prices(sit, g, back);
        for (int i = 0; i < 3; ++i)
          worst = std::max(worst, std::abs(again.payoffs[i] - x.payoffs[i]) / std::max(1.0, std::abs(x.payoffs[i])));
      }
    }
    c.expect(worst <= 1e-9, "roundtrip error " + std::to_string(worst));
    return c;
  });

  criterion(7, "property suite on 50 random situations", 60.0, [] {
    Check c;
    cli::PropertySuite suite;
    cli::SweepOptions opt;
    opt.seed = 1;
    opt.instances = 50;
    opt.max_n = 3;
    opt.candidates = 10000;
    cli::random_sweep(opt, suite);
    for (const auto& t : suite.tallies())
      c.expect(t.pass() && t.checked > 0, t.name + ": " + std::to_string(t.failed) + " failures, " + t.first_failure);
    c.expect(suite["core_equivalence"].checked >= 50L * 10000, "fewer core candidates than required");
    return c;
  });

  criterion(8, "independence of the four axioms", 0, [] {
    Check c;
    cli::PropertySuite suite;
    cli::check_independence(suite);
    const auto& t = suite["independence"];
    c.expect(t.checked == 5, "expected five designated cases, got " + std::to_string(t.checked));
    c.expect(t.pass(), t.first_failure);
    return c;
  });

  criterion(9, "coalition solver against brute force", 30.0, [] {
    Check c;
    std::vector<oracle::Mismatch> bad;
    for (const char* f : {"single_unique.json", "single_two_optima.json", "pair_convex.json", "pair_steep.json",
                          "pair_bulk.json"})
      oracle::compare_all(load(f), f, 1e-5, bad);
    for (int k = 0; k < 20; ++k)
      oracle::compare_all(random_situation(1 + k % 3, 9000 + static_cast<std::uint64_t>(k)),
                          "seed " + std::to_string(9000 + k), 1e-5, bad);
    for (const auto& m : bad)
      c.expect(false, m.where + ": solver " + std::to_string(m.solver) + ", brute force " + std::to_string(m.brute));
    return c;
  });

  std::printf("%s\n", failures == 0 ? "all criteria pass" : "some criteria fail");
  return failures == 0 ? 0 : 1;
}
