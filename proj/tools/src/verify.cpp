#include "rschain/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rschain/cli/reference_cases.hpp"
#include "rschain/core_analysis.hpp"
#include "rschain/errors.hpp"
#include "rschain/solutions.hpp"

namespace rschain::cli {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool close_abs(double a, double b, double tol) { return std::abs(a - b) <= scaled(tol, std::max(std::abs(a), std::abs(b))); }

double worst_gap(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return kInf;
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]) / std::max(1.0, std::abs(b[k])));
  return worst;
}

bool all_close_rel(const std::vector<double>& got, const std::vector<double>& want) {
  if (got.size() != want.size()) return false;
  for (std::size_t k = 0; k < got.size(); ++k)
    if (!close_rel(got[k], want[k])) return false;
  return true;
}

// Value of a stored coalition solution recomputed from its quantities.
double replay(const RSSituation& sit, const CoalitionSolution& sol) {
  const auto ids = sol.members.players();
  double total = 0.0;
  for (double q : sol.quantities) total += q;
  const double u = sol.with_supplier ? sit.c : sit.w.eval(total);
  double value = 0.0;
  for (std::size_t k = 0; k < ids.size(); ++k) value += retailer_profit(sit.price(ids[k]), sol.quantities[k], u);
  return value;
}

Allocation from_reductions(const RSGame& game, const std::vector<double>& r, double offset) {
  Allocation x;
  x.payoffs.assign(static_cast<std::size_t>(game.players()), 0.0);
  double retailers = 0.0;
  for (int i = 1; i <= game.n(); ++i) {
    const double xi = game.v(Coalition::of({0, i})) - r[static_cast<std::size_t>(i - 1)];
    x.payoffs[static_cast<std::size_t>(i)] = xi;
    retailers += xi;
  }
  x.payoffs[0] = game.v(game.grand()) - retailers + offset;
  return x;
}

// Candidate allocations written as reductions r_i = v({0,i}) - x_i with the
// supplier taking the efficient remainder. Reductions are either exactly 0
// or well clear of the comparison tolerance, so both core tests see the
// same sign on every supplier constraint.
std::vector<Allocation> core_candidates(const RSGame& game, double beta, int count, std::mt19937_64& rng) {
  const int n = game.n();
  const double scale = std::max(1.0, game.v(game.grand()) / game.players());
  const double floor = 1e-4 * scale;
  std::vector<double> gap(static_cast<std::size_t>(n));
  double max_gap = 0.0;
  for (int i = 1; i <= n; ++i) {
    gap[static_cast<std::size_t>(i - 1)] = game.v(Coalition::of({0, i})) - game.v(Coalition::of({i}));
    max_gap = std::max(max_gap, gap[static_cast<std::size_t>(i - 1)]);
  }
  const auto sets = nonempty_subsets(game.retailers());

  std::vector<Allocation> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<double> r(static_cast<std::size_t>(n));
  for (int k = 0; k < count; ++k) {
    switch (k % 4) {
      case 0:
        for (int i = 0; i < n; ++i) r[i] = uniform(rng, -0.2, 1.2) * gap[i];
        break;
      case 1: {
        const double common = uniform(rng, -0.2, 1.2) * max_gap;
        std::fill(r.begin(), r.end(), common);
        break;
      }
      case 2: {
        // Tight on a random retailer coalition S.
        std::fill(r.begin(), r.end(), 0.0);
        const Coalition s = sets[std::uniform_int_distribution<std::size_t>(0, sets.size() - 1)(rng)];
        double excess = -game.v(s);
        std::vector<double> share;
        double share_sum = 0.0;
        for (int i : s.players()) {
          excess += game.v(Coalition::of({0, i}));
          share.push_back(uniform(rng, 0.1, 1.0));
          share_sum += share.back();
        }
        const auto ids = s.players();
        for (std::size_t m = 0; m < ids.size(); ++m) r[static_cast<std::size_t>(ids[m] - 1)] = excess * share[m] / share_sum;
        for (int i = 0; i < n; ++i)
          if (!s.contains(i + 1) && rng() % 2) r[i] = uniform(rng, 0.0, 1.0) * gap[i];
        break;
      }
      default: {
        const double t = uniform(rng, 0.0, 1.0);
        for (int i = 0; i < n; ++i) r[i] = t * beta + uniform(rng, -0.1, 0.1) * gap[i];
        break;
      }
    }
    for (double& ri : r)
      if (std::abs(ri) < floor) ri = 0.0;
    double offset = 0.0;
    if (rng() % 5 == 0) offset = (rng() % 2 ? 1.0 : -1.0) * std::pow(10.0, uniform(rng, -3.0, 0.0)) * scale;
    out.push_back(from_reductions(game, r, offset));
  }
  return out;
}

const char* axiom_name(int k) {
  static const char* names[] = {"EF", "SR", "RR", "PD"};
  return names[k];
}

std::vector<bool> axiom_flags(const AxiomReport& r) { return {r.ef.pass, r.sr.pass, r.rr.pass, r.pd.pass}; }

}  // namespace

void PropertyTally::record(bool ok, double residual, const std::string& context) {
  ++checked;
  if (std::isfinite(residual)) worst = std::max(worst, std::abs(residual));
  if (!ok) {
    ++failed;
    if (first_failure.empty()) first_failure = context;
  }
}

PropertyTally& PropertySuite::operator[](const std::string& name) {
  for (auto& t : tallies_)
    if (t.name == name) return t;
  PropertyTally t;
  t.name = name;
  tallies_.push_back(std::move(t));
  return tallies_.back();
}

bool PropertySuite::pass() const {
  return std::all_of(tallies_.begin(), tallies_.end(), [](const PropertyTally& t) { return t.pass(); });
}

long PropertySuite::failures() const {
  long total = 0;
  for (const auto& t : tallies_) total += t.failed;
  return total;
}

bool close_rel(double got, double want, double rel) { return std::abs(got - want) <= rel * std::max(1.0, std::abs(want)); }

std::uint64_t instance_seed(std::uint64_t seed, int k) {
  // splitmix64 step over (seed, k)
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(k) + 1;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

int instance_size(int k, int max_n) { return 1 + k % std::max(1, max_n); }

void check_instance(const RSSituation& sit, const RSGame& game, const SweepOptions& opt, std::mt19937_64& rng,
                    const std::string& label, PropertySuite& suite) {
  const double tol = opt.tol;
  const int n = game.n();
  const auto sets = nonempty_subsets(game.retailers());

  // Profit identities of cooperation, at every optimum and at random points.
  for (Coalition s : sets) {
    const CoalitionSolution* joint = game.provenance(s);
    if (!joint) continue;
    const ProfitReport report = check_p1_p2_p3(sit, *joint);
    for (const auto& c : report.checks) {
      const std::string where = label + " S=" + s.to_string() + " i=" + std::to_string(c.retailer);
      suite["profit_split_identity"].record(c.p1, c.p1_residual, where + " residual " + num(c.p1_residual));
      suite["cost_price_dominance"].record(c.p2, std::min(0.0, c.p2_margin), where + " margin " + num(c.p2_margin));
      suite["strict_cooperation_gain"].record(c.p3, std::min({0.0, c.p3_retailer_margin, c.p3_supplier_margin}),
                                              where + " margins " + num(c.p3_retailer_margin) + ", " +
                                                  num(c.p3_supplier_margin));
    }
  }
  for (int draw = 0; draw < 20; ++draw) {
    const int id = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const double q = uniform(rng, 0.0, 100.0);
    const double u = uniform(rng, sit.c, sit.c + 50.0);
    const double lhs = retailer_profit(sit.price(id), q, sit.c);
    const double rhs = retailer_profit(sit.price(id), q, u) + supplier_profit(q, u, sit.c);
    suite["profit_split_identity"].record(std::abs(lhs - rhs) <= scaled(kContinuityTol, lhs), std::abs(lhs - rhs),
                                          label + " random point q=" + num(q));
  }

  const StructureReport structure = check_structure(game, tol);
  suite["game_structure"].record(structure.ok(), static_cast<double>(structure.failures.size()),
                                 label + (structure.failures.empty() ? "" : " " + structure.failures.front().message));

  for (Coalition s : sets) {
    const double margin = game.v(s.with(0)) - game.v(s);
    suite["supplier_gain"].record(margin > 0.0, margin > 0.0 ? 0.0 : margin,
                                  label + " S=" + s.to_string() + " margin " + num(margin));
  }

  for (std::size_t mask = 1; mask < game.values().size(); ++mask) {
    const Coalition s{static_cast<Coalition::Bits>(mask)};
    const CoalitionSolution* sol = game.provenance(s);
    if (!sol) continue;
    const double again = replay(sit, *sol);
    suite["provenance_replay"].record(close_abs(again, game.v(s), kContinuityTol), again - game.v(s),
                                      label + " S=" + s.to_string() + " replay " + num(again) + " vs " +
                                          num(game.v(s)));
  }

  // Larger coalitions never pay a higher unit price.
  for (Coalition s : sets) {
    const CoalitionSolution* small = game.provenance(s);
    if (!small) continue;
    for (Coalition t : sets) {
      if (t == s || !s.subset_of(t)) continue;
      const CoalitionSolution* big = game.provenance(t);
      if (!big) continue;
      const double d = big->unit_price - small->unit_price;
      suite["price_response"].record(d <= scaled(tol, small->unit_price), std::max(0.0, d),
                                     label + " " + s.to_string() + " inside " + t.to_string() + " unit price rises by " +
                                         num(d));
    }
  }

  const Allocation alt = altruistic(game);
  const CoreVerdict alt_verdict = in_core_full(game, alt, tol);
  suite["altruistic_in_core"].record(alt_verdict.member, alt_verdict.residual, label + " " + alt_verdict.witness);

  const MgpcResult m = mgpc(game, tol);
  const CoreVerdict m_verdict = in_core_full(game, m.allocation, tol);
  suite["mgpc_in_core"].record(m_verdict.member && m.allocation.payoffs[0] > 0.0 && m.beta > 0.0,
                               m_verdict.residual,
                               label + " beta " + num(m.beta) + (m_verdict.member ? "" : " " + m_verdict.witness));

  const AxiomReport axioms = check_axioms(game, m.allocation, tol);
  bool witnesses = true;
  for (Coalition s : m.argmin)
    for (double red : axioms.reductions)
      witnesses = witnesses && std::abs(gain_per_capita(game, s) - red) <= scaled(tol, red);
  suite["mgpc_axioms"].record(axioms.all() && witnesses, std::max({axioms.rr.residual, axioms.pd.residual}),
                              label + " mgpc axioms EF/SR/RR/PD = " + std::to_string(axioms.ef.pass) +
                                  std::to_string(axioms.sr.pass) + std::to_string(axioms.rr.pass) +
                                  std::to_string(axioms.pd.pass));

  // Uniqueness probes: moving away from mgpc must break an axiom.
  {
    const double scale = std::max(1.0, game.v(game.grand()) / game.players());
    Coalition tight = m.argmin.front();
    for (Coalition s : sets) {
      const double g = gain_per_capita(game, s);
      const double gap = tight.size() * (g - m.beta);
      if (gap <= 10.0 * scaled(tol, game.v(tight))) continue;
      std::vector<double> r(static_cast<std::size_t>(n), g);
      const AxiomReport probe = check_axioms(game, from_reductions(game, r, 0.0), tol);
      suite["uniqueness_probe"].record(!probe.all(), 0.0, label + " equal reduction " + num(g) + " passes all axioms");
    }
    for (int k = 0; k < 10; ++k) {
      Allocation x = m.allocation;
      double mean = 0.0;
      std::vector<double> d(x.payoffs.size());
      for (double& di : d) {
        di = uniform(rng, -1.0, 1.0) * std::pow(10.0, uniform(rng, -3.0, 0.0)) * scale;
        mean += di / static_cast<double>(d.size());
      }
      const bool efficient = k % 2 == 0;
      for (std::size_t i = 0; i < d.size(); ++i) x.payoffs[i] += d[i] - (efficient ? mean : 0.0);
      const AxiomReport probe = check_axioms(game, x, tol);
      suite["uniqueness_probe"].record(!probe.all(), 0.0, label + " random perturbation passes all axioms");
    }
  }

  // Reduced versus full core membership.
  const auto candidates = core_candidates(game, m.beta, opt.candidates, rng);
  std::vector<Allocation> members{alt, m.allocation};
  for (const auto& x : candidates) {
    const CoreVerdict reduced = in_core_reduced(game, x, tol);
    const CoreVerdict full = in_core_full(game, x, tol);
    const bool agree = reduced.member == full.member;
    suite["core_equivalence"].record(agree, 0.0,
                                     label + " reduced " + (reduced.member ? "in" : "out (" + reduced.witness + ")") +
                                         ", full " + (full.member ? "in" : "out (" + full.witness + ")"));
    if (agree && full.member && members.size() < 32) members.push_back(x);
  }

  // Price formulation of core allocations.
  const SupplierOptimum opt_c = supplier_optimum(sit);
  for (const auto& x : members) {
    try {
      const PriceVector w = prices_from_allocation(sit, game, x, tol);
      bool inside = true;
      for (int i = 1; i <= n; ++i) {
        const double wi = w.prices[static_cast<std::size_t>(i - 1)];
        const double hi = opt_c.prices[static_cast<std::size_t>(i - 1)];
        inside = inside && wi >= sit.c - scaled(tol, sit.c) && wi <= hi + scaled(tol, hi);
      }
      suite["price_interval"].record(inside, 0.0, label + " prices outside [c, p_i(q_i^c)]");
      const Allocation back = allocation_from_prices(sit, game, w, tol);
      const PriceVector w2 = prices_from_allocation(sit, game, back, tol);
      const double dx = worst_gap(back.payoffs, x.payoffs);
      const double dw = worst_gap(w2.prices, w.prices);
      suite["price_roundtrip"].record(dx <= kContinuityTol && dw <= kContinuityTol, std::max(dx, dw),
                                      label + " roundtrip gaps " + num(dx) + ", " + num(dw));
    } catch (const RejectedCandidate& e) {
      suite["price_roundtrip"].record(false, kInf, label + " " + e.what());
    }
  }

  // Every subgame with the supplier keeps the altruistic allocation in its core.
  for (Coalition s : sets) {
    const RSGame sub = subgame(game, s.with(0));
    const CoreVerdict v = in_core_full(sub, altruistic(sub), tol);
    suite["subgame_balanced"].record(v.member, v.residual, label + " subgame " + s.with(0).to_string() + " " + v.witness);
  }
}

void random_sweep(const SweepOptions& opt, PropertySuite& suite) {
  for (int k = 0; k < opt.instances; ++k) {
    const int n = instance_size(k, opt.max_n);
    const std::uint64_t seed = instance_seed(opt.seed, k);
    const RSSituation sit = random_situation(n, seed);
    const RSGame game = build_game(sit);
    std::mt19937_64 rng(seed ^ 0xA5A5A5A5A5A5A5A5ULL);
    check_instance(sit, game, opt, rng, "instance " + std::to_string(k) + " (n=" + std::to_string(n) + ", seed " +
                                            std::to_string(seed) + ")",
                   suite);
  }
}

void check_references(PropertySuite& suite, double tol) {
  for (const ReferenceCase& rc : reference_cases()) {
    const RSSituation sit = rc.situation();
    PropertyTally& t = suite["reference:" + rc.name];
    if (rc.single()) {
      const RSProblem prob = sit.problem(1);
      const CoalitionSolution sol = solve_retailer(prob);
      bool ok = sol.alternates.size() == rc.maximizers.size() && close_rel(sol.value, rc.value);
      for (std::size_t k = 0; ok && k < rc.maximizers.size(); ++k) {
        const double q = sol.alternates[k].front();
        ok = close_rel(q, rc.maximizers[k]) &&
             close_rel(supplier_profit(q, prob.w.eval(q), prob.c), rc.supplier_profits[k]);
      }
      const auto bar = crossing(prob.p, prob.w);
      ok = ok && bar && close_rel(*bar, rc.crossing);
      t.record(ok, std::abs(sol.value - rc.value), rc.name + " optimum differs");
      continue;
    }

    const RSGame game = build_game(sit);
    std::vector<double> values;
    for (Coalition s : display_order(game))
      if (!s.empty()) values.push_back(game.v(s));
    t.record(all_close_rel(values, rc.values), worst_gap(values, rc.values), rc.name + " game values differ");

    const MgpcResult m = mgpc(game, tol);
    t.record(close_rel(m.beta, rc.beta) && all_close_rel(m.allocation.payoffs, rc.mgpc),
             worst_gap(m.allocation.payoffs, rc.mgpc), rc.name + " mgpc differs");
    const Allocation alt = altruistic(game);
    t.record(all_close_rel(alt.payoffs, rc.altruistic), worst_gap(alt.payoffs, rc.altruistic),
             rc.name + " altruistic allocation differs");
    const Allocation sh = shapley(game);
    t.record(all_close_rel(sh.payoffs, rc.shapley), worst_gap(sh.payoffs, rc.shapley), rc.name + " Shapley value differs");
    t.record(in_core_full(game, sh, tol).member == rc.shapley_in_core, 0.0,
             rc.name + " Shapley core verdict differs");

    if (!rc.price_caps.empty()) {
      for (const PriceConstraint& c : price_constraints(sit, game)) {
        if (c.s.size() == 1) {
          const double cap = c.rhs / c.weights.front();
          const double want = rc.price_caps[static_cast<std::size_t>(c.s.players().front() - 1)];
          t.record(close_rel(cap, want), cap - want, rc.name + " price cap of " + c.s.to_string() + " differs");
        } else if (c.s.size() == 2 && rc.pair_price_cap > 0.0 && close_abs(c.weights[0], c.weights[1], kCompareTol)) {
          const double cap = c.rhs / c.weights.front();
          t.record(close_rel(cap, rc.pair_price_cap), cap - rc.pair_price_cap, rc.name + " pair price cap differs");
        }
      }
    }
  }
}

void check_independence(PropertySuite& suite, double tol) {
  struct Designated {
    Counterexample kind;
    int broken;  // index into EF, SR, RR, PD
    RSGame game;
    std::string where;
  };
  const RSGame convex = build_game(reference_case("pair-convex").situation());
  const RSGame steep = build_game(reference_case("pair-steep").situation());
  std::vector<Designated> cases{{Counterexample::no_ef, 0, convex, "pair-convex"},
                                {Counterexample::no_sr, 1, convex, "pair-convex"},
                                {Counterexample::no_rr, 2, convex, "pair-convex"},
                                {Counterexample::no_pd, 3, steep, "pair-steep"}};
  if (auto found = find_distinct_beta_instance())
    cases.push_back({Counterexample::no_pd, 3, found->game, "random seed " + std::to_string(found->seed)});
  else
    suite["independence"].record(false, 0.0, "no instance with distinct per-retailer betas in 200 seeds");

  for (const auto& d : cases) {
    const AxiomReport r = check_axioms(d.game, counterexample_solution(d.kind, d.game), tol);
    const auto flags = axiom_flags(r);
    bool exact = true;
    std::string got;
    for (int k = 0; k < 4; ++k) {
      exact = exact && (flags[static_cast<std::size_t>(k)] == (k != d.broken));
      got += std::string(" ") + axiom_name(k) + (flags[static_cast<std::size_t>(k)] ? "+" : "-");
    }
    suite["independence"].record(exact, 0.0, to_string(d.kind) + " on " + d.where + ":" + got);
  }
}

std::optional<DistinctBetaInstance> find_distinct_beta_instance(std::uint64_t first, int cap) {
  for (int k = 0; k < cap; ++k) {
    const std::uint64_t seed = first + static_cast<std::uint64_t>(k);
    const RSGame game = build_game(random_situation(2, seed));
    const auto b = per_retailer_beta(game);
    if (std::abs(b[0] - b[1]) > 1e-6 * std::max(1.0, std::abs(b[0]))) return DistinctBetaInstance{seed, 2, game};
  }
  return std::nullopt;
}

}  // namespace rschain::cli
