#include <cmath>
#include <random>
#include <sstream>

#include "rschain/cli/cli.hpp"
#include "rschain/cli/text.hpp"
#include "rschain/cli/verify.hpp"
#include "rschain/core_analysis.hpp"
#include "rschain/errors.hpp"
#include "rschain/json_io.hpp"
#include "rschain/solutions.hpp"

namespace rschain::cli {

using nlohmann::json;
namespace io = rschain::json;

namespace {

struct Document {
  RSSituation situation;
  std::optional<Allocation> allocation;
  std::optional<PriceVector> prices;
};

// One input file carries the situation and, for `core`, optional candidates.
Document load_document(const std::string& text) {
  json doc = io::parse(text);
  if (!doc.is_object()) throw ParseError("input must be a JSON object");
  Document d;
  if (auto it = doc.find("allocation"); it != doc.end()) {
    d.allocation = io::allocation_from_json(*it);
    doc.erase(it);
  }
  if (auto it = doc.find("prices"); it != doc.end()) {
    d.prices = io::prices_from_json(*it);
    doc.erase(it);
  }
  d.situation = io::any_situation_from_json(doc);
  require_valid(d.situation);
  return d;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string failure_name(CoreVerdict::Failure f) {
  switch (f) {
    case CoreVerdict::Failure::none:
      return "none";
    case CoreVerdict::Failure::efficiency:
      return "efficiency";
    case CoreVerdict::Failure::upper_bound:
      return "upper_bound";
    case CoreVerdict::Failure::coalition:
      return "coalition";
  }
  return "none";
}

json verdict_json(const CoreVerdict& v) {
  return {{"member", v.member},
          {"failure", failure_name(v.failure)},
          {"coalition", v.member ? json(nullptr) : io::to_json(v.coalition)},
          {"residual", tidy(v.residual)},
          {"witness", v.witness}};
}

std::string verdict_text(const CoreVerdict& v) { return v.member ? "member" : "not a member: " + v.witness; }

std::string coalition_list(const std::vector<Coalition>& sets) {
  std::vector<std::string> parts;
  for (Coalition s : sets) parts.push_back(s.to_string());
  return join(parts, " ");
}

std::string structure_text(const StructureReport& r, int precision) {
  std::ostringstream os;
  auto line = [&](const char* name, bool ok) { os << "  " << name << ": " << (ok ? "ok" : "FAILED") << "\n"; };
  os << "structure\n";
  line("positivity", r.positivity);
  line("superadditivity", r.superadditivity);
  line("strict monotonicity", r.monotonicity);
  os << "    smallest increase " << fixed(r.monotonicity_margin, precision) << "\n";
  line("supplier decomposition", r.decomposition);
  line("normalization", r.normalization);
  for (const auto& f : r.failures) os << "  failure: " << f.message << "\n";
  return os.str();
}

json structure_json(const StructureReport& r) {
  json j = io::to_json(r);
  j["monotonicity_margin"] = std::isfinite(r.monotonicity_margin) ? json(tidy(r.monotonicity_margin)) : json(nullptr);
  return j;
}

}  // namespace

CommandResult cmd_solve(const RunConfig& cfg, const std::string& input) {
  const Document doc = load_document(input);
  const RSSituation& sit = doc.situation;
  json retailers = json::array();
  std::ostringstream text;
  const int k = cfg.precision;
  for (int id = 1; id <= sit.n(); ++id) {
    const RSProblem prob = sit.problem(id);
    const CoalitionSolution sol = solve_retailer(prob);
    const auto bar = crossing(prob.p, prob.w);
    json optima = json::array();
    Table t({"q", "unit price", "retailer profit", "supplier profit"});
    for (const auto& alt : sol.alternates) {
      const double q = alt.front();
      const double u = prob.w.eval(q);
      const double ret = retailer_profit(prob.p, q, u);
      const double sup = supplier_profit(q, u, prob.c);
      optima.push_back(
          {{"q", tidy(q)}, {"unit_price", tidy(u)}, {"retailer_profit", tidy(ret)}, {"supplier_profit", tidy(sup)}});
      t.add({fixed(q, k), fixed(u, k), fixed(ret, k), fixed(sup, k)});
    }
    retailers.push_back({{"id", id},
                         {"feasible", {{"lo", 0.0}, {"hi", bar ? json(tidy(*bar)) : json(nullptr)}}},
                         {"value", tidy(sol.value)},
                         {"optima", optima}});
    text << "retailer " << id << "\n";
    text << "  feasible orders [" << fixed(0.0, k) << ", " << (bar ? fixed(*bar, k) : std::string("unbounded")) << "]\n";
    text << "  optimal profit " << fixed(sol.value, k) << " at " << sol.alternates.size()
         << (sol.alternates.size() == 1 ? " order size\n" : " order sizes\n");
    text << t.render("  ");
  }
  if (cfg.format == Format::json) return {ExitCode::ok, dump({{"retailers", retailers}})};
  return {ExitCode::ok, text.str()};
}

CommandResult cmd_game(const RunConfig& cfg, const std::string& input) {
  const Document doc = load_document(input);
  const RSGame game = build_game(doc.situation);
  const StructureReport structure = check_structure(game, cfg.tol);
  const bool convex = is_convex(game, cfg.tol);
  const int k = cfg.precision;

  json solutions = json::array();
  Table t({"coalition", "v", "quantities", "unit price"});
  for (Coalition s : display_order(game)) {
    const CoalitionSolution* sol = game.provenance(s);
    if (!sol) {
      t.add({s.to_string(), fixed(game.v(s), k), "-", "-"});
      continue;
    }
    solutions.push_back({{"coalition", io::to_json(s)},
                         {"quantities", tidy(sol->quantities)},
                         {"total", tidy(sol->total)},
                         {"unit_price", tidy(sol->unit_price)}});
    t.add({s.to_string(), fixed(game.v(s), k), fixed_list(sol->quantities, k), fixed(sol->unit_price, k)});
  }
  const ExitCode code = ExitCode::ok;
  if (cfg.format == Format::json) {
    json j = io::to_json(game);
    for (auto& e : j["values"]) e["v"] = tidy(e["v"].get<double>());
    j["solutions"] = solutions;
    j["structure"] = structure_json(structure);
    j["convex"] = convex;
    return {code, dump(j)};
  }
  std::ostringstream text;
  text << "characteristic function (n = " << game.n() << ")\n" << t.render("  ");
  text << structure_text(structure, k);
  text << "convex: " << yes_no(convex) << "\n";
  return {code, text.str()};
}

CommandResult cmd_core(const RunConfig& cfg, const std::string& input) {
  const Document doc = load_document(input);
  const RSSituation& sit = doc.situation;
  const RSGame game = build_game(sit);
  const CoreDescription core = describe_core(game);
  const SupplierOptimum opt = supplier_optimum(sit);
  const auto bounds = price_constraints(sit, game);
  const int k = cfg.precision;

  json intervals = json::array();
  Table ti({"retailer", "lower v({i})", "upper v({0,i})", "q_i^c", "p_i(q_i^c)", "w_i* range"});
  for (const auto& iv : core.intervals) {
    intervals.push_back({{"retailer", iv.retailer}, {"lo", tidy(iv.lo)}, {"hi", tidy(iv.hi)}});
    const auto idx = static_cast<std::size_t>(iv.retailer - 1);
    double cap = kInf;
    for (const auto& b : bounds)
      if (b.s == Coalition::of({iv.retailer})) cap = b.rhs / b.weights.front();
    ti.add({std::to_string(iv.retailer), fixed(iv.lo, k), fixed(iv.hi, k), fixed(opt.quantities[idx], k),
            fixed(opt.prices[idx], k), "[" + fixed(sit.c, k) + ", " + fixed(cap, k) + "]"});
  }
  json coalition_bounds = json::array();
  Table tb({"coalition", "x(S) >="});
  for (const auto& b : core.coalition_bounds) {
    coalition_bounds.push_back({{"coalition", io::to_json(b.s)}, {"lo", tidy(b.lo)}});
    tb.add({b.s.to_string(), fixed(b.lo, k)});
  }
  json price_bounds = json::array();
  Table tp({"constraint", "rhs"});
  for (const auto& b : bounds) {
    price_bounds.push_back({{"coalition", io::to_json(b.s)}, {"weights", tidy(b.weights)}, {"rhs", tidy(b.rhs)}});
    std::vector<std::string> terms;
    const auto ids = b.s.players();
    for (std::size_t m = 0; m < ids.size(); ++m) terms.push_back(fixed(b.weights[m], k) + " w" + std::to_string(ids[m]));
    tp.add({join(terms, " + "), fixed(b.rhs, k)});
  }

  json candidates = json::object();
  std::ostringstream cand_text;
  if (doc.allocation) {
    const Allocation& x = *doc.allocation;
    const CoreVerdict reduced = in_core_reduced(game, x, cfg.tol);
    const CoreVerdict full = in_core_full(game, x, cfg.tol);
    json entry = {{"payoffs", tidy(x.payoffs)},
                  {"reduced", verdict_json(reduced)},
                  {"full", verdict_json(full)},
                  {"prices", nullptr},
                  {"rejected", nullptr}};
    cand_text << "candidate allocation " << fixed_list(x.payoffs, k) << "\n";
    cand_text << "  reduced test: " << verdict_text(reduced) << "\n";
    cand_text << "  full test:    " << verdict_text(full) << "\n";
    try {
      const PriceVector w = prices_from_allocation(sit, game, x, cfg.tol);
      entry["prices"] = tidy(w.prices);
      cand_text << "  wholesale prices " << fixed_list(w.prices, k) << "\n";
    } catch (const RejectedCandidate& e) {
      entry["rejected"] = e.what();
      cand_text << "  no price vector: " << e.what() << "\n";
    }
    candidates["allocation"] = entry;
  }
  if (doc.prices) {
    const PriceVector& w = *doc.prices;
    json entry = {{"prices", tidy(w.prices)}, {"allocation", nullptr}, {"rejected", nullptr}};
    cand_text << "candidate prices " << fixed_list(w.prices, k) << "\n";
    try {
      const Allocation x = allocation_from_prices(sit, game, w, cfg.tol);
      entry["allocation"] = tidy(x.payoffs);
      cand_text << "  core allocation " << fixed_list(x.payoffs, k) << "\n";
    } catch (const RejectedCandidate& e) {
      entry["rejected"] = e.what();
      cand_text << "  rejected: " << e.what() << "\n";
    }
    candidates["prices"] = entry;
  }

  if (cfg.format == Format::json) {
    json j = {{"core", {{"intervals", intervals}, {"coalition_bounds", coalition_bounds}, {"total", tidy(core.total)}}},
              {"supplier_optimum", {{"quantities", tidy(opt.quantities)}, {"prices", tidy(opt.prices)}}},
              {"price_bounds", price_bounds},
              {"candidates", candidates}};
    return {ExitCode::ok, dump(j)};
  }
  std::ostringstream text;
  text << "core: payoffs sum to v(N0) = " << fixed(core.total, k) << "\n" << ti.render("  ");
  if (!core.coalition_bounds.empty()) text << "coalition bounds\n" << tb.render("  ");
  text << "price bounds (each w_i* >= " << fixed(sit.c, k) << ")\n" << tp.render("  ");
  text << cand_text.str();
  return {ExitCode::ok, text.str()};
}

CommandResult cmd_allocate(const RunConfig& cfg, const std::string& input) {
  const Document doc = load_document(input);
  const RSGame game = build_game(doc.situation);
  const int k = cfg.precision;
  const MgpcResult m = mgpc(game, cfg.tol);
  const Allocation alt = altruistic(game);
  std::optional<Allocation> sh;
  if (game.players() <= kMaxShapleyPlayers) sh = shapley(game);

  auto entry = [&](const Allocation& x) {
    return json{{"payoffs", tidy(x.payoffs)}, {"in_core", in_core_full(game, x, cfg.tol).member}};
  };
  auto axioms = [&](const Allocation& x) { return io::to_json(check_axioms(game, x, cfg.tol)); };

  json jm = io::to_json(m);
  jm["beta"] = tidy(m.beta);
  jm["payoffs"] = tidy(m.allocation.payoffs);
  jm["in_core"] = in_core_full(game, m.allocation, cfg.tol).member;
  json jax = {{"mgpc", axioms(m.allocation)}, {"altruistic", axioms(alt)}, {"shapley", nullptr}};
  if (sh) jax["shapley"] = axioms(*sh);

  if (cfg.format == Format::json) {
    json j = {{"mgpc", jm}, {"altruistic", entry(alt)}, {"shapley", sh ? entry(*sh) : json(nullptr)}, {"axioms", jax}};
    return {ExitCode::ok, dump(j)};
  }

  std::vector<const Allocation*> cols{&m.allocation, &alt};
  std::vector<std::string> header{"player", "mgpc", "altruistic"};
  if (sh) {
    cols.push_back(&*sh);
    header.push_back("shapley");
  }
  Table t(header);
  for (int i = 0; i < game.players(); ++i) {
    std::vector<std::string> row{i == 0 ? "0 (supplier)" : std::to_string(i)};
    for (const Allocation* x : cols) row.push_back(fixed(x->payoffs[static_cast<std::size_t>(i)], k));
    t.add(row);
  }
  std::vector<AxiomReport> reports;
  std::vector<std::string> core_row{"in core"};
  for (const Allocation* x : cols) {
    reports.push_back(check_axioms(game, *x, cfg.tol));
    core_row.push_back(yes_no(in_core_full(game, *x, cfg.tol).member));
  }
  t.add(core_row);
  const char* names[] = {"EF", "SR", "RR", "PD"};
  for (int a = 0; a < 4; ++a) {
    std::vector<std::string> row{names[a]};
    for (const auto& r : reports) {
      const AxiomCheck& c = a == 0 ? r.ef : a == 1 ? r.sr : a == 2 ? r.rr : r.pd;
      row.push_back(c.pass ? "pass" : "fail");
    }
    t.add(row);
  }
  std::ostringstream text;
  text << t.render();
  text << "beta = " << fixed(m.beta, k) << ", attained by " << coalition_list(m.argmin) << "\n";
  if (!sh) text << "shapley value skipped: more than " << kMaxShapleyPlayers << " players\n";
  return {ExitCode::ok, text.str()};
}

CommandResult cmd_verify(const RunConfig& cfg, const std::string& input) {
  PropertySuite suite;
  SweepOptions opt;
  opt.seed = cfg.seed;
  opt.instances = cfg.instances;
  opt.max_n = cfg.max_n;
  opt.tol = cfg.tol;

  if (!input.empty()) {
    const json doc = io::parse(input);
    if (doc.is_object() && doc.contains("values")) {
      const RSGame game = io::game_from_json(doc);
      const StructureReport r = check_structure(game, cfg.tol);
      auto& t = suite["input_game_structure"];
      if (r.failures.empty()) t.record(r.ok(), 0.0, "input game");
      for (const auto& f : r.failures) t.record(false, f.residual, "input game: " + f.message);
    } else {
      const Document d = load_document(input);
      const RSGame game = build_game(d.situation);
      std::mt19937_64 rng(cfg.seed);
      check_instance(d.situation, game, opt, rng, "input", suite);
    }
  }
  check_references(suite, cfg.tol);
  check_independence(suite, cfg.tol);
  random_sweep(opt, suite);

  const ExitCode code = suite.pass() ? ExitCode::ok : ExitCode::property_failure;
  if (cfg.format == Format::json) {
    json props = json::array();
    for (const auto& t : suite.tallies())
      props.push_back({{"name", t.name},
                       {"checked", t.checked},
                       {"failed", t.failed},
                       {"worst_residual", std::isfinite(t.worst) ? json(tidy(t.worst)) : json(nullptr)},
                       {"first_failure", t.first_failure.empty() ? json(nullptr) : json(t.first_failure)},
                       {"pass", t.pass()}});
    json j = {{"seed", cfg.seed},
              {"instances", cfg.instances},
              {"max_n", cfg.max_n},
              {"properties", props},
              {"pass", suite.pass()}};
    return {code, dump(j)};
  }
  Table t({"property", "checked", "failed", "worst residual", "status"});
  for (const auto& p : suite.tallies())
    t.add({p.name, std::to_string(p.checked), std::to_string(p.failed), fixed(p.worst, cfg.precision),
           p.pass() ? "pass" : "FAIL"});
  std::ostringstream text;
  text << t.render();
  for (const auto& p : suite.tallies())
    if (!p.pass()) text << p.name << ": " << p.first_failure << "\n";
  text << (suite.pass() ? "all properties hold" : std::to_string(suite.failures()) + " failed checks") << "\n";
  return {code, text.str()};
}

}  // namespace rschain::cli
