#include "rschain/core_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rschain/errors.hpp"

namespace rschain {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

void require_length(const RSGame& game, const Allocation& x) {
  if (x.payoffs.size() != static_cast<std::size_t>(game.players()))
    throw ArgumentError("allocation has " + std::to_string(x.payoffs.size()) + " payoffs, game has " +
                        std::to_string(game.players()) + " players");
}

double sum_over(const Allocation& x, Coalition s) {
  double total = 0.0;
  for (int i : s.players()) total += x.payoffs[static_cast<std::size_t>(i)];
  return total;
}

std::optional<CoreVerdict> check_efficiency(const RSGame& game, const Allocation& x, double tol) {
  const double target = game.v(game.grand());
  const double residual = x.total() - target;
  if (std::abs(residual) <= scaled(tol, target)) return std::nullopt;
  CoreVerdict v;
  v.member = false;
  v.failure = CoreVerdict::Failure::efficiency;
  v.coalition = game.grand();
  v.residual = residual;
  v.witness = "efficiency: sum of payoffs " + fmt(x.total()) + " != v(N0) = " + fmt(target);
  return v;
}

std::optional<CoreVerdict> check_coalition(const RSGame& game, const Allocation& x, Coalition s, double tol) {
  const double need = game.v(s);
  const double slack = sum_over(x, s) - need;
  if (slack >= -scaled(tol, need)) return std::nullopt;
  CoreVerdict v;
  v.member = false;
  v.failure = CoreVerdict::Failure::coalition;
  v.coalition = s;
  v.residual = slack;
  v.witness = "coalition " + s.to_string() + ": x(S) = " + fmt(sum_over(x, s)) + " < v(S) = " + fmt(need);
  return v;
}

}  // namespace

std::string to_string(AllocationLabel label) {
  switch (label) {
    case AllocationLabel::altruistic:
      return "altruistic";
    case AllocationLabel::mgpc:
      return "mgpc";
    case AllocationLabel::shapley:
      return "shapley";
    case AllocationLabel::user:
      return "user";
  }
  return "user";
}

AllocationLabel parse_label(const std::string& text) {
  if (text == "altruistic") return AllocationLabel::altruistic;
  if (text == "mgpc") return AllocationLabel::mgpc;
  if (text == "shapley") return AllocationLabel::shapley;
  if (text == "user") return AllocationLabel::user;
  throw ParseError("unknown allocation label '" + text + "'");
}

double Allocation::total() const { return std::accumulate(payoffs.begin(), payoffs.end(), 0.0); }

CoreVerdict in_core_reduced(const RSGame& game, const Allocation& x, double tol) {
  require_length(game, x);
  if (auto v = check_efficiency(game, x, tol)) return *v;
  for (int i = 1; i <= game.n(); ++i) {
    const Coalition pair = Coalition::of({0, i});
    const double cap = game.v(pair);
    const double slack = cap - x.payoffs[static_cast<std::size_t>(i)];
    if (slack < -scaled(tol, cap)) {
      CoreVerdict v;
      v.member = false;
      v.failure = CoreVerdict::Failure::upper_bound;
      v.coalition = pair;
      v.residual = slack;
      v.witness = "retailer " + std::to_string(i) + ": x_i = " + fmt(x.payoffs[i]) + " > v({0," +
                  std::to_string(i) + "}) = " + fmt(cap);
      return v;
    }
  }
  auto sets = nonempty_subsets(game.retailers());
  std::sort(sets.begin(), sets.end(), display_less);
  for (Coalition s : sets)
    if (auto v = check_coalition(game, x, s, tol)) return *v;
  return {};
}

CoreVerdict in_core_full(const RSGame& game, const Allocation& x, double tol) {
  require_length(game, x);
  if (auto v = check_efficiency(game, x, tol)) return *v;
  for (Coalition s : display_order(game)) {
    if (s == game.grand()) continue;
    if (auto v = check_coalition(game, x, s, tol)) return *v;
  }
  return {};
}

Allocation altruistic(const RSGame& game) {
  Allocation x;
  x.label = AllocationLabel::altruistic;
  x.payoffs.push_back(0.0);
  for (int i = 1; i <= game.n(); ++i) x.payoffs.push_back(game.v(Coalition::of({0, i})));
  return x;
}

CoreDescription describe_core(const RSGame& game) {
  CoreDescription d;
  for (int i = 1; i <= game.n(); ++i)
    d.intervals.push_back({i, game.v(Coalition::of({i})), game.v(Coalition::of({0, i}))});
  auto sets = nonempty_subsets(game.retailers());
  std::sort(sets.begin(), sets.end(), display_less);
  for (Coalition s : sets)
    if (s.size() >= 2) d.coalition_bounds.push_back({s, game.v(s)});
  d.total = game.v(game.grand());
  return d;
}

SupplierOptimum supplier_optimum(const RSSituation& sit) {
  SupplierOptimum out;
  for (int i = 1; i <= sit.n(); ++i) {
    const double q = solve_with_supplier(sit, Coalition::of({i})).quantities.front();
    out.quantities.push_back(q);
    out.prices.push_back(sit.price(i).eval(q));
  }
  return out;
}

std::vector<PriceConstraint> price_constraints(const RSSituation& sit, const RSGame& game) {
  if (sit.n() != game.n()) throw ArgumentError("situation and game disagree on the number of retailers");
  const auto opt = supplier_optimum(sit);
  auto sets = nonempty_subsets(game.retailers());
  std::sort(sets.begin(), sets.end(), display_less);
  std::vector<PriceConstraint> out;
  for (Coalition s : sets) {
    PriceConstraint c;
    c.s = s;
    double revenue = 0.0;
    for (int i : s.players()) {
      const double q = opt.quantities[static_cast<std::size_t>(i - 1)];
      c.weights.push_back(q);
      revenue += opt.prices[static_cast<std::size_t>(i - 1)] * q;
    }
    c.rhs = revenue - game.v(s);
    out.push_back(std::move(c));
  }
  return out;
}

PriceVector prices_from_allocation(const RSSituation& sit, const RSGame& game, const Allocation& x, double tol) {
  require_length(game, x);
  if (sit.n() != game.n()) throw ArgumentError("situation and game disagree on the number of retailers");
  const CoreVerdict verdict = in_core_reduced(game, x, tol);
  if (!verdict.member) throw RejectedCandidate("allocation is not in the core: " + verdict.witness);

  const auto opt = supplier_optimum(sit);
  PriceVector w;
  double supplier = 0.0;
  for (int i = 1; i <= sit.n(); ++i) {
    const double q = opt.quantities[static_cast<std::size_t>(i - 1)];
    if (!(q > 0.0))
      throw RejectedCandidate("retailer " + std::to_string(i) + " orders nothing with the supplier (q_i^c = 0)");
    const double price = opt.prices[static_cast<std::size_t>(i - 1)] - x.payoffs[static_cast<std::size_t>(i)] / q;
    w.prices.push_back(price);
    supplier += (price - sit.c) * q;
  }
  if (std::abs(supplier - x.payoffs[0]) > scaled(tol, x.payoffs[0]))
    throw RejectedCandidate("supplier payoff " + fmt(x.payoffs[0]) + " differs from the implied margin " +
                            fmt(supplier));
  for (const auto& c : price_constraints(sit, game)) {
    double lhs = 0.0;
    const auto ids = c.s.players();
    for (std::size_t k = 0; k < ids.size(); ++k) lhs += c.weights[k] * w.prices[static_cast<std::size_t>(ids[k] - 1)];
    if (lhs > c.rhs + scaled(tol, c.rhs))
      throw RejectedCandidate("implied prices break the bound of coalition " + c.s.to_string());
  }
  return w;
}

Allocation allocation_from_prices(const RSSituation& sit, const RSGame& game, const PriceVector& w, double tol) {
  if (sit.n() != game.n()) throw ArgumentError("situation and game disagree on the number of retailers");
  if (w.prices.size() != static_cast<std::size_t>(sit.n()))
    throw ArgumentError("price vector has " + std::to_string(w.prices.size()) + " entries, expected " +
                        std::to_string(sit.n()));
  for (int i = 1; i <= sit.n(); ++i) {
    const double wi = w.prices[static_cast<std::size_t>(i - 1)];
    if (wi < sit.c - scaled(tol, sit.c))
      throw RejectedCandidate("w_" + std::to_string(i) + "* = " + fmt(wi) + " is below the production cost " +
                              fmt(sit.c));
  }
  for (const auto& c : price_constraints(sit, game)) {
    double lhs = 0.0;
    const auto ids = c.s.players();
    for (std::size_t k = 0; k < ids.size(); ++k) lhs += c.weights[k] * w.prices[static_cast<std::size_t>(ids[k] - 1)];
    if (lhs > c.rhs + scaled(tol, c.rhs))
      throw RejectedCandidate("prices violate the bound of coalition " + c.s.to_string() + ": " + fmt(lhs) +
                              " > " + fmt(c.rhs));
  }

  const auto opt = supplier_optimum(sit);
  Allocation x;
  x.label = AllocationLabel::user;
  x.payoffs.assign(static_cast<std::size_t>(sit.n() + 1), 0.0);
  for (int i = 1; i <= sit.n(); ++i) {
    const double q = opt.quantities[static_cast<std::size_t>(i - 1)];
    const double wi = w.prices[static_cast<std::size_t>(i - 1)];
    x.payoffs[static_cast<std::size_t>(i)] = (opt.prices[static_cast<std::size_t>(i - 1)] - wi) * q;
    x.payoffs[0] += (wi - sit.c) * q;
  }
  const CoreVerdict verdict = in_core_full(game, x, tol);
  if (!verdict.member) throw RejectedCandidate("induced allocation is not in the core: " + verdict.witness);
  return x;
}

}  // namespace rschain
