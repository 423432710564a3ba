#include "rschain/solutions.hpp"

#include <algorithm>
#include <cmath>

#include "rschain/errors.hpp"

namespace rschain {

double gain_per_capita(const RSGame& game, Coalition s) {
  if (s.empty() || s.has_supplier()) throw ArgumentError("gain per capita needs a nonempty retailer coalition");
  return (game.v(s.with(0)) - game.v(s)) / s.size();
}

MgpcResult mgpc(const RSGame& game, double tol) {
  if (game.n() < 1) throw ArgumentError("mgpc needs at least one retailer");
  const auto sets = nonempty_subsets(game.retailers());
  MgpcResult r;
  r.beta = kInf;
  for (Coalition s : sets) r.beta = std::min(r.beta, gain_per_capita(game, s));
  for (Coalition s : sets)
    if (gain_per_capita(game, s) <= r.beta + scaled(tol, r.beta)) r.argmin.push_back(s);
  std::sort(r.argmin.begin(), r.argmin.end(), display_less);

  r.allocation.label = AllocationLabel::mgpc;
  r.allocation.payoffs.push_back(game.n() * r.beta);
  for (int i = 1; i <= game.n(); ++i) r.allocation.payoffs.push_back(game.v(Coalition::of({0, i})) - r.beta);
  return r;
}

Allocation shapley(const RSGame& game) {
  const int players = game.players();
  if (players > kMaxShapleyPlayers)
    throw ArgumentError("Shapley value is limited to " + std::to_string(kMaxShapleyPlayers) + " players");

  // weight[s] = s! (N - s - 1)! / N!
  std::vector<double> weight(static_cast<std::size_t>(players), 0.0);
  for (int s = 0; s < players; ++s) {
    double w = 1.0 / players;
    // 1 / (N * C(N-1, s))
    for (int k = 1; k <= s; ++k) w *= static_cast<double>(k) / (players - k);
    weight[static_cast<std::size_t>(s)] = w;
  }

  Allocation x;
  x.label = AllocationLabel::shapley;
  x.payoffs.assign(static_cast<std::size_t>(players), 0.0);
  const auto masks = game.values().size();
  for (int i = 0; i < players; ++i) {
    const Coalition::Bits bit = Coalition::Bits{1} << i;
    double sum = 0.0;
    for (Coalition::Bits s = 0; s < masks; ++s) {
      if (s & bit) continue;
      const Coalition without{s};
      sum += weight[static_cast<std::size_t>(without.size())] * (game.v(without.with(i)) - game.v(without));
    }
    x.payoffs[static_cast<std::size_t>(i)] = sum;
  }
  return x;
}

AxiomReport check_axioms(const RSGame& game, const Allocation& x, double tol) {
  if (x.payoffs.size() != static_cast<std::size_t>(game.players()))
    throw ArgumentError("allocation length does not match the game");
  AxiomReport r;
  const double total = game.v(game.grand());

  r.ef.residual = x.total() - total;
  r.ef.pass = std::abs(r.ef.residual) <= scaled(tol, total);

  auto sets = nonempty_subsets(game.retailers());
  std::sort(sets.begin(), sets.end(), display_less);
  r.sr.residual = kInf;
  for (Coalition s : sets) {
    double sum = 0.0;
    for (int i : s.players()) sum += x.payoffs[static_cast<std::size_t>(i)];
    const double slack = sum - game.v(s);
    r.sr.residual = std::min(r.sr.residual, slack);
    if (!r.sr_violation && slack < -scaled(tol, game.v(s))) r.sr_violation = s;
  }
  r.sr.pass = !r.sr_violation.has_value();

  // Retailer reduction: the reduction must equal some coalition's gain per capita.
  std::vector<double> gains;
  for (Coalition s : sets) gains.push_back(gain_per_capita(game, s));
  r.rr.pass = true;
  r.rr.residual = 0.0;
  for (int i = 1; i <= game.n(); ++i) {
    const double reduction = game.v(Coalition::of({0, i})) - x.payoffs[static_cast<std::size_t>(i)];
    r.reductions.push_back(reduction);
    double nearest = kInf;
    std::optional<Coalition> witness;
    for (std::size_t k = 0; k < sets.size(); ++k) {
      const double d = std::abs(reduction - gains[k]);
      if (d < nearest) nearest = d;
      if (!witness && d <= scaled(tol, gains[k])) witness = sets[k];
    }
    r.rr_witness.push_back(witness);
    r.rr.residual = std::max(r.rr.residual, nearest);
    if (!witness) r.rr.pass = false;
  }

  r.pd.residual = 0.0;
  r.pd.pass = true;
  for (int i = 1; i <= game.n(); ++i) {
    for (int j = i + 1; j <= game.n(); ++j) {
      const double lhs = x.payoffs[static_cast<std::size_t>(i)] - x.payoffs[static_cast<std::size_t>(j)];
      const double vi = game.v(Coalition::of({0, i}));
      const double vj = game.v(Coalition::of({0, j}));
      const double d = std::abs(lhs - (vi - vj));
      r.pd.residual = std::max(r.pd.residual, d);
      if (d > scaled(tol, std::max(std::abs(vi), std::abs(vj)))) r.pd.pass = false;
    }
  }
  return r;
}

std::string to_string(Counterexample kind) {
  switch (kind) {
    case Counterexample::no_ef:
      return "no_ef";
    case Counterexample::no_sr:
      return "no_sr";
    case Counterexample::no_rr:
      return "no_rr";
    case Counterexample::no_pd:
      return "no_pd";
  }
  return "unknown";
}

std::vector<double> per_retailer_beta(const RSGame& game) {
  std::vector<double> beta(static_cast<std::size_t>(game.n()), kInf);
  for (Coalition s : nonempty_subsets(game.retailers())) {
    const double g = gain_per_capita(game, s);
    for (int i : s.players()) beta[static_cast<std::size_t>(i - 1)] = std::min(beta[static_cast<std::size_t>(i - 1)], g);
  }
  return beta;
}

Allocation counterexample_solution(Counterexample kind, const RSGame& game) {
  if (game.n() < 1) throw ArgumentError("counterexamples need at least one retailer");
  const int n = game.n();
  Allocation x;
  x.label = AllocationLabel::user;
  x.payoffs.assign(static_cast<std::size_t>(n + 1), 0.0);
  auto uniform = [&](double supplier, double reduction) {
    x.payoffs[0] = supplier;
    for (int i = 1; i <= n; ++i) x.payoffs[static_cast<std::size_t>(i)] = game.v(Coalition::of({0, i})) - reduction;
  };
  const double beta = mgpc(game).beta;
  switch (kind) {
    case Counterexample::no_ef:
      uniform(0.0, beta);
      break;
    case Counterexample::no_sr: {
      double beta_max = -kInf;
      for (Coalition s : nonempty_subsets(game.retailers())) beta_max = std::max(beta_max, gain_per_capita(game, s));
      uniform(n * beta_max, beta_max);
      break;
    }
    case Counterexample::no_rr:
      uniform(n * (beta - 1.0), beta - 1.0);
      break;
    case Counterexample::no_pd: {
      const auto b = per_retailer_beta(game);
      double sum = 0.0;
      for (int i = 1; i <= n; ++i) {
        sum += b[static_cast<std::size_t>(i - 1)];
        x.payoffs[static_cast<std::size_t>(i)] = game.v(Coalition::of({0, i})) - b[static_cast<std::size_t>(i - 1)];
      }
      x.payoffs[0] = sum;
      break;
    }
  }
  return x;
}

}  // namespace rschain
