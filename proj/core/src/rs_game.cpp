#include "rschain/rs_game.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "rschain/errors.hpp"

namespace rschain {

RSGame::RSGame(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  if (n < 0 || n > kMaxRetailers) throw ArgumentError("games support 0 <= n <= " + std::to_string(kMaxRetailers));
  if (values_.size() != (std::size_t{1} << (n + 1)))
    throw ArgumentError("a game with " + std::to_string(n + 1) + " players needs " +
                        std::to_string(std::size_t{1} << (n + 1)) + " coalition values");
  if (values_[0] != 0.0) throw ArgumentError("v(empty) must be 0");
}

const CoalitionSolution* RSGame::provenance(Coalition s) const {
  if (s.bits() >= provenance_.size() || !provenance_[s.bits()]) return nullptr;
  return &*provenance_[s.bits()];
}

void RSGame::set_provenance(Coalition s, CoalitionSolution sol) {
  if (provenance_.size() != values_.size()) provenance_.resize(values_.size());
  provenance_.at(s.bits()) = std::move(sol);
}

RSGame build_game(const RSSituation& sit, const SearchOptions& options) {
  require_valid(sit);
  const int n = sit.n();
  if (n > kMaxRetailers)
    throw ArgumentError("exhaustive enumeration is capped at " + std::to_string(kMaxRetailers) + " retailers");

  const auto retailer_sets = nonempty_subsets(Coalition::retailers(n));
  std::vector<CoalitionSolution> solved(retailer_sets.size());
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, retailer_sets.size());
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t k = w; k < retailer_sets.size(); k += workers)
        solved[k] = solve_coalition(sit, retailer_sets[k], options);
    }));
  }
  for (auto& j : jobs) j.get();

  // v(S0) is the sum of the individual supplier optima.
  std::vector<CoalitionSolution> with_supplier(n + 1);
  for (int i = 1; i <= n; ++i) with_supplier[i] = solve_with_supplier(sit, Coalition::of({i}));

  std::vector<double> v(std::size_t{1} << (n + 1), 0.0);
  for (auto& sol : solved) v[sol.members.bits()] = sol.value;
  for (Coalition s : retailer_sets) {
    CoalitionSolution joint;
    joint.members = s;
    joint.with_supplier = true;
    joint.unit_price = sit.c;
    for (int i : s.players()) {
      joint.quantities.push_back(with_supplier[i].quantities.front());
      joint.total += with_supplier[i].quantities.front();
      joint.value += with_supplier[i].value;
    }
    joint.alternates.push_back(joint.quantities);
    v[s.with(0).bits()] = joint.value;
    solved.push_back(std::move(joint));
  }
  RSGame game(n, std::move(v));
  for (auto& sol : solved) {
    const Coalition key = sol.with_supplier ? sol.members.with(0) : sol.members;
    game.set_provenance(key, std::move(sol));
  }
  return game;
}

StructureReport check_structure(const RSGame& game, double tol) {
  StructureReport r;
  const Coalition all = game.grand();
  const auto subsets = nonempty_subsets(all);
  auto fail = [&](bool& flag, const char* prop, Coalition s, Coalition t, double residual, std::string msg) {
    flag = false;
    r.failures.push_back({prop, s, t, residual, std::move(msg)});
  };

  if (game.v(Coalition{}) != 0.0)
    fail(r.normalization, "normalization", Coalition{}, Coalition{}, game.v(Coalition{}), "v(empty) != 0");
  if (std::abs(game.v(Coalition::supplier())) > tol)
    fail(r.normalization, "normalization", Coalition::supplier(), Coalition{}, game.v(Coalition::supplier()),
         "v({0}) != 0");

  // (i) positivity
  for (Coalition t : subsets) {
    if (t == Coalition::supplier()) continue;
    if (!(game.v(t) > 0.0))
      fail(r.positivity, "positivity", t, Coalition{}, game.v(t), "v(" + t.to_string() + ") is not positive");
  }

  // (ii) superadditivity over disjoint pairs
  for (Coalition s : subsets) {
    const Coalition rest{all.bits() & ~s.bits()};
    for (Coalition t : nonempty_subsets(rest)) {
      if (t.bits() < s.bits()) continue;
      const double joint = game.v(s | t);
      const double parts = game.v(s) + game.v(t);
      const double residual = joint - parts;
      if (residual < -scaled(tol, joint))
        fail(r.superadditivity, "superadditivity", s, t, residual,
             "v(" + (s | t).to_string() + ") < v(" + s.to_string() + ") + v(" + t.to_string() + ")");
    }
  }

  // (iii) strict monotonicity: checking S inside S+i suffices by transitivity
  for (Coalition t : subsets) {
    for (int i : t.players()) {
      const Coalition s = t.without(i);
      if (s.empty()) continue;
      const double margin = game.v(t) - game.v(s);
      r.monotonicity_margin = std::min(r.monotonicity_margin, margin);
      if (!(margin > 0.0))
        fail(r.monotonicity, "monotonicity", s, t, margin,
             "v(" + s.to_string() + ") >= v(" + t.to_string() + ")");
    }
  }

  // (iv) decomposition of coalitions with the supplier
  for (Coalition s : nonempty_subsets(game.retailers())) {
    double sum = 0.0;
    for (int i : s.players()) sum += game.v(Coalition::of({0, i}));
    const double joint = game.v(s.with(0));
    const double residual = joint - sum;
    if (std::abs(residual) > scaled(tol, joint))
      fail(r.decomposition, "decomposition", s.with(0), Coalition{}, residual,
           "v(" + s.with(0).to_string() + ") != sum of v({0,i})");
  }
  return r;
}

RSGame subgame(const RSGame& game, Coalition players) {
  if (!players.subset_of(game.grand())) throw ArgumentError("subgame players must belong to the game");
  if (players.empty()) throw ArgumentError("subgame needs at least one player");
  const auto ids = players.players();
  const int k = static_cast<int>(ids.size());
  std::vector<double> values(std::size_t{1} << k, 0.0);
  for (Coalition::Bits local = 1; local < values.size(); ++local) {
    Coalition global;
    for (int j = 0; j < k; ++j)
      if ((local >> j) & 1u) global = global.with(ids[j]);
    values[local] = game.v(global);
  }
  return RSGame(k - 1, std::move(values));
}

bool is_convex(const RSGame& game, double tol) {
  const Coalition all = game.grand();
  for (int i = 0; i < game.players(); ++i) {
    const Coalition others = all.without(i);
    std::vector<Coalition> sets = nonempty_subsets(others);
    sets.push_back(Coalition{});
    for (Coalition t : sets) {
      const double mt = game.v(t.with(i)) - game.v(t);
      for (int j : t.players()) {
        const Coalition s = t.without(j);
        const double ms = game.v(s.with(i)) - game.v(s);
        if (ms > mt + scaled(tol, mt)) return false;
      }
    }
  }
  return true;
}

std::vector<Coalition> display_order(const RSGame& game) {
  auto sets = nonempty_subsets(game.grand());
  std::sort(sets.begin(), sets.end(), display_less);
  return sets;
}

}  // namespace rschain
