#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rschain/coalition.hpp"
#include "rschain/piecewise.hpp"

namespace rschain {

/// One retailer facing production cost c, wholesale schedule w and
/// expected consumer price p.
struct RSProblem {
  double c = 0.0;
  PiecewiseCurve w;
  PiecewiseCurve p;
};

/// A supplier (player 0) and n retailers (players 1..n) sharing c and w.
struct RSSituation {
  double c = 0.0;
  PiecewiseCurve w;
  std::vector<PiecewiseCurve> prices;

  int n() const { return static_cast<int>(prices.size()); }
  /// Price curve of retailer `id` (1-based).
  const PiecewiseCurve& price(int id) const { return prices.at(static_cast<std::size_t>(id - 1)); }
  RSProblem problem(int id) const { return {c, w, price(id)}; }
};

/// Optimal orders of one coalition S (retailers only) or S0 (with supplier).
struct CoalitionSolution {
  Coalition members;  ///< retailer ids only; the supplier flag is separate
  bool with_supplier = false;
  std::vector<double> quantities;  ///< one per member, in increasing id order
  double total = 0.0;
  double unit_price = 0.0;  ///< w(total) without supplier, c with supplier
  double value = 0.0;
  /// Every optimal order vector found (the reported one included), ordered
  /// by total quantity.
  std::vector<std::vector<double>> alternates;
};

/// Tuning of the coalition search. Defaults reach a relative accuracy far
/// below 1e-6 on smooth optima.
struct SearchOptions {
  int outer_points = 2048;
  int refine_passes = 3;
  double shrink = 32.0;
  int inner_points = 512;
  /// Basins of the coarse outer grid refined independently.
  int basins = 4;
  /// Above this many per-retailer piece combinations the inner allocation
  /// falls back to the grid dynamic program.
  std::size_t max_piece_combinations = 4096;
};

/// (p(q) - unit_price) * q.
double retailer_profit(const PiecewiseCurve& p, double q, double unit_price);

/// (unit_price - c) * q.
double supplier_profit(double q, double unit_price, double c);

/// Standing-assumption violations of a problem, empty when valid.
std::vector<std::string> validate(const RSProblem& prob);
std::vector<std::string> validate(const RSSituation& sit);

/// Throws ModelAssumptionError listing every violation.
void require_valid(const RSProblem& prob);
void require_valid(const RSSituation& sit);

/// Global maximum of (p(q) - w(q)) q over the feasible order sizes.
/// `members` of the result is {1}.
CoalitionSolution solve_retailer(const RSProblem& prob);

/// Optimal joint order of a coalition of retailers buying at w(q_S).
CoalitionSolution solve_coalition(const RSSituation& sit, Coalition members,
                                  const SearchOptions& options = {});

/// Optimal orders of S0: every member maximizes (p_i(q) - c) q on its own.
CoalitionSolution solve_with_supplier(const RSSituation& sit, Coalition members);

/// Per-member findings of the cooperation profit identities (P1-P3).
struct ProfitCheck {
  int retailer = 0;
  double p1_residual = 0.0;  ///< |Pi_ret(q^S; c) - Pi_ret(q^S; w) - Pi_sup(q^S; w)|
  double p2_margin = 0.0;    ///< Pi_ret(q^c; c) - Pi_ret(q^S; c), should be >= 0
  double p3_retailer_margin = 0.0;  ///< Pi_ret(q^c; c) - Pi_ret(q^S; w(q_S))
  double p3_supplier_margin = 0.0;  ///< Pi_ret(q^c; c) - Pi_sup(q^S; w(q_S))
  bool p1 = false;
  bool p2 = false;
  bool p3 = false;
};

struct ProfitReport {
  Coalition members;
  std::vector<ProfitCheck> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.p1 || !c.p2 || !c.p3) return false;
    return true;
  }
};

ProfitReport check_p1_p2_p3(const RSSituation& sit, Coalition members,
                            const SearchOptions& options = {});
/// Same checks against an already solved coalition.
ProfitReport check_p1_p2_p3(const RSSituation& sit, const CoalitionSolution& joint);

/// Restriction of a situation to the retailers of `members`, renumbered
/// 1..s in increasing id order.
RSSituation restrict_situation(const RSSituation& sit, Coalition members);

/// Ranges for random_situation.
struct GeneratorRanges {
  double c_lo = 1.0, c_hi = 4.0;
  double a_lo = 15.0, a_hi = 60.0;         ///< price intercepts
  double b_lo = 0.2, b_hi = 1.5;           ///< price slopes (magnitude)
  double knee_lo = 2.0, knee_hi = 20.0;    ///< end of the flat wholesale price
  double d_lo = 5.0, d_hi = 120.0;         ///< discount numerator of c + d/q
  int max_attempts = 1000;
};

/// Seeded instance with affine prices a_i - b_i q and a wholesale price that
/// is flat up to a knee and c + d/q beyond it. Deterministic per seed.
RSSituation random_situation(int n, std::uint64_t seed, const GeneratorRanges& ranges = {});

namespace detail {
/// Outer search over the total order with inner allocation, without the
/// single-retailer shortcut of solve_coalition.
CoalitionSolution search_coalition(const RSSituation& sit, Coalition members, const SearchOptions& options);
}  // namespace detail

}  // namespace rschain
