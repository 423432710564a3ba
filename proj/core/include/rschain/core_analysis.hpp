#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rschain/coalition.hpp"
#include "rschain/rs_game.hpp"
#include "rschain/rs_model.hpp"
#include "rschain/tolerance.hpp"

namespace rschain {

enum class AllocationLabel { altruistic, mgpc, shapley, user };

std::string to_string(AllocationLabel label);
/// Throws ParseError for unknown labels.
AllocationLabel parse_label(const std::string& text);

/// Payoff vector over {0..n}; the supplier's payoff comes first.
struct Allocation {
  std::vector<double> payoffs;
  AllocationLabel label = AllocationLabel::user;

  double total() const;
};

/// Per-retailer wholesale prices w_i*, in retailer order.
struct PriceVector {
  std::vector<double> prices;
};

struct CoreVerdict {
  enum class Failure { none, efficiency, upper_bound, coalition };

  bool member = true;
  Failure failure = Failure::none;
  Coalition coalition;   ///< violated coalition (or {0,i} for upper bounds)
  double residual = 0.0;  ///< raw slack of the violated condition
  std::string witness;

  explicit operator bool() const { return member; }
};

/// Core membership via efficiency, x_i <= v({0,i}) and the retailer
/// coalition constraints only. Valid for games built from a situation.
CoreVerdict in_core_reduced(const RSGame& game, const Allocation& x, double tol = kCompareTol);

/// Core membership over every proper coalition (any TU game).
CoreVerdict in_core_full(const RSGame& game, const Allocation& x, double tol = kCompareTol);

/// (0, v({0,1}), ..., v({0,n})).
Allocation altruistic(const RSGame& game);

/// Reduced description of the core, for reports.
struct CoreDescription {
  struct Interval {
    int retailer;
    double lo;  ///< v({i})
    double hi;  ///< v({0,i})
  };
  struct Bound {
    Coalition s;
    double lo;  ///< sum over S of x_i >= v(S)
  };
  std::vector<Interval> intervals;
  std::vector<Bound> coalition_bounds;  ///< |S| >= 2
  double total = 0.0;                   ///< v(N0)
};

CoreDescription describe_core(const RSGame& game);

/// q_i^c and p_i(q_i^c) per retailer, the data of the price formulation.
struct SupplierOptimum {
  std::vector<double> quantities;
  std::vector<double> prices;
};
SupplierOptimum supplier_optimum(const RSSituation& sit);

/// Linear bound sum_{i in S} weights_i w_i* <= rhs for one retailer
/// coalition, with weights q_i^c.
struct PriceConstraint {
  Coalition s;
  std::vector<double> weights;  ///< aligned with s.players()
  double rhs = 0.0;
};

/// One constraint per nonempty retailer coalition, in display order.
std::vector<PriceConstraint> price_constraints(const RSSituation& sit, const RSGame& game);

/// Wholesale prices that reproduce the core allocation x:
/// w_i* = p_i(q_i^c) - x_i / q_i^c. Throws RejectedCandidate if x is not in
/// the core or the price formulation fails its own consistency checks.
PriceVector prices_from_allocation(const RSSituation& sit, const RSGame& game, const Allocation& x,
                                   double tol = kCompareTol);

/// Core allocation induced by wholesale prices:
/// x_i = (p_i(q_i^c) - w_i*) q_i^c, x_0 = sum (w_i* - c) q_i^c.
/// Throws RejectedCandidate naming the violated bound.
Allocation allocation_from_prices(const RSSituation& sit, const RSGame& game, const PriceVector& w,
                                  double tol = kCompareTol);

}  // namespace rschain
