#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rschain/coalition.hpp"
#include "rschain/core_analysis.hpp"
#include "rschain/rs_game.hpp"
#include "rschain/tolerance.hpp"

namespace rschain {

/// Shapley value is exact over all subsets; refused above this many players.
inline constexpr int kMaxShapleyPlayers = 12;

struct MgpcResult {
  double beta = 0.0;  ///< min over nonempty S of (v(S0) - v(S)) / |S|
  std::vector<Coalition> argmin;
  Allocation allocation;
};

/// Minimal-gain-per-capita solution: every retailer i gets v({0,i}) - beta,
/// the supplier n * beta.
MgpcResult mgpc(const RSGame& game, double tol = kCompareTol);

/// Gain per capita (v(S0) - v(S)) / |S| of a retailer coalition.
double gain_per_capita(const RSGame& game, Coalition s);

/// Exact Shapley value via the subset-weighted marginal contributions.
Allocation shapley(const RSGame& game);

struct AxiomCheck {
  bool pass = false;
  double residual = 0.0;
};

struct AxiomReport {
  AxiomCheck ef;  ///< residual: sum x - v(N0)
  AxiomCheck sr;  ///< residual: smallest x(S) - v(S)
  AxiomCheck rr;  ///< residual: largest distance to the nearest gain per capita
  AxiomCheck pd;  ///< residual: largest difference mismatch
  std::optional<Coalition> sr_violation;
  /// Per retailer (index i-1): a coalition S^i realizing the reduction.
  std::vector<std::optional<Coalition>> rr_witness;
  /// Per retailer: reduction v({0,i}) - x_i.
  std::vector<double> reductions;

  bool all() const { return ef.pass && sr.pass && rr.pass && pd.pass; }
};

/// Efficiency, stability for retailers, retailer reduction and preservation
/// of differences, with residuals.
AxiomReport check_axioms(const RSGame& game, const Allocation& x, double tol = kCompareTol);

enum class Counterexample { no_ef, no_sr, no_rr, no_pd };

std::string to_string(Counterexample kind);

/// Allocation rules that drop exactly one axiom:
///   no_ef: supplier 0, retailers v({0,i}) - beta
///   no_sr: beta replaced by the maximal gain per capita
///   no_rr: beta replaced by beta - 1
///   no_pd: per-retailer beta_i = min over S containing i
Allocation counterexample_solution(Counterexample kind, const RSGame& game);

/// beta_i for every retailer (index i-1).
std::vector<double> per_retailer_beta(const RSGame& game);

}  // namespace rschain
