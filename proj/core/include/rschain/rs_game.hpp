#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rschain/coalition.hpp"
#include "rschain/rs_model.hpp"
#include "rschain/tolerance.hpp"

namespace rschain {

/// Largest number of retailers for exhaustive coalition enumeration.
inline constexpr int kMaxRetailers = 12;

/// TU game over players {0..n} (0 = supplier) with values for all 2^(n+1)
/// coalitions, indexed by bitmask. Games built from a situation also keep
/// the coalition solution behind every value.
class RSGame {
 public:
  RSGame() = default;
  /// `values[mask]` for every mask in [0, 2^(n+1)); values[0] must be 0.
  RSGame(int n, std::vector<double> values);

  int n() const { return n_; }
  int players() const { return n_ + 1; }
  double v(Coalition s) const { return values_.at(s.bits()); }
  double operator()(Coalition s) const { return v(s); }
  const std::vector<double>& values() const { return values_; }

  Coalition grand() const { return Coalition::grand(n_); }
  Coalition retailers() const { return Coalition::retailers(n_); }

  /// Solution behind v(S), if the game was built from a situation.
  const CoalitionSolution* provenance(Coalition s) const;
  void set_provenance(Coalition s, CoalitionSolution sol);

 private:
  int n_ = 0;
  std::vector<double> values_{0.0, 0.0};
  std::vector<std::optional<CoalitionSolution>> provenance_;
};

/// v(S) by a coalition solve for every nonempty retailer coalition and
/// v(S0) as the sum of the per-retailer supplier optima.
RSGame build_game(const RSSituation& sit, const SearchOptions& options = {});

struct StructureFinding {
  std::string property;  ///< "positivity", "superadditivity", "monotonicity", "decomposition", "normalization"
  Coalition s;
  Coalition t;
  double residual = 0.0;
  std::string message;
};

struct StructureReport {
  bool positivity = true;
  bool superadditivity = true;
  bool monotonicity = true;
  bool decomposition = true;
  bool normalization = true;
  /// Smallest v(T) - v(S) over S strictly inside T.
  double monotonicity_margin = kInf;
  std::vector<StructureFinding> failures;

  bool ok() const { return positivity && superadditivity && monotonicity && decomposition && normalization; }
};

/// Positivity, superadditivity, strict monotonicity and the supplier
/// decomposition v(S0) = sum v({0,i}) (plus v(empty) = v({0}) = 0).
StructureReport check_structure(const RSGame& game, double tol = kCompareTol);

/// Restriction to `players`, re-indexed in increasing id order. When the
/// supplier is among them it stays player 0.
RSGame subgame(const RSGame& game, Coalition players);

/// Convexity diagnostic: v(S+i) - v(S) <= v(T+i) - v(T) for S inside T.
bool is_convex(const RSGame& game, double tol = kCompareTol);

/// Coalitions in report order: by size, then lexicographic ids.
std::vector<Coalition> display_order(const RSGame& game);

}  // namespace rschain
