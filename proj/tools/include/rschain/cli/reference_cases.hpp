#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rschain/rs_model.hpp"

namespace rschain::cli {

/// A hand-checked input together with its known results. Single-retailer
/// cases fill the optimum fields, multi-retailer cases the game fields.
struct ReferenceCase {
  std::string name;
  std::string summary;
  std::string input;  ///< situation or single-problem JSON

  // single retailer
  std::vector<double> maximizers;
  std::vector<double> supplier_profits;  ///< aligned with maximizers
  double value = 0.0;
  double crossing = 0.0;

  // games, values in display order
  std::vector<double> values;
  double beta = 0.0;
  std::vector<double> mgpc;
  std::vector<double> altruistic;
  std::vector<double> shapley;
  bool shapley_in_core = false;
  /// Largest w_i* per retailer, and for the pair {1,2} (0 when unchecked).
  std::vector<double> price_caps;
  double pair_price_cap = 0.0;

  bool single() const { return values.empty(); }
  RSSituation situation() const;
};

const std::vector<ReferenceCase>& reference_cases();

/// Throws std::out_of_range for unknown names.
const ReferenceCase& reference_case(std::string_view name);

}  // namespace rschain::cli
