#pragma once

// Compares solve_coalition against the brute-force oracle on every
// coalition of a situation, with and without the supplier.

#include <cmath>
#include <string>
#include <vector>

#include "brute_force.hpp"
#include "rschain/rs_model.hpp"

namespace oracle {

struct Mismatch {
  std::string where;
  double solver = 0.0;
  double brute = 0.0;
};

inline double rel_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

/// Returns the largest relative gap; mismatches above `rel` are appended.
inline double compare_all(const rschain::RSSituation& sit, const std::string& label, double rel,
                          std::vector<Mismatch>& out) {
  double worst = 0.0;
  for (rschain::Coalition s : rschain::nonempty_subsets(rschain::Coalition::retailers(sit.n()))) {
    for (bool sup : {false, true}) {
      const double solver = sup ? rschain::solve_with_supplier(sit, s).value : rschain::solve_coalition(sit, s).value;
      const double brute = coalition_value(sit, s, sup).value;
      const double gap = rel_gap(solver, brute);
      worst = std::max(worst, gap);
      if (gap > rel) out.push_back({label + " " + (sup ? s.with(0) : s).to_string(), solver, brute});
    }
  }
  return worst;
}

}  // namespace oracle
