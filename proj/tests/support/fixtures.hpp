#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "rschain/cli/reference_cases.hpp"
#include "rschain/piecewise.hpp"
#include "rschain/rs_game.hpp"
#include "rschain/rs_model.hpp"

namespace fixtures {

inline rschain::RSSituation situation(const std::string& name) {
  return rschain::cli::reference_case(name).situation();
}

inline rschain::RSProblem problem(const std::string& name) { return situation(name).problem(1); }

inline const rschain::RSGame& game(const std::string& name) {
  static std::vector<std::pair<std::string, rschain::RSGame>> cache;
  for (const auto& [k, g] : cache)
    if (k == name) return g;
  cache.emplace_back(name, rschain::build_game(situation(name)));
  return cache.back().second;
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

// Game from values listed in display order of a two-retailer game:
// {0},{1},{2},{0,1},{0,2},{1,2},{0,1,2}.
inline rschain::RSGame pair_game(const std::vector<double>& v) {
  std::vector<double> values(8, 0.0);
  const unsigned masks[] = {0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111};
  for (std::size_t k = 0; k < 7; ++k) values[masks[k]] = v[k];
  return rschain::RSGame(2, values);
}

// Random continuous non-increasing curve with affine and a + g/q pieces.
inline rschain::PiecewiseCurve random_curve(std::mt19937_64& rng, double start = 50.0) {
  auto u = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  const int pieces = 1 + static_cast<int>(rng() % 4);
  std::vector<rschain::Segment> segs;
  double lo = 0.0;
  double value = start;
  for (int k = 0; k < pieces; ++k) {
    const bool last = k + 1 == pieces;
    const double hi = last ? rschain::kInf : lo + u(0.5, 10.0);
    rschain::Segment s;
    s.lo = lo;
    s.hi = hi;
    const int form = lo > 0.0 ? static_cast<int>(rng() % 3) : static_cast<int>(rng() % 2);
    if (form == 0) {  // constant
      s.alpha = value;
    } else if (form == 1) {  // affine, decreasing
      s.beta = -u(0.05, 2.0);
      s.alpha = value - s.beta * lo;
    } else {  // a + g/q, decreasing for g > 0
      s.gamma = u(0.5, 20.0);
      s.alpha = value - s.gamma / lo;
    }
    segs.push_back(s);
    if (!last) value = s.value(hi);
    lo = hi;
  }
  return rschain::PiecewiseCurve(segs);
}

}  // namespace fixtures
