#pragma once

#include <algorithm>
#include <cmath>

namespace rschain {

/// Breakpoint continuity and root-finding accuracy.
inline constexpr double kContinuityTol = 1e-9;

/// Default tolerance for comparing optimized quantities (core membership,
/// axiom checks, structural invariants of a game).
inline constexpr double kCompareTol = 1e-7;

/// Absolute tolerance scaled up for magnitudes above one.
inline double scaled(double tol, double magnitude) {
  return tol * std::max(1.0, std::abs(magnitude));
}

inline bool near(double a, double b, double tol) {
  return std::abs(a - b) <= scaled(tol, std::max(std::abs(a), std::abs(b)));
}

}  // namespace rschain
