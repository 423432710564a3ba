#pragma once

#include <cmath>
#include <vector>

namespace rschain::detail {

/// c0 + c1*q + c2*q^2.
struct Quadratic {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double value(double q) const { return c0 + (c1 + c2 * q) * q; }
  double derivative(double q) const { return c1 + 2.0 * c2 * q; }
};

/// Real roots of a*x^2 + b*x + c = 0 in increasing order. Degenerate
/// equations (a = b = 0) have no isolated roots and return empty.
inline std::vector<double> real_roots(double a, double b, double c) {
  std::vector<double> roots;
  if (a == 0.0) {
    if (b != 0.0) roots.push_back(-c / b);
    return roots;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    // Tangent within rounding.
    if (disc > -1e-12 * b * b) roots.push_back(-b / (2.0 * a));
    return roots;
  }
  const double sq = std::sqrt(disc);
  const double t = -0.5 * (b + std::copysign(sq, b));
  double r1 = t / a;
  double r2 = t != 0.0 ? c / t : r1;
  if (r1 > r2) std::swap(r1, r2);
  roots.push_back(r1);
  if (r2 != r1) roots.push_back(r2);
  return roots;
}

}  // namespace rschain::detail
