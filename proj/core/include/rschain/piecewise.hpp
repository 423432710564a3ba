#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rschain {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// One piece of a curve: alpha + beta*q + gamma/q on [lo, hi].
struct Segment {
  double lo = 0.0;
  double hi = kInf;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  double value(double q) const { return alpha + beta * q + (gamma != 0.0 ? gamma / q : 0.0); }
  double slope(double q) const { return beta - (gamma != 0.0 ? gamma / (q * q) : 0.0); }

  bool operator==(const Segment&) const = default;
};

/// Decreasing continuous function of order quantity, stored as ordered
/// segments tiling [domain_lo, +inf). Below domain_lo the curve is extended
/// by its value at domain_lo.
///
/// Construction does not validate; call validate() on untrusted input.
class PiecewiseCurve {
 public:
  PiecewiseCurve() = default;
  explicit PiecewiseCurve(std::vector<Segment> segments, double domain_lo = 0.0)
      : segments_(std::move(segments)), domain_lo_(domain_lo) {}

  static PiecewiseCurve constant(double value);
  /// a + b*q on [0, inf).
  static PiecewiseCurve affine(double a, double b);

  double domain_lo() const { return domain_lo_; }
  std::span<const Segment> segments() const { return segments_; }

  /// Throws DomainError for q < 0.
  double eval(double q) const;

  /// Right-sided slope at q (zero on the constant extension).
  double slope(double q) const;

  /// Interior breakpoints, increasing.
  std::vector<double> breakpoints() const;

  /// Pieces covering exactly [a, b], including the constant extension below
  /// domain_lo as a gamma = beta = 0 piece.
  std::vector<Segment> pieces(double a, double b) const;

  /// Limit as q -> inf (may be -inf).
  double tail_limit() const;

  bool operator==(const PiecewiseCurve&) const = default;

 private:
  const Segment& segment_at(double q) const;

  std::vector<Segment> segments_;
  double domain_lo_ = 0.0;
};

enum class ViolationKind { tiling, empty_segment, reciprocal_at_origin, discontinuity, increase };

struct Violation {
  ViolationKind kind;
  std::size_t segment = 0;
  double at = 0.0;
  std::string message;
};

/// Every broken invariant of the curve; empty when it is valid.
std::vector<Violation> validate(const PiecewiseCurve& curve);

/// Smallest q with curve(q) = level. Throws NoCrossingError when the curve
/// never takes that value.
double solve_level(const PiecewiseCurve& curve, double level);

/// sup{q >= 0 : curve(q) >= level}. Differs from solve_level only when the
/// curve is flat at `level`. Throws NoCrossingError if curve(0) < level or
/// the curve never drops to `level`.
double level_sup(const PiecewiseCurve& curve, double level);

/// Largest q with p(q) >= w(q), searched on [0, level_sup(p, inf w)].
/// nullopt when p stays above w on the whole searched range.
std::optional<double> crossing(const PiecewiseCurve& p, const PiecewiseCurve& w);

/// Increasing union of both curves' breakpoints strictly inside (a, b),
/// framed by a and b.
std::vector<double> merged_grid(std::span<const PiecewiseCurve* const> curves, double a, double b);

std::string to_string(ViolationKind kind);

}  // namespace rschain
