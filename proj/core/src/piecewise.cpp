#include "rschain/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quadratic.hpp"
#include "rschain/errors.hpp"
#include "rschain/tolerance.hpp"

namespace rschain {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// Value of the piece at hi, or its limit when hi is infinite.
double value_at_end(const Segment& s) {
  if (std::isfinite(s.hi)) return s.value(s.hi);
  if (s.beta > 0.0) return kInf;
  if (s.beta < 0.0) return -kInf;
  return s.alpha;
}

// Smallest q in [s.lo, s.hi] with s.value(q) == level, assuming the piece is
// monotone and brackets the level.
std::optional<double> root_in_piece(const Segment& s, double level) {
  // beta*q^2 + (alpha - level)*q + gamma = 0, for q > 0.
  if (s.beta == 0.0 && s.gamma == 0.0) {
    if (near(s.alpha, level, kContinuityTol)) return s.lo;
    return std::nullopt;
  }
  const double span_tol = scaled(1e-12, std::isfinite(s.hi) ? s.hi : s.lo);
  for (double r : detail::real_roots(s.beta, s.alpha - level, s.gamma)) {
    if (r >= s.lo - span_tol && r <= s.hi + span_tol) {
      r = std::clamp(r, s.lo, s.hi);
      if (std::abs(s.value(r) - level) <= scaled(kContinuityTol, level)) return r;
    }
  }
  // Bisection fallback on a bounded bracket.
  if (!std::isfinite(s.hi)) return std::nullopt;
  double a = s.lo;
  double b = s.hi;
  if ((s.value(a) - level) * (s.value(b) - level) > 0.0) return std::nullopt;
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, b); ++it) {
    const double m = 0.5 * (a + b);
    if (s.value(m) >= level)
      a = m;
    else
      b = m;
  }
  return 0.5 * (a + b);
}

}  // namespace

PiecewiseCurve PiecewiseCurve::constant(double value) {
  return PiecewiseCurve({Segment{0.0, kInf, value, 0.0, 0.0}});
}

PiecewiseCurve PiecewiseCurve::affine(double a, double b) {
  return PiecewiseCurve({Segment{0.0, kInf, a, b, 0.0}});
}

const Segment& PiecewiseCurve::segment_at(double q) const {
  if (segments_.empty()) throw ArgumentError("curve has no segments");
  // First segment whose hi >= q.
  auto it = std::lower_bound(segments_.begin(), segments_.end(), q,
                             [](const Segment& s, double x) { return s.hi < x; });
  if (it == segments_.end()) return segments_.back();
  return *it;
}

double PiecewiseCurve::eval(double q) const {
  if (!(q >= 0.0)) throw DomainError("negative order quantity " + fmt(q));
  if (segments_.empty()) throw ArgumentError("curve has no segments");
  if (q < domain_lo_) q = domain_lo_;
  return segment_at(q).value(q);
}

double PiecewiseCurve::slope(double q) const {
  if (!(q >= 0.0)) throw DomainError("negative order quantity " + fmt(q));
  if (q < domain_lo_) return 0.0;
  if (segments_.empty()) throw ArgumentError("curve has no segments");
  auto it = std::upper_bound(segments_.begin(), segments_.end(), q,
                             [](double x, const Segment& s) { return x < s.hi; });
  const Segment& s = it == segments_.end() ? segments_.back() : *it;
  return s.slope(q);
}

std::vector<double> PiecewiseCurve::breakpoints() const {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < segments_.size(); ++k) out.push_back(segments_[k].hi);
  return out;
}

double PiecewiseCurve::tail_limit() const {
  if (segments_.empty()) throw ArgumentError("curve has no segments");
  return value_at_end(segments_.back());
}

std::vector<Segment> PiecewiseCurve::pieces(double a, double b) const {
  if (segments_.empty()) throw ArgumentError("curve has no segments");
  std::vector<Segment> out;
  if (a < domain_lo_) {
    const double v = segments_.front().value(domain_lo_);
    out.push_back(Segment{a, std::min(b, domain_lo_), v, 0.0, 0.0});
    if (b <= domain_lo_) return out;
    a = domain_lo_;
  }
  for (const Segment& s : segments_) {
    const double lo = std::max(a, s.lo);
    const double hi = std::min(b, s.hi);
    if (hi > lo) {
      Segment clipped = s;
      clipped.lo = lo;
      clipped.hi = hi;
      out.push_back(clipped);
    }
  }
  if (out.empty()) {
    Segment clipped = segment_at(a);
    clipped.lo = a;
    clipped.hi = b;
    out.push_back(clipped);
  }
  return out;
}

std::vector<Violation> validate(const PiecewiseCurve& curve) {
  std::vector<Violation> out;
  const auto segs = curve.segments();
  if (segs.empty()) {
    out.push_back({ViolationKind::tiling, 0, 0.0, "curve has no segments"});
    return out;
  }
  if (!(curve.domain_lo() >= 0.0) || !std::isfinite(curve.domain_lo()))
    out.push_back({ViolationKind::tiling, 0, curve.domain_lo(), "domain_lo must be finite and >= 0"});
  if (segs.front().lo != curve.domain_lo())
    out.push_back({ViolationKind::tiling, 0, segs.front().lo,
                   "first segment starts at " + fmt(segs.front().lo) + ", not at domain_lo " +
                       fmt(curve.domain_lo())});

  const double tol = kContinuityTol;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const Segment& s = segs[k];
    const bool last = k + 1 == segs.size();
    if (!(s.lo < s.hi)) {
      out.push_back({ViolationKind::empty_segment, k, s.lo,
                     "segment " + std::to_string(k) + " has lo >= hi"});
      continue;
    }
    if (!std::isfinite(s.alpha) || !std::isfinite(s.beta) || !std::isfinite(s.gamma))
      out.push_back({ViolationKind::empty_segment, k, s.lo,
                     "segment " + std::to_string(k) + " has non-finite coefficients"});
    if (s.gamma != 0.0 && !(s.lo > 0.0))
      out.push_back({ViolationKind::reciprocal_at_origin, k, s.lo,
                     "segment " + std::to_string(k) + " has gamma != 0 but starts at q <= 0"});
    if (last && std::isfinite(s.hi))
      out.push_back({ViolationKind::tiling, k, s.hi, "last segment must extend to infinity"});
    if (!last && !std::isfinite(s.hi))
      out.push_back({ViolationKind::tiling, k, s.lo,
                     "segment " + std::to_string(k) + " is unbounded but not last"});
    if (!last && std::isfinite(s.hi) && s.hi != segs[k + 1].lo)
      out.push_back({ViolationKind::tiling, k, s.hi,
                     "gap or overlap between segments " + std::to_string(k) + " and " +
                         std::to_string(k + 1) + " at q=" + fmt(s.hi)});
    if (s.gamma != 0.0 && !(s.lo > 0.0)) continue;

    // Monotonicity: endpoints plus the interior stationary point, if any.
    std::vector<double> probes{s.lo};
    if (s.beta != 0.0 && s.gamma / s.beta > 0.0) {
      const double stat = std::sqrt(s.gamma / s.beta);
      if (stat > s.lo && stat < s.hi) probes.push_back(stat);
    }
    if (std::isfinite(s.hi)) probes.push_back(s.hi);
    for (std::size_t j = 0; j + 1 < probes.size(); ++j) {
      const double v0 = s.value(probes[j]);
      const double v1 = s.value(probes[j + 1]);
      if (v1 > v0 + scaled(tol, v0)) {
        out.push_back({ViolationKind::increase, k, probes[j + 1],
                       "curve increases inside segment " + std::to_string(k) + " (" + fmt(v0) +
                           " at q=" + fmt(probes[j]) + " to " + fmt(v1) + " at q=" + fmt(probes[j + 1]) +
                           ")"});
        break;
      }
    }
    if (!std::isfinite(s.hi) && (s.beta > 0.0 || (s.beta == 0.0 && s.gamma < 0.0)))
      out.push_back({ViolationKind::increase, k, s.lo,
                     "unbounded segment " + std::to_string(k) + " is eventually increasing"});

    if (!last && std::isfinite(s.hi) && s.hi == segs[k + 1].lo &&
        (segs[k + 1].gamma == 0.0 || s.hi > 0.0)) {
      const double left = s.value(s.hi);
      const double right = segs[k + 1].value(s.hi);
      if (std::abs(left - right) > scaled(tol, left))
        out.push_back({ViolationKind::discontinuity, k, s.hi,
                       "jump at q=" + fmt(s.hi) + " from " + fmt(left) + " to " + fmt(right)});
      if (right > left + scaled(tol, left))
        out.push_back({ViolationKind::increase, k, s.hi, "curve increases at breakpoint q=" + fmt(s.hi)});
    }
  }
  return out;
}

double solve_level(const PiecewiseCurve& curve, double level) {
  const double v0 = curve.eval(0.0);
  if (v0 < level - scaled(kContinuityTol, level))
    throw NoCrossingError("curve starts at " + fmt(v0) + ", below level " + fmt(level));
  if (v0 <= level) return 0.0;
  for (const Segment& s : curve.pieces(0.0, kInf)) {
    if (value_at_end(s) > level) continue;
    if (auto r = root_in_piece(s, level)) return *r;
  }
  throw NoCrossingError("curve never reaches level " + fmt(level));
}

double level_sup(const PiecewiseCurve& curve, double level) {
  const double v0 = curve.eval(0.0);
  if (v0 < level - scaled(kContinuityTol, level))
    throw NoCrossingError("curve starts at " + fmt(v0) + ", below level " + fmt(level));
  const auto pieces = curve.pieces(0.0, kInf);
  for (const Segment& s : pieces) {
    if (value_at_end(s) >= level) continue;
    if (s.value(s.lo) <= level) return s.lo;
    if (auto r = root_in_piece(s, level)) return *r;
  }
  throw NoCrossingError("curve never drops below level " + fmt(level));
}

std::vector<double> merged_grid(std::span<const PiecewiseCurve* const> curves, double a, double b) {
  std::vector<double> grid{a};
  for (const PiecewiseCurve* c : curves) {
    for (double bp : c->breakpoints())
      if (bp > a && bp < b) grid.push_back(bp);
    if (c->domain_lo() > a && c->domain_lo() < b) grid.push_back(c->domain_lo());
  }
  grid.push_back(b);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::optional<double> crossing(const PiecewiseCurve& p, const PiecewiseCurve& w) {
  if (p.eval(0.0) < w.eval(0.0) - scaled(kContinuityTol, w.eval(0.0)))
    throw ArgumentError("crossing requires p(0) >= w(0)");
  double bound = 0.0;
  try {
    bound = level_sup(p, w.tail_limit());
  } catch (const NoCrossingError&) {
    return std::nullopt;
  }
  const PiecewiseCurve* curves[] = {&p, &w};
  const auto grid = merged_grid(curves, 0.0, bound);
  if (grid.size() == 1) return grid.front();
  for (std::size_t k = grid.size() - 1; k-- > 0;) {
    const double x0 = grid[k];
    const double x1 = grid[k + 1];
    const Segment sp = p.pieces(x0, x1).front();
    const Segment sw = w.pieces(x0, x1).front();
    const double d1 = sp.value(x1) - sw.value(x1);
    if (d1 >= -scaled(kContinuityTol, sw.value(x1))) return x1;
    // (p - w)*q = db*q^2 + da*q + dg.
    const double da = sp.alpha - sw.alpha;
    const double db = sp.beta - sw.beta;
    const double dg = sp.gamma - sw.gamma;
    const auto roots = detail::real_roots(db, da, dg);
    for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
      if (*it >= x0 && *it <= x1) return *it;
    }
    const double d0 = sp.value(x0) - sw.value(x0);
    if (d0 >= 0.0) {
      // Root lost to rounding; bisect.
      double a = x0;
      double b = x1;
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        if (sp.value(m) - sw.value(m) >= 0.0)
          a = m;
        else
          b = m;
      }
      return a;
    }
  }
  return 0.0;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::tiling:
      return "tiling";
    case ViolationKind::empty_segment:
      return "empty_segment";
    case ViolationKind::reciprocal_at_origin:
      return "reciprocal_at_origin";
    case ViolationKind::discontinuity:
      return "discontinuity";
    case ViolationKind::increase:
      return "increase";
  }
  return "unknown";
}

}  // namespace rschain
