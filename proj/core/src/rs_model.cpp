#include "rschain/rs_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
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

// (p - u) * q on a sub-interval where both curves are a single piece.
detail::Quadratic margin_quadratic(const Segment& p, const Segment& u) {
  return {p.gamma - u.gamma, p.alpha - u.alpha, p.beta - u.beta};
}

struct Maximizers {
  double value = 0.0;
  std::vector<double> argmax;  // increasing
};

// Global maximum of (p(q) - price(q)) q on [0, bound]. The objective is a
// quadratic on every piece between merged breakpoints, so candidates are the
// breakpoints and the per-piece stationary points; of those only local
// maxima are kept.
Maximizers maximize_margin(const PiecewiseCurve& p, const PiecewiseCurve& price, double bound) {
  const PiecewiseCurve* curves[] = {&p, &price};
  const auto grid = merged_grid(curves, 0.0, bound);

  struct Candidate {
    double q;
    double value;
  };
  std::vector<Candidate> cands;
  auto objective = [&](double q) { return (p.eval(q) - price.eval(q)) * q; };

  std::vector<detail::Quadratic> quads;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const Segment sp = p.pieces(grid[k], grid[k + 1]).front();
    const Segment sw = price.pieces(grid[k], grid[k + 1]).front();
    quads.push_back(margin_quadratic(sp, sw));
  }

  const double slope_tol = 1e-9;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double q = grid[k];
    const bool has_left = k > 0;
    const bool has_right = k < quads.size();
    const double dl = has_left ? quads[k - 1].derivative(q) : 0.0;
    const double dr = has_right ? quads[k].derivative(q) : 0.0;
    const bool local_max = (!has_left || dl >= -scaled(slope_tol, dl)) &&
                           (!has_right || dr <= scaled(slope_tol, dr));
    if (local_max) cands.push_back({q, objective(q)});
  }
  for (std::size_t k = 0; k < quads.size(); ++k) {
    const auto& f = quads[k];
    if (f.c2 < 0.0) {
      const double stat = -f.c1 / (2.0 * f.c2);
      if (stat > grid[k] && stat < grid[k + 1]) cands.push_back({stat, objective(stat)});
    }
  }

  Maximizers out;
  if (cands.empty()) {
    // Every grid point fails the local-max test only if rounding misled the
    // slope check; fall back to the best grid point.
    for (double q : grid) cands.push_back({q, objective(q)});
  }
  out.value = -kInf;
  for (const auto& c : cands) out.value = std::max(out.value, c.value);
  const double cut = out.value - scaled(kCompareTol, out.value);
  std::vector<double> qs;
  for (const auto& c : cands)
    if (c.value >= cut) qs.push_back(c.q);
  std::sort(qs.begin(), qs.end());
  for (double q : qs) {
    if (out.argmax.empty() || q - out.argmax.back() > scaled(kContinuityTol, q)) out.argmax.push_back(q);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inner allocation: for a fixed total Q, maximize sum_i p_i(q_i) q_i subject
// to sum q_i = Q and 0 <= q_i <= cap_i.

struct InnerAllocation {
  bool feasible = false;
  double revenue = -kInf;
  std::vector<double> q;
};

// Revenue pieces p(q) q = gamma + alpha q + beta q^2.
double revenue(const Segment& s, double q) { return s.gamma + (s.alpha + s.beta * q) * q; }

// Concave separable maximization with one sum constraint, by bisection on
// the multiplier of the sum constraint.
std::vector<double> kkt_allocate(const std::vector<const Segment*>& pieces, double total) {
  const std::size_t n = pieces.size();
  auto at = [&](double lam, std::vector<double>& q) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Segment& s = *pieces[i];
      double x;
      if (s.beta < 0.0)
        x = std::clamp((lam - s.alpha) / (2.0 * s.beta), s.lo, s.hi);
      else
        x = s.alpha > lam ? s.hi : s.lo;
      q[i] = x;
      sum += x;
    }
    return sum;
  };
  double lam_lo = kInf;
  double lam_hi = -kInf;
  for (const Segment* s : pieces) {
    lam_lo = std::min(lam_lo, s->alpha + 2.0 * s->beta * s->hi);
    lam_hi = std::max(lam_hi, s->alpha + 2.0 * s->beta * s->lo);
  }
  lam_lo -= 1.0;
  lam_hi += 1.0;
  std::vector<double> q_lo(n), q_hi(n);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lam_lo + lam_hi);
    if (mid <= lam_lo || mid >= lam_hi) break;
    std::vector<double>& scratch = q_lo;
    if (at(mid, scratch) >= total)
      lam_lo = mid;
    else
      lam_hi = mid;
  }
  const double s_lo = at(lam_lo, q_lo);
  const double s_hi = at(lam_hi, q_hi);
  const double t = s_lo > s_hi ? std::clamp((total - s_hi) / (s_lo - s_hi), 0.0, 1.0) : 0.0;
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = q_hi[i] + t * (q_lo[i] - q_hi[i]);
  return q;
}

class CoalitionSearch {
 public:
  CoalitionSearch(const RSSituation& sit, Coalition members, const SearchOptions& opt)
      : sit_(sit), ids_(members.players()), opt_(opt) {
    for (int id : ids_) {
      const double cap = level_sup(sit.price(id), sit.c);
      caps_.push_back(cap);
      total_cap_ += cap;
    }
  }

  double total_cap() const { return total_cap_; }

  // Joint profit at total order Q (revenue minus w(Q) Q), with allocation.
  InnerAllocation evaluate(double total) const {
    InnerAllocation a = allocate(total);
    if (a.feasible) a.revenue -= sit_.w.eval(total) * total;
    return a;
  }

 private:
  InnerAllocation allocate(double total) const {
    InnerAllocation out;
    const double level = sit_.w.eval(total);
    const std::size_t n = ids_.size();
    std::vector<double> ub(n);
    double cap_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const PiecewiseCurve& p = sit_.price(ids_[i]);
      if (p.eval(0.0) < level) return out;
      ub[i] = std::min(level_sup(p, level), total);
      cap_sum += ub[i];
    }
    if (cap_sum < total * (1.0 - 1e-14)) return out;

    std::vector<std::vector<Segment>> pieces(n);
    std::size_t combos = 1;
    bool concave = true;
    for (std::size_t i = 0; i < n; ++i) {
      pieces[i] = sit_.price(ids_[i]).pieces(0.0, ub[i]);
      combos *= pieces[i].size();
      for (const auto& s : pieces[i]) concave = concave && s.beta <= 0.0;
    }
    if (concave && combos <= opt_.max_piece_combinations) return enumerate(pieces, total);
    return grid_program(ub, total);
  }

  InnerAllocation enumerate(const std::vector<std::vector<Segment>>& pieces, double total) const {
    InnerAllocation best;
    const std::size_t n = pieces.size();
    std::vector<std::size_t> idx(n, 0);
    std::vector<const Segment*> chosen(n);
    while (true) {
      double lo = 0.0, hi = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        chosen[i] = &pieces[i][idx[i]];
        lo += chosen[i]->lo;
        hi += chosen[i]->hi;
      }
      const double slack = scaled(1e-13, total);
      if (total >= lo - slack && total <= hi + slack) {
        auto q = kkt_allocate(chosen, std::clamp(total, lo, hi));
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) r += revenue(*chosen[i], q[i]);
        if (!best.feasible || r > best.revenue) {
          best.feasible = true;
          best.revenue = r;
          best.q = std::move(q);
        }
      }
      std::size_t k = 0;
      while (k < n && ++idx[k] == pieces[k].size()) idx[k++] = 0;
      if (k == n) break;
    }
    return best;
  }

  // Dynamic program over a uniform quantity grid, then pairwise polishing.
  // Used when some revenue piece is convex or the piece product is too big.
  InnerAllocation grid_program(const std::vector<double>& ub, double total) const {
    const std::size_t n = ids_.size();
    const int m = std::max(8, opt_.inner_points);
    const double unit = total / m;
    auto rev = [&](std::size_t i, double q) { return sit_.price(ids_[i]).eval(q) * q; };

    std::vector<double> dp(m + 1, -kInf);
    std::vector<std::vector<int>> choice(n, std::vector<int>(m + 1, 0));
    dp[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const int kmax = total > 0.0 ? std::min(m, static_cast<int>(std::ceil(ub[i] / unit - 1e-9))) : 0;
      std::vector<double> r(kmax + 1);
      for (int k = 0; k <= kmax; ++k) r[k] = rev(i, std::min(k * unit, ub[i]));
      std::vector<double> next(m + 1, -kInf);
      for (int j = 0; j <= m; ++j) {
        for (int k = 0; k <= std::min(j, kmax); ++k) {
          if (dp[j - k] == -kInf) continue;
          const double cand = dp[j - k] + r[k];
          if (cand > next[j]) {
            next[j] = cand;
            choice[i][j] = k;
          }
        }
      }
      dp = std::move(next);
    }
    InnerAllocation out;
    if (total == 0.0) {
      out.feasible = true;
      out.revenue = 0.0;
      out.q.assign(n, 0.0);
      return out;
    }
    if (dp[m] == -kInf) {
      // The grid cannot hit Q exactly below the caps; take the caps' scale.
      return out;
    }
    out.q.assign(n, 0.0);
    int j = m;
    for (std::size_t i = n; i-- > 0;) {
      const int k = choice[i][j];
      out.q[i] = std::min(k * unit, ub[i]);
      j -= k;
    }
    // Absorb rounding so the orders sum to Q.
    double diff = total - std::accumulate(out.q.begin(), out.q.end(), 0.0);
    for (std::size_t i = 0; i < n && diff != 0.0; ++i) {
      const double room = diff > 0.0 ? ub[i] - out.q[i] : -out.q[i];
      const double move = diff > 0.0 ? std::min(diff, room) : std::max(diff, room);
      out.q[i] += move;
      diff -= move;
    }
    polish(out.q, ub, unit, rev);
    out.feasible = true;
    out.revenue = 0.0;
    for (std::size_t i = 0; i < n; ++i) out.revenue += rev(i, out.q[i]);
    return out;
  }

  template <class Rev>
  void polish(std::vector<double>& q, const std::vector<double>& ub, double unit, Rev rev) const {
    const std::size_t n = q.size();
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int sweep = 0; sweep < 8; ++sweep) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          // Move t from j to i.
          double a = std::max({-q[i], q[j] - ub[j], -2.0 * unit});
          double b = std::min({ub[i] - q[i], q[j], 2.0 * unit});
          if (!(b > a)) continue;
          auto f = [&](double t) { return rev(i, q[i] + t) + rev(j, q[j] - t); };
          double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
          double f1 = f(x1), f2 = f(x2);
          for (int it = 0; it < 80; ++it) {
            if (f1 < f2) {
              a = x1;
              x1 = x2;
              f1 = f2;
              x2 = a + phi * (b - a);
              f2 = f(x2);
            } else {
              b = x2;
              x2 = x1;
              f2 = f1;
              x1 = b - phi * (b - a);
              f1 = f(x1);
            }
          }
          const double t = 0.5 * (a + b);
          if (f(t) > f(0.0)) {
            q[i] += t;
            q[j] -= t;
          }
        }
      }
    }
  }

  const RSSituation& sit_;
  std::vector<int> ids_;
  SearchOptions opt_;
  std::vector<double> caps_;
  double total_cap_ = 0.0;
};

CoalitionSolution make_solution(const RSSituation& sit, Coalition members, std::vector<double> q) {
  CoalitionSolution sol;
  sol.members = members;
  sol.with_supplier = false;
  sol.total = std::accumulate(q.begin(), q.end(), 0.0);
  sol.unit_price = sit.w.eval(sol.total);
  const auto ids = members.players();
  for (std::size_t i = 0; i < ids.size(); ++i) sol.value += retailer_profit(sit.price(ids[i]), q[i], sol.unit_price);
  sol.quantities = std::move(q);
  return sol;
}

}  // namespace

double retailer_profit(const PiecewiseCurve& p, double q, double unit_price) {
  if (!(q >= 0.0)) throw DomainError("negative order quantity " + fmt(q));
  return (p.eval(q) - unit_price) * q;
}

double supplier_profit(double q, double unit_price, double c) {
  if (!(q >= 0.0)) throw DomainError("negative order quantity " + fmt(q));
  return (unit_price - c) * q;
}

std::vector<std::string> validate(const RSProblem& prob) {
  std::vector<std::string> out;
  if (!std::isfinite(prob.c)) out.push_back("c must be finite");
  for (const auto& v : validate(prob.w)) out.push_back("w: " + v.message);
  for (const auto& v : validate(prob.p)) out.push_back("p: " + v.message);
  if (!out.empty()) return out;

  const double p0 = prob.p.eval(0.0);
  const double w0 = prob.w.eval(0.0);
  if (!(p0 > w0)) out.push_back("p(0) = " + fmt(p0) + " must exceed w(0) = " + fmt(w0));
  double qc = 0.0;
  try {
    qc = solve_level(prob.p, prob.c);
    if (!(qc > 0.0)) out.push_back("p reaches c only at q = 0");
  } catch (const NoCrossingError&) {
    out.push_back("p never reaches the production cost c = " + fmt(prob.c));
    return out;
  }
  // w is non-increasing, so its infimum on [0, qc] is attained at qc.
  const double wmin = prob.w.eval(level_sup(prob.p, prob.c));
  if (!(wmin > prob.c))
    out.push_back("w drops to " + fmt(wmin) + " <= c = " + fmt(prob.c) + " on the search domain");
  return out;
}

std::vector<std::string> validate(const RSSituation& sit) {
  std::vector<std::string> out;
  if (sit.n() < 1) out.push_back("a situation needs at least one retailer");
  for (int id = 1; id <= sit.n(); ++id)
    for (const auto& v : validate(sit.problem(id))) out.push_back("retailer " + std::to_string(id) + ": " + v);
  return out;
}

void require_valid(const RSProblem& prob) {
  auto v = validate(prob);
  if (!v.empty()) throw ModelAssumptionError(std::move(v));
}

void require_valid(const RSSituation& sit) {
  auto v = validate(sit);
  if (!v.empty()) throw ModelAssumptionError(std::move(v));
}

CoalitionSolution solve_retailer(const RSProblem& prob) {
  require_valid(prob);
  const double bound = crossing(prob.p, prob.w).value_or(0.0);
  const auto best = maximize_margin(prob.p, prob.w, bound);
  CoalitionSolution sol;
  sol.members = Coalition::of({1});
  sol.with_supplier = false;
  const double q = best.argmax.front();
  sol.quantities = {q};
  sol.total = q;
  sol.unit_price = prob.w.eval(q);
  sol.value = retailer_profit(prob.p, q, sol.unit_price);
  for (double a : best.argmax) sol.alternates.push_back({a});
  return sol;
}

CoalitionSolution solve_with_supplier(const RSSituation& sit, Coalition members) {
  if (members.has_supplier()) throw ArgumentError("members must list retailers only");
  const auto ids = members.players();
  for (int id : ids)
    if (id > sit.n()) throw ArgumentError("unknown retailer " + std::to_string(id));

  CoalitionSolution sol;
  sol.members = members;
  sol.with_supplier = true;
  sol.unit_price = sit.c;
  const auto at_cost = PiecewiseCurve::constant(sit.c);
  std::vector<std::vector<double>> per_member;
  for (int id : ids) {
    const PiecewiseCurve& p = sit.price(id);
    const auto best = maximize_margin(p, at_cost, level_sup(p, sit.c));
    const double q = best.argmax.front();
    sol.quantities.push_back(q);
    sol.total += q;
    sol.value += retailer_profit(p, q, sit.c);
    per_member.push_back(best.argmax);
  }
  // Cartesian product of per-member optima, when small.
  std::size_t count = 1;
  for (const auto& m : per_member) count *= m.size();
  if (count <= 64) {
    std::vector<std::size_t> idx(per_member.size(), 0);
    for (std::size_t c = 0; c < count; ++c) {
      std::vector<double> v;
      for (std::size_t i = 0; i < per_member.size(); ++i) v.push_back(per_member[i][idx[i]]);
      sol.alternates.push_back(std::move(v));
      for (std::size_t k = 0; k < idx.size() && ++idx[k] == per_member[k].size(); ++k) idx[k] = 0;
    }
  } else {
    sol.alternates.push_back(sol.quantities);
  }
  return sol;
}

CoalitionSolution solve_coalition(const RSSituation& sit, Coalition members, const SearchOptions& opt) {
  if (members.empty()) throw ArgumentError("coalition must have at least one retailer");
  if (members.has_supplier()) throw ArgumentError("members must list retailers only");
  for (int id : members.players())
    if (id > sit.n()) throw ArgumentError("unknown retailer " + std::to_string(id));

  if (members.size() == 1) {
    const int id = members.players().front();
    CoalitionSolution sol = solve_retailer(sit.problem(id));
    sol.members = members;
    return sol;
  }
  return detail::search_coalition(sit, members, opt);
}

CoalitionSolution detail::search_coalition(const RSSituation& sit, Coalition members, const SearchOptions& opt) {
  const CoalitionSearch search(sit, members, opt);
  const double qmax = search.total_cap();

  struct Point {
    double total;
    InnerAllocation alloc;
  };
  auto sample = [&](double lo, double hi) {
    std::vector<double> xs;
    const int m = std::max(3, opt.outer_points);
    for (int k = 0; k < m; ++k) xs.push_back(lo + (hi - lo) * k / (m - 1));
    for (double bp : sit.w.breakpoints())
      if (bp > lo && bp < hi) xs.push_back(bp);
    if (sit.w.domain_lo() > lo && sit.w.domain_lo() < hi) xs.push_back(sit.w.domain_lo());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Point> pts;
    pts.reserve(xs.size());
    for (double x : xs) pts.push_back({x, search.evaluate(x)});
    return pts;
  };
  auto value_of = [](const Point& p) { return p.alloc.feasible ? p.alloc.revenue : -kInf; };

  // Coarse pass over the whole range, then the best local maxima are
  // refined independently.
  const auto coarse = sample(0.0, qmax);
  std::vector<std::size_t> maxima;
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    const double v = value_of(coarse[k]);
    if (v == -kInf) continue;
    const bool left_ok = k == 0 || value_of(coarse[k - 1]) <= v;
    const bool right_ok = k + 1 == coarse.size() || value_of(coarse[k + 1]) <= v;
    if (left_ok && right_ok) maxima.push_back(k);
  }
  std::sort(maxima.begin(), maxima.end(),
            [&](std::size_t a, std::size_t b) { return value_of(coarse[a]) > value_of(coarse[b]); });
  if (maxima.size() > static_cast<std::size_t>(std::max(1, opt.basins))) maxima.resize(std::max(1, opt.basins));

  std::vector<Point> finals;
  for (std::size_t k : maxima) {
    Point best = coarse[k];
    double width = qmax;
    for (int pass = 0; pass < opt.refine_passes; ++pass) {
      width /= opt.shrink;
      const double lo = std::max(0.0, best.total - 0.5 * width);
      const double hi = std::min(qmax, best.total + 0.5 * width);
      for (auto& p : sample(lo, hi))
        if (value_of(p) > value_of(best)) best = std::move(p);
    }
    // Golden-section polish inside the last grid cell pair.
    const double step = width / std::max(2, opt.outer_points - 1);
    double a = std::max(0.0, best.total - step);
    double b = std::min(qmax, best.total + step);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    Point p1{x1, search.evaluate(x1)}, p2{x2, search.evaluate(x2)};
    for (int it = 0; it < 60 && b - a > 1e-15 * std::max(1.0, b); ++it) {
      if (value_of(p1) < value_of(p2)) {
        a = p1.total;
        p1 = std::move(p2);
        const double x = a + phi * (b - a);
        p2 = {x, search.evaluate(x)};
      } else {
        b = p2.total;
        p2 = std::move(p1);
        const double x = b - phi * (b - a);
        p1 = {x, search.evaluate(x)};
      }
    }
    if (value_of(p1) > value_of(best)) best = std::move(p1);
    if (value_of(p2) > value_of(best)) best = std::move(p2);
    finals.push_back(std::move(best));
  }

  std::vector<CoalitionSolution> sols;
  for (auto& p : finals) sols.push_back(make_solution(sit, members, p.alloc.q));
  double best_value = -kInf;
  for (const auto& s : sols) best_value = std::max(best_value, s.value);
  const double cut = best_value - scaled(kCompareTol, best_value);
  std::vector<CoalitionSolution> optimal;
  for (auto& s : sols)
    if (s.value >= cut) optimal.push_back(std::move(s));
  std::sort(optimal.begin(), optimal.end(),
            [](const CoalitionSolution& a, const CoalitionSolution& b) { return a.total < b.total; });
  // Basins converging to the same order are one optimum.
  std::vector<CoalitionSolution> distinct;
  for (auto& s : optimal)
    if (distinct.empty() || s.total - distinct.back().total > scaled(1e-6, s.total)) distinct.push_back(std::move(s));

  CoalitionSolution sol = distinct.front();
  for (const auto& s : distinct) sol.alternates.push_back(s.quantities);
  return sol;
}

ProfitReport check_p1_p2_p3(const RSSituation& sit, Coalition members, const SearchOptions& opt) {
  return check_p1_p2_p3(sit, solve_coalition(sit, members, opt));
}

ProfitReport check_p1_p2_p3(const RSSituation& sit, const CoalitionSolution& joint) {
  if (joint.with_supplier) throw ArgumentError("profit checks need a retailer-only coalition solution");
  ProfitReport report;
  report.members = joint.members;
  const auto ids = joint.members.players();
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const int id = ids[k];
    const PiecewiseCurve& p = sit.price(id);
    const double qs = joint.quantities[k];
    const double u = joint.unit_price;
    const double qc = solve_with_supplier(sit, Coalition::of({id})).quantities.front();

    ProfitCheck c;
    c.retailer = id;
    const double lhs = retailer_profit(p, qs, sit.c);
    const double rhs = retailer_profit(p, qs, u) + supplier_profit(qs, u, sit.c);
    c.p1_residual = std::abs(lhs - rhs);
    c.p1 = c.p1_residual <= scaled(kContinuityTol, lhs);
    const double best_at_cost = retailer_profit(p, qc, sit.c);
    c.p2_margin = best_at_cost - lhs;
    c.p2 = c.p2_margin >= -scaled(kCompareTol, best_at_cost);
    c.p3_retailer_margin = best_at_cost - retailer_profit(p, qs, u);
    c.p3_supplier_margin = best_at_cost - supplier_profit(qs, u, sit.c);
    c.p3 = c.p3_retailer_margin > 0.0 && c.p3_supplier_margin > 0.0;
    report.checks.push_back(c);
  }
  return report;
}

RSSituation restrict_situation(const RSSituation& sit, Coalition members) {
  RSSituation out;
  out.c = sit.c;
  out.w = sit.w;
  for (int id : members.retailers_only().players()) out.prices.push_back(sit.price(id));
  return out;
}

RSSituation random_situation(int n, std::uint64_t seed, const GeneratorRanges& r) {
  if (n < 1 || n > 6) throw ArgumentError("random_situation supports 1 <= n <= 6");
  std::mt19937_64 rng(seed);
  auto draw = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  for (int attempt = 0; attempt < r.max_attempts; ++attempt) {
    RSSituation sit;
    sit.c = draw(r.c_lo, r.c_hi);
    const double knee = draw(r.knee_lo, r.knee_hi);
    const double d = draw(r.d_lo, r.d_hi);
    const double w0 = sit.c + d / knee;
    sit.w = PiecewiseCurve({Segment{0.0, knee, w0, 0.0, 0.0}, Segment{knee, kInf, sit.c, 0.0, d}});
    for (int i = 0; i < n; ++i) {
      const double a = draw(r.a_lo, r.a_hi);
      const double b = draw(r.b_lo, r.b_hi);
      sit.prices.push_back(PiecewiseCurve::affine(a, -b));
    }
    if (validate(sit).empty()) return sit;
  }
  throw ModelAssumptionError({"random_situation: no valid instance after " + std::to_string(r.max_attempts) +
                              " attempts (seed " + std::to_string(seed) + ")"});
}

}  // namespace rschain
