#include "rschain/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rschain/errors.hpp"

namespace rschain::json {

namespace {

void only_keys(const json& j, std::initializer_list<const char*> allowed, const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw ParseError(std::string("unknown field '") + key + "' in " + what);
  }
}

const json& field(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "' in " + what);
  return *it;
}

double number(const json& j, const char* key, const char* what) {
  const json& v = field(j, key, what);
  if (!v.is_number()) throw ParseError(std::string("field '") + key + "' in " + what + " must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback, const char* what) {
  if (!j.contains(key)) return fallback;
  return number(j, key, what);
}

std::vector<double> numbers(const json& j, const char* key, const char* what) {
  const json& v = field(j, key, what);
  if (!v.is_array()) throw ParseError(std::string("field '") + key + "' in " + what + " must be an array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ParseError(std::string("field '") + key + "' in " + what + " must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

json to_json(const PiecewiseCurve& curve) {
  json segs = json::array();
  for (const Segment& s : curve.segments()) {
    json hi = std::isfinite(s.hi) ? json(s.hi) : json("inf");
    segs.push_back({{"lo", s.lo}, {"hi", hi}, {"alpha", s.alpha}, {"beta", s.beta}, {"gamma", s.gamma}});
  }
  return {{"domain_lo", curve.domain_lo()}, {"segments", segs}};
}

PiecewiseCurve curve_from_json(const json& j) {
  only_keys(j, {"domain_lo", "segments"}, "curve");
  const json& segs = field(j, "segments", "curve");
  if (!segs.is_array()) throw ParseError("curve segments must be an array");
  std::vector<Segment> out;
  for (const auto& s : segs) {
    only_keys(s, {"lo", "hi", "alpha", "beta", "gamma"}, "segment");
    Segment seg;
    seg.lo = number(s, "lo", "segment");
    const json& hi = field(s, "hi", "segment");
    if (hi.is_string()) {
      if (hi.get<std::string>() != "inf") throw ParseError("segment hi must be a number or \"inf\"");
      seg.hi = kInf;
    } else if (hi.is_number()) {
      seg.hi = hi.get<double>();
    } else {
      throw ParseError("segment hi must be a number or \"inf\"");
    }
    seg.alpha = number(s, "alpha", "segment");
    seg.beta = number(s, "beta", "segment");
    seg.gamma = number(s, "gamma", "segment");
    out.push_back(seg);
  }
  const double lo = number_or(j, "domain_lo", 0.0, "curve");
  return PiecewiseCurve(std::move(out), lo);
}

json to_json(const RSSituation& sit) {
  json retailers = json::array();
  for (int i = 1; i <= sit.n(); ++i) retailers.push_back({{"id", i}, {"p", to_json(sit.price(i))}});
  return {{"c", sit.c}, {"w", to_json(sit.w)}, {"retailers", retailers}};
}

RSSituation situation_from_json(const json& j) {
  only_keys(j, {"c", "w", "retailers"}, "situation");
  RSSituation sit;
  sit.c = number(j, "c", "situation");
  sit.w = curve_from_json(field(j, "w", "situation"));
  const json& rs = field(j, "retailers", "situation");
  if (!rs.is_array() || rs.empty()) throw ParseError("retailers must be a nonempty array");
  std::vector<std::pair<int, PiecewiseCurve>> tmp;
  for (const auto& r : rs) {
    only_keys(r, {"id", "p"}, "retailer");
    const json& id = field(r, "id", "retailer");
    if (!id.is_number_integer()) throw ParseError("retailer id must be an integer");
    tmp.emplace_back(id.get<int>(), curve_from_json(field(r, "p", "retailer")));
  }
  std::sort(tmp.begin(), tmp.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t k = 0; k < tmp.size(); ++k) {
    if (tmp[k].first != static_cast<int>(k + 1))
      throw ParseError("retailer ids must be 1..n without gaps or repeats (id 0 is the supplier)");
    sit.prices.push_back(std::move(tmp[k].second));
  }
  return sit;
}

RSProblem problem_from_json(const json& j) {
  only_keys(j, {"c", "w", "p"}, "problem");
  return {number(j, "c", "problem"), curve_from_json(field(j, "w", "problem")),
          curve_from_json(field(j, "p", "problem"))};
}

RSSituation any_situation_from_json(const json& j) {
  if (j.is_object() && j.contains("p") && !j.contains("retailers")) {
    const RSProblem prob = problem_from_json(j);
    return RSSituation{prob.c, prob.w, {prob.p}};
  }
  return situation_from_json(j);
}

json to_json(Coalition s) { return s.players(); }

json to_json(const RSGame& game) {
  json values = json::array();
  for (Coalition s : display_order(game)) values.push_back({{"coalition", to_json(s)}, {"v", game.v(s)}});
  return {{"n", game.n()}, {"values", values}};
}

RSGame game_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("game must be a JSON object");
  const json& jn = field(j, "n", "game");
  if (!jn.is_number_integer()) throw ParseError("game n must be an integer");
  const int n = jn.get<int>();
  if (n < 0 || n > kMaxRetailers) throw ParseError("game n out of range");
  const json& vals = field(j, "values", "game");
  if (!vals.is_array()) throw ParseError("game values must be an array");
  const std::size_t size = std::size_t{1} << (n + 1);
  std::vector<double> v(size, 0.0);
  std::vector<bool> seen(size, false);
  seen[0] = true;
  for (const auto& e : vals) {
    only_keys(e, {"coalition", "v"}, "game value");
    const json& members = field(e, "coalition", "game value");
    if (!members.is_array()) throw ParseError("coalition must be an array of player ids");
    Coalition s;
    for (const auto& m : members) {
      if (!m.is_number_integer() || m.get<int>() < 0 || m.get<int>() > n)
        throw ParseError("coalition ids must be integers in 0..n");
      if (s.contains(m.get<int>())) throw ParseError("repeated player in coalition");
      s = s.with(m.get<int>());
    }
    const double value = number(e, "v", "game value");
    if (s.empty()) {
      if (value != 0.0) throw ParseError("v(empty) must be 0");
      continue;
    }
    if (seen[s.bits()] && s.bits() != 0) throw ParseError("coalition " + s.to_string() + " listed twice");
    seen[s.bits()] = true;
    v[s.bits()] = value;
  }
  for (std::size_t m = 1; m < size; ++m)
    if (!seen[m]) throw ParseError("game is missing coalition " + Coalition{static_cast<Coalition::Bits>(m)}.to_string());
  return RSGame(n, std::move(v));
}

json to_json(const Allocation& x) { return {{"label", to_string(x.label)}, {"payoffs", x.payoffs}}; }

Allocation allocation_from_json(const json& j) {
  only_keys(j, {"label", "payoffs"}, "allocation");
  Allocation x;
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw ParseError("allocation label must be a string");
    x.label = parse_label(j["label"].get<std::string>());
  }
  x.payoffs = numbers(j, "payoffs", "allocation");
  return x;
}

json to_json(const PriceVector& w) { return {{"prices", w.prices}}; }

PriceVector prices_from_json(const json& j) {
  only_keys(j, {"prices"}, "price vector");
  return {numbers(j, "prices", "price vector")};
}

json to_json(const AxiomReport& r) {
  auto check = [](const AxiomCheck& c) { return json{{"pass", c.pass}, {"residual", c.residual}}; };
  json witnesses = json::array();
  for (const auto& w : r.rr_witness) witnesses.push_back(w ? to_json(*w) : json(nullptr));
  json sr = check(r.sr);
  sr["violation"] = r.sr_violation ? to_json(*r.sr_violation) : json(nullptr);
  json rr = check(r.rr);
  rr["witness"] = witnesses;
  rr["reductions"] = r.reductions;
  return {{"ef", check(r.ef)}, {"sr", sr}, {"rr", rr}, {"pd", check(r.pd)}};
}

json to_json(const MgpcResult& r) {
  json argmin = json::array();
  for (Coalition s : r.argmin) argmin.push_back(to_json(s));
  return {{"beta", r.beta}, {"argmin", argmin}, {"payoffs", r.allocation.payoffs}};
}

json to_json(const StructureReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"property", f.property},
                        {"s", to_json(f.s)},
                        {"t", to_json(f.t)},
                        {"residual", f.residual},
                        {"message", f.message}});
  return {{"positivity", r.positivity},       {"superadditivity", r.superadditivity},
          {"monotonicity", r.monotonicity},   {"decomposition", r.decomposition},
          {"normalization", r.normalization}, {"monotonicity_margin", r.monotonicity_margin},
          {"failures", failures}};
}

json to_json(const CoalitionSolution& s) {
  json c = to_json(s.members);
  if (s.with_supplier) c = to_json(s.members.with(0));
  return {{"coalition", c},           {"quantities", s.quantities}, {"total", s.total},
          {"unit_price", s.unit_price}, {"value", s.value},         {"alternates", s.alternates}};
}

}  // namespace rschain::json
