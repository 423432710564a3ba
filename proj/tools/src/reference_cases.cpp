#include "rschain/cli/reference_cases.hpp"

#include <cmath>
#include <stdexcept>

#include "rschain/json_io.hpp"

namespace rschain::cli {

namespace {

constexpr const char* kFlatThenHyperbolicW = R"(
  "w": {"domain_lo": 0.25, "segments": [
    {"lo": 0.25, "hi": 1, "alpha": 5, "beta": 0, "gamma": 0},
    {"lo": 1, "hi": "inf", "alpha": 2, "beta": 0, "gamma": 3}]})";

std::string linear_price(double a, double b) {
  return R"({"domain_lo": 0, "segments": [{"lo": 0, "hi": "inf", "alpha": )" + json::json(a).dump() +
         R"(, "beta": )" + json::json(-b).dump() + R"(, "gamma": 0}]})";
}

std::string pair_input(const std::string& c, const std::string& w, const std::string& p1, const std::string& p2) {
  return "{\"c\": " + c + "," + w + ",\n  \"retailers\": [\n    {\"id\": 1, \"p\": " + p1 +
         "},\n    {\"id\": 2, \"p\": " + p2 + "}]}\n";
}

std::vector<ReferenceCase> make_cases() {
  std::vector<ReferenceCase> out;

  ReferenceCase unique;
  unique.name = "single-unique";
  unique.summary = "one retailer, p = 7 - q against w = 2 + 3/q";
  unique.input = std::string("{\"c\": 2,") + kFlatThenHyperbolicW + ",\n  \"p\": " + linear_price(7, 1) + "}\n";
  unique.maximizers = {2.5};
  unique.supplier_profits = {3.0};
  unique.value = 3.25;
  unique.crossing = (5.0 + std::sqrt(13.0)) / 2.0;
  out.push_back(unique);

  ReferenceCase two;
  two.name = "single-two-optima";
  two.summary = "one retailer with two optimal order sizes";
  two.input = R"({"c": 1,
  "w": {"domain_lo": 0, "segments": [
    {"lo": 0, "hi": 1, "alpha": 4, "beta": 0, "gamma": 0},
    {"lo": 1, "hi": 2, "alpha": 3, "beta": 0, "gamma": 1},
    {"lo": 2, "hi": 2.5, "alpha": 2.25, "beta": 0, "gamma": 2.5},
    {"lo": 2.5, "hi": "inf", "alpha": 3.25, "beta": 0, "gamma": 0}]},
  "p": {"domain_lo": 0, "segments": [
    {"lo": 0, "hi": 1, "alpha": 5, "beta": 0, "gamma": 0},
    {"lo": 1, "hi": 2, "alpha": 6, "beta": -1, "gamma": 0},
    {"lo": 2, "hi": "inf", "alpha": 5, "beta": -0.5, "gamma": 0}]}}
)";
  two.maximizers = {1.5, 2.5};
  two.supplier_profits = {4.0, 5.625};
  two.value = 1.25;
  two.crossing = 3.5;
  out.push_back(two);

  ReferenceCase convex;
  convex.name = "pair-convex";
  convex.summary = "two retailers, p_i = 7 - q and 8 - q, w = 2 + 3/q";
  convex.input = pair_input("2", kFlatThenHyperbolicW, linear_price(7, 1), linear_price(8, 1));
  convex.values = {0, 3.25, 6, 6.25, 9, 12.25, 15.25};
  convex.beta = 1.5;
  convex.mgpc = {3, 4.75, 7.5};
  convex.altruistic = {0, 6.25, 9};
  convex.shapley = {2, 5.25, 8};
  convex.shapley_in_core = true;
  out.push_back(convex);

  ReferenceCase steep;
  steep.name = "pair-steep";
  steep.summary = "the convex pair with w = 9/2 + 1/(2q) beyond q = 1";
  steep.input = pair_input("2", R"(
  "w": {"domain_lo": 0.25, "segments": [
    {"lo": 0.25, "hi": 1, "alpha": 5, "beta": 0, "gamma": 0},
    {"lo": 1, "hi": "inf", "alpha": 4.5, "beta": 0, "gamma": 0.5}]})",
                           linear_price(7, 1), linear_price(8, 1));
  steep.values = {0, 1.0625, 2.5625, 6.25, 9, 4.125, 15.25};
  steep.beta = 5.1875;
  steep.mgpc = {10.375, 1.0625, 3.8125};
  steep.altruistic = {0, 6.25, 9};
  steep.shapley = {5.0 + 31.0 / 48.0, 3.0 + 71.0 / 96.0, 5.0 + 83.0 / 96.0};
  steep.shapley_in_core = true;
  out.push_back(steep);

  ReferenceCase bulk;
  bulk.name = "pair-bulk";
  bulk.summary = "two identical retailers, p = 50 - q/2, three-piece discount schedule";
  bulk.input = pair_input("1.8", R"(
  "w": {"domain_lo": 0, "segments": [
    {"lo": 0, "hi": 10, "alpha": 11, "beta": 0, "gamma": 0},
    {"lo": 10, "hi": 100, "alpha": 1, "beta": 0, "gamma": 100},
    {"lo": 100, "hi": "inf", "alpha": 2, "beta": 0, "gamma": 0}]})",
                          linear_price(50, 0.5), linear_price(50, 0.5));
  bulk.values = {0, 1100.5, 1100.5, 1161.62, 1161.62, 2301, 2323.24};
  bulk.beta = 11.12;
  bulk.mgpc = {22.24, 1150.5, 1150.5};
  bulk.altruistic = {0, 1161.62, 1161.62};
  bulk.shapley = {27.0 + 59.0 / 75.0, 1147.0 + 109.0 / 150.0, 1147.0 + 109.0 / 150.0};
  bulk.shapley_in_core = false;
  bulk.price_caps = {3.0 + 82.0 / 1205.0, 3.0 + 82.0 / 1205.0};
  bulk.pair_price_cap = 4.0 + 74.0 / 1205.0;
  out.push_back(bulk);

  return out;
}

}  // namespace

RSSituation ReferenceCase::situation() const { return json::any_situation_from_json(json::parse(input)); }

const std::vector<ReferenceCase>& reference_cases() {
  static const std::vector<ReferenceCase> cases = make_cases();
  return cases;
}

const ReferenceCase& reference_case(std::string_view name) {
  for (const auto& c : reference_cases())
    if (c.name == name) return c;
  throw std::out_of_range("unknown reference case '" + std::string(name) + "'");
}

}  // namespace rschain::cli
