#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rschain/cli/cli.hpp"
#include "rschain/cli/verify.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kRel = 1e-6;

// Every key of `want` must be present in `got` with a matching value.
// Arrays must have the same length. Numbers match to kRel relative.
void subset_match(const json& got, const json& want, const std::string& path, std::vector<std::string>& diffs) {
  if (want.is_object()) {
    if (!got.is_object()) {
      diffs.push_back(path + ": expected object");
      return;
    }
    for (const auto& [k, v] : want.items()) {
      if (!got.contains(k))
        diffs.push_back(path + "." + k + ": missing");
      else
        subset_match(got[k], v, path + "." + k, diffs);
    }
  } else if (want.is_array()) {
    if (!got.is_array() || got.size() != want.size()) {
      diffs.push_back(path + ": array length differs");
      return;
    }
    for (std::size_t i = 0; i < want.size(); ++i)
      subset_match(got[i], want[i], path + "[" + std::to_string(i) + "]", diffs);
  } else if (want.is_number()) {
    if (!got.is_number()) {
      diffs.push_back(path + ": expected a number");
      return;
    }
    const double g = got.get<double>();
    const double w = want.get<double>();
    if (std::abs(g - w) > kRel * std::max(1.0, std::abs(w)))
      diffs.push_back(path + ": got " + got.dump() + ", want " + want.dump());
  } else if (got != want) {
    diffs.push_back(path + ": got " + got.dump() + ", want " + want.dump());
  }
}

json load(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in);
  return json::parse(in);
}

}  // namespace

TEST_CASE("command output matches the golden files") {
  int files = 0;
  for (const auto& entry : fs::directory_iterator(RSCHAIN_GOLDEN_DIR)) {
    const json g = load(entry.path());
    if (!g.contains("command")) continue;
    ++files;
    CAPTURE(entry.path().filename().string());
    std::ostringstream out, err;
    const std::string input = std::string(RSCHAIN_DATA_DIR) + "/" + g["input"].get<std::string>();
    const int code = rschain::cli::run({g["command"].get<std::string>(), "--input", input, "--format", "json"}, out, err);
    REQUIRE(code == 0);
    std::vector<std::string> diffs;
    subset_match(json::parse(out.str()), g["expect"], "$", diffs);
    for (const auto& d : diffs) FAIL_CHECK(d);
  }
  CHECK(files >= 9);
}

TEST_CASE("comparer catches mismatches") {
  std::vector<std::string> diffs;
  subset_match(json{{"a", 1.0}, {"b", {1, 2}}}, json{{"a", 1.0000001}}, "$", diffs);
  CHECK(diffs.empty());
  subset_match(json{{"a", 1.0}}, json{{"a", 1.01}}, "$", diffs);
  subset_match(json{{"a", 1.0}}, json{{"c", 1}}, "$", diffs);
  subset_match(json{{"b", {1, 2}}}, json{{"b", {1}}}, "$", diffs);
  subset_match(json{{"t", true}}, json{{"t", false}}, "$", diffs);
  CHECK(diffs.size() == 4);
}

TEST_CASE("recorded seed of the distinct-beta search") {
  const json g = load(fs::path(RSCHAIN_GOLDEN_DIR) / "distinct_beta_seed.json");
  const auto found = rschain::cli::find_distinct_beta_instance(1, 200);
  REQUIRE(found);
  CHECK(found->seed == g["seed"].get<std::uint64_t>());
  CHECK(found->n == g["n"].get<int>());
}
