#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rschain/rs_game.hpp"
#include "rschain/rs_model.hpp"
#include "rschain/tolerance.hpp"

namespace rschain::cli {

/// Running pass/fail count of one property.
struct PropertyTally {
  std::string name;
  long checked = 0;
  long failed = 0;
  double worst = 0.0;  ///< largest residual seen, meaning is per property
  std::string first_failure;

  void record(bool ok, double residual, const std::string& context);
  bool pass() const { return failed == 0; }
};

/// Ordered collection of tallies keyed by property name.
class PropertySuite {
 public:
  PropertyTally& operator[](const std::string& name);
  const std::vector<PropertyTally>& tallies() const { return tallies_; }
  bool pass() const;
  long failures() const;

 private:
  std::vector<PropertyTally> tallies_;
};

struct SweepOptions {
  std::uint64_t seed = 1;
  int instances = 50;
  int max_n = 3;
  /// Candidate allocations per instance for the reduced/full core comparison.
  int candidates = 10000;
  double tol = kCompareTol;
};

/// Seed of instance k of a sweep.
std::uint64_t instance_seed(std::uint64_t seed, int k);

/// Retailer count of instance k: cycles through 1..max_n.
int instance_size(int k, int max_n);

/// Every per-instance property on one situation and its game. `label`
/// prefixes failure messages.
void check_instance(const RSSituation& sit, const RSGame& game, const SweepOptions& options, std::mt19937_64& rng,
                    const std::string& label, PropertySuite& suite);

/// check_instance on `instances` seeded random situations.
void random_sweep(const SweepOptions& options, PropertySuite& suite);

/// Known values of the built-in reference cases, relative tolerance 1e-6.
void check_references(PropertySuite& suite, double tol = kCompareTol);

/// Whether each allocation fails exactly its designated axiom.
void check_independence(PropertySuite& suite, double tol = kCompareTol);

/// First seed in [first, first + cap) whose random two-retailer game has
/// distinct per-retailer betas.
struct DistinctBetaInstance {
  std::uint64_t seed = 0;
  int n = 2;
  RSGame game;
};
std::optional<DistinctBetaInstance> find_distinct_beta_instance(std::uint64_t first = 1, int cap = 200);

/// Relative closeness used for reference values.
inline constexpr double kReferenceTol = 1e-6;
bool close_rel(double got, double want, double rel = kReferenceTol);

}  // namespace rschain::cli
