#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rschain {

/// A quantity outside the domain of a curve (negative order sizes).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A curve never reaches the requested level.
class NoCrossingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: empty coalitions, length mismatches, player caps.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input violates the standing assumptions of the retailer-supplier model.
/// Carries the full list of violations.
class ModelAssumptionError : public std::runtime_error {
 public:
  explicit ModelAssumptionError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "model assumption violated";
    for (const auto& s : v) {
      out += "; ";
      out += s;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

/// A candidate (allocation or price vector) rejected by a core check.
class RejectedCandidate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed JSON input or schema violation.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rschain
