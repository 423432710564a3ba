#pragma once

#include <string>
#include <vector>

#include "rschain/coalition.hpp"

namespace rschain::cli {

/// Fixed-point rendering with `precision` decimals; negative zero prints as 0.
std::string fixed(double x, int precision);

/// Maps -0.0 to 0.0 so JSON never carries a signed zero.
inline double tidy(double x) { return x == 0.0 ? 0.0 : x; }
std::vector<double> tidy(std::vector<double> xs);

std::string join(const std::vector<std::string>& parts, const std::string& sep);
std::string fixed_list(const std::vector<double>& xs, int precision);

/// Plain text table: first column left aligned, the rest right aligned.
class Table {
 public:
  explicit Table(std::vector<std::string> header);
  void add(std::vector<std::string> row);
  std::string render(const std::string& indent = "") const;

 private:
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace rschain::cli
