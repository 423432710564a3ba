#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rschain::cli {

enum class ExitCode : int { ok = 0, property_failure = 1, input_error = 2 };

enum class Format { table, json };

struct RunConfig {
  std::string command;  ///< solve | game | core | allocate | verify
  std::string input_path;
  Format format = Format::table;
  int precision = 6;
  std::uint64_t seed = 1;
  int instances = 50;
  int max_n = 3;
  double tol = 1e-7;
};

/// Result of one command: the full stdout text and the exit code. Nothing
/// is printed until the command has finished.
struct CommandResult {
  ExitCode code = ExitCode::ok;
  std::string output;
};

CommandResult cmd_solve(const RunConfig& cfg, const std::string& input);
CommandResult cmd_game(const RunConfig& cfg, const std::string& input);
CommandResult cmd_core(const RunConfig& cfg, const std::string& input);
CommandResult cmd_allocate(const RunConfig& cfg, const std::string& input);
/// `input` may be empty (no --input given).
CommandResult cmd_verify(const RunConfig& cfg, const std::string& input);

/// Full command line handling. `args` excludes the program name. `env_tol`
/// is the value of RS_CHAIN_TOL, if set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const char* env_tol = nullptr);

}  // namespace rschain::cli
