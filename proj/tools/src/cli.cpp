#include "rschain/cli/cli.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rschain/errors.hpp"

namespace rschain::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read input file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::optional<double> parse_tol(const char* text) {
  const std::string s(text);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !(value > 0.0) || !std::isfinite(value)) return std::nullopt;
  return value;
}

CommandResult dispatch(const RunConfig& cfg, const std::string& input) {
  if (cfg.command == "solve") return cmd_solve(cfg, input);
  if (cfg.command == "game") return cmd_game(cfg, input);
  if (cfg.command == "core") return cmd_core(cfg, input);
  if (cfg.command == "allocate") return cmd_allocate(cfg, input);
  return cmd_verify(cfg, input);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const char* env_tol) {
  CLI::App app{"Retailer-supplier chain solver: coalition values, core analysis and profit allocations", "rs-chain"};
  RunConfig cfg;
  std::string format = "table";
  app.add_option("command", cfg.command, "solve | game | core | allocate | verify")
      ->required()
      ->check(CLI::IsMember({"solve", "game", "core", "allocate", "verify"}));
  app.add_option("--input", cfg.input_path, "situation, problem or game JSON file");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"table", "json"}));
  app.add_option("--precision", cfg.precision, "decimal places in tables")->check(CLI::Range(0, 12));
  app.add_option("--seed", cfg.seed, "seed of the random instances (verify)");
  app.add_option("--instances", cfg.instances, "number of random instances (verify)")->check(CLI::Range(0, 100000));
  app.add_option("--max-n", cfg.max_n, "largest random instance size (verify)")->check(CLI::Range(1, 6));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return static_cast<int>(ExitCode::ok);
  } catch (const CLI::ParseError& e) {
    err << "rs-chain: " << e.what() << "\n";
    return static_cast<int>(ExitCode::input_error);
  }
  cfg.format = format == "json" ? Format::json : Format::table;

  if (env_tol) {
    const auto tol = parse_tol(env_tol);
    if (!tol) {
      err << "rs-chain: RS_CHAIN_TOL must be a positive number, got '" << env_tol << "'\n";
      return static_cast<int>(ExitCode::input_error);
    }
    cfg.tol = *tol;
  }
  if (cfg.input_path.empty() && cfg.command != "verify") {
    err << "rs-chain: --input is required for " << cfg.command << "\n";
    return static_cast<int>(ExitCode::input_error);
  }

  try {
    const std::string input = cfg.input_path.empty() ? std::string() : read_file(cfg.input_path);
    const CommandResult result = dispatch(cfg, input);
    out << result.output;
    return static_cast<int>(result.code);
  } catch (const ModelAssumptionError& e) {
    err << "rs-chain: invalid input situation\n";
    for (const auto& v : e.violations()) err << "  - " << v << "\n";
  } catch (const ParseError& e) {
    err << "rs-chain: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "rs-chain: " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    err << "rs-chain: " << e.what() << "\n";
  }
  return static_cast<int>(ExitCode::input_error);
}

}  // namespace rschain::cli
