#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace graphon::cli {

enum class Command { lambda_max, beta, verify, from_graph, mixing, round };

/// Parses the command-line spelling ("lambda-max", "from-graph", ...).
std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command c);

enum class BetaMethod { automatic, exhaustive, rounding, both };
std::optional<BetaMethod> parse_beta_method(const std::string& name);

struct RunConfig {
  Command command = Command::lambda_max;
  std::string input;
  /// Grid resolution for named families. Grid kernels keep their native
  /// size unless this was given explicitly.
  std::size_t grid = 128;
  bool grid_explicit = false;
  double tol = 1e-10;
  std::size_t max_iter = 1'000'000;
  std::uint64_t seed = 42;
  std::size_t restarts = 20;
  std::string output;  // empty: stdout
  std::string csv;     // empty: no CSV
  BetaMethod method = BetaMethod::automatic;
  std::size_t blocks = 1;
  std::size_t levels = 4;
  /// Report runtime_ms as 0 so repeated runs are byte-identical.
  bool no_timing = false;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCheckFailed = 2;

/// Runs one command. The report goes to config.output, or to `out` when no
/// output path is set; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);
int run(const RunConfig& config);

}  // namespace graphon::cli
