#ifndef CSSBKIT_TOOLS_CLI_H_
#define CSSBKIT_TOOLS_CLI_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cssbkit/path.h"
#include "cssbkit/situations.h"

namespace cssbkit::cli {

enum class Command { kSolve, kVerify, kStability, kCompare };
enum class Format { kText, kMachine };

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;     // verify rejected / not stable
inline constexpr int kExitParseError = 2;
inline constexpr int kExitCapExceeded = 3;
inline constexpr int kExitUsage = 4;

struct RunConfig {
  Command command = Command::kSolve;
  std::string game_file;
  Mode mode = Mode::kCoalitional;
  std::size_t max_prefix = 2;
  std::size_t max_cycle = 2;
  std::optional<std::string> sb_file;
  std::optional<std::string> path;
  std::vector<std::string> punish;
  Format format = Format::kText;
  std::size_t cap = kDefaultUniverseCap;
};

struct RunReport {
  int exit_code = kExitOk;
  std::string text;
  nlohmann::ordered_json machine;

  std::string Render(Format format) const;
};

std::string_view CommandName(Command command);

// Each command loads the game file itself. ParseError, CapExceeded and
// std::invalid_argument propagate to the caller.
RunReport cmd_solve(const RunConfig& config);
RunReport cmd_verify(const RunConfig& config);
RunReport cmd_stability(const RunConfig& config);
RunReport cmd_compare(const RunConfig& config);

RunReport Run(const RunConfig& config);

// Runs the command and maps exceptions to exit codes and an error report.
RunReport RunGuarded(const RunConfig& config);

// Cap from CSSBKIT_CAP if set and valid, else the library default.
std::size_t DefaultCap();

}  // namespace cssbkit::cli

#endif  // CSSBKIT_TOOLS_CLI_H_
