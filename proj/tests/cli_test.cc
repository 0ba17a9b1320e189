#include "cli.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "cssbkit/game.h"
#include "cssbkit/path.h"
#include "support/test_support.h"

namespace cssbkit::cli {
namespace {

using testing::DataPath;
using testing::LoadTestGame;

RunConfig Config(Command command, const std::string& game, Mode mode,
                 std::size_t prefix, std::size_t cycle) {
  RunConfig c;
  c.command = command;
  c.game_file = DataPath(game);
  c.mode = mode;
  c.max_prefix = prefix;
  c.max_cycle = cycle;
  return c;
}

std::vector<std::string> Literals(const nlohmann::ordered_json& list) {
  std::vector<std::string> out;
  for (const auto& entry : list) out.push_back(entry["path"].get<std::string>());
  return out;
}

bool Contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::string WriteTemp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("cssbkit_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

TEST(CliSolve, PrisonersDilemmaCoalition) {
  const auto r = cmd_solve(Config(Command::kSolve, "pd.json", Mode::kCoalitional, 1, 1));
  EXPECT_EQ(r.exit_code, kExitOk);
  const auto paths = Literals(r.machine["pcep"]);
  EXPECT_TRUE(Contains(paths, "| C,C"));
  EXPECT_FALSE(Contains(paths, "| D,D"));
  EXPECT_NE(r.text.find("PCEP restricted to universe(P=1,K=1)"), std::string::npos);
}

TEST(CliSolve, PrisonersDilemmaNash) {
  const auto r = cmd_solve(Config(Command::kSolve, "pd.json", Mode::kNash, 1, 1));
  EXPECT_TRUE(Contains(Literals(r.machine["pcep"]), "| D,D"));
}

TEST(CliSolve, CoordinationSingleton) {
  const auto r = cmd_solve(Config(Command::kSolve, "coord.json", Mode::kCoalitional, 2, 2));
  EXPECT_EQ(Literals(r.machine["pcep"]), std::vector<std::string>{"| A,A"});
  EXPECT_LE(r.machine["trace"]["rounds"].get<std::size_t>(), 4u);
}

TEST(CliSolve, MachineOutputRoundTrips) {
  const StageGame game = LoadTestGame("pd.json");
  const auto r = cmd_solve(Config(Command::kSolve, "pd.json", Mode::kCoalitional, 1, 2));
  const auto reparsed = nlohmann::ordered_json::parse(r.Render(Format::kMachine));
  ASSERT_EQ(reparsed, r.machine);
  std::vector<std::string> literals = Literals(reparsed["pcep"]);
  for (const auto& p : reparsed["optimal_penal_code"]) {
    literals.push_back(p["path"].get<std::string>());
  }
  ASSERT_FALSE(literals.empty());
  for (const auto& literal : literals) {
    const Path x = parse_path(game, literal);
    EXPECT_EQ(format_path(game, x), literal);
    EXPECT_EQ(parse_path(game, format_path(game, x)), x);
  }
  EXPECT_EQ(reparsed["certificates"].size(), reparsed["pcep"].size());
  EXPECT_TRUE(std::is_sorted(literals.begin(),
                             literals.begin() + reparsed["pcep"].size()));
}

TEST(CliSolve, ExactAndApproximatePayoffs) {
  const auto r = cmd_solve(Config(Command::kSolve, "pd.json", Mode::kCoalitional, 1, 1));
  for (const auto& entry : r.machine["pcep"]) {
    if (entry["path"] == "C,D | C,C") {
      EXPECT_EQ(entry["payoff"]["exact"][1], "12/5");
      EXPECT_EQ(entry["payoff"]["approx"][1], "2.4~");
    }
  }
}

TEST(CliVerify, AcceptAndReject) {
  auto c = Config(Command::kVerify, "pd.json", Mode::kCoalitional, 2, 2);
  c.path = "| C,C";
  c.punish = {"C,D | C,C", "D,C | C,C"};
  const auto accept = cmd_verify(c);
  EXPECT_EQ(accept.exit_code, kExitOk);
  EXPECT_EQ(accept.machine["verdict"], "ACCEPT");

  c.punish = {"| D,D", "| D,D"};
  const auto reject = cmd_verify(c);
  EXPECT_EQ(reject.exit_code, kExitNegative);
  EXPECT_EQ(reject.machine["verdict"], "REJECT");
  const auto& ce = reject.machine["counterexample"];
  EXPECT_EQ(ce["state"], 1);
  EXPECT_EQ(ce["deviation"]["coalition"], (nlohmann::ordered_json{"1", "2"}));
  EXPECT_EQ(ce["deviation"]["actions"], (nlohmann::ordered_json{"C", "C"}));
  EXPECT_EQ(ce["margins"][0]["deviation_value"], "7/5");
  EXPECT_EQ(ce["margins"][0]["on_path_value"], "1");
}

TEST(CliVerify, StrongNashProfileWithItself) {
  auto c = Config(Command::kVerify, "coord.json", Mode::kCoalitional, 2, 2);
  c.path = "| A,A";
  c.punish = {"| A,A", "| A,A"};
  EXPECT_EQ(cmd_verify(c).exit_code, kExitOk);
}

TEST(CliVerify, WrongFamilySizeIsUsageError) {
  auto c = Config(Command::kVerify, "pd.json", Mode::kCoalitional, 2, 2);
  c.path = "| C,C";
  c.punish = {"| D,D"};
  EXPECT_EQ(RunGuarded(c).exit_code, kExitUsage);
}

TEST(CliStability, DefectionIsNotInternallyStable) {
  auto c = Config(Command::kStability, "pd.json", Mode::kCoalitional, 1, 1);
  c.sb_file = DataPath("pd_sb_dd.txt");
  const auto r = cmd_stability(c);
  EXPECT_EQ(r.exit_code, kExitNegative);
  EXPECT_FALSE(r.machine["internal"]["stable"].get<bool>());
}

TEST(CliStability, SolveOutputIsStable) {
  const auto solved =
      cmd_solve(Config(Command::kSolve, "coord.json", Mode::kCoalitional, 1, 2));
  std::string sb;
  for (const auto& literal : Literals(solved.machine["pcep"])) sb += literal + "\n";
  auto c = Config(Command::kStability, "coord.json", Mode::kCoalitional, 1, 2);
  c.sb_file = WriteTemp("coord_sb.txt", sb);
  const auto r = cmd_stability(c);
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_TRUE(r.machine["internal"]["stable"].get<bool>());
  EXPECT_TRUE(r.machine["external_relative"]["stable"].get<bool>());
}

TEST(CliStability, WholeUniverseIsExternallyStable) {
  const StageGame game = LoadTestGame("pd.json");
  std::string sb;
  for (const Path& x : enumerate_universe(game, 0, 1)) sb += format_path(game, x) + "\n";
  auto c = Config(Command::kStability, "pd.json", Mode::kCoalitional, 0, 1);
  c.sb_file = WriteTemp("pd_universe.txt", sb);
  const auto r = cmd_stability(c);
  EXPECT_TRUE(r.machine["external_relative"]["stable"].get<bool>());
  EXPECT_TRUE(r.machine["external_relative"]["dominated"].empty());
}

TEST(CliStability, SbOutsideUniverseIsRejected) {
  auto c = Config(Command::kStability, "pd.json", Mode::kCoalitional, 0, 1);
  c.sb_file = WriteTemp("pd_outside.txt", "C,C | D,D\n");
  EXPECT_EQ(RunGuarded(c).exit_code, kExitUsage);
}

TEST(CliCompare, CoalitionalWithinNash) {
  const auto r = cmd_compare(Config(Command::kCompare, "pd.json", Mode::kCoalitional, 1, 1));
  EXPECT_TRUE(r.machine["contained"].get<bool>());
  EXPECT_TRUE(r.machine["coalition_only"].empty());
  EXPECT_EQ(Literals(r.machine["nash_only"]), std::vector<std::string>{"| D,D"});
}

TEST(CliErrors, ExitCodes) {
  auto c = Config(Command::kSolve, "pd.json", Mode::kCoalitional, 2, 2);
  c.game_file = WriteTemp("broken.json", "{\"players\": [\"1\"");
  const auto parse = RunGuarded(c);
  EXPECT_EQ(parse.exit_code, kExitParseError);
  EXPECT_EQ(parse.machine["error"], "parse");

  c = Config(Command::kSolve, "pd.json", Mode::kCoalitional, 2, 2);
  c.cap = 10;
  EXPECT_EQ(RunGuarded(c).exit_code, kExitCapExceeded);

  c = Config(Command::kVerify, "pd.json", Mode::kCoalitional, 2, 2);
  c.path = "| C,X";
  c.punish = {"| D,D", "| D,D"};
  EXPECT_EQ(RunGuarded(c).exit_code, kExitParseError);
}

TEST(CliCap, EnvironmentOverride) {
  ::unsetenv("CSSBKIT_CAP");
  EXPECT_EQ(DefaultCap(), kDefaultUniverseCap);
  ::setenv("CSSBKIT_CAP", "1234", 1);
  EXPECT_EQ(DefaultCap(), 1234u);
  ::setenv("CSSBKIT_CAP", "junk", 1);
  EXPECT_EQ(DefaultCap(), kDefaultUniverseCap);
  ::unsetenv("CSSBKIT_CAP");
}

}  // namespace
}  // namespace cssbkit::cli
