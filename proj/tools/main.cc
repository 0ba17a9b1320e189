#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "cli.h"

namespace {

using cssbkit::Mode;
using cssbkit::cli::Command;
using cssbkit::cli::Format;
using cssbkit::cli::RunConfig;

void AddCommon(CLI::App* sub, RunConfig& config) {
  static const std::map<std::string, Mode> kModes{{"nash", Mode::kNash},
                                                  {"coalition", Mode::kCoalitional}};
  static const std::map<std::string, Format> kFormats{{"text", Format::kText},
                                                      {"machine", Format::kMachine}};
  sub->add_option("--game", config.game_file, "Game file (JSON)")->required();
  sub->add_option("--mode", config.mode, "Deviation structure")
      ->transform(CLI::CheckedTransformer(kModes));
  sub->add_option("--prefix", config.max_prefix, "Universe prefix bound P")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--cycle", config.max_cycle, "Universe cycle bound K")
      ->check(CLI::PositiveNumber);
  sub->add_option("--format", config.format, "Output format")
      ->transform(CLI::CheckedTransformer(kFormats));
  sub->add_option("--cap", config.cap, "Universe size cap")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coalitional equilibrium paths and stable standards of behavior"};
  app.require_subcommand(1);

  RunConfig config;
  config.cap = cssbkit::cli::DefaultCap();

  auto* solve = app.add_subcommand("solve", "Largest self-generating set in a universe");
  AddCommon(solve, config);

  auto* verify = app.add_subcommand("verify", "Check a path against a punishment family");
  AddCommon(verify, config);
  verify->add_option("--path", config.path, "Path literal")->required();
  verify->add_option("--punish", config.punish, "Punishment path, one per player")
      ->required()
      ->take_all();

  auto* stability = app.add_subcommand("stability", "Internal and external stability of an SB");
  AddCommon(stability, config);
  stability->add_option("--sb", config.sb_file, "Standard of behavior file")->required();

  auto* compare = app.add_subcommand("compare", "Nash against coalitional fixed points");
  AddCommon(compare, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cssbkit::cli::kExitUsage;
  }

  if (solve->parsed()) config.command = Command::kSolve;
  if (verify->parsed()) config.command = Command::kVerify;
  if (stability->parsed()) config.command = Command::kStability;
  if (compare->parsed()) config.command = Command::kCompare;

  const auto report = cssbkit::cli::RunGuarded(config);
  const std::string rendered = report.Render(config.format);
  if (report.exit_code > cssbkit::cli::kExitNegative && config.format == Format::kText) {
    std::cerr << rendered;
  } else {
    std::cout << rendered;
  }
  return report.exit_code;
}
