#include "cli.h"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "cssbkit/equilibrium.h"
#include "cssbkit/errors.h"
#include "cssbkit/game.h"

namespace cssbkit::cli {
namespace {

using nlohmann::ordered_json;

std::string UniverseLabel(const RunConfig& c) {
  return "universe(P=" + std::to_string(c.max_prefix) +
         ",K=" + std::to_string(c.max_cycle) + ")";
}

// Exact values plus a cosmetic decimal rendering.
ordered_json PayoffJson(const StageGame& game, const Path& x) {
  ordered_json exact = ordered_json::array();
  ordered_json approx = ordered_json::array();
  for (int i = 0; i < game.num_players(); ++i) {
    const Rat u = payoff(game, x, i);
    exact.push_back(u.ToString());
    approx.push_back(u.ToDecimal());
  }
  return {{"exact", exact}, {"approx", approx}};
}

std::string PayoffText(const StageGame& game, const Path& x) {
  std::string exact, approx;
  for (int i = 0; i < game.num_players(); ++i) {
    const Rat u = payoff(game, x, i);
    exact += (i ? ", " : "") + u.ToString();
    approx += (i ? ", " : "") + u.ToDecimal();
  }
  return "U = (" + exact + ")  [" + approx + "]";
}

// Reports list paths in literal order.
template <typename Paths>
std::vector<Path> ByLiteral(const StageGame& game, const Paths& paths) {
  std::vector<std::pair<std::string, Path>> keyed;
  for (const Path& x : paths) keyed.emplace_back(format_path(game, x), x);
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Path> out;
  for (auto& [literal, x] : keyed) out.push_back(std::move(x));
  return out;
}

ordered_json PathListJson(const StageGame& game, const PathSet& set) {
  ordered_json out = ordered_json::array();
  for (const Path& x : ByLiteral(game, set)) {
    out.push_back({{"path", format_path(game, x)}, {"payoff", PayoffJson(game, x)}});
  }
  return out;
}

void PathListText(std::ostream& os, const StageGame& game, const PathSet& set) {
  for (const Path& x : ByLiteral(game, set)) {
    os << "  " << format_path(game, x) << "    " << PayoffText(game, x) << "\n";
  }
}

std::string DeviationText(const StageGame& game, const Deviation& dev) {
  return "C=" + format_coalition(game, dev.coalition) +
         " tau=" + std::to_string(dev.period) +
         " zeta=" + format_partial(game, dev.coalition, dev.partial_profile);
}

ordered_json DeviationJson(const StageGame& game, const Deviation& dev) {
  ordered_json members = ordered_json::array();
  for (int i : dev.coalition.members()) members.push_back(game.player_name(i));
  ordered_json actions = ordered_json::array();
  for (std::size_t k = 0; k < dev.coalition.members().size(); ++k) {
    actions.push_back(
        game.action_label(dev.coalition.members()[k], dev.partial_profile[k]));
  }
  return {{"coalition", members}, {"period", dev.period}, {"actions", actions}};
}

ordered_json MarginsJson(const StageGame& game,
                         const std::vector<MemberMargin>& margins) {
  ordered_json out = ordered_json::array();
  for (const auto& m : margins) {
    out.push_back({{"player", game.player_name(m.player)},
                   {"deviation_value", m.deviation_value.ToString()},
                   {"on_path_value", m.on_path_value.ToString()}});
  }
  return out;
}

std::string MarginsText(const StageGame& game,
                        const std::vector<MemberMargin>& margins,
                        const char* relation) {
  std::string out;
  for (std::size_t k = 0; k < margins.size(); ++k) {
    const auto& m = margins[k];
    out += (k ? "; " : "") + game.player_name(m.player) + ": " +
           m.deviation_value.ToString() + " " + relation + " " +
           m.on_path_value.ToString();
  }
  return out;
}

std::string StateName(const StageGame& game, int state) {
  return state == 0 ? "x[0]" : "x[" + game.player_name(state - 1) + "]";
}

ordered_json FamilyJson(const StageGame& game, const PunishmentFamily& family) {
  ordered_json out = ordered_json::array();
  for (int i = 0; i < game.num_players(); ++i) {
    out.push_back({{"player", game.player_name(i)},
                   {"path", format_path(game, family[i])},
                   {"value", payoff(game, family[i], i).ToString()}});
  }
  return out;
}

ordered_json CertificateJson(const StageGame& game, const Certificate& cert) {
  ordered_json entries = ordered_json::array();
  for (const auto& e : cert.entries) {
    entries.push_back({{"state", e.state},
                       {"deviation", DeviationJson(game, e.deviation)},
                       {"deterrer", game.player_name(e.deterrer)},
                       {"on_path_value", e.on_path_value.ToString()},
                       {"deviation_value", e.deviation_value.ToString()}});
  }
  return {{"base", format_path(game, cert.base)}, {"entries", entries}};
}

ordered_json TraceJson(const IterationTrace& trace) {
  return {{"sizes", trace.sizes}, {"rounds", trace.rounds}};
}

std::string TraceText(const IterationTrace& trace) {
  std::string out;
  for (std::size_t k = 0; k < trace.sizes.size(); ++k) {
    out += (k ? " -> " : "") + std::to_string(trace.sizes[k]);
  }
  return out + " (" + std::to_string(trace.rounds) + " shrinking rounds)";
}

ordered_json ConfigJson(const RunConfig& c) {
  ordered_json out{{"command", std::string(CommandName(c.command))},
                   {"game", c.game_file},
                   {"mode", std::string(ModeName(c.mode))},
                   {"prefix", c.max_prefix},
                   {"cycle", c.max_cycle},
                   {"cap", c.cap}};
  if (c.sb_file) out["sb"] = *c.sb_file;
  if (c.path) out["path"] = *c.path;
  if (!c.punish.empty()) out["punish"] = c.punish;
  return out;
}

void Header(std::ostream& os, const RunConfig& c, const StageGame& game) {
  os << "command: " << CommandName(c.command) << "\n"
     << "game: " << c.game_file << " (" << game.num_players() << " players, "
     << game.num_profiles() << " profiles, delta " << game.delta() << ")\n"
     << "mode: " << ModeName(c.mode) << "\n";
}

}  // namespace

std::string_view CommandName(Command command) {
  switch (command) {
    case Command::kSolve: return "solve";
    case Command::kVerify: return "verify";
    case Command::kStability: return "stability";
    case Command::kCompare: return "compare";
  }
  return "?";
}

std::string RunReport::Render(Format format) const {
  if (format == Format::kMachine) return machine.dump(2) + "\n";
  return text;
}

std::size_t DefaultCap() {
  if (const char* env = std::getenv("CSSBKIT_CAP")) {
    try {
      std::size_t used = 0;
      const unsigned long long value = std::stoull(env, &used);
      if (used == std::string(env).size() && value >= 1) return value;
    } catch (const std::exception&) {
    }
  }
  return kDefaultUniverseCap;
}

RunReport cmd_solve(const RunConfig& config) {
  const StageGame game = load_game(config.game_file);
  const PathSet universe = enumerate_universe(game, config.max_prefix,
                                              config.max_cycle, config.cap);
  const IterationTrace trace = fixed_point(game, config.mode, universe);
  const PathSet& pcep = trace.final_set;

  RunReport report;
  std::ostringstream os;
  Header(os, config, game);
  os << UniverseLabel(config) << ": " << universe.size() << " paths\n"
     << "iteration: " << TraceText(trace) << "\n"
     << "PCEP restricted to " << UniverseLabel(config) << ": " << pcep.size()
     << " paths\n";
  PathListText(os, game, pcep);

  ordered_json& m = report.machine;
  m["config"] = ConfigJson(config);
  m["universe_size"] = universe.size();
  m["trace"] = TraceJson(trace);
  m["pcep"] = PathListJson(game, pcep);

  if (!pcep.empty()) {
    const PunishmentFamily family = optimal_penal_code(game, config.mode, pcep);
    os << "optimal penal code:\n";
    for (int i = 0; i < game.num_players(); ++i) {
      os << "  " << game.player_name(i) << ": " << format_path(game, family[i])
         << "    U_" << game.player_name(i) << " = "
         << payoff(game, family[i], i) << "\n";
    }
    ordered_json certificates = ordered_json::array();
    std::size_t checked = 0;
    for (const Path& x : ByLiteral(game, pcep)) {
      const Verification v = verify_family(game, config.mode, x, family);
      if (!v.accepted) {
        // optimal_penal_code already guarantees this cannot happen.
        throw std::logic_error("optimal penal code failed to certify " +
                               format_path(game, x));
      }
      checked += v.certificate->entries.size();
      certificates.push_back(CertificateJson(game, *v.certificate));
    }
    os << "universal certificate: all " << pcep.size()
       << " paths verified against the single family (" << checked
       << " deterred deviations; --format machine lists them)\n";
    m["optimal_penal_code"] = FamilyJson(game, family);
    m["certificates"] = std::move(certificates);
  } else {
    os << "optimal penal code: none (empty fixed point)\n";
    m["optimal_penal_code"] = nullptr;
    m["certificates"] = ordered_json::array();
  }
  report.text = os.str();
  return report;
}

RunReport cmd_verify(const RunConfig& config) {
  const StageGame game = load_game(config.game_file);
  if (!config.path) throw std::invalid_argument("verify needs --path");
  if (config.punish.size() != static_cast<std::size_t>(game.num_players())) {
    throw std::invalid_argument("verify needs one --punish per player (" +
                                std::to_string(game.num_players()) + ")");
  }
  const Path x0 = parse_path(game, *config.path);
  PunishmentFamily family;
  for (const auto& literal : config.punish) {
    family.paths.push_back(parse_path(game, literal));
  }
  const Verification v = verify_family(game, config.mode, x0, family);

  RunReport report;
  std::ostringstream os;
  Header(os, config, game);
  os << "x[0]: " << format_path(game, x0) << "    " << PayoffText(game, x0) << "\n";
  for (int i = 0; i < game.num_players(); ++i) {
    os << StateName(game, i + 1) << ": " << format_path(game, family[i]) << "    "
       << PayoffText(game, family[i]) << "\n";
  }
  ordered_json& m = report.machine;
  m["config"] = ConfigJson(config);
  m["base"] = format_path(game, x0);
  m["family"] = FamilyJson(game, family);
  if (v.accepted) {
    os << "verdict: ACCEPT\n";
    for (const auto& e : v.certificate->entries) {
      os << "  " << StateName(game, e.state) << " " << DeviationText(game, e.deviation)
         << " deterred by " << game.player_name(e.deterrer) << ": "
         << e.on_path_value << " >= " << e.deviation_value << "\n";
    }
    m["verdict"] = "ACCEPT";
    m["certificate"] = CertificateJson(game, *v.certificate);
  } else {
    const Counterexample& c = *v.counterexample;
    os << "verdict: REJECT\n"
       << "  counterexample: k=" << c.state << " (" << StateName(game, c.state)
       << ") "
       << DeviationText(game, c.deviation) << "; "
       << MarginsText(game, c.margins, ">") << "\n";
    m["verdict"] = "REJECT";
    m["counterexample"] = {{"state", c.state},
                           {"deviation", DeviationJson(game, c.deviation)},
                           {"margins", MarginsJson(game, c.margins)}};
    report.exit_code = kExitNegative;
  }
  report.text = os.str();
  return report;
}

RunReport cmd_stability(const RunConfig& config) {
  const StageGame game = load_game(config.game_file);
  if (!config.sb_file) throw std::invalid_argument("stability needs --sb");
  const PathSet sb = load_path_set(game, *config.sb_file);
  const PathSet universe = enumerate_universe(game, config.max_prefix,
                                              config.max_cycle, config.cap);
  if (!std::includes(universe.begin(), universe.end(), sb.begin(), sb.end())) {
    throw std::invalid_argument("standard of behavior is not contained in " +
                                UniverseLabel(config));
  }
  const InternalStability internal = internally_stable(game, config.mode, sb);
  const ExternalStability external =
      externally_stable_relative(game, config.mode, sb, universe);

  RunReport report;
  std::ostringstream os;
  Header(os, config, game);
  os << "standard of behavior: " << sb.size() << " paths\n";
  PathListText(os, game, sb);
  os << "internal stability: " << (internal.stable ? "true" : "false") << "\n";
  ordered_json violations = ordered_json::array();
  std::vector<DominatedPath> sorted_violations = internal.violations;
  std::sort(sorted_violations.begin(), sorted_violations.end(),
            [&](const DominatedPath& a, const DominatedPath& b) {
              return format_path(game, a.path) < format_path(game, b.path);
            });
  for (const auto& v : sorted_violations) {
    os << "  dominated: " << format_path(game, v.path) << " by "
       << DeviationText(game, v.witness.deviation) << "; "
       << MarginsText(game, v.witness.margins, ">") << "\n";
    violations.push_back({{"path", format_path(game, v.path)},
                          {"deviation", DeviationJson(game, v.witness.deviation)},
                          {"margins", MarginsJson(game, v.witness.margins)}});
  }
  os << "external stability (relative to " << UniverseLabel(config)
     << ", " << universe.size() << " paths): "
     << (external.stable ? "true" : "false") << "\n";
  ordered_json undominated = ordered_json::array();
  for (const Path& x : ByLiteral(game, external.undominated)) {
    os << "  undominated outside SB: " << format_path(game, x) << "\n";
    undominated.push_back(format_path(game, x));
  }
  ordered_json dominated = ordered_json::array();
  for (const auto& d : external.dominated) {
    dominated.push_back({{"path", format_path(game, d.path)},
                         {"deviation", DeviationJson(game, d.witness.deviation)},
                         {"margins", MarginsJson(game, d.witness.margins)}});
  }
  os << "  dominated outside SB: " << external.dominated.size() << " paths\n";
  auto by_path = [](const ordered_json& a, const ordered_json& b) {
    return a["path"].get<std::string>() < b["path"].get<std::string>();
  };
  std::sort(dominated.begin(), dominated.end(), by_path);

  ordered_json& m = report.machine;
  m["config"] = ConfigJson(config);
  m["sb"] = PathListJson(game, sb);
  m["internal"] = {{"stable", internal.stable}, {"violations", violations}};
  m["external_relative"] = {{"universe_size", universe.size()},
                            {"stable", external.stable},
                            {"undominated", undominated},
                            {"dominated", dominated}};
  report.text = os.str();
  if (!internal.stable || !external.stable) report.exit_code = kExitNegative;
  return report;
}

RunReport cmd_compare(const RunConfig& config) {
  const StageGame game = load_game(config.game_file);
  const PathSet universe = enumerate_universe(game, config.max_prefix,
                                              config.max_cycle, config.cap);
  const ModeComparison cmp = compare_modes(game, universe);

  RunReport report;
  std::ostringstream os;
  os << "command: compare\n"
     << "game: " << config.game_file << "\n"
     << UniverseLabel(config) << ": " << universe.size() << " paths\n"
     << "nash fixed point: " << cmp.nash.final_set.size() << " paths, "
     << TraceText(cmp.nash) << "\n";
  PathListText(os, game, cmp.nash.final_set);
  os << "coalition fixed point: " << cmp.coalitional.final_set.size()
     << " paths, " << TraceText(cmp.coalitional) << "\n";
  PathListText(os, game, cmp.coalitional.final_set);
  os << "nash only: " << cmp.nash_only.size() << " paths\n";
  PathListText(os, game, cmp.nash_only);
  os << "coalition within nash: " << (cmp.contained ? "true" : "false") << "\n";

  ordered_json& m = report.machine;
  m["config"] = ConfigJson(config);
  m["universe_size"] = universe.size();
  m["nash"] = {{"trace", TraceJson(cmp.nash)},
               {"paths", PathListJson(game, cmp.nash.final_set)}};
  m["coalition"] = {{"trace", TraceJson(cmp.coalitional)},
                    {"paths", PathListJson(game, cmp.coalitional.final_set)}};
  m["nash_only"] = PathListJson(game, cmp.nash_only);
  m["coalition_only"] = PathListJson(game, cmp.coalitional_only);
  m["contained"] = cmp.contained;
  report.text = os.str();
  return report;
}

RunReport Run(const RunConfig& config) {
  switch (config.command) {
    case Command::kSolve: return cmd_solve(config);
    case Command::kVerify: return cmd_verify(config);
    case Command::kStability: return cmd_stability(config);
    case Command::kCompare: return cmd_compare(config);
  }
  throw std::invalid_argument("unknown command");
}

RunReport RunGuarded(const RunConfig& config) {
  auto failure = [](int code, const std::string& kind, const std::string& what) {
    RunReport r;
    r.exit_code = code;
    r.text = "error: " + what + "\n";
    r.machine = {{"error", kind}, {"message", what}};
    return r;
  };
  try {
    return Run(config);
  } catch (const ParseError& e) {
    return failure(kExitParseError, "parse", e.what());
  } catch (const CapExceeded& e) {
    return failure(kExitCapExceeded, "cap", e.what());
  } catch (const std::invalid_argument& e) {
    return failure(kExitUsage, "usage", e.what());
  }
}

}  // namespace cssbkit::cli
