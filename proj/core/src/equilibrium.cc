#include "cssbkit/equilibrium.h"

#include <algorithm>
#include <iterator>

#include "deviation_table.h"

namespace cssbkit {
namespace {

// Enforceability against a fixed punishment family. Deviation values are
// precomputed once per family; each path then costs one TailValues plus a
// comparison per (coalition, period, profile, member).
class Enforcer {
 public:
  Enforcer(const StageGame& game, const internal::DeviationTable& table,
           const PunishmentFamily& family)
      : game_(game), table_(table), punishment_(PunishmentValues(game, family)),
        values_(game, punishment_) {}

  bool Enforceable(const Path& x) const {
    const TailValues tails(game_, x);
    const auto& coalitions = table_.coalitions();
    for (std::size_t k = 0; k < coalitions.size(); ++k) {
      const auto& members = coalitions[k].members();
      for (std::size_t tau = 1; tau <= x.span(); ++tau) {
        const ProfileId on_path = profile_at(x, tau);
        for (const auto& entry : table_.entries(k)) {
          const ProfileId m = entry.merged[on_path];
          const bool deterred =
              std::any_of(members.begin(), members.end(), [&](int i) {
                return tails.at(tau, i) >= values_.at(m, i);
              });
          if (!deterred) return false;
        }
      }
    }
    return true;
  }

  const std::vector<Rat>& punishment() const { return punishment_; }
  const internal::DeviationValues& values() const { return values_; }

 private:
  static std::vector<Rat> PunishmentValues(const StageGame& game,
                                           const PunishmentFamily& family) {
    std::vector<Rat> out;
    for (int i = 0; i < game.num_players(); ++i) {
      out.push_back(payoff(game, family[i], i));
    }
    return out;
  }

  const StageGame& game_;
  const internal::DeviationTable& table_;
  std::vector<Rat> punishment_;
  internal::DeviationValues values_;
};

PathSet EnforceableSubset(const StageGame& game,
                          const internal::DeviationTable& table,
                          const PathSet& punish_from,
                          const PathSet& candidates) {
  PathSet out;
  if (punish_from.empty()) return out;
  const Enforcer enforcer(game, table, worst_paths(game, punish_from));
  for (const Path& x : candidates) {
    if (enforcer.Enforceable(x)) out.insert(out.end(), x);
  }
  return out;
}

void CheckFamily(const StageGame& game, const PunishmentFamily& family) {
  if (family.paths.size() != static_cast<std::size_t>(game.num_players())) {
    throw std::invalid_argument("punishment family needs one path per player");
  }
}

}  // namespace

PathSet psi(const StageGame& game, Mode mode, const PathSet& y,
            const PathSet& universe) {
  if (!std::includes(universe.begin(), universe.end(), y.begin(), y.end())) {
    throw std::invalid_argument("psi: Y is not contained in the universe");
  }
  const internal::DeviationTable table(game, mode);
  return EnforceableSubset(game, table, y, universe);
}

bool enforceable(const StageGame& game, Mode mode, const Path& x,
                 const PunishmentFamily& family) {
  CheckFamily(game, family);
  const internal::DeviationTable table(game, mode);
  return Enforcer(game, table, family).Enforceable(x);
}

IterationTrace fixed_point(const StageGame& game, Mode mode,
                           const PathSet& universe) {
  if (universe.empty()) throw std::invalid_argument("empty universe");
  const internal::DeviationTable table(game, mode);
  IterationTrace trace;
  PathSet current = universe;
  trace.sizes.push_back(current.size());
  while (true) {
    // Psi is monotone and X^1 is inside X^0, so X^{k+1} = Psi(X^k) only
    // needs to re-test the members of X^k.
    PathSet next = EnforceableSubset(game, table, current, current);
    trace.sizes.push_back(next.size());
    if (next.size() == current.size()) break;
    ++trace.rounds;
    current = std::move(next);
    if (current.empty()) {
      trace.sizes.push_back(0);
      break;
    }
  }
  trace.final_set = std::move(current);
  return trace;
}

Verification verify_family(const StageGame& game, Mode mode, const Path& x0,
                           const PunishmentFamily& family) {
  CheckFamily(game, family);
  const internal::DeviationTable table(game, mode);
  const Enforcer enforcer(game, table, family);
  const auto& coalitions = table.coalitions();

  Certificate certificate{x0, family, {}};
  for (int state = 0; state <= game.num_players(); ++state) {
    const Path& x = state == 0 ? x0 : family[state - 1];
    const TailValues tails(game, x);
    std::vector<Rat> on_path;
    for (int i = 0; i < game.num_players(); ++i) {
      on_path.push_back(payoff(game, x, i));
    }
    for (std::size_t k = 0; k < coalitions.size(); ++k) {
      const auto& members = coalitions[k].members();
      for (std::size_t tau = 1; tau <= x.span(); ++tau) {
        const ProfileId z = profile_at(x, tau);
        for (const auto& entry : table.entries(k)) {
          const ProfileId m = entry.merged[z];
          Deviation dev{coalitions[k], static_cast<int>(tau), entry.partial};
          auto deterrer =
              std::find_if(members.begin(), members.end(), [&](int i) {
                return tails.at(tau, i) >= enforcer.values().at(m, i);
              });
          if (deterrer == members.end()) {
            Counterexample failure{state, std::move(dev), {}};
            for (int i : members) {
              failure.margins.push_back(
                  {i,
                   internal::UnscaledDeviationValue(game, on_path[i], tails, tau,
                                                    i, enforcer.values().at(m, i)),
                   on_path[i]});
            }
            return {false, std::nullopt, std::move(failure)};
          }
          const int j = *deterrer;
          certificate.entries.push_back(
              {state, std::move(dev), j, on_path[j],
               internal::UnscaledDeviationValue(game, on_path[j], tails, tau, j,
                                                enforcer.values().at(m, j))});
        }
      }
    }
  }
  return {true, std::move(certificate), std::nullopt};
}

PunishmentFamily optimal_penal_code(const StageGame& game, Mode mode,
                                    const PathSet& pcep) {
  if (pcep.empty()) throw std::invalid_argument("empty path set");
  PunishmentFamily family = worst_paths(game, pcep);
  const internal::DeviationTable table(game, mode);
  const Enforcer enforcer(game, table, family);
  for (const Path& x : pcep) {
    if (!enforcer.Enforceable(x)) throw NotSelfGenerating(x);
  }
  return family;
}

ModeComparison compare_modes(const StageGame& game, const PathSet& universe) {
  ModeComparison out;
  out.nash = fixed_point(game, Mode::kNash, universe);
  out.coalitional = fixed_point(game, Mode::kCoalitional, universe);
  const PathSet& nash = out.nash.final_set;
  const PathSet& coal = out.coalitional.final_set;
  std::set_difference(nash.begin(), nash.end(), coal.begin(), coal.end(),
                      std::inserter(out.nash_only, out.nash_only.end()));
  std::set_difference(coal.begin(), coal.end(), nash.begin(), nash.end(),
                      std::inserter(out.coalitional_only,
                                    out.coalitional_only.end()));
  out.contained = out.coalitional_only.empty();
  return out;
}

}  // namespace cssbkit
