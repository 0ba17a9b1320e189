#include "cssbkit/situations.h"

#include <algorithm>
#include <stdexcept>

#include "deviation_table.h"

namespace cssbkit {

std::string_view ModeName(Mode mode) {
  return mode == Mode::kNash ? "nash" : "coalition";
}

std::optional<Mode> ParseMode(std::string_view name) {
  if (name == "nash") return Mode::kNash;
  if (name == "coalition" || name == "coalitional") return Mode::kCoalitional;
  return std::nullopt;
}

std::vector<Coalition> coalitions_for(const StageGame& game, Mode mode) {
  return mode == Mode::kNash ? singleton_coalitions(game)
                             : all_coalitions(game);
}

PunishmentFamily worst_paths(const StageGame& game,
                             const StandardOfBehavior& sb) {
  if (sb.empty()) {
    throw std::invalid_argument("worst paths of an empty standard of behavior");
  }
  PunishmentFamily family;
  for (int i = 0; i < game.num_players(); ++i) {
    // sb iterates in path order, so the first strict minimum wins ties.
    const Path* best = nullptr;
    Rat best_value;
    for (const Path& x : sb) {
      Rat value = payoff(game, x, i);
      if (best == nullptr || value < best_value) {
        best = &x;
        best_value = std::move(value);
      }
    }
    family.paths.push_back(*best);
  }
  return family;
}

ConservativeDominion::ConservativeDominion(const StageGame& game, Mode mode,
                                           const StandardOfBehavior& sb)
    : game_(game),
      mode_(mode),
      table_(std::make_shared<internal::DeviationTable>(game, mode)) {
  if (sb.empty()) return;
  worst_ = worst_paths(game, sb);
  for (int i = 0; i < game.num_players(); ++i) {
    punishment_values_.push_back(payoff(game, worst_[i], i));
  }
  values_ = std::make_shared<internal::DeviationValues>(game, punishment_values_);
}

std::optional<DominationWitness> ConservativeDominion::find(
    const Path& x, std::optional<std::size_t> tau_bound) const {
  const std::size_t bound = tau_bound.value_or(x.span());
  if (bound < x.span()) {
    throw std::invalid_argument("tau bound below prefix + cycle length");
  }
  if (empty()) return std::nullopt;
  const TailValues tails(game_, x);
  const auto& coalitions = table_->coalitions();
  for (std::size_t k = 0; k < coalitions.size(); ++k) {
    const auto& members = coalitions[k].members();
    for (std::size_t tau = 1; tau <= bound; ++tau) {
      const ProfileId on_path = profile_at(x, tau);
      for (const auto& entry : table_->entries(k)) {
        const ProfileId m = entry.merged[on_path];
        // Both sides scaled by d^(1-tau); the shared history cancels.
        const bool all_gain =
            std::all_of(members.begin(), members.end(), [&](int i) {
              return values_->at(m, i) > tails.at(tau, i);
            });
        if (all_gain) {
          auto witness = check(x, Deviation{coalitions[k], static_cast<int>(tau),
                                            entry.partial});
          if (!witness) {
            throw std::logic_error("scaled and spliced domination tests disagree");
          }
          return witness;
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<DominationWitness> ConservativeDominion::check(
    const Path& x, const Deviation& dev) const {
  if (empty()) return std::nullopt;
  if (mode_ == Mode::kNash && dev.coalition.size() != 1) return std::nullopt;
  DominationWitness witness{dev, {}};
  for (int i : dev.coalition.members()) {
    Rat on_path = payoff(game_, x, i);
    Rat deviation = payoff(game_, splice(game_, x, dev, worst_[i]), i);
    if (!(deviation > on_path)) return std::nullopt;
    witness.margins.push_back({i, std::move(deviation), std::move(on_path)});
  }
  return witness;
}

std::optional<DominationWitness> cdom_member(const StageGame& game, Mode mode,
                                             const StandardOfBehavior& sb,
                                             const Path& x,
                                             std::optional<std::size_t> tau_bound) {
  return ConservativeDominion(game, mode, sb).find(x, tau_bound);
}

InternalStability internally_stable(const StageGame& game, Mode mode,
                                    const StandardOfBehavior& sb) {
  InternalStability result;
  const ConservativeDominion dominion(game, mode, sb);
  for (const Path& x : sb) {
    if (auto witness = dominion.find(x)) {
      result.stable = false;
      result.violations.push_back({x, std::move(*witness)});
    }
  }
  return result;
}

ExternalStability externally_stable_relative(const StageGame& game, Mode mode,
                                             const StandardOfBehavior& sb,
                                             const PathSet& universe) {
  if (!std::includes(universe.begin(), universe.end(), sb.begin(), sb.end())) {
    throw std::invalid_argument(
        "standard of behavior is not contained in the universe");
  }
  ExternalStability result;
  const ConservativeDominion dominion(game, mode, sb);
  for (const Path& x : universe) {
    if (sb.contains(x)) continue;
    if (auto witness = dominion.find(x)) {
      result.dominated.push_back({x, std::move(*witness)});
    } else {
      result.stable = false;
      result.undominated.push_back(x);
    }
  }
  return result;
}

}  // namespace cssbkit
