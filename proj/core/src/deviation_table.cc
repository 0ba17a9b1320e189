#include "deviation_table.h"

namespace cssbkit::internal {

DeviationTable::DeviationTable(const StageGame& game, Mode mode)
    : coalitions_(coalitions_for(game, mode)) {
  entries_.resize(coalitions_.size());
  for (std::size_t k = 0; k < coalitions_.size(); ++k) {
    for (auto& partial : deviation_profiles(game, coalitions_[k])) {
      Entry entry{k, std::move(partial), {}};
      entry.merged.reserve(game.num_profiles());
      for (ProfileId z = 0; z < game.num_profiles(); ++z) {
        entry.merged.push_back(merge(game, z, coalitions_[k], entry.partial));
      }
      entries_[k].push_back(std::move(entry));
    }
  }
}

DeviationValues::DeviationValues(const StageGame& game,
                                 const std::vector<Rat>& punishment) {
  const Rat& delta = game.delta();
  const Rat one_minus = Rat(1) - delta;
  values_.resize(game.num_profiles());
  for (ProfileId m = 0; m < game.num_profiles(); ++m) {
    values_[m].reserve(punishment.size());
    for (int i = 0; i < game.num_players(); ++i) {
      values_[m].push_back(one_minus * game.payoff(m, i) +
                           delta * punishment[i]);
    }
  }
}

Rat UnscaledDeviationValue(const StageGame& game, const Rat& on_path_value,
                           const TailValues& tails, std::size_t period,
                           int player, const Rat& scaled_deviation_value) {
  const Rat weight = Pow(game.delta(), period - 1);
  return on_path_value -
         weight * (tails.at(period, player) - scaled_deviation_value);
}

}  // namespace cssbkit::internal
