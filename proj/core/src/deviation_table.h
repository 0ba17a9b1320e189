#ifndef CSSBKIT_SRC_DEVIATION_TABLE_H_
#define CSSBKIT_SRC_DEVIATION_TABLE_H_

#include <vector>

#include "cssbkit/game.h"
#include "cssbkit/path.h"
#include "cssbkit/situations.h"

namespace cssbkit::internal {

// Every (coalition, partial profile) pair allowed under a mode, in scan
// order, with the merged profile precomputed for each on-path profile.
class DeviationTable {
 public:
  struct Entry {
    std::size_t coalition;  // index into coalitions()
    std::vector<int> partial;
    std::vector<ProfileId> merged;  // [on-path profile] -> merged profile
  };

  DeviationTable(const StageGame& game, Mode mode);

  const std::vector<Coalition>& coalitions() const { return coalitions_; }
  // Entries of coalition k, in deviation_profiles order.
  const std::vector<Entry>& entries(std::size_t k) const { return entries_[k]; }

 private:
  std::vector<Coalition> coalitions_;
  std::vector<std::vector<Entry>> entries_;
};

// Per player i and profile m: (1-d) u_i(m) + d U_i(z_i), i.e. the deviator's
// value at the deviation period, scaled by d^(1-t), when the punishment z_i
// follows.
class DeviationValues {
 public:
  DeviationValues(const StageGame& game, const std::vector<Rat>& punishment);
  const Rat& at(ProfileId merged, int player) const {
    return values_[merged][player];
  }

 private:
  std::vector<std::vector<Rat>> values_;
};

// U_i(x; dev@t; y) recovered from the scaled comparison quantities:
// U_i(x) - d^(t-1) (U_i(tail(x,t)) - scaled_deviation_value).
Rat UnscaledDeviationValue(const StageGame& game, const Rat& on_path_value,
                           const TailValues& tails, std::size_t period,
                           int player, const Rat& scaled_deviation_value);

}  // namespace cssbkit::internal

#endif  // CSSBKIT_SRC_DEVIATION_TABLE_H_
