#ifndef CSSBKIT_SITUATIONS_H_
#define CSSBKIT_SITUATIONS_H_

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "cssbkit/game.h"
#include "cssbkit/path.h"
#include "cssbkit/rational.h"

namespace cssbkit {
namespace internal {
class DeviationTable;
class DeviationValues;
}  // namespace internal

// Which coalitions may induce new positions. Nash mode admits individual
// deviations only; coalitional mode admits every nonempty coalition.
enum class Mode { kNash, kCoalitional };

std::string_view ModeName(Mode mode);  // "nash" / "coalition"
std::optional<Mode> ParseMode(std::string_view name);

std::vector<Coalition> coalitions_for(const StageGame& game, Mode mode);

// A nondiscriminating standard of behavior: the same path set is offered at
// every position.
using StandardOfBehavior = PathSet;

// One path per player, in player order.
struct PunishmentFamily {
  std::vector<Path> paths;

  const Path& operator[](int player) const { return paths[player]; }
  friend bool operator==(const PunishmentFamily&,
                         const PunishmentFamily&) = default;
};

// Per-member comparison behind a domination or enforceability check:
// U_i(x; dev; continuation) against U_i(x).
struct MemberMargin {
  int player = 0;
  Rat deviation_value;
  Rat on_path_value;
};

struct DominationWitness {
  Deviation deviation;
  std::vector<MemberMargin> margins;  // one per coalition member, strict ">"
};

struct DominatedPath {
  Path path;
  DominationWitness witness;
};

struct InternalStability {
  bool stable = true;
  std::vector<DominatedPath> violations;
};

struct ExternalStability {
  bool stable = true;
  std::vector<Path> undominated;     // universe paths outside sb, not dominated
  std::vector<DominatedPath> dominated;
};

// For each player, a U_i-minimizer in sb; ties go to the smallest path.
// Throws std::invalid_argument on an empty sb.
PunishmentFamily worst_paths(const StageGame& game,
                             const StandardOfBehavior& sb);

// Conservative dominion at the initial position relative to a
// nondiscriminating SB, via the worst-path characterization: x is dominated
// iff some allowed coalition, period and partial profile make every member
// strictly better off even when punished by its own worst path in sb.
class ConservativeDominion {
 public:
  ConservativeDominion(const StageGame& game, Mode mode,
                       const StandardOfBehavior& sb);

  // Scans periods 1..tau_bound (default p + c of x). An empty sb dominates
  // nothing. Throws std::invalid_argument if tau_bound < p + c.
  std::optional<DominationWitness> find(
      const Path& x, std::optional<std::size_t> tau_bound = {}) const;

  // Whether one specific deviation dominates x.
  std::optional<DominationWitness> check(const Path& x,
                                         const Deviation& dev) const;

  bool empty() const { return punishment_values_.empty(); }
  const PunishmentFamily& worst() const { return worst_; }

 private:
  StageGame game_;
  Mode mode_;
  PunishmentFamily worst_;
  std::vector<Rat> punishment_values_;  // U_i(z_i)
  std::shared_ptr<const internal::DeviationTable> table_;
  std::shared_ptr<const internal::DeviationValues> values_;
};

std::optional<DominationWitness> cdom_member(
    const StageGame& game, Mode mode, const StandardOfBehavior& sb,
    const Path& x, std::optional<std::size_t> tau_bound = {});

// sb is internally stable iff none of its paths is dominated.
InternalStability internally_stable(const StageGame& game, Mode mode,
                                    const StandardOfBehavior& sb);

// Every path of `universe` outside sb must be dominated. Only the finite
// universe is checked. Throws std::invalid_argument unless sb is a subset
// of universe.
ExternalStability externally_stable_relative(const StageGame& game, Mode mode,
                                             const StandardOfBehavior& sb,
                                             const PathSet& universe);

}  // namespace cssbkit

#endif  // CSSBKIT_SITUATIONS_H_
