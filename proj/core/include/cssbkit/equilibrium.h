#ifndef CSSBKIT_EQUILIBRIUM_H_
#define CSSBKIT_EQUILIBRIUM_H_

#include <optional>
#include <stdexcept>
#include <vector>

#include "cssbkit/game.h"
#include "cssbkit/path.h"
#include "cssbkit/rational.h"
#include "cssbkit/situations.h"

namespace cssbkit {

// Self-generation operator restricted to `universe`: the paths x such that
// for every allowed coalition C, period t and partial profile, some member
// i of C weakly prefers x to deviating and then being punished with a path
// from Y. Only each player's worst path in Y matters, so the test uses
// worst_paths(Y). Returns the empty set for empty Y. Throws
// std::invalid_argument unless Y is a subset of universe.
PathSet psi(const StageGame& game, Mode mode, const PathSet& y,
            const PathSet& universe);

// True iff every deviation from x is deterred by `family` (weak inequality
// for some coalition member). Scans periods 1..p+c of x.
bool enforceable(const StageGame& game, Mode mode, const Path& x,
                 const PunishmentFamily& family);

struct IterationTrace {
  std::vector<std::size_t> sizes;  // |X^0|, |X^1|, ..., last repeats
  std::size_t rounds = 0;          // Psi applications that shrank the set
  PathSet final_set;               // largest fixed point inside the universe
};

// X^0 = universe, X^{k+1} = Psi(X^k), until nothing changes. Terminates in
// at most |universe| shrinking rounds. The result is sound (every member is
// an equilibrium path) but only classifies paths inside the universe.
// Throws std::invalid_argument on an empty universe.
IterationTrace fixed_point(const StageGame& game, Mode mode,
                           const PathSet& universe);

// One deterred deviation: `state` is 0 for the base path, i + 1 for player
// i's punishment path; `deterrer` weakly prefers staying on path.
struct CertificateEntry {
  int state = 0;
  Deviation deviation;
  int deterrer = 0;
  Rat on_path_value;    // U_j(x[k])
  Rat deviation_value;  // U_j(x[k]; dev; x[j])
};

struct Certificate {
  Path base;
  PunishmentFamily family;
  std::vector<CertificateEntry> entries;
};

// A deviation no coalition member is deterred from.
struct Counterexample {
  int state = 0;
  Deviation deviation;
  std::vector<MemberMargin> margins;  // every member strictly gains
};

struct Verification {
  bool accepted = false;
  std::optional<Certificate> certificate;
  std::optional<Counterexample> counterexample;
};

// Checks the penal-code condition for x0 and each family path x[i]: every
// allowed coalition, period (up to p + c of that path) and partial profile
// leaves some member j with U_j(x[k]) >= U_j(x[k]; dev; x[j]). Returns a
// full certificate or the first failure in (state, coalition, period,
// profile) order. Throws std::invalid_argument when the family does not
// have one path per player.
Verification verify_family(const StageGame& game, Mode mode, const Path& x0,
                           const PunishmentFamily& family);

class NotSelfGenerating : public std::runtime_error {
 public:
  explicit NotSelfGenerating(Path offending)
      : std::runtime_error("path set is not self-generating"),
        offending_(std::move(offending)) {}
  const Path& offending() const { return offending_; }

 private:
  Path offending_;
};

// The per-player worst paths of a self-generating set; this single family
// enforces every member of the set. Throws NotSelfGenerating when some
// member cannot be enforced by it, std::invalid_argument when empty.
PunishmentFamily optimal_penal_code(const StageGame& game, Mode mode,
                                    const PathSet& pcep);

struct ModeComparison {
  IterationTrace nash;
  IterationTrace coalitional;
  PathSet nash_only;         // in the Nash fixed point, not the coalitional
  PathSet coalitional_only;  // must be empty
  bool contained = true;     // coalitional fixed point within Nash
};

ModeComparison compare_modes(const StageGame& game, const PathSet& universe);

}  // namespace cssbkit

#endif  // CSSBKIT_EQUILIBRIUM_H_
