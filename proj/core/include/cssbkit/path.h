#ifndef CSSBKIT_PATH_H_
#define CSSBKIT_PATH_H_

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cssbkit/game.h"
#include "cssbkit/rational.h"

namespace cssbkit {

// An eventually periodic infinite path: `prefix` once, then `cycle` forever.
//
// Paths are always canonical. The cycle is primitive (not a repetition of a
// shorter block) and the prefix is minimal (its last entry differs from the
// last cycle entry, otherwise it could be absorbed by rotating the cycle).
// Canonical form is unique, so structural equality is path equality.
// Rotations of a cycle are different paths.
class Path {
 public:
  // Canonicalizes. Throws std::invalid_argument if `cycle` is empty.
  Path(std::vector<ProfileId> prefix, std::vector<ProfileId> cycle);
  static Path Constant(ProfileId profile) { return Path({}, {profile}); }

  const std::vector<ProfileId>& prefix() const { return prefix_; }
  const std::vector<ProfileId>& cycle() const { return cycle_; }
  std::size_t prefix_length() const { return prefix_.size(); }
  std::size_t cycle_length() const { return cycle_.size(); }
  // p + c: the number of distinct (x_t, tail(x, t+1)) pairs.
  std::size_t span() const { return prefix_.size() + cycle_.size(); }

  // Structural order (prefix, then cycle); used for every tie-break and
  // report ordering.
  friend auto operator<=>(const Path&, const Path&) = default;

 private:
  std::vector<ProfileId> prefix_;
  std::vector<ProfileId> cycle_;
};

using PathSet = std::set<Path>;

// A finite history G = (z_1, ..., z_t). The empty history is the start of
// the game.
struct Position {
  std::vector<ProfileId> history;
};

// x_t, for t >= 1.
ProfileId profile_at(const Path& x, std::size_t period);

// (x_t, x_{t+1}, ...), for t >= 1.
Path tail(const Path& x, std::size_t from_period);

// Follow x through period t-1, play x_t with the coalition's actions
// replaced at t, then follow y.
Path splice(const StageGame& game, const Path& x, const Deviation& dev,
            const Path& y);

// Normalized discounted payoff
//   U_i(x) = (1-d) sum_t d^(t-1) u_i(x_t),
// evaluated in closed form from the prefix and one cycle block.
Rat payoff(const StageGame& game, const Path& x, int player);

// a_i(G) + b(G) U_i(x) with a_i(G) = (1-d) sum_{t<=|G|} d^(t-1) u_i(z_t) and
// b(G) = d^|G|.
Rat position_payoff(const StageGame& game, const Position& g, const Path& x,
                    int player);

// Continuation values U_i(tail(x, t)) for every t >= 1, computed once.
// Only p + c distinct tails exist.
class TailValues {
 public:
  TailValues(const StageGame& game, const Path& x);

  const Rat& at(std::size_t period, int player) const {
    return values_[slot(period)][player];
  }
  std::size_t span() const { return values_.size(); }

 private:
  std::size_t slot(std::size_t period) const;

  std::size_t prefix_length_;
  std::size_t cycle_length_;
  std::vector<std::vector<Rat>> values_;  // [slot][player]
};

inline constexpr std::size_t kDefaultUniverseCap = 10'000'000;

// Pre-dedup size sum_{p<=P} |Z|^p * sum_{1<=c<=K} |Z|^c, saturating at
// SIZE_MAX.
std::size_t universe_raw_count(const StageGame& game, std::size_t max_prefix,
                               std::size_t max_cycle);

// Every canonical path with |prefix| <= max_prefix and |cycle| <= max_cycle.
// Throws CapExceeded when universe_raw_count exceeds `cap`, and
// std::invalid_argument when max_cycle is 0.
PathSet enumerate_universe(const StageGame& game, std::size_t max_prefix,
                           std::size_t max_cycle,
                           std::size_t cap = kDefaultUniverseCap);

// Literal grammar: [profile (";" profile)*] "|" profile (";" profile)*,
// profile := label ("," label)* in player order. Throws ParseError.
Path parse_path(const StageGame& game, std::string_view literal);
// "C,D | C,C"; an empty prefix renders as "| C,C".
std::string format_path(const StageGame& game, const Path& x);

// Newline-separated path literals; blank lines and '#' comments ignored.
PathSet parse_path_set(const StageGame& game, std::string_view text);
PathSet load_path_set(const StageGame& game, const std::string& filename);

}  // namespace cssbkit

#endif  // CSSBKIT_PATH_H_
