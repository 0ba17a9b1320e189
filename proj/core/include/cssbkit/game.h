#ifndef CSSBKIT_GAME_H_
#define CSSBKIT_GAME_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cssbkit/rational.h"

namespace cssbkit {

// Dense index of a full action profile in Z. Player 0 is the most
// significant digit, so index order is lexicographic profile order.
using ProfileId = std::uint32_t;

// One action index per player, in player order.
struct ActionProfile {
  std::vector<int> actions;

  friend auto operator<=>(const ActionProfile&, const ActionProfile&) = default;
};

// Nonempty set of players, stored as sorted 0-based indices.
class Coalition {
 public:
  // Sorts `members`; throws std::invalid_argument if empty or duplicated.
  explicit Coalition(std::vector<int> members);
  static Coalition Singleton(int player) { return Coalition({player}); }

  const std::vector<int>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(int player) const;

  friend auto operator<=>(const Coalition&, const Coalition&) = default;

 private:
  std::vector<int> members_;
};

// Coalition C replaces its members' actions in period `period` (1-based)
// by `partial_profile`, listed in the coalition's member order.
struct Deviation {
  Coalition coalition;
  int period = 1;
  std::vector<int> partial_profile;
};

class StageGame {
 public:
  // `payoffs[profile_id]` holds one payoff per player. Throws
  // std::invalid_argument when the shape or delta is invalid.
  StageGame(std::vector<std::string> players,
            std::vector<std::vector<std::string>> actions,
            std::vector<std::vector<Rat>> payoffs, Rat delta);

  int num_players() const { return static_cast<int>(players_.size()); }
  int num_actions(int player) const {
    return static_cast<int>(actions_[player].size());
  }
  std::size_t num_profiles() const { return payoffs_.size(); }
  const Rat& delta() const { return delta_; }

  const std::string& player_name(int player) const { return players_[player]; }
  const std::string& action_label(int player, int action) const {
    return actions_[player][action];
  }
  std::optional<int> find_action(int player, std::string_view label) const;
  std::optional<int> find_player(std::string_view name) const;

  const Rat& payoff(ProfileId profile, int player) const {
    return payoffs_[profile][player];
  }

  ProfileId index_of(const ActionProfile& profile) const;
  ActionProfile profile(ProfileId id) const;
  int action_of(ProfileId id, int player) const {
    return static_cast<int>(id / strides_[player]) % num_actions(player);
  }
  // Comma-joined action labels in player order, e.g. "C,D".
  std::string profile_label(ProfileId id) const;

  // Largest |u_i(z)| over all players and profiles.
  Rat max_abs_payoff() const;

  const std::vector<std::string>& players() const { return players_; }
  const std::vector<std::vector<std::string>>& actions() const {
    return actions_;
  }

  friend bool operator==(const StageGame&, const StageGame&) = default;

 private:
  std::vector<std::string> players_;
  std::vector<std::vector<std::string>> actions_;
  std::vector<std::vector<Rat>> payoffs_;
  Rat delta_;
  std::vector<ProfileId> strides_;
};

// All 2^n - 1 nonempty coalitions, ordered by size, then lexicographically.
std::vector<Coalition> all_coalitions(const StageGame& game);

// Singleton coalitions only, in player order.
std::vector<Coalition> singleton_coalitions(const StageGame& game);

// Full product of the members' action sets, first member most significant.
// Includes the partial profile that matches on-path play.
std::vector<std::vector<int>> deviation_profiles(const StageGame& game,
                                                 const Coalition& coalition);

ActionProfile merge(const ActionProfile& profile, const Deviation& dev);
ProfileId merge(const StageGame& game, ProfileId profile,
                const Coalition& coalition,
                const std::vector<int>& partial_profile);

// Game-file JSON. Throws ParseError.
StageGame parse_game(std::string_view text);
StageGame load_game(const std::string& filename);
std::string serialize_game(const StageGame& game);

// "{1,2}" using player names.
std::string format_coalition(const StageGame& game, const Coalition& c);
// "(C,D)" using the members' action labels.
std::string format_partial(const StageGame& game, const Coalition& c,
                           const std::vector<int>& partial_profile);

}  // namespace cssbkit

#endif  // CSSBKIT_GAME_H_
