#include "cssbkit/game.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "cssbkit/errors.h"

namespace cssbkit {
namespace {

using nlohmann::json;

constexpr std::string_view kReservedLabelChars = ",;|#\"";

bool ValidLabel(std::string_view label) {
  if (label.empty()) return false;
  return std::none_of(label.begin(), label.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) ||
           kReservedLabelChars.find(c) != std::string_view::npos;
  });
}

std::string Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return std::string(s);
}

Rat RatField(const json& value, const std::string& where) {
  if (value.is_string()) {
    try {
      return Rat::Parse(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), where);
    }
  }
  if (value.is_number_integer()) return Rat(value.get<std::int64_t>());
  throw ParseError("expected a rational string such as \"3/5\"", where);
}

std::vector<std::string> StringList(const json& value,
                                    const std::string& where) {
  if (!value.is_array()) throw ParseError("expected a list of strings", where);
  std::vector<std::string> out;
  for (std::size_t k = 0; k < value.size(); ++k) {
    if (!value[k].is_string()) {
      throw ParseError("expected a string",
                       where + "[" + std::to_string(k) + "]");
    }
    out.push_back(value[k].get<std::string>());
  }
  return out;
}

}  // namespace

Coalition::Coalition(std::vector<int> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("empty coalition");
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw std::invalid_argument("duplicate coalition member");
  }
}

bool Coalition::contains(int player) const {
  return std::binary_search(members_.begin(), members_.end(), player);
}

StageGame::StageGame(std::vector<std::string> players,
                     std::vector<std::vector<std::string>> actions,
                     std::vector<std::vector<Rat>> payoffs, Rat delta)
    : players_(std::move(players)),
      actions_(std::move(actions)),
      payoffs_(std::move(payoffs)),
      delta_(std::move(delta)) {
  if (players_.empty()) throw std::invalid_argument("game has no players");
  if (actions_.size() != players_.size()) {
    throw std::invalid_argument("one action list per player required");
  }
  if (!(Rat(0) < delta_ && delta_ < Rat(1))) {
    throw std::invalid_argument("delta out of range (0,1)");
  }
  strides_.assign(players_.size(), 1);
  std::uint64_t count = 1;
  for (int i = num_players() - 1; i >= 0; --i) {
    if (actions_[i].empty()) {
      throw std::invalid_argument("player " + players_[i] + " has no actions");
    }
    strides_[i] = static_cast<ProfileId>(count);
    count *= actions_[i].size();
    if (count > (1u << 30)) throw std::invalid_argument("profile space too large");
  }
  if (payoffs_.size() != count) {
    throw std::invalid_argument("payoff table must cover every profile");
  }
  for (const auto& row : payoffs_) {
    if (row.size() != players_.size()) {
      throw std::invalid_argument("one payoff per player required");
    }
  }
}

std::optional<int> StageGame::find_action(int player,
                                          std::string_view label) const {
  const auto& list = actions_[player];
  auto it = std::find(list.begin(), list.end(), label);
  if (it == list.end()) return std::nullopt;
  return static_cast<int>(it - list.begin());
}

std::optional<int> StageGame::find_player(std::string_view name) const {
  auto it = std::find(players_.begin(), players_.end(), name);
  if (it == players_.end()) return std::nullopt;
  return static_cast<int>(it - players_.begin());
}

ProfileId StageGame::index_of(const ActionProfile& profile) const {
  ProfileId id = 0;
  for (int i = 0; i < num_players(); ++i) {
    id += strides_[i] * static_cast<ProfileId>(profile.actions[i]);
  }
  return id;
}

ActionProfile StageGame::profile(ProfileId id) const {
  ActionProfile p;
  p.actions.resize(players_.size());
  for (int i = 0; i < num_players(); ++i) p.actions[i] = action_of(id, i);
  return p;
}

std::string StageGame::profile_label(ProfileId id) const {
  std::string out;
  for (int i = 0; i < num_players(); ++i) {
    if (i > 0) out += ',';
    out += actions_[i][action_of(id, i)];
  }
  return out;
}

Rat StageGame::max_abs_payoff() const {
  Rat best(0);
  for (const auto& row : payoffs_) {
    for (const auto& u : row) best = std::max(best, Abs(u));
  }
  return best;
}

std::vector<Coalition> all_coalitions(const StageGame& game) {
  const int n = game.num_players();
  std::vector<Coalition> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) members.push_back(i);
    }
    out.emplace_back(std::move(members));
  }
  std::sort(out.begin(), out.end(), [](const Coalition& a, const Coalition& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
  });
  return out;
}

std::vector<Coalition> singleton_coalitions(const StageGame& game) {
  std::vector<Coalition> out;
  for (int i = 0; i < game.num_players(); ++i) {
    out.push_back(Coalition::Singleton(i));
  }
  return out;
}

std::vector<std::vector<int>> deviation_profiles(const StageGame& game,
                                                 const Coalition& coalition) {
  const auto& members = coalition.members();
  std::vector<std::vector<int>> out;
  std::vector<int> current(members.size(), 0);
  while (true) {
    out.push_back(current);
    int k = static_cast<int>(members.size()) - 1;
    while (k >= 0 && current[k] + 1 == game.num_actions(members[k])) {
      current[k] = 0;
      --k;
    }
    if (k < 0) break;
    ++current[k];
  }
  return out;
}

ActionProfile merge(const ActionProfile& profile, const Deviation& dev) {
  ActionProfile out = profile;
  const auto& members = dev.coalition.members();
  for (std::size_t k = 0; k < members.size(); ++k) {
    out.actions[members[k]] = dev.partial_profile[k];
  }
  return out;
}

ProfileId merge(const StageGame& game, ProfileId profile,
                const Coalition& coalition,
                const std::vector<int>& partial_profile) {
  ActionProfile p = game.profile(profile);
  const auto& members = coalition.members();
  for (std::size_t k = 0; k < members.size(); ++k) {
    p.actions[members[k]] = partial_profile[k];
  }
  return game.index_of(p);
}

StageGame parse_game(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), "byte " + std::to_string(e.byte));
  }
  if (!doc.is_object()) throw ParseError("expected a JSON object", "$");
  for (const char* field : {"players", "actions", "payoffs", "delta"}) {
    if (!doc.contains(field)) {
      throw ParseError(std::string("missing field '") + field + "'", "$");
    }
  }

  std::vector<std::string> players = StringList(doc["players"], "players");
  if (players.empty()) throw ParseError("at least one player required", "players");
  {
    std::set<std::string> seen;
    for (const auto& p : players) {
      if (!ValidLabel(p) || !seen.insert(p).second) {
        throw ParseError("invalid or duplicate player name '" + p + "'",
                         "players");
      }
    }
  }

  const json& actions_doc = doc["actions"];
  if (!actions_doc.is_array() || actions_doc.size() != players.size()) {
    throw ParseError("expected one action list per player", "actions");
  }
  std::vector<std::vector<std::string>> actions;
  for (std::size_t i = 0; i < players.size(); ++i) {
    const std::string where = "actions[" + std::to_string(i) + "]";
    auto labels = StringList(actions_doc[i], where);
    if (labels.empty()) throw ParseError("empty action set", where);
    std::set<std::string> seen;
    for (const auto& a : labels) {
      if (!ValidLabel(a)) throw ParseError("invalid action label '" + a + "'", where);
      if (!seen.insert(a).second) {
        throw ParseError("duplicate action label '" + a + "'", where);
      }
    }
    actions.push_back(std::move(labels));
  }

  Rat delta = RatField(doc["delta"], "delta");
  if (!(Rat(0) < delta && delta < Rat(1))) {
    throw ParseError("delta out of range (0,1): " + delta.ToString(), "delta");
  }

  std::size_t count = 1;
  for (const auto& a : actions) {
    count *= a.size();
    if (count > (1u << 24)) throw ParseError("profile space too large", "actions");
  }

  const json& payoff_doc = doc["payoffs"];
  if (!payoff_doc.is_object()) throw ParseError("expected an object", "payoffs");
  std::vector<std::optional<std::vector<Rat>>> table(count);
  for (const auto& [key, value] : payoff_doc.items()) {
    const std::string where = "payoffs[\"" + key + "\"]";
    ActionProfile profile;
    std::stringstream ss(key);
    std::string label;
    std::size_t player = 0;
    while (std::getline(ss, label, ',')) {
      if (player >= players.size()) {
        throw ParseError("too many action labels in key", where);
      }
      const auto& list = actions[player];
      auto it = std::find(list.begin(), list.end(), Trim(label));
      if (it == list.end()) {
        throw ParseError("unknown action '" + Trim(label) + "' for player " +
                             players[player],
                         where);
      }
      profile.actions.push_back(static_cast<int>(it - list.begin()));
      ++player;
    }
    if (player != players.size()) {
      throw ParseError("key must name one action per player", where);
    }
    if (!value.is_array() || value.size() != players.size()) {
      throw ParseError("expected one payoff per player", where);
    }
    std::vector<Rat> row;
    for (std::size_t k = 0; k < value.size(); ++k) {
      row.push_back(RatField(value[k], where + "[" + std::to_string(k) + "]"));
    }
    ProfileId id = 0;
    std::size_t stride = 1;
    for (int i = static_cast<int>(players.size()) - 1; i >= 0; --i) {
      id += static_cast<ProfileId>(stride * profile.actions[i]);
      stride *= actions[i].size();
    }
    if (table[id]) throw ParseError("duplicate profile", where);
    table[id] = std::move(row);
  }

  std::vector<std::vector<Rat>> payoffs;
  payoffs.reserve(count);
  for (std::size_t id = 0; id < count; ++id) {
    if (!table[id]) {
      // Rebuild the label for the error message.
      std::string label;
      std::size_t rest = id;
      std::vector<std::string> parts(players.size());
      for (int i = static_cast<int>(players.size()) - 1; i >= 0; --i) {
        parts[i] = actions[i][rest % actions[i].size()];
        rest /= actions[i].size();
      }
      for (std::size_t i = 0; i < parts.size(); ++i) {
        label += (i ? "," : "") + parts[i];
      }
      throw ParseError("missing profile (" + label + ")", "payoffs");
    }
    payoffs.push_back(std::move(*table[id]));
  }
  return StageGame(std::move(players), std::move(actions), std::move(payoffs),
                   std::move(delta));
}

StageGame load_game(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw ParseError("cannot open game file", filename);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_game(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(e.what(), filename);
  }
}

std::string serialize_game(const StageGame& game) {
  nlohmann::ordered_json doc;
  doc["players"] = game.players();
  doc["actions"] = game.actions();
  nlohmann::ordered_json payoffs = nlohmann::ordered_json::object();
  for (ProfileId id = 0; id < game.num_profiles(); ++id) {
    auto row = nlohmann::ordered_json::array();
    for (int i = 0; i < game.num_players(); ++i) {
      const Rat& u = game.payoff(id, i);
      row.push_back(u.numerator() + "/" + u.denominator());
    }
    payoffs[game.profile_label(id)] = std::move(row);
  }
  doc["payoffs"] = std::move(payoffs);
  doc["delta"] = game.delta().ToString();
  return doc.dump(2) + "\n";
}

std::string format_coalition(const StageGame& game, const Coalition& c) {
  std::string out = "{";
  for (std::size_t k = 0; k < c.members().size(); ++k) {
    if (k) out += ',';
    out += game.player_name(c.members()[k]);
  }
  return out + "}";
}

std::string format_partial(const StageGame& game, const Coalition& c,
                           const std::vector<int>& partial_profile) {
  std::string out = "(";
  for (std::size_t k = 0; k < c.members().size(); ++k) {
    if (k) out += ',';
    out += game.action_label(c.members()[k], partial_profile[k]);
  }
  return out + ")";
}

}  // namespace cssbkit
