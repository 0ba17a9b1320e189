#include "cssbkit/path.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cssbkit/errors.h"

namespace cssbkit {
namespace {

std::size_t PrimitivePeriod(const std::vector<ProfileId>& cycle) {
  const std::size_t c = cycle.size();
  for (std::size_t d = 1; d < c; ++d) {
    if (c % d != 0) continue;
    bool periodic = true;
    for (std::size_t k = d; k < c && periodic; ++k) {
      periodic = cycle[k] == cycle[k - d];
    }
    if (periodic) return d;
  }
  return c;
}

std::size_t SaturatingMul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    return std::numeric_limits<std::size_t>::max();
  }
  return a * b;
}

std::size_t SaturatingAdd(std::size_t a, std::size_t b) {
  return a > std::numeric_limits<std::size_t>::max() - b
             ? std::numeric_limits<std::size_t>::max()
             : a + b;
}

// Advances `digits` as a base-`radix` counter; false once it wraps.
bool NextTuple(std::vector<ProfileId>& digits, std::size_t radix) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (digits[k] + 1 < radix) {
      ++digits[k];
      return true;
    }
    digits[k] = 0;
  }
  return false;
}

std::string_view TrimView(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::string Column(std::size_t offset) {
  return "column " + std::to_string(offset + 1);
}

// Parses "p1;p2;..." starting at byte `base` of the full literal.
std::vector<ProfileId> ParseProfiles(const StageGame& game,
                                     std::string_view text, std::size_t base) {
  std::vector<ProfileId> out;
  if (TrimView(text).empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    if (TrimView(item).empty()) {
      throw ParseError("empty profile", Column(base + start));
    }
    ActionProfile profile;
    std::size_t lstart = 0;
    int player = 0;
    while (lstart <= item.size()) {
      std::size_t lend = item.find(',', lstart);
      if (lend == std::string_view::npos) lend = item.size();
      std::string_view label = TrimView(item.substr(lstart, lend - lstart));
      if (player >= game.num_players()) {
        throw ParseError("too many actions in profile",
                         Column(base + start + lstart));
      }
      auto action = game.find_action(player, label);
      if (!action) {
        throw ParseError("unknown action '" + std::string(label) +
                             "' for player " + game.player_name(player),
                         Column(base + start + lstart));
      }
      profile.actions.push_back(*action);
      ++player;
      lstart = lend + 1;
    }
    if (player != game.num_players()) {
      throw ParseError("profile needs one action per player",
                       Column(base + start));
    }
    out.push_back(game.index_of(profile));
    start = end + 1;
  }
  return out;
}

}  // namespace

Path::Path(std::vector<ProfileId> prefix, std::vector<ProfileId> cycle)
    : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
  if (cycle_.empty()) throw std::invalid_argument("path cycle is empty");
  cycle_.resize(PrimitivePeriod(cycle_));
  // prefix ++ (c_1..c_k)^inf == prefix[..-1] ++ (c_k c_1..c_{k-1})^inf
  // whenever prefix.back() == c_k.
  while (!prefix_.empty() && prefix_.back() == cycle_.back()) {
    std::rotate(cycle_.rbegin(), cycle_.rbegin() + 1, cycle_.rend());
    prefix_.pop_back();
  }
}

ProfileId profile_at(const Path& x, std::size_t period) {
  if (period == 0) throw std::invalid_argument("periods start at 1");
  const std::size_t p = x.prefix_length();
  if (period <= p) return x.prefix()[period - 1];
  return x.cycle()[(period - p - 1) % x.cycle_length()];
}

Path tail(const Path& x, std::size_t from_period) {
  if (from_period == 0) throw std::invalid_argument("periods start at 1");
  const std::size_t p = x.prefix_length();
  if (from_period <= p + 1) {
    return Path({x.prefix().begin() + static_cast<std::ptrdiff_t>(from_period - 1),
                 x.prefix().end()},
                x.cycle());
  }
  std::vector<ProfileId> cycle = x.cycle();
  const std::size_t shift = (from_period - p - 1) % cycle.size();
  std::rotate(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(shift),
              cycle.end());
  return Path({}, std::move(cycle));
}

Path splice(const StageGame& game, const Path& x, const Deviation& dev,
            const Path& y) {
  if (dev.period < 1) throw std::invalid_argument("deviation period < 1");
  const auto tau = static_cast<std::size_t>(dev.period);
  std::vector<ProfileId> prefix;
  prefix.reserve(tau + y.prefix_length());
  for (std::size_t t = 1; t < tau; ++t) prefix.push_back(profile_at(x, t));
  prefix.push_back(
      merge(game, profile_at(x, tau), dev.coalition, dev.partial_profile));
  prefix.insert(prefix.end(), y.prefix().begin(), y.prefix().end());
  return Path(std::move(prefix), y.cycle());
}

Rat payoff(const StageGame& game, const Path& x, int player) {
  const Rat& delta = game.delta();
  const Rat one_minus = Rat(1) - delta;
  Rat weight(1);  // delta^(t-1)
  Rat prefix_sum(0);
  for (ProfileId z : x.prefix()) {
    prefix_sum += weight * game.payoff(z, player);
    weight *= delta;
  }
  // weight == delta^p here.
  Rat block(0);
  Rat w(1);
  for (ProfileId z : x.cycle()) {
    block += w * game.payoff(z, player);
    w *= delta;
  }
  // w == delta^c.
  return one_minus * prefix_sum + weight * one_minus / (Rat(1) - w) * block;
}

Rat position_payoff(const StageGame& game, const Position& g, const Path& x,
                    int player) {
  const Rat& delta = game.delta();
  Rat weight(1);
  Rat a(0);
  for (ProfileId z : g.history) {
    a += weight * game.payoff(z, player);
    weight *= delta;
  }
  return (Rat(1) - delta) * a + weight * payoff(game, x, player);
}

TailValues::TailValues(const StageGame& game, const Path& x)
    : prefix_length_(x.prefix_length()),
      cycle_length_(x.cycle_length()),
      values_(x.span()) {
  const int n = game.num_players();
  const Rat& delta = game.delta();
  const Rat one_minus = Rat(1) - delta;
  const Path cycle_path({}, x.cycle());
  const std::size_t p = prefix_length_;
  const std::size_t last = values_.size() - 1;
  std::vector<Rat> loop(n);
  for (int i = 0; i < n; ++i) loop[i] = payoff(game, cycle_path, i);
  // Slot k holds U(tail(x, k+1)). The tail after the last cycle entry is the
  // cycle itself (slot p), so walk backwards from there.
  for (std::size_t k = last + 1; k-- > 0;) {
    const ProfileId z = profile_at(x, k + 1);
    const std::vector<Rat>& next = (k == last) ? loop : values_[k + 1];
    values_[k].resize(n);
    for (int i = 0; i < n; ++i) {
      values_[k][i] = (k == p) ? loop[i]
                               : one_minus * game.payoff(z, i) + delta * next[i];
    }
  }
}

std::size_t TailValues::slot(std::size_t period) const {
  if (period == 0) throw std::invalid_argument("periods start at 1");
  if (period <= prefix_length_) return period - 1;
  return prefix_length_ + (period - prefix_length_ - 1) % cycle_length_;
}

std::size_t universe_raw_count(const StageGame& game, std::size_t max_prefix,
                               std::size_t max_cycle) {
  const std::size_t z = game.num_profiles();
  std::size_t prefixes = 0;
  std::size_t power = 1;
  for (std::size_t p = 0; p <= max_prefix; ++p) {
    prefixes = SaturatingAdd(prefixes, power);
    power = SaturatingMul(power, z);
  }
  std::size_t cycles = 0;
  power = z;
  for (std::size_t c = 1; c <= max_cycle; ++c) {
    cycles = SaturatingAdd(cycles, power);
    power = SaturatingMul(power, z);
  }
  return SaturatingMul(prefixes, cycles);
}

PathSet enumerate_universe(const StageGame& game, std::size_t max_prefix,
                           std::size_t max_cycle, std::size_t cap) {
  if (max_cycle == 0) throw std::invalid_argument("max_cycle must be >= 1");
  const std::size_t raw = universe_raw_count(game, max_prefix, max_cycle);
  if (raw > cap) throw CapExceeded(raw, cap);
  const std::size_t radix = game.num_profiles();

  // Primitive cycles of each length, generated once.
  std::vector<std::vector<std::vector<ProfileId>>> cycles(max_cycle + 1);
  for (std::size_t c = 1; c <= max_cycle; ++c) {
    std::vector<ProfileId> digits(c, 0);
    do {
      if (PrimitivePeriod(digits) == c) cycles[c].push_back(digits);
    } while (NextTuple(digits, radix));
  }

  PathSet out;
  for (std::size_t p = 0; p <= max_prefix; ++p) {
    std::vector<ProfileId> prefix(p, 0);
    do {
      for (std::size_t c = 1; c <= max_cycle; ++c) {
        for (const auto& cycle : cycles[c]) {
          // Already canonical iff the prefix cannot be absorbed.
          if (p > 0 && prefix.back() == cycle.back()) continue;
          out.emplace(prefix, cycle);
        }
      }
    } while (NextTuple(prefix, radix));
  }
  return out;
}

Path parse_path(const StageGame& game, std::string_view literal) {
  const std::size_t bar = literal.find('|');
  if (bar == std::string_view::npos) {
    throw ParseError("path literal needs '|' between prefix and cycle",
                     Column(0));
  }
  if (literal.find('|', bar + 1) != std::string_view::npos) {
    throw ParseError("more than one '|'",
                     Column(literal.find('|', bar + 1)));
  }
  std::vector<ProfileId> prefix =
      ParseProfiles(game, literal.substr(0, bar), 0);
  std::vector<ProfileId> cycle =
      ParseProfiles(game, literal.substr(bar + 1), bar + 1);
  if (cycle.empty()) throw ParseError("cycle is empty", Column(bar + 1));
  return Path(std::move(prefix), std::move(cycle));
}

std::string format_path(const StageGame& game, const Path& x) {
  auto join = [&](const std::vector<ProfileId>& list) {
    std::string out;
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (k) out += ';';
      out += game.profile_label(list[k]);
    }
    return out;
  };
  if (x.prefix().empty()) return "| " + join(x.cycle());
  return join(x.prefix()) + " | " + join(x.cycle());
}

PathSet parse_path_set(const StageGame& game, std::string_view text) {
  PathSet out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (!TrimView(line).empty()) {
      try {
        out.insert(parse_path(game, line));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), "line " + std::to_string(line_no));
      }
    }
    start = end + 1;
  }
  return out;
}

PathSet load_path_set(const StageGame& game, const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw ParseError("cannot open file", filename);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_path_set(game, buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(e.what(), filename);
  }
}

}  // namespace cssbkit
