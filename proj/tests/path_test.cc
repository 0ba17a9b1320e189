#include "cssbkit/path.h"

#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "cssbkit/errors.h"
#include "oracle/brute_force.h"
#include "support/test_support.h"

namespace cssbkit {
namespace {

using testing::LoadTestGame;
using testing::P;

class PdPathTest : public ::testing::Test {
 protected:
  StageGame pd_ = LoadTestGame("pd.json");
};

TEST_F(PdPathTest, CanonicalForm) {
  EXPECT_EQ(P(pd_, "C,C;C,C | C,C"), P(pd_, "| C,C"));
  EXPECT_EQ(P(pd_, "| C,C;D,D;C,C;D,D"), P(pd_, "| C,C;D,D"));
  // D,D ; (C,C D,D)^inf == (D,D C,C)^inf
  EXPECT_EQ(P(pd_, "D,D | C,C;D,D"), P(pd_, "| D,D;C,C"));
  EXPECT_NE(P(pd_, "| C,C;D,D"), P(pd_, "| D,D;C,C"));
  const Path x = P(pd_, "C,D;D,D;D,D | D,D;D,D");
  EXPECT_EQ(format_path(pd_, x), "C,D | D,D");
  EXPECT_EQ(Path(x.prefix(), x.cycle()), x);
  EXPECT_THROW(Path({}, {}), std::invalid_argument);
}

TEST_F(PdPathTest, FormatAndParse) {
  EXPECT_EQ(format_path(pd_, P(pd_, "C,D|C,C")), "C,D | C,C");
  EXPECT_EQ(format_path(pd_, P(pd_, "|  C , C ")), "| C,C");
  EXPECT_EQ(format_path(pd_, P(pd_, "C,C;D,D | C,C")), "C,C;D,D | C,C");
  EXPECT_THROW(P(pd_, "C,C"), ParseError);
  EXPECT_THROW(P(pd_, "C,C |"), ParseError);
  EXPECT_THROW(P(pd_, "| C"), ParseError);
  EXPECT_THROW(P(pd_, "| C,C,C"), ParseError);
  EXPECT_THROW(P(pd_, "| C,X"), ParseError);
  EXPECT_THROW(P(pd_, "C,C;;D,D | C,C"), ParseError);
  EXPECT_THROW(P(pd_, "| C,C | D,D"), ParseError);
  try {
    P(pd_, "C,C | C,Q");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.where(), "column 9");
  }
}

TEST_F(PdPathTest, PayoffExamples) {
  EXPECT_EQ(payoff(pd_, P(pd_, "| C,C"), 0), Rat(2));
  EXPECT_EQ(payoff(pd_, P(pd_, "| C,C"), 1), Rat(2));
  const Path cd = P(pd_, "C,D | C,C");
  EXPECT_EQ(payoff(pd_, cd, 0), Rat(6, 5));
  EXPECT_EQ(payoff(pd_, cd, 1), Rat(12, 5));
  const Path dd = P(pd_, "D,D | C,C");
  EXPECT_EQ(payoff(pd_, dd, 0), Rat(8, 5));
  EXPECT_EQ(payoff(pd_, dd, 1), Rat(8, 5));
  // Truncation oracle: 200 terms within d^200 * max|u|.
  for (const Path& x : {cd, dd}) {
    const Rat bound = Pow(pd_.delta(), 200) * pd_.max_abs_payoff();
    for (int i = 0; i < 2; ++i) {
      const Rat truncated = oracle::TruncatedSum(pd_, oracle::FromPath(x), i, 200);
      EXPECT_LE(Abs(payoff(pd_, x, i) - truncated), bound);
    }
  }
}

TEST_F(PdPathTest, TailAndProfileAt) {
  const Path x = P(pd_, "C,D | C,C");
  EXPECT_EQ(tail(x, 1), x);
  EXPECT_EQ(tail(x, 2), P(pd_, "| C,C"));
  EXPECT_EQ(tail(x, 7), P(pd_, "| C,C"));
  EXPECT_EQ(profile_at(x, 1), pd_.index_of({{0, 1}}));
  EXPECT_EQ(profile_at(x, 2), pd_.index_of({{0, 0}}));
  EXPECT_EQ(profile_at(x, 3), pd_.index_of({{0, 0}}));
  EXPECT_THROW(profile_at(x, 0), std::invalid_argument);
}

TEST(TailTest, CycleRotation) {
  const StageGame coord = LoadTestGame("coord.json");
  const Path x = P(coord, "| A,A;B,B");
  EXPECT_EQ(tail(x, 2), P(coord, "| B,B;A,A"));
  EXPECT_EQ(tail(x, 3), x);
}

TEST_F(PdPathTest, SpliceExamples) {
  EXPECT_EQ(splice(pd_, P(pd_, "| C,C"), Deviation{Coalition({0}), 1, {1}},
                   P(pd_, "| D,D")),
            P(pd_, "D,C | D,D"));
  EXPECT_EQ(splice(pd_, P(pd_, "| C,C"), Deviation{Coalition({0, 1}), 1, {0, 0}},
                   P(pd_, "| C,C")),
            P(pd_, "| C,C"));
  EXPECT_EQ(splice(pd_, P(pd_, "| C,C"), Deviation{Coalition({0, 1}), 2, {1, 1}},
                   P(pd_, "| C,C")),
            P(pd_, "C,C;D,D | C,C"));
}

TEST_F(PdPathTest, PositionPayoffExamples) {
  const Path cc = P(pd_, "| C,C");
  const Path cd = P(pd_, "C,D | C,C");
  EXPECT_EQ(position_payoff(pd_, Position{}, cd, 0), payoff(pd_, cd, 0));
  const ProfileId zcc = pd_.index_of({{0, 0}});
  const ProfileId zdd = pd_.index_of({{1, 1}});
  EXPECT_EQ(position_payoff(pd_, Position{{zcc}}, cc, 0), Rat(2));
  EXPECT_EQ(position_payoff(pd_, Position{{zdd}}, cc, 0), Rat(8, 5));
  EXPECT_EQ(position_payoff(pd_, Position{{zdd}}, cc, 1),
            payoff(pd_, P(pd_, "D,D | C,C"), 1));
}

TEST(PathPropertyTest, RecursionAndTruncation) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const StageGame game = testing::RandomGame(rng, {});
    const Path x = testing::RandomPath(rng, game, 4, 4);
    const TailValues tails(game, x);
    for (int i = 0; i < game.num_players(); ++i) {
      const Rat u = payoff(game, x, i);
      EXPECT_EQ(u, (Rat(1) - game.delta()) * game.payoff(profile_at(x, 1), i) +
                       game.delta() * payoff(game, tail(x, 2), i));
      EXPECT_EQ(u, oracle::ExactValue(game, oracle::FromPath(x), i));
      for (std::size_t t = 1; t <= x.span() + 3; ++t) {
        EXPECT_EQ(tails.at(t, i), payoff(game, tail(x, t), i));
      }
    }
    EXPECT_TRUE(oracle::TruncationWithinBound(game, oracle::FromPath(x), 200));
  }
}

TEST(PathPropertyTest, SplicePositionConsistency) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const StageGame game = testing::RandomGame(rng, {});
    const Path x = testing::RandomPath(rng, game, 3, 3);
    const Path y = testing::RandomPath(rng, game, 3, 3);
    const auto coalitions = all_coalitions(game);
    const Coalition& c = coalitions[rng() % coalitions.size()];
    const auto partials = deviation_profiles(game, c);
    const Deviation dev{c, static_cast<int>(1 + rng() % 6),
                        partials[rng() % partials.size()]};
    const Path s = splice(game, x, dev, y);
    Position history;
    for (int t = 1; t < dev.period; ++t) history.history.push_back(profile_at(x, t));
    history.history.push_back(merge(game, profile_at(x, dev.period), c,
                                    dev.partial_profile));
    for (int i = 0; i < game.num_players(); ++i) {
      EXPECT_EQ(payoff(game, s, i), position_payoff(game, history, y, i));
    }
    // Against the oracle's raw splice, which is never canonicalized.
    const auto raw = oracle::Splice(game, oracle::FromPath(x), c.members(),
                                    dev.partial_profile, dev.period,
                                    oracle::FromPath(y));
    for (std::size_t t = 1; t <= 20; ++t) EXPECT_EQ(profile_at(s, t), raw.at(t));
  }
}

TEST(PathPropertyTest, CanonicalizationIsIdempotentAndSequencePreserving) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const StageGame game = testing::RandomGame(rng, {.max_players = 2,
                                                     .max_actions = 2});
    std::vector<ProfileId> prefix(rng() % 5), cycle(1 + rng() % 6);
    for (auto& z : prefix) z = static_cast<ProfileId>(rng() % game.num_profiles());
    for (auto& z : cycle) z = static_cast<ProfileId>(rng() % game.num_profiles());
    const Path x(prefix, cycle);
    EXPECT_EQ(Path(x.prefix(), x.cycle()), x);
    const oracle::RawPath raw{prefix, cycle};
    for (std::size_t t = 1; t <= 40; ++t) EXPECT_EQ(profile_at(x, t), raw.at(t));
    EXPECT_LE(x.prefix_length(), prefix.size());
    EXPECT_LE(x.cycle_length(), cycle.size());
  }
}

// Distinct sequences among all (prefix <= P, cycle <= K) pairs, keyed by
// their first P + lcm(1..K) terms; no canonicalization involved.
std::size_t BruteForceUniverseSize(std::size_t profiles, std::size_t max_prefix,
                                   std::size_t max_cycle) {
  std::size_t horizon = 1;
  for (std::size_t c = 1; c <= max_cycle; ++c) horizon = std::lcm(horizon, c);
  horizon += max_prefix;
  std::set<std::vector<ProfileId>> seen;
  auto tuples = [&](std::size_t len) {
    std::vector<std::vector<ProfileId>> out{{}};
    for (std::size_t k = 0; k < len; ++k) {
      std::vector<std::vector<ProfileId>> next;
      for (const auto& t : out) {
        for (ProfileId z = 0; z < profiles; ++z) {
          auto e = t;
          e.push_back(z);
          next.push_back(e);
        }
      }
      out = next;
    }
    return out;
  };
  for (std::size_t p = 0; p <= max_prefix; ++p) {
    for (std::size_t c = 1; c <= max_cycle; ++c) {
      for (const auto& pre : tuples(p)) {
        for (const auto& cyc : tuples(c)) {
          oracle::RawPath raw{pre, cyc};
          std::vector<ProfileId> key;
          for (std::size_t t = 1; t <= horizon; ++t) key.push_back(raw.at(t));
          seen.insert(key);
        }
      }
    }
  }
  return seen.size();
}

TEST_F(PdPathTest, UniverseCounts) {
  EXPECT_EQ(BruteForceUniverseSize(4, 0, 1), 4u);
  EXPECT_EQ(BruteForceUniverseSize(4, 0, 2), 16u);
  EXPECT_EQ(BruteForceUniverseSize(4, 1, 1), 16u);
  EXPECT_EQ(enumerate_universe(pd_, 0, 1).size(), 4u);
  EXPECT_EQ(enumerate_universe(pd_, 0, 2).size(), 16u);
  EXPECT_EQ(enumerate_universe(pd_, 1, 1).size(), 16u);
  for (std::size_t p = 0; p <= 2; ++p) {
    for (std::size_t c = 1; c <= 3; ++c) {
      EXPECT_EQ(enumerate_universe(pd_, p, c).size(),
                BruteForceUniverseSize(4, p, c))
          << "P=" << p << " K=" << c;
    }
  }
  const StageGame solo = LoadTestGame("solo.json");
  EXPECT_EQ(enumerate_universe(solo, 2, 2).size(),
            BruteForceUniverseSize(3, 2, 2));
}

TEST_F(PdPathTest, UniverseMembersAreCanonicalAndBounded) {
  for (const Path& x : enumerate_universe(pd_, 2, 2)) {
    EXPECT_EQ(Path(x.prefix(), x.cycle()), x);
    EXPECT_LE(x.prefix_length(), 2u);
    EXPECT_LE(x.cycle_length(), 2u);
  }
}

TEST_F(PdPathTest, UniverseCap) {
  EXPECT_EQ(universe_raw_count(pd_, 1, 1), 5u * 4u);
  EXPECT_EQ(universe_raw_count(pd_, 2, 2), 21u * 20u);
  EXPECT_THROW(enumerate_universe(pd_, 2, 2, 419), CapExceeded);
  EXPECT_NO_THROW(enumerate_universe(pd_, 2, 2, 420));
  EXPECT_THROW(enumerate_universe(pd_, 40, 40), CapExceeded);
  EXPECT_THROW(enumerate_universe(pd_, 1, 0), std::invalid_argument);
}

TEST_F(PdPathTest, PathSetFile) {
  const PathSet sb = parse_path_set(pd_, "# comment\n| C,C\n\nC,D | C,C  # x[1]\n| C,C\n");
  EXPECT_EQ(sb.size(), 2u);
  EXPECT_TRUE(sb.contains(P(pd_, "C,D | C,C")));
  try {
    parse_path_set(pd_, "| C,C\n| Z,Z\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.where(), "line 2");
  }
}

}  // namespace
}  // namespace cssbkit
