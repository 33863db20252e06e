#include <random>

#include "test_util.hpp"

using namespace powerdex;
using testing_util::R;
using testing_util::SharesAre;

namespace {

JKGame majority_of_levels() {
  // n = 2, j = 3: wins once x1 + x2 >= 3.
  std::vector<int> values(9);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) values[a + 3 * b] = a + b >= 3 ? 1 : 0;
  }
  return JKGame(2, 3, 2, values);
}

}  // namespace

TEST(EmbedJk, TwoPlayerMajority) {
  const auto g = embed_jk(JKGame::from_simple(SimpleGame::weighted(2, {1, 1})));
  EXPECT_EQ(g.disc(), Discretization::uniform(2));
  EXPECT_EQ(g.tag(), RegularityTag::regular);
  EXPECT_TRUE(validate(g).ok());
  EXPECT_EQ(g.value(std::vector<int>{3, 3}), R("1"));
  EXPECT_EQ(g.value(std::vector<int>{1, 3}), R("0"));
  EXPECT_EQ(g.value(std::vector<int>{0, 0}), R("0"));
  EXPECT_EQ(g.value(std::vector<int>{4, 4}), R("1"));
  EXPECT_TRUE(SharesAre(psi_exact(g), {"1/2", "1/2"}));
}

TEST(EmbedJk, ThreeLevelsUsesThreeBoxes) {
  const auto v = majority_of_levels();
  const auto g = embed_jk(v);
  EXPECT_EQ(g.disc().p(), 3);
  EXPECT_EQ(g.disc()[1], R("1/3"));
  EXPECT_EQ(psi_exact(g), jk_ssi_pivot(v));
  EXPECT_TRUE(SharesAre(psi_exact(g), {"1/2", "1/2"}));
}

TEST(EmbedJk, OutputLevelsAreScaled) {
  std::vector<int> values(4);
  values = {0, 1, 1, 2};
  const auto g = embed_jk(JKGame(2, 2, 3, values));
  EXPECT_EQ(g.value(std::vector<int>{3, 1}), R("1/2"));
  EXPECT_EQ(g.value(std::vector<int>{3, 3}), R("1"));
}

TEST(EmbedJk, NullPlayerSurvives) {
  // (3,2) game on three players that ignores player 2.
  std::vector<int> values(27);
  for (std::size_t idx = 0; idx < 27; ++idx) {
    const int a = static_cast<int>(idx % 3);
    const int c = static_cast<int>(idx / 9);
    values[idx] = a + c >= 3 ? 1 : 0;
  }
  const auto g = embed_jk(JKGame(3, 3, 2, values));
  EXPECT_EQ(find_null_players(g), Coalition::of(3, {1}));
  EXPECT_TRUE(psi_exact(g).shares[1].is_zero());
}

TEST(EmbedJk, AgreesWithSsiOnEveryThreePlayerSimpleGame) {
  const auto games = testing_util::all_simple_games(3);
  ASSERT_EQ(games.size(), 18u);
  for (const auto& v : games) {
    const auto g = embed_jk(JKGame::from_simple(v));
    ASSERT_EQ(psi_exact(g), ssi_coalition(v));
  }
}

TEST(EmbedJk, AgreesWithBothDiscreteFormsOnRandomGames) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 3;
    const int j = 2 + (t / 3) % 2;
    const int k = 2 + (t / 6) % 2;
    const auto v = random_jk_game(rng, n, j, k);
    const auto psi = psi_exact(embed_jk(v));
    ASSERT_EQ(psi, jk_ssi_pivot(v)) << "trial " << t;
    ASSERT_EQ(psi, jk_ssi_marginal(v)) << "trial " << t;
  }
}

TEST(EmbedTau, WeightedMajorityAtOneQuarter) {
  const auto v = JKGame::from_simple(SimpleGame::weighted(3, {2, 1, 1}));
  EXPECT_TRUE(SharesAre(psi_exact(embed_2k_tau(v, R("1/4"))), {"2/3", "1/6", "1/6"}));
}

TEST(EmbedTau, HalfIsTheNaturalEmbedding) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    const auto v = random_jk_game(rng, 1 + t % 3, 2, 2 + t % 3);
    EXPECT_EQ(embed_2k_tau(v, R("1/2")), embed_jk(v));
  }
}

TEST(EmbedTau, SymmetricTwoByThree) {
  const auto g = embed_2k_tau(JKGame(2, 2, 3, {0, 1, 1, 2}), R("3/4"));
  EXPECT_TRUE(SharesAre(psi_exact(g), {"1/2", "1/2"}));
}

TEST(EmbedTau, RejectsBadArguments) {
  const auto v = JKGame::from_simple(SimpleGame::weighted(2, {1, 1}));
  EXPECT_THROW(embed_2k_tau(v, R("0")), input_error);
  EXPECT_THROW(embed_2k_tau(v, R("1")), input_error);
  EXPECT_THROW(embed_2k_tau(v, R("-1/2")), input_error);
  EXPECT_THROW(embed_2k_tau(majority_of_levels(), R("1/2")), input_error);
}

TEST(EmbedTau, PsiDoesNotDependOnTau) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 50; ++t) {
    const auto v = random_jk_game(rng, 1 + t % 3, 2, 2 + (t / 3) % 3);
    const auto at_half = psi_exact(embed_2k_tau(v, R("1/2")));
    ASSERT_EQ(psi_exact(embed_2k_tau(v, R("1/4"))), at_half) << "trial " << t;
    ASSERT_EQ(psi_exact(embed_2k_tau(v, R("3/4"))), at_half) << "trial " << t;
    ASSERT_EQ(boundary_averages(embed_2k_tau(v, R("1/2"))), jk_boundary_averages(v)) << "trial " << t;
  }
}

TEST(EmbedTau, BoundaryTableSplitsAwayFromHalf) {
  // Unanimity of two players: C({1}) picks up the length of the upper box.
  const auto v = JKGame::from_simple(SimpleGame::from_minimal_winning(2, {0b11}));
  const auto discrete = jk_boundary_averages(v);
  EXPECT_EQ(discrete(0b01), R("1/2"));
  const auto quarter = boundary_averages(embed_2k_tau(v, R("1/4")));
  EXPECT_EQ(quarter(0b01), R("3/4"));
  EXPECT_NE(quarter, discrete);
  EXPECT_EQ(boundary_averages(embed_2k_tau(v, R("1/2"))), discrete);
  EXPECT_EQ(psi_exact(embed_2k_tau(v, R("1/4"))), jk_ssi_marginal(v));
}

TEST(EmbedSemiRegular, TaggedAndFilledPointwise) {
  const auto v = SimpleGame::weighted(3, {2, 1, 1});
  const auto g = embed_simple_semiregular(v);
  EXPECT_EQ(g.tag(), RegularityTag::semi_regular);
  EXPECT_EQ(g.disc().p(), 1);
  EXPECT_TRUE(validate(g).ok());
  EXPECT_EQ(g.value(std::vector<int>{1, 1, 1}), R("0"));
  EXPECT_EQ(g.value(std::vector<int>{2, 2, 0}), R("1"));
  EXPECT_EQ(g.value(std::vector<int>{2, 1, 1}), R("0"));
  EXPECT_EQ(g.value(std::vector<int>{1, 2, 2}), R("0"));
  EXPECT_TRUE(SharesAre(psi_exact(g), {"2/3", "1/6", "1/6"}));
}

TEST(EmbedSemiRegular, DictatorAndUnanimity) {
  EXPECT_TRUE(SharesAre(psi_exact(embed_simple_semiregular(SimpleGame::from_minimal_winning(4, {0b0001}))),
                        {"1", "0", "0", "0"}));
  EXPECT_TRUE(SharesAre(psi_exact(embed_simple_semiregular(SimpleGame::from_minimal_winning(4, {0b1011}))),
                        {"1/3", "1/3", "0", "1/3"}));
}

TEST(EmbedSemiRegular, AgreesWithSsiOnEveryFourPlayerSimpleGame) {
  for (const auto& v : testing_util::all_simple_games(4)) {
    const auto g = embed_simple_semiregular(v);
    ASSERT_TRUE(validate(g).ok());
    ASSERT_EQ(psi_exact(g), ssi_coalition(v));
  }
}

TEST(EmbedSemiRegular, NonMonotoneTableIsFlagged) {
  CoalitionFunction v(3);
  v(0b001) = 1;
  v(0b101) = 1;
  v(0b111) = 1;
  const auto rep = validate(embed_simple_semiregular(v));
  EXPECT_FALSE(rep.monotone);
  EXPECT_FALSE(rep.ok());
  EXPECT_THROW(embed_simple_semiregular(CoalitionFunction(2, {R("0"), R("1/2"), R("0"), R("1")})), input_error);
}
