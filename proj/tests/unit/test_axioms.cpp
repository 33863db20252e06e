#include <random>

#include "test_util.hpp"

using namespace powerdex;
using testing_util::R;
using testing_util::SharesAre;

namespace {

JKGame ignores_player_two() {
  std::vector<int> values(27);
  for (std::size_t idx = 0; idx < 27; ++idx) values[idx] = (idx % 3) + (idx / 9) >= 3 ? 1 : 0;
  return JKGame(3, 3, 2, values);
}

std::vector<std::string> expected(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

// ---------------------------------------------------------------- structure

TEST(NullPlayers, ConstructedNull) {
  EXPECT_EQ(find_null_players(embed_jk(ignores_player_two())), Coalition::of(3, {1}));
}

TEST(NullPlayers, AppendixGameHasNone) { EXPECT_TRUE(find_null_players(appendix_game()).is_empty()); }

TEST(NullPlayers, ZeroGameHasNone) {
  for (int n = 1; n <= 4; ++n) EXPECT_TRUE(find_null_players(zero_game(n)).is_empty()) << "n=" << n;
}

TEST(NullPlayers, DictatorLeavesTheRestNull) {
  const auto g = embed_jk(JKGame::from_simple(SimpleGame::from_minimal_winning(3, {0b001})));
  EXPECT_EQ(find_null_players(g), Coalition::of(3, {1, 2}));
}

TEST(SymmetricPairs, Examples) {
  using Pairs = std::vector<std::pair<int, int>>;
  EXPECT_EQ(find_symmetric_pairs(embed_jk(JKGame::from_simple(SimpleGame::weighted(2, {1, 1})))), (Pairs{{0, 1}}));
  EXPECT_TRUE(find_symmetric_pairs(appendix_game()).empty());
  const auto g = make_regular_step_from(Discretization::uniform(2), 3, [](const FaceIndex& d) {
    return Rational(d[0] + d[1] + d[2] - 3, 6);
  });
  EXPECT_EQ(find_symmetric_pairs(g), (Pairs{{0, 1}, {0, 2}, {1, 2}}));
  const auto w = embed_jk(JKGame::from_simple(SimpleGame::weighted(3, {2, 1, 1})));
  EXPECT_EQ(find_symmetric_pairs(w), (Pairs{{1, 2}}));
}

TEST(PermutePlayers, RelabelsCoordinates) {
  const auto g = appendix_game();
  const auto h = permute_players(g, {1, 0});
  EXPECT_EQ(h.value(std::vector<int>{1, 3}), g.value(std::vector<int>{3, 1}));
  EXPECT_EQ(permute_players(h, {1, 0}), g);
  EXPECT_TRUE(SharesAre(psi_exact(h), {"7/16", "9/16"}));

  std::mt19937_64 rng(1);
  const auto r = random_regular_step(rng, 3, random_discretization(rng, 2));
  const std::vector<int> perm{2, 0, 1};
  const auto pr = permute_players(r, perm);
  const auto a = psi_exact(r);
  const auto b = psi_exact(pr);
  for (int k = 0; k < 3; ++k) EXPECT_EQ(b.shares[k], a.shares[perm[k]]);
}

// ---------------------------------------------------------------- suites

TEST(CheckAxioms, PsiPassesEverything) {
  const auto suite = random_axiom_suite(7, 50);
  const auto rep = check_axioms(psi_handle(), suite);
  for (const auto& [name, r] : rep.axioms) {
    EXPECT_TRUE(r.pass) << name << ": " << r.witness;
    EXPECT_GT(r.checks, 0) << name;
  }
  EXPECT_TRUE(rep.all_pass());
  EXPECT_TRUE(rep.failing().empty());
}

TEST(CheckAxioms, SuiteExercisesNullAndSymmetricPlayers) {
  int nulls = 0;
  int symmetric = 0;
  for (const auto& g : random_axiom_suite(7, 50)) {
    ASSERT_TRUE(validate(g).ok());
    ASSERT_TRUE(validate(g).regular);
    if (!find_null_players(g).is_empty()) ++nulls;
    if (!find_symmetric_pairs(g).empty()) ++symmetric;
  }
  EXPECT_GE(nulls, 8);
  EXPECT_GE(symmetric, 5);
}

TEST(CheckAxioms, ScaledPsiFailsOnlyEfficiency) {
  const auto rep = check_axioms(scaled_psi_handle(), random_axiom_suite(7, 30));
  EXPECT_EQ(rep.failing(), expected({"E"}));
  EXPECT_NE(rep.axioms.at("E").witness.find("sum to 2"), std::string::npos);
}

TEST(CheckAxioms, BlendFailsOnlyNullPlayer) {
  const auto rep = check_axioms(blend_equal_division_handle(), random_axiom_suite(7, 30));
  EXPECT_EQ(rep.failing(), expected({"NP"}));
  EXPECT_NE(rep.axioms.at("NP").witness.find("null player"), std::string::npos);
}

TEST(CheckAxioms, PointVariantFailsOnlyHis) {
  const auto rep = check_axioms(psi_point_handle(R("1/3")), random_axiom_suite(7, 30));
  EXPECT_EQ(rep.failing(), expected({"HIS"}));
  EXPECT_FALSE(rep.axioms.at("HIS").witness.empty());
}

TEST(CheckAxioms, SquaredGameFailsOnlyHis) {
  const auto rep = check_axioms(psi_of_square_handle(), random_axiom_suite(7, 30));
  EXPECT_EQ(rep.failing(), expected({"HIS"}));
}

TEST(CheckAxioms, ReportsAreReproducible) {
  const auto suite = random_axiom_suite(3, 12);
  const auto a = check_axioms(psi_point_handle(R("1/4")), suite);
  const auto b = check_axioms(psi_point_handle(R("1/4")), suite);
  for (const auto& [name, r] : a.axioms) {
    EXPECT_EQ(r.pass, b.axioms.at(name).pass);
    EXPECT_EQ(r.checks, b.axioms.at(name).checks);
    EXPECT_EQ(r.witness, b.axioms.at(name).witness);
  }
}

TEST(CheckAxioms, TransferHoldsOnRandomPairs) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 3;
    const auto u = random_regular_step(rng, n, random_discretization(rng, 1 + t % 3));
    const auto v = random_regular_step(rng, n, random_discretization(rng, 1 + (t / 3) % 3));
    const auto [hi, lo] = join_meet(u, v);
    ASSERT_EQ(psi_exact(u) + psi_exact(v), psi_exact(hi) + psi_exact(lo)) << "trial " << t;
  }
}

TEST(HandleByName, KnownNames) {
  for (const char* name : {"psi", "2psi", "half_psi_half_ed", "psi_of_square"}) {
    const auto h = handle_by_name(name);
    ASSERT_TRUE(h.has_value()) << name;
    EXPECT_EQ(h->name, name);
  }
  EXPECT_EQ(handle_by_name("psi_point")->name, "psi_point(1/3)");
  EXPECT_EQ(handle_by_name("psi_point(1/4)")->name, "psi_point(1/4)");
  EXPECT_EQ(handle_by_name("phi_two_player(1/3)")->name, "phi_two_player(1/3)");
  EXPECT_FALSE(handle_by_name("banzhaf").has_value());
  EXPECT_THROW(handle_by_name("psi_point(x)"), input_error);
}

TEST(HisProbes, EveryProbeIsALocalIncrementForPsi) {
  const auto g = appendix_game();
  const auto probes = detail::his_probes(g);
  EXPECT_FALSE(probes.empty());
  for (const auto& pr : probes) {
    EXPECT_GT(pr.slack, Rational(0));
    EXPECT_NE(pr.S, full_mask(2));
    EXPECT_NE(pr.S, PlayerMask{0});
  }
}

// ---------------------------------------------------------------- separation

TEST(Separation, Demo) {
  const auto rep = separation_demo();
  ASSERT_EQ(rep.rows.size(), 4u);
  for (const auto& row : rep.rows) {
    EXPECT_TRUE(SharesAre(row.psi, {"5/12", "7/12"}));
    EXPECT_TRUE(row.differs);
  }
  EXPECT_TRUE(SharesAre(rep.rows[0].psi_point, {"1/2", "1/2"}));
  EXPECT_TRUE(SharesAre(rep.rows[2].psi_point, {"3/8", "5/8"}));
  EXPECT_TRUE(SharesAre(rep.rows[3].psi_point, {"1/2", "1/2"}));
  ASSERT_EQ(rep.brackets.size(), 2u);
  for (const auto& [lo, hi] : rep.brackets) {
    // alpha - alpha^2 - 1/6 changes sign inside each bracket.
    const auto f = [](const Rational& a) { return a - a * a - Rational(1, 6); };
    EXPECT_LT(f(lo).sign() * f(hi).sign(), 0);
  }
}
