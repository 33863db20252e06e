#include <random>
#include <set>

#include "test_util.hpp"

using namespace powerdex;
using testing_util::R;

// ---------------------------------------------------------------- Rational

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(Rational::parse("6/8").str(), "3/4");
  EXPECT_EQ(Rational::parse("-2/4").str(), "-1/2");
  EXPECT_EQ(Rational::parse("7").str(), "7/1");
  EXPECT_EQ(Rational::parse("0").str(), "0/1");
  EXPECT_EQ(Rational::parse("0.1").str(), "1/10");
  EXPECT_EQ(Rational::parse("-0.125").str(), "-1/8");
  EXPECT_EQ(Rational::parse(" 3/9 ").str(), "1/3");
}

TEST(Rational, RejectsMalformedLiterals) {
  for (const char* bad : {"", "1/0", "a/2", "1//2", "1.2.3", "--1", "1/-2", "0x10"}) {
    EXPECT_THROW(Rational::parse(bad), input_error) << bad;
  }
}

TEST(Rational, AdditionMatchesCrossMultiplication) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-1000000, 1000000);
  std::uniform_int_distribution<long> den(1, 1000000);
  for (int t = 0; t < 1000; ++t) {
    const long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    const Rational sum = Rational(a, b) + Rational(c, d);
    // sum == (ad + cb) / bd, compared by cross-multiplication in big integers.
    const mpz_class lhs = sum.numerator() * (mpz_class(b) * d);
    const mpz_class rhs = (mpz_class(a) * d + mpz_class(c) * b) * sum.denominator();
    ASSERT_EQ(lhs, rhs);
    ASSERT_EQ(gcd(sum.numerator(), sum.denominator()), 1);
    ASSERT_GT(sum.denominator(), 0);
  }
}

TEST(Rational, ExactArithmetic) {
  EXPECT_EQ(R("1/3") + R("1/6"), R("1/2"));
  EXPECT_EQ(R("2/3") * R("3/4"), R("1/2"));
  EXPECT_EQ(R("1/2") / R("1/4"), Rational(2));
  EXPECT_THROW(R("1") / R("0"), std::domain_error);
  EXPECT_EQ(pow(R("1/2"), 3u), R("1/8"));
}

TEST(Combinatorics, ShapleyWeights) {
  EXPECT_EQ(marginal_weight(1, 3), R("1/3"));
  EXPECT_EQ(marginal_weight(2, 3), R("1/6"));
  EXPECT_EQ(outsider_weight(1, 3), R("1/6"));
  EXPECT_EQ(outsider_weight(2, 3), R("1/3"));
  EXPECT_EQ(factorial(20), mpz_class("2432902008176640000"));
}

// ---------------------------------------------------------------- games

TEST(SimpleGame, ValidatesAndExpandsMinimalWinning) {
  const auto g = SimpleGame::from_minimal_winning(3, {0b011, 0b101});
  EXPECT_TRUE(g.wins(0b011));
  EXPECT_TRUE(g.wins(0b111));
  EXPECT_FALSE(g.wins(0b110));
  CoalitionFunction bad(3);
  bad(0b001) = 1;
  bad(0b101) = 1;
  bad(0b111) = 1;
  EXPECT_THROW(SimpleGame{bad}, input_error);
}

TEST(SimpleGame, WeightedMajority) {
  const auto g = SimpleGame::weighted(Rational(3), {Rational(2), Rational(1), Rational(1)});
  EXPECT_TRUE(g.wins(0b011));
  EXPECT_TRUE(g.wins(0b101));
  EXPECT_FALSE(g.wins(0b110));
  EXPECT_FALSE(g.wins(0b001));
}

TEST(JKGame, RejectsNonMonotoneAndUnpinned) {
  EXPECT_NO_THROW(JKGame(2, 2, 2, {0, 1, 0, 1}));
  EXPECT_THROW(JKGame(1, 3, 2, {0, 1, 0}), input_error);                    // top profile not at k-1
  EXPECT_THROW(JKGame(2, 3, 2, {0, 1, 0, 0, 1, 1, 1, 1, 1}), input_error);  // v(2,0) < v(1,0)
  EXPECT_THROW(JKGame(1, 2, 3, {1, 2}), input_error);
}

// ---------------------------------------------------------------- grids

TEST(Discretization, LocateUsesDoubledCoordinates) {
  const Discretization a({R("0"), R("1/4"), R("1/2"), R("1")});
  EXPECT_EQ(a.p(), 3);
  EXPECT_EQ(a.mesh(), R("1/2"));
  EXPECT_EQ(a.locate(R("0")), 0);
  EXPECT_EQ(a.locate(R("1/8")), 1);
  EXPECT_EQ(a.locate(R("1/4")), 2);
  EXPECT_EQ(a.locate(R("3/4")), 5);
  EXPECT_EQ(a.locate(R("1")), 6);
  EXPECT_EQ(a.locate(0.3), 3);
  EXPECT_EQ(a.locate(0.25), 2);
  EXPECT_THROW(a.locate(R("5/4")), input_error);
  EXPECT_EQ(a.center(5), R("3/4"));
  EXPECT_EQ(a.center(2), R("1/4"));
  EXPECT_THROW(Discretization({R("0"), R("1/2"), R("1/2"), R("1")}), input_error);
  EXPECT_THROW(Discretization({R("0"), R("1/2")}), input_error);
}

TEST(FaceGrid, EncodesAndCaps) {
  const FaceGrid g(3, 2);
  EXPECT_EQ(g.size(), 125u);
  const FaceIndex d{4, 1, 3};
  EXPECT_EQ(g.decode(g.encode(d)), d);
  EXPECT_TRUE(g.is_box(g.encode(FaceIndex{1, 3, 3})));
  EXPECT_FALSE(g.is_box(g.encode(d)));
  EXPECT_EQ(g.adjacent_boxes(g.encode(FaceIndex{2, 2, 2})).size(), 8u);
  EXPECT_EQ(g.adjacent_boxes(g.encode(FaceIndex{4, 1, 0})).size(), 1u);
  EXPECT_EQ(g.faces_of_box(g.encode(FaceIndex{1, 1, 1})).size(), 27u);
  EXPECT_EQ(g.boxes().size(), 8u);
  EXPECT_NO_THROW(FaceGrid(6, 5));
  EXPECT_THROW(FaceGrid(7, 1), input_error);
  EXPECT_THROW(FaceGrid(6, 6), input_error);
}

// ---------------------------------------------------------------- step games

TEST(StepGame, RegularFillOfTheAppendixGame) {
  const auto v = appendix_game();
  EXPECT_EQ(v.value(FaceIndex{6, 5}), R("9/10"));
  EXPECT_EQ(v.value(FaceIndex{6, 6}), R("1"));
  EXPECT_EQ(v.value(FaceIndex{0, 0}), R("0"));
  EXPECT_EQ(v.value(FaceIndex{4, 1}), R("2/5"));
  EXPECT_EQ(v.value(FaceIndex{2, 2}), (R("1/10") + R("2/10") + R("3/10") + R("6/10")) / Rational(4));
}

TEST(StepGame, ZeroGameIsOnlyTheTopCorner) {
  const auto z = zero_game(2);
  for (std::size_t idx = 0; idx < z.grid().size(); ++idx) {
    EXPECT_EQ(z.at(idx), idx == z.grid().highest_corner() ? Rational(1) : Rational(0));
  }
}

TEST(StepGame, MakeRegularRejectsBadBoxes) {
  const Discretization a({R("0"), R("1/2"), R("1")});
  EXPECT_THROW(make_regular_step(a, 1, {{{1}, R("1/2")}}), input_error);
  EXPECT_THROW(make_regular_step(a, 1, {{{1}, R("1/2")}, {{3}, R("3/2")}}), input_error);
  EXPECT_THROW(make_regular_step(a, 1, {{{1}, R("0")}, {{2}, R("1/2")}, {{3}, R("1")}}), input_error);
}

TEST(StepGame, Evaluate) {
  const auto v = appendix_game();
  auto at = [&](const char* a, const char* b) {
    const std::vector<Rational> x{R(a), R(b)};
    return v.evaluate(std::span<const Rational>(x));
  };
  EXPECT_EQ(at("1/8", "3/4"), R("2/5"));
  EXPECT_EQ(at("1", "1"), R("1"));
  EXPECT_EQ(at("1", "1/8"), R("1/2"));
  const std::vector<double> xd{0.125, 0.75};
  EXPECT_DOUBLE_EQ(v.evaluate(std::span<const double>(xd)), 0.4);
  EXPECT_THROW(at("-1/8", "1/2"), input_error);
}

namespace {

std::vector<Rational> random_point(std::mt19937_64& rng, int n) {
  // Denominators 48 hit grid points as well as interiors.
  std::uniform_int_distribution<long> pick(0, 48);
  std::vector<Rational> x;
  for (int i = 0; i < n; ++i) x.emplace_back(pick(rng), 48);
  return x;
}

}  // namespace

TEST(StepGame, RefinePreservesPointValues) {
  const auto v = appendix_game();
  const Discretization fine({R("0"), R("1/8"), R("1/4"), R("1/2"), R("1")});
  const auto f = refine(v, fine);
  EXPECT_EQ(f.tag(), RegularityTag::raw);
  const std::vector<Rational> corner{R("1/16"), R("1/16")};
  EXPECT_EQ(f.evaluate(std::span<const Rational>(corner)), R("1/10"));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 1000; ++t) {
    const auto x = random_point(rng, 2);
    ASSERT_EQ(v.evaluate(std::span<const Rational>(x)), f.evaluate(std::span<const Rational>(x)));
  }
  EXPECT_THROW(refine(v, Discretization({R("0"), R("1/3"), R("1")})), input_error);
}

TEST(StepGame, RefineZeroGame) {
  const auto r = refine(zero_game(2), Discretization::uniform(2));
  for (std::size_t idx = 0; idx < r.grid().size(); ++idx) {
    EXPECT_EQ(r.at(idx), idx == r.grid().highest_corner() ? Rational(1) : Rational(0));
  }
}

TEST(StepGame, RefinePreservesRandomGames) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto g = random_regular_step(rng, 3, random_discretization(rng, 2));
    const auto f = refine(g, g.disc().with_points({R("1/3"), R("5/6")}));
    for (int k = 0; k < 50; ++k) {
      const auto x = random_point(rng, 3);
      ASSERT_EQ(g.evaluate(std::span<const Rational>(x)), f.evaluate(std::span<const Rational>(x)));
    }
  }
}

TEST(StepGame, JoinMeetIdentities) {
  std::mt19937_64 rng(7);
  const auto v = appendix_game();
  const auto [vv, vw] = join_meet(v, v);
  EXPECT_EQ(vv.with_tag(RegularityTag::regular), v);
  EXPECT_EQ(vw.with_tag(RegularityTag::regular), v);
  for (int t = 0; t < 30; ++t) {
    const int n = 1 + t % 3;
    const auto u = random_regular_step(rng, n, random_discretization(rng, 1 + t % 3));
    const auto w = random_regular_step(rng, n, random_discretization(rng, 1 + (t / 3) % 3));
    const auto [hi, lo] = join_meet(u, w);
    const auto uf = refine(u, hi.disc());
    const auto wf = refine(w, hi.disc());
    for (std::size_t idx = 0; idx < hi.grid().size(); ++idx) {
      ASSERT_EQ(hi.at(idx) + lo.at(idx), uf.at(idx) + wf.at(idx));
      ASSERT_GE(hi.at(idx), max(uf.at(idx), wf.at(idx)));
      ASSERT_LE(lo.at(idx), min(uf.at(idx), wf.at(idx)));
    }
  }
  EXPECT_THROW(join_meet(zero_game(2), zero_game(3)), input_error);
}

TEST(StepGame, JoinWithZeroGameKeepsTheAppendixGame) {
  const auto v = appendix_game();
  const auto [hi, lo] = join_meet(v, zero_game(2));
  for (std::size_t idx = 0; idx < v.grid().size(); ++idx) EXPECT_EQ(hi.at(idx), v.at(idx));
  const auto z = refine(zero_game(2), v.disc());
  for (std::size_t idx = 0; idx < v.grid().size(); ++idx) EXPECT_EQ(lo.at(idx), z.at(idx));
}

TEST(StepGame, CoarsenTakesMinimaOverCoveredBoxes) {
  const auto v = appendix_game();
  const auto c = coarsen(v, Discretization({R("0"), R("1/4"), R("1")}));
  EXPECT_EQ(c.value(FaceIndex{3, 3}), R("3/5"));
  EXPECT_EQ(c.value(FaceIndex{1, 3}), R("1/5"));
  EXPECT_EQ(c.value(FaceIndex{3, 1}), R("3/10"));
  EXPECT_EQ(c.value(FaceIndex{1, 1}), R("1/10"));
  EXPECT_EQ(c.tag(), RegularityTag::regular);
  EXPECT_EQ(coarsen(v, Discretization()).value(FaceIndex{1, 1}), R("1/10"));
  EXPECT_EQ(coarsen(v, v.disc()), v);
  EXPECT_THROW(coarsen(v, Discretization({R("0"), R("1/3"), R("1")})), input_error);
}

TEST(StepGame, RefineThenCoarsenRoundTrips) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto g = random_regular_step(rng, 2, random_discretization(rng, 3));
    EXPECT_EQ(coarsen(g, g.disc()), g);
    EXPECT_EQ(coarsen(refine(g, g.disc()), g.disc()), g);
  }
}

TEST(StepGame, AveragingIdentityOnRandomRegularGames) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    const auto g = random_regular_step(rng, 1 + t % 3, random_discretization(rng, 1 + t % 4));
    const auto& grid = g.grid();
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      if (grid.is_box(idx) || idx == grid.lowest_corner() || idx == grid.highest_corner()) continue;
      const auto boxes = grid.adjacent_boxes(idx);
      Rational sum;
      for (auto b : boxes) sum += g.at(b);
      ASSERT_EQ(g.at(idx) * Rational(static_cast<long>(boxes.size())), sum);
    }
  }
}

// ---------------------------------------------------------------- validate

TEST(Validate, AppendixGameIsMonotoneAndRegular) {
  const auto rep = validate(appendix_game());
  EXPECT_TRUE(rep.monotone);
  EXPECT_TRUE(rep.regular);
  EXPECT_TRUE(rep.ok());
}

TEST(Validate, SwappedBoxesBreakMonotonicity) {
  const auto v = appendix_game();
  std::vector<Rational> values(v.values().begin(), v.values().end());
  std::swap(values[v.grid().encode(FaceIndex{1, 1})], values[v.grid().encode(FaceIndex{5, 5})]);
  const auto rep = validate(StepGame(v.disc(), 2, values, RegularityTag::raw));
  EXPECT_FALSE(rep.monotone);
  EXPECT_FALSE(rep.violations.empty());
}

TEST(Validate, ZeroGameIsBothRegularAndSemiRegular) {
  const auto rep = validate(zero_game(2));
  EXPECT_TRUE(rep.monotone);
  EXPECT_TRUE(rep.semi_regular);
  EXPECT_TRUE(rep.regular);
}

TEST(Validate, FlagsRangeAndTagProblems) {
  const auto v = appendix_game();
  std::vector<Rational> values(v.values().begin(), v.values().end());
  values[v.grid().encode(FaceIndex{3, 3})] = R("3/2");
  const auto rep = validate(StepGame(v.disc(), 2, values, RegularityTag::regular));
  EXPECT_FALSE(rep.in_range);
  EXPECT_FALSE(rep.regular);
  EXPECT_FALSE(rep.tag_consistent);
}

namespace {

// Literal reading of comparability: some point of face a is <= some point of
// face b in every coordinate. Points are closed, open intervals are not.
bool coordinate_admits(const Discretization& disc, int da, int db) {
  const bool pa = da % 2 == 0;
  const bool pb = db % 2 == 0;
  const Rational inf_a = disc.lower(da);
  const Rational sup_b = disc.upper(db);
  if (pa && pb) return inf_a <= sup_b;
  return inf_a < sup_b;
}

bool brute_force_monotone(const StepGame& g) {
  const auto& grid = g.grid();
  for (std::size_t a = 0; a < grid.size(); ++a) {
    for (std::size_t b = 0; b < grid.size(); ++b) {
      bool comparable = true;
      for (int i = 0; i < g.n() && comparable; ++i) comparable = coordinate_admits(g.disc(), grid.digit(a, i), grid.digit(b, i));
      if (comparable && g.at(a) > g.at(b)) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Validate, AgreesWithBruteForceFacePairs) {
  std::mt19937_64 rng(10);
  int flagged = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 3;
    const int p = 1 + (t / 3) % (n == 3 ? 2 : 3);
    const auto g = random_regular_step(rng, n, random_discretization(rng, p));
    std::vector<Rational> values(g.values().begin(), g.values().end());
    std::uniform_int_distribution<std::size_t> face(0, values.size() - 1);
    const int edits = t % 4;
    for (int e = 0; e < edits; ++e) values[face(rng)] = random_unit_rational(rng, 6);
    const StepGame h(g.disc(), n, values, RegularityTag::raw);
    const bool expected = brute_force_monotone(h);
    ASSERT_EQ(validate(h).monotone, expected) << "trial " << t;
    if (!expected) ++flagged;
  }
  EXPECT_GT(flagged, 20);
}
