#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "powerdex/games.hpp"
#include "powerdex/step_game.hpp"

namespace powerdex {

inline Rational random_unit_rational(std::mt19937_64& rng, long denominator) {
  std::uniform_int_distribution<long> pick(0, denominator);
  return Rational(pick(rng), denominator);
}

/// Upward closure of a few random nonempty generators; N always wins.
inline SimpleGame random_simple_game(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<PlayerMask> pick(1, full_mask(n));
  std::uniform_int_distribution<int> count(1, std::max(1, n));
  std::vector<PlayerMask> gens;
  const int k = count(rng);
  for (int g = 0; g < k; ++g) gens.push_back(pick(rng));
  return SimpleGame::from_minimal_winning(n, gens);
}

/// Monotone (j,k) game: random levels pushed up to the running maximum of the
/// lower neighbours, with the two extreme profiles pinned.
inline JKGame random_jk_game(std::mt19937_64& rng, int n, int j, int k) {
  std::size_t profiles = 1;
  for (int i = 0; i < n; ++i) profiles *= static_cast<std::size_t>(j);
  std::uniform_int_distribution<int> level(0, k - 1);
  std::vector<int> values(profiles);
  for (std::size_t idx = 0; idx < profiles; ++idx) {
    int v = level(rng);
    std::size_t stride = 1;
    for (int i = 0; i < n; ++i, stride *= static_cast<std::size_t>(j)) {
      if ((idx / stride) % static_cast<std::size_t>(j) != 0) v = std::max(v, values[idx - stride]);
    }
    values[idx] = idx == 0 ? 0 : v;
  }
  values.back() = k - 1;
  return JKGame(n, j, k, std::move(values));
}

/// Random strictly increasing grid with p boxes per axis and breakpoints on
/// multiples of 1/24.
inline Discretization random_discretization(std::mt19937_64& rng, int p) {
  std::vector<int> cuts(23);
  for (int c = 0; c < 23; ++c) cuts[c] = c + 1;
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(static_cast<std::size_t>(p - 1));
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rational> a{Rational(0)};
  for (int c : cuts) a.emplace_back(c, 24);
  a.emplace_back(1);
  return Discretization(std::move(a));
}

struct RandomStepOptions {
  long denominator = 12;
  /// Players whose coordinate the box values ignore.
  PlayerMask null_players = 0;
  /// Make the box table invariant under every permutation of players.
  bool symmetric = false;
};

/// Regular monotone step game: each box draws a value and is lifted to the
/// maximum of its lower neighbours, so the box table is monotone and so is
/// the averaged fill.
inline StepGame random_regular_step(std::mt19937_64& rng, int n, const Discretization& disc,
                                    const RandomStepOptions& opt = {}) {
  if (opt.symmetric && opt.null_players != 0) throw input_error("random game cannot be symmetric and have a null player");
  if (opt.null_players != 0 && disc.p() < 2) throw input_error("a null player needs at least two boxes per axis");
  const FaceGrid grid(n, disc.p());
  auto canonical = [&](FaceIndex d) {
    for (int i : members(opt.null_players)) d[i] = 1;
    if (opt.symmetric) std::sort(d.begin(), d.end());
    return grid.encode(d);
  };
  // Canonical boxes are visited after all canonical boxes below them, since
  // canonicalising never raises a coordinate of a lower neighbour.
  // A null player must not move the value next to the pinned corners either,
  // so boxes with every other coordinate extreme are pinned as well.
  const PlayerMask active = full_mask(n) & ~opt.null_players;
  auto extreme = [&](const FaceIndex& d, int box) {
    for (int i : members(active)) {
      if (d[i] != box) return false;
    }
    return opt.null_players != 0;
  };
  std::vector<Rational> box_value(grid.size());
  for (auto b : grid.boxes()) {
    const auto d = grid.decode(b);
    if (canonical(d) != b) continue;
    Rational v = random_unit_rational(rng, opt.denominator);
    if (extreme(d, 1)) v = 0;
    if (extreme(d, grid.top() - 1)) v = 1;
    for (int i = 0; i < n; ++i) {
      if (d[i] < 3) continue;
      auto below = d;
      below[i] -= 2;
      v = max(v, box_value[canonical(below)]);
    }
    box_value[b] = v;
  }
  return make_regular_step_from(disc, n, [&](const FaceIndex& d) { return box_value[canonical(d)]; });
}

/// Mixed suite of regular monotone games with n in {2,3} and p in {1,2,3}.
/// Every third game with p > 1 has a null player and every fourth is symmetric, so each
/// axiom has something to bite on.
inline std::vector<StepGame> random_axiom_suite(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<StepGame> out;
  for (int k = 0; k < count; ++k) {
    const int n = 2 + k % 2;
    const int p = 1 + (k / 2) % 3;
    RandomStepOptions opt;
    if (k % 3 == 2 && p > 1) opt.null_players = PlayerMask{1} << (static_cast<int>(rng() % static_cast<unsigned>(n)));
    else if (k % 4 == 3) opt.symmetric = true;
    out.push_back(random_regular_step(rng, n, random_discretization(rng, p), opt));
  }
  return out;
}

}  // namespace powerdex
