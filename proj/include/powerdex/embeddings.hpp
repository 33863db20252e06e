#pragma once

#include <vector>

#include "powerdex/games.hpp"
#include "powerdex/step_game.hpp"

namespace powerdex {

namespace detail {
inline StepGame embed_on(const JKGame& v, const Discretization& disc) {
  const Rational scale(1, v.k() - 1);
  std::vector<int> level(static_cast<std::size_t>(v.n()));
  return make_regular_step_from(disc, v.n(), [&](const FaceIndex& d) {
    for (std::size_t i = 0; i < d.size(); ++i) level[i] = (d[i] - 1) / 2;
    return Rational(v(level)) * scale;
  });
}
}  // namespace detail

/// Natural embedding on the uniform grid with j boxes per axis. Input level h
/// sits in the box (h/j, (h+1)/j); output level r becomes r/(k-1).
inline StepGame embed_jk(const JKGame& v) { return detail::embed_on(v, Discretization::uniform(v.j())); }

/// Embedding of a (2,k) game on the grid (0, tau, 1).
inline StepGame embed_2k_tau(const JKGame& v, const Rational& tau) {
  if (v.j() != 2) throw input_error("tau embedding requires j = 2");
  if (!(Rational(0) < tau && tau < Rational(1))) throw input_error("tau must lie strictly between 0 and 1");
  return detail::embed_on(v, Discretization({Rational(0), tau, Rational(1)}));
}

/// Semi-regular embedding on the trivial grid (0,1): a face takes the value of
/// the coalition of players sitting at the point 1. Accepts any 0/1 table so
/// that non-monotone inputs can be embedded and then rejected by validate().
inline StepGame embed_simple_semiregular(const CoalitionFunction& v) {
  if (!v.is_binary()) throw input_error("semi-regular embedding needs a 0/1 coalition function");
  const int n = v.n();
  const FaceGrid grid(n, 1);
  std::vector<Rational> values(grid.size());
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    PlayerMask at_one = 0;
    for (int i = 0; i < n; ++i) {
      if (grid.digit(idx, i) == 2) at_one |= PlayerMask{1} << i;
    }
    values[idx] = v(at_one);
  }
  return StepGame(Discretization(), n, std::move(values), RegularityTag::semi_regular);
}

inline StepGame embed_simple_semiregular(const SimpleGame& v) { return embed_simple_semiregular(v.function()); }

}  // namespace powerdex
