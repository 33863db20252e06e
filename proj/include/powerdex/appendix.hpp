#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "powerdex/his.hpp"
#include "powerdex/indices.hpp"
#include "powerdex/step_game.hpp"

namespace powerdex {

/// Two-player worked example on the grid (0, 1/4, 1/2, 1) with nine box values
/// 0.1 ... 0.9, increasing towards the upper right.
inline StepGame appendix_game() {
  const Discretization disc({Rational(0), Rational(1, 4), Rational(1, 2), Rational(1)});
  const std::map<FaceIndex, Rational> boxes{
      {{1, 1}, Rational(1, 10)}, {{1, 3}, Rational(2, 10)}, {{3, 1}, Rational(3, 10)},
      {{1, 5}, Rational(4, 10)}, {{5, 1}, Rational(5, 10)}, {{3, 3}, Rational(6, 10)},
      {{3, 5}, Rational(7, 10)}, {{5, 3}, Rational(8, 10)}, {{5, 5}, Rational(9, 10)},
  };
  return make_regular_step(disc, 2, boxes);
}

struct ReplayStep {
  int move = 0;
  int phase = 0;
  LocalIncrement inc;
  PowerVector psi_his;
  PowerVector psi_exact;
  StepGame game;
};

namespace detail {

/// Raises the single boundary face where S sits at 1 (or, for a negative eps,
/// at 0) and the others range over the open D.
inline StepGame raise_boundary_face(const StepGame& u, const LocalIncrement& inc) {
  const auto& grid = u.grid();
  const auto& disc = u.disc();
  FaceIndex d(static_cast<std::size_t>(u.n()));
  for (int i = 0; i < u.n(); ++i) {
    if (inc.S.contains(i)) {
      d[i] = inc.epsilon.sign() > 0 ? grid.top() : 0;
    } else {
      d[i] = 2 * disc.find(inc.D.iv[i].lo) + 1;
      if (disc.find(inc.D.iv[i].hi) != disc.find(inc.D.iv[i].lo) + 1) {
        throw std::logic_error("replay: domain must be a single grid interval");
      }
    }
  }
  std::vector<Rational> values(u.values().begin(), u.values().end());
  values[grid.encode(d)] += abs(inc.epsilon);
  return StepGame(u.disc(), u.n(), std::move(values), RegularityTag::semi_regular);
}

/// One printed move: coalition (1-based), eps, interval for each outside
/// player, and the box being filled.
struct AppendixMove {
  int phase;
  std::vector<int> S;
  Rational eps;
  std::vector<Interval> D;
  FaceIndex box;
  bool closes_box;
};

inline std::vector<AppendixMove> appendix_moves() {
  const Rational q(1, 4);
  const Rational h(1, 2);
  const Rational z(0);
  const Rational o(1);
  const Rational e1(1, 10);
  const Rational e2(2, 10);
  return {
      {1, {}, e1, {{z, o}, {z, o}}, {1, 1}, true},
      {2, {1, 2}, Rational(5, 10), {{q, o}, {q, o}}, {3, 3}, true},
      {2, {2}, e1, {{z, q}}, {1, 3}, false},
      {2, {1}, -e1, {{q, o}}, {1, 3}, true},
      {2, {1}, e2, {{z, q}}, {3, 1}, false},
      {2, {2}, -e2, {{q, o}}, {3, 1}, true},
      {3, {1, 2}, Rational(3, 10), {{h, o}, {h, o}}, {5, 5}, true},
      {3, {2}, e1, {{q, h}}, {3, 5}, true},
      {3, {2}, e2, {{z, q}}, {1, 5}, false},
      {3, {1}, -e2, {{h, o}}, {1, 5}, true},
      {3, {1}, e2, {{q, h}}, {5, 3}, true},
      {3, {1}, e2, {{z, q}}, {5, 1}, false},
      {3, {2}, -e2, {{h, o}}, {5, 1}, true},
  };
}

inline LocalIncrement to_increment(const AppendixMove& m, int n) {
  PlayerMask s = 0;
  for (int p : m.S) s |= PlayerMask{1} << (p - 1);
  const Coalition S(n, s);
  if (S.is_empty()) return LocalIncrement::on_empty(n, m.eps);
  if (S.is_grand()) return LocalIncrement::on_grand(n, m.eps, m.D.front().lo);
  std::vector<Interval> iv(static_cast<std::size_t>(n), Interval{Rational(0), Rational(1)});
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    if (!contains(s, i)) iv[i] = m.D.at(k++);
  }
  return LocalIncrement::make(S, m.eps, Domain(n, full_mask(n) & ~s, std::move(iv)));
}

}  // namespace detail

/// Replays the worked example move by move. Each step carries two share
/// vectors: the running sum of predicted deltas and the exact index of the
/// game reconstructed after that move. Step 0 is the all-zero start.
inline std::vector<ReplayStep> replay_appendix() {
  const int n = 2;
  const auto target = appendix_game();
  const auto& alpha = target.disc();
  std::vector<ReplayStep> out;
  StepGame game = zero_game(n);
  const auto start_psi = psi_exact(game);
  out.push_back(ReplayStep{0, 0, LocalIncrement{Coalition::empty(n), Rational(0), Domain::cube(n, full_mask(n))},
                           start_psi, start_psi, game});
  PowerVector his = start_psi;
  StepGame box_start = game;
  int phase = 1;
  int move = 0;
  for (const auto& m : detail::appendix_moves()) {
    ++move;
    if (m.phase != phase) {
      phase = m.phase;
      std::vector<Rational> pts;
      for (int h = 0; h < phase; ++h) pts.push_back(alpha[h]);
      pts.push_back(Rational(1));
      box_start = refine(box_start, Discretization(pts)).with_tag(RegularityTag::regular);
      game = box_start;
    }
    const auto inc = detail::to_increment(m, n);
    his += his_delta(inc, n);
    if (m.closes_box) {
      const Rational eps = target.value(m.box) - box_start.value(m.box);
      box_start = apply_box_increment(box_start, m.box, eps).game;
      game = box_start;
    } else {
      game = detail::raise_boundary_face(box_start, inc);
    }
    out.push_back(ReplayStep{move, phase, inc, his, psi_exact(game), game});
  }
  if (!(game == target)) throw std::logic_error("replay_appendix: final game differs from the example");
  return out;
}

}  // namespace powerdex
