#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "powerdex/combinatorics.hpp"
#include "powerdex/evaluable_game.hpp"
#include "powerdex/games.hpp"
#include "powerdex/indices.hpp"
#include "powerdex/power_vector.hpp"
#include "powerdex/step_game.hpp"

namespace powerdex {

struct Interval {
  Rational lo;
  Rational hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Product of closed intervals over an index set of players.
struct Domain {
  int n = 0;
  PlayerMask players = 0;
  std::vector<Interval> iv;  // indexed by player; entries outside `players` are ignored

  Domain() = default;
  Domain(int n_, PlayerMask players_, std::vector<Interval> iv_) : n(n_), players(players_), iv(std::move(iv_)) {
    if (static_cast<int>(iv.size()) != n) throw input_error("domain: need one interval slot per player");
    for (int i : members(players)) {
      if (iv[i].lo < Rational(0) || iv[i].hi > Rational(1) || iv[i].hi < iv[i].lo) {
        throw input_error("domain: intervals must satisfy 0 <= a <= b <= 1");
      }
    }
  }

  static Domain cube(int n, PlayerMask players, const Rational& lo = Rational(0)) {
    return Domain(n, players, std::vector<Interval>(static_cast<std::size_t>(n), Interval{lo, Rational(1)}));
  }

  Rational volume() const {
    Rational v(1);
    for (int i : members(players)) v *= iv[i].hi - iv[i].lo;
    return v;
  }

  friend bool operator==(const Domain&, const Domain&) = default;
};

/// S raised by epsilon on D. For S empty D is the whole cube; for S = N it is
/// [c,1]^n.
struct LocalIncrement {
  Coalition S;
  Rational epsilon;
  Domain D;

  static LocalIncrement make(const Coalition& S, const Rational& eps, Domain D) {
    const int n = S.n();
    if (D.n != n) throw input_error("local increment: domain dimension mismatch");
    if (S.is_empty()) {
      if (D.players != full_mask(n) || D != Domain::cube(n, full_mask(n))) {
        throw input_error("local increment: S empty requires D = [0,1]^n");
      }
    } else if (S.is_grand()) {
      const auto& c = D.iv.at(0).lo;
      if (D.players != full_mask(n) || D != Domain::cube(n, full_mask(n), c) || !(Rational(0) < c && c < Rational(1))) {
        throw input_error("local increment: S = N requires D = [c,1]^n with 0 < c < 1");
      }
    } else if (D.players != (full_mask(n) & ~S.mask())) {
      throw input_error("local increment: D must range over exactly the players outside S");
    }
    return LocalIncrement{S, eps, std::move(D)};
  }

  static LocalIncrement on_empty(int n, const Rational& eps) {
    return make(Coalition::empty(n), eps, Domain::cube(n, full_mask(n)));
  }
  static LocalIncrement on_grand(int n, const Rational& eps, const Rational& c = Rational(1, 2)) {
    return make(Coalition::grand(n), eps, Domain::cube(n, full_mask(n), c));
  }
};

/// Predicted share change: +lambda(S) eps vol(D) inside S, -gamma(S) eps vol(D)
/// outside. Both constants vanish for S empty and S = N.
inline PowerVector his_delta(const LocalIncrement& inc, int n) {
  auto out = PowerVector::zeros(n);
  const int s = inc.S.size();
  if (s == 0 || s == n) return out;
  const Rational scale = inc.epsilon * inc.D.volume();
  const Rational up = marginal_weight(s, n) * scale;
  const Rational down = outsider_weight(s, n) * scale;
  for (int i = 0; i < n; ++i) out.shares[i] = inc.S.contains(i) ? up : -down;
  return out;
}

/// v(1_S, x_-S) - v(0_S, x_-S). Coordinates of x inside S are ignored; the
/// others must lie in (0,1).
inline Rational potential_influence(const StepGame& v, PlayerMask S, std::vector<Rational> x) {
  if (static_cast<int>(x.size()) != v.n()) throw input_error("potential_influence: point has wrong dimension");
  for (int i = 0; i < v.n(); ++i) {
    if (!contains(S, i) && !(Rational(0) < x[i] && x[i] < Rational(1))) {
      throw input_error("potential_influence: residual coordinates must lie in (0,1)");
    }
  }
  for (int i : members(S)) x[i] = 1;
  const Rational hi = v.evaluate(x);
  for (int i : members(S)) x[i] = 0;
  return hi - v.evaluate(x);
}

inline double potential_influence(const EvaluableGame& v, PlayerMask S, std::vector<double> x) {
  for (int i : members(S)) x[i] = 1.0;
  const double hi = v(std::span<const double>(x));
  for (int i : members(S)) x[i] = 0.0;
  return hi - v(std::span<const double>(x));
}

struct LocalCheck {
  bool ok = true;
  PlayerMask coalition = 0;
  std::vector<Rational> point;
  Rational expected;
  Rational actual;
  std::string message;
};

/// Verifies u -> v is the local increment `inc` on a grid that contains the
/// breakpoints of u, v and D. Both games are constant on every face of that
/// grid, so one centre point per face decides each condition.
inline LocalCheck check_local_increment(const StepGame& u, const StepGame& v, const LocalIncrement& inc) {
  const int n = u.n();
  if (v.n() != n || inc.S.n() != n) throw input_error("check_local_increment: player counts differ");
  std::vector<Rational> extra;
  for (int i : members(inc.D.players)) {
    extra.push_back(inc.D.iv[i].lo);
    extra.push_back(inc.D.iv[i].hi);
  }
  const auto grid = Discretization::merge(u.disc(), v.disc()).with_points(extra);
  const int top = 2 * grid.p();
  const PlayerMask all = full_mask(n);
  const bool special = inc.S.is_empty() || inc.S.is_grand();

  // +1 if the face lies in the open domain, -1 if it misses the closed one,
  // 0 if it sits on the boundary. Every endpoint of D is a grid breakpoint.
  auto region = [&](const std::vector<int>& d, PlayerMask over) {
    int r = 1;
    for (int i : members(over)) {
      const auto& [a, b] = inc.D.iv[i];
      const Rational& lo = grid.lower(d[i]);
      const Rational& hi = grid.upper(d[i]);
      if (d[i] % 2 == 1) {
        if (hi <= a || lo >= b) return -1;
      } else {
        if (lo < a || lo > b) return -1;
        if (lo == a || lo == b) r = 0;
      }
    }
    return r;
  };

  LocalCheck out;
  std::vector<int> d(static_cast<std::size_t>(n));
  std::vector<Rational> x(static_cast<std::size_t>(n));
  for (PlayerMask t = 0; t <= all; ++t) {
    const auto rest = members(all & ~t);
    // The empty coalition stands for the interior values themselves; it only
    // carries a condition for the two special increments.
    if (t == 0 && !special) continue;
    const bool target = special ? t == 0 : t == inc.S.mask();
    std::fill(d.begin(), d.end(), 1);
    while (true) {
      for (int i : rest) x[i] = grid.center(d[i]);
      Rational du;
      Rational dv;
      if (t == 0) {
        du = u.evaluate(x);
        dv = v.evaluate(x);
      } else {
        du = potential_influence(u, t, x);
        dv = potential_influence(v, t, x);
      }
      Rational expected = du;
      bool checked = true;
      if (target) {
        const int r = region(d, t == 0 ? inc.D.players : (all & ~t));
        if (r == 1) expected += inc.epsilon;
        // S = N only speaks about (c,1)^n; S empty covers the whole cube.
        if (r == 0 || (inc.S.is_grand() && r == -1)) checked = false;
      }
      if (checked && dv != expected) {
        out.ok = false;
        out.coalition = t;
        out.point.assign(x.begin(), x.end());
        for (int i : members(t)) out.point[i] = 1;
        out.expected = expected - du;
        out.actual = dv - du;
        std::string pt;
        for (int i : rest) pt += (pt.empty() ? "" : ", ") + ("x" + std::to_string(i + 1) + "=" + x[i].str());
        std::string who;
        for (int i : members(t)) who += (who.empty() ? "" : ",") + std::to_string(i + 1);
        out.message = (t == 0 ? std::string("value") : "influence of {" + who + "}") + " at (" + pt +
                      ") changed by " + out.actual.str() + ", expected " + out.expected.str();
        return out;
      }
      std::size_t r = 0;
      for (; r < rest.size(); ++r) {
        if (++d[rest[r]] <= top - 1) break;
        d[rest[r]] = 1;
      }
      if (r == rest.size()) break;
    }
    if (t == all) break;
  }
  return out;
}

struct FaceClassification {
  PlayerMask L = 0;
  PlayerMask U = 0;
  PlayerMask Lbar = 0;
  PlayerMask Ubar = 0;
  PlayerMask I = 0;
  bool matter = false;
  int his_sign = 0;
  Coalition S;
  Domain D;
};

/// Position of face e relative to the box e_bar, both in doubled coordinates.
inline FaceClassification classify_face(const FaceIndex& e, const FaceIndex& e_bar, const Discretization& disc) {
  const int n = static_cast<int>(e.size());
  const int top = 2 * disc.p();
  if (static_cast<int>(e_bar.size()) != n) throw input_error("classify_face: dimension mismatch");
  FaceClassification c;
  for (int i = 0; i < n; ++i) {
    if (e_bar[i] % 2 == 0 || e_bar[i] < 1 || e_bar[i] > top - 1) throw input_error("classify_face: e_bar is not a box");
    const int diff = e[i] - e_bar[i];
    if (diff < -1 || diff > 1) throw input_error("classify_face: e is not a face of e_bar");
    const PlayerMask bit = PlayerMask{1} << i;
    if (diff == -1) c.L |= bit;
    if (diff == 1) c.U |= bit;
    if (diff == 0) c.I |= bit;
    if (e[i] == 0) c.Lbar |= bit;
    if (e[i] == top) c.Ubar |= bit;
  }
  if (c.Ubar != 0 && c.Lbar == 0) c.his_sign = 1;
  if (c.Lbar != 0 && c.Ubar == 0) c.his_sign = -1;
  c.matter = c.L == c.Lbar && c.U == c.Ubar && c.his_sign != 0;
  const PlayerMask s = c.his_sign > 0 ? c.Ubar : (c.his_sign < 0 ? c.Lbar : 0);
  c.S = Coalition(n, s);
  std::vector<Interval> iv(static_cast<std::size_t>(n), Interval{Rational(0), Rational(1)});
  if (s != 0) {
    for (int j = 0; j < n; ++j) {
      if (!contains(s, j)) iv[j] = Interval{disc.lower(e[j]), disc.upper(e[j])};
    }
  }
  c.D = Domain(n, s != 0 ? (full_mask(n) & ~s) : full_mask(n), std::move(iv));
  return c;
}

/// The increment implied by raising face e by eps, per the classification.
inline LocalIncrement implied_increment(const FaceClassification& c, const Rational& eps) {
  if (c.his_sign == 0) return LocalIncrement{c.S, Rational(0), c.D};
  return LocalIncrement{c.S, c.his_sign > 0 ? eps : -eps, c.D};
}

struct FaceMove {
  std::size_t face = 0;
  Rational amount;
  FaceClassification cls;
  LocalIncrement inc;
  PowerVector delta;
};

struct BoxIncrement {
  StepGame game;
  PowerVector delta;
  std::vector<FaceMove> moves;
};

namespace detail {
inline bool dominates(const FaceGrid& g, std::size_t a, std::size_t b) {
  for (int i = 0; i < g.n(); ++i) {
    if (g.digit(a, i) < g.digit(b, i)) return false;
  }
  return true;
}
}  // namespace detail

/// Faces in descending lexicographic order of their doubled coordinates
/// (player 1 most significant).
inline std::vector<std::size_t> descending_order(const FaceGrid& g, std::vector<std::size_t> faces) {
  std::sort(faces.begin(), faces.end(), [&](std::size_t a, std::size_t b) {
    for (int i = 0; i < g.n(); ++i) {
      if (g.digit(a, i) != g.digit(b, i)) return g.digit(a, i) > g.digit(b, i);
    }
    return false;
  });
  return faces;
}

/// Uniformly picks a currently maximal face at each step, which yields a
/// random linear extension of the componentwise order (largest first).
template <class Rng>
std::vector<std::size_t> random_descending_order(const FaceGrid& g, std::vector<std::size_t> faces, Rng& rng) {
  std::vector<std::size_t> out;
  while (!faces.empty()) {
    std::vector<std::size_t> maximal;
    for (std::size_t a = 0; a < faces.size(); ++a) {
      bool top = true;
      for (std::size_t b = 0; b < faces.size() && top; ++b) {
        if (a != b && detail::dominates(g, faces[b], faces[a])) top = false;
      }
      if (top) maximal.push_back(a);
    }
    std::uniform_int_distribution<std::size_t> pick(0, maximal.size() - 1);
    const auto chosen = maximal[pick(rng)];
    out.push_back(faces[chosen]);
    faces.erase(faces.begin() + static_cast<std::ptrdiff_t>(chosen));
  }
  return out;
}

/// True if no face comes after a face it dominates.
inline bool is_descending_extension(const FaceGrid& g, const std::vector<std::size_t>& order) {
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      if (order[a] != order[b] && detail::dominates(g, order[b], order[a])) return false;
    }
  }
  return true;
}

/// Raises the open box e_bar by eps (eps >= 0) on a regular game by adding
/// eps/|E(e)| to every face e of its closure, one face at a time. The two global
/// corners stay pinned. Returns the new game and the summed predicted deltas.
inline BoxIncrement apply_box_increment(const StepGame& u, const FaceIndex& e_bar, const Rational& eps,
                                        const std::vector<std::size_t>* order = nullptr) {
  if (u.tag() != RegularityTag::regular) throw input_error("apply_box_increment: game must be regular");
  if (eps.sign() < 0) throw input_error("apply_box_increment: eps must be nonnegative");
  const auto& grid = u.grid();
  const auto box = grid.encode(e_bar);
  if (!grid.is_box(box)) throw input_error("apply_box_increment: target is not a full-dimensional box");
  auto faces = grid.faces_of_box(box);
  if (order != nullptr) {
    auto a = *order;
    auto b = faces;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b || !is_descending_extension(grid, *order)) {
      throw input_error("apply_box_increment: face order is not a descending linear extension");
    }
    faces = *order;
  } else {
    faces = descending_order(grid, faces);
  }

  std::vector<Rational> values(u.values().begin(), u.values().end());
  BoxIncrement out{u, PowerVector::zeros(u.n()), {}};
  for (auto f : faces) {
    if (f == grid.lowest_corner() || f == grid.highest_corner()) continue;
    const Rational amount = eps / Rational(static_cast<long>(grid.adjacent_boxes(f).size()));
    values[f] += amount;
    FaceMove m;
    m.face = f;
    m.amount = amount;
    m.cls = classify_face(grid.decode(f), e_bar, u.disc());
    m.inc = implied_increment(m.cls, amount);
    m.delta = his_delta(m.inc, u.n());
    out.delta += m.delta;
    out.moves.push_back(std::move(m));
  }
  out.game = StepGame(u.disc(), u.n(), std::move(values), RegularityTag::regular);
  const auto rep = validate(out.game);
  if (!rep.monotone) throw input_error("apply_box_increment: increment breaks monotonicity: " + rep.violations.front());
  return out;
}

/// Groups per-face moves by (S, D) and drops those without effect.
inline std::vector<LocalIncrement> lump_moves(const std::vector<FaceMove>& moves) {
  std::vector<LocalIncrement> out;
  for (const auto& m : moves) {
    if (!m.cls.matter || m.inc.epsilon.is_zero()) continue;
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const LocalIncrement& o) { return o.S == m.inc.S && o.D == m.inc.D; });
    if (it == out.end()) out.push_back(m.inc); else it->epsilon += m.inc.epsilon;
  }
  return out;
}

/// Total share change of player i when the corner box (1/2 on L, l-1/2 on U) of
/// the uniform l-grid is raised by eps.
inline Rational corner_increase(const Coalition& L, const Coalition& U, const Rational& eps, int l, int i) {
  const int n = L.n();
  if (U.n() != n) throw input_error("corner_increase: L and U must share the player count");
  if (L.is_empty() || U.is_empty() || (L.mask() & U.mask()) != 0 || (L.mask() | U.mask()) != full_mask(n)) {
    throw input_error("corner_increase: L and U must be disjoint, nonempty and cover N");
  }
  if (l < 2) throw input_error("corner_increase: l must be at least 2");
  if (i < 0 || i >= n) throw input_error("corner_increase: player out of range");
  Rational total;
  auto scaled = [&](int t) { return eps / pow(Rational(l), static_cast<unsigned>(n - t)); };
  for (const auto& [side, sign] : {std::pair{L.mask(), -1}, std::pair{U.mask(), 1}}) {
    for (PlayerMask t = side; t != 0; t = (t - 1) & side) {
      const int s = popcount(t);
      if (contains(t, i)) {
        total += Rational(sign) * scaled(s) * marginal_weight(s, n);
      } else {
        total -= Rational(sign) * scaled(s) * outsider_weight(s, n);
      }
    }
  }
  return total;
}

struct BuildStep {
  int phase = 0;
  Discretization grid;
  FaceIndex box;
  Rational eps;
  PowerVector delta;
  PowerVector psi_after;
};

struct BuildTranscript {
  std::vector<BuildStep> steps;
  StepGame final_game;
  PowerVector psi;
};

struct BuildOptions {
  /// When set, boxes within a phase and faces within a box follow random
  /// descending linear extensions drawn from this seed.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Rebuilds a regular monotone game from the all-zero game by box increments,
/// one phase per breakpoint. After phase l the current game equals the
/// coarsening of v onto (0, a_1, ..., a_{l-1}, 1).
inline BuildTranscript build_by_increments(const StepGame& v, const BuildOptions& opt = {}) {
  const auto rep = validate(v);
  if (!rep.regular || !rep.monotone || !rep.in_range) throw input_error("build_by_increments: game must be regular and monotone");
  const int n = v.n();
  const auto& full = v.disc();
  std::mt19937_64 rng(opt.shuffle_seed.value_or(0));

  BuildTranscript out{{}, zero_game(n), PowerVector::exact(std::vector<Rational>(static_cast<std::size_t>(n), Rational(1, n)))};
  StepGame u = zero_game(n);
  for (int l = 1; l <= full.p(); ++l) {
    std::vector<Rational> pts;
    for (int h = 0; h < l; ++h) pts.push_back(full[h]);
    pts.push_back(Rational(1));
    const Discretization phase_grid(pts);
    if (l > 1) u = refine(u, phase_grid).with_tag(RegularityTag::regular);
    const auto& g = u.grid();
    std::vector<std::size_t> boxes;
    for (auto b : g.boxes()) {
      for (int i = 0; i < n; ++i) {
        if (g.digit(b, i) == 2 * l - 1) {
          boxes.push_back(b);
          break;
        }
      }
    }
    boxes = opt.shuffle_seed ? random_descending_order(g, boxes, rng) : descending_order(g, boxes);
    for (auto b : boxes) {
      const auto e_bar = g.decode(b);
      // Phase box h is full box h for h < l-1, and the last phase box starts
      // with full box l-1, so the same index names the lowest covered box.
      const Rational eps = v.value(e_bar) - u.at(b);
      std::vector<std::size_t> order;
      if (opt.shuffle_seed) order = random_descending_order(g, g.faces_of_box(b), rng);
      auto inc = apply_box_increment(u, e_bar, eps, opt.shuffle_seed ? &order : nullptr);
      u = std::move(inc.game);
      out.psi += inc.delta;
      out.steps.push_back(BuildStep{l, phase_grid, e_bar, eps, inc.delta, out.psi});
    }
    if (!(u == coarsen(v, phase_grid))) {
      throw std::logic_error("build_by_increments: phase " + std::to_string(l) + " did not end at the coarsening");
    }
  }
  out.final_game = u;
  return out;
}

struct Table1Row {
  FaceIndex face;
  Coalition S;
  Rational volume;
  PowerVector delta;
};

/// Faces that matter when the box (l-1/2, 1/2, l-1/2) of the uniform l-grid
/// is raised by eps, with their predicted share changes.
inline std::vector<Table1Row> table1(int l, const Rational& eps = Rational(1)) {
  if (l < 2) throw input_error("table1: l must be at least 2");
  const int n = 3;
  const auto disc = Discretization::uniform(l);
  const FaceGrid grid(n, l);
  const FaceIndex e_bar{2 * l - 1, 1, 2 * l - 1};
  std::vector<Table1Row> rows;
  for (auto f : descending_order(grid, grid.faces_of_box(grid.encode(e_bar)))) {
    const auto face = grid.decode(f);
    const auto cls = classify_face(face, e_bar, disc);
    if (!cls.matter) continue;
    const Rational amount = eps / Rational(static_cast<long>(grid.adjacent_boxes(f).size()));
    const auto inc = implied_increment(cls, amount);
    rows.push_back(Table1Row{face, cls.S, inc.D.volume(), his_delta(inc, n)});
  }
  return rows;
}

/// A regular game on the uniform l-grid that can absorb a unit increase of the
/// corner box (1/2 on L, l-1/2 on U): every strictly higher box is already 1.
inline std::pair<StepGame, FaceIndex> corner_box_setup(const Coalition& L, const Coalition& U, int l) {
  const int n = L.n();
  FaceIndex e_bar(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) e_bar[i] = U.contains(i) ? 2 * l - 1 : 1;
  auto game = make_regular_step_from(Discretization::uniform(l), n, [&](const FaceIndex& d) {
    bool above = d != e_bar;
    for (int i = 0; i < n && above; ++i) above = d[i] >= e_bar[i];
    return Rational(above ? 1 : 0);
  });
  return {std::move(game), e_bar};
}

}  // namespace powerdex
