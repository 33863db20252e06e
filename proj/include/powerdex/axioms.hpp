#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "powerdex/evaluable_game.hpp"
#include "powerdex/games.hpp"
#include "powerdex/his.hpp"
#include "powerdex/indices.hpp"
#include "powerdex/step_game.hpp"

namespace powerdex {

/// A named power index on step games.
struct IndexHandle {
  std::string name;
  std::function<PowerVector(const StepGame&)> compute;
  bool exact = true;
};

inline IndexHandle psi_handle() { return {"psi", [](const StepGame& g) { return psi_exact(g); }}; }

inline IndexHandle psi_point_handle(const Rational& alpha) {
  return {"psi_point(" + alpha.str() + ")", [alpha](const StepGame& g) { return psi_point(from_step(g), alpha); }};
}

inline IndexHandle phi_two_player_handle(const Rational& a1) {
  return {"phi_two_player(" + a1.str() + ")",
          [a1](const StepGame& g) { return phi_two_player(a1, Rational(1) - a1, g); }};
}

inline IndexHandle scaled_psi_handle() {
  return {"2psi", [](const StepGame& g) { return Rational(2) * psi_exact(g); }};
}

/// Half Psi plus half equal division.
inline IndexHandle blend_equal_division_handle() {
  return {"half_psi_half_ed", [](const StepGame& g) {
            auto p = Rational(1, 2) * psi_exact(g);
            for (auto& r : p.shares) r += Rational(1, 2 * g.n());
            return p;
          }};
}

/// v -> Psi(v^2), facewise square of the value table.
inline IndexHandle psi_of_square_handle() {
  return {"psi_of_square", [](const StepGame& g) {
            std::vector<Rational> sq;
            for (const auto& r : g.values()) sq.push_back(r * r);
            return psi_exact(StepGame(g.disc(), g.n(), std::move(sq), RegularityTag::raw));
          }};
}

inline std::optional<IndexHandle> handle_by_name(const std::string& name) {
  if (name == "psi") return psi_handle();
  if (name == "2psi") return scaled_psi_handle();
  if (name == "half_psi_half_ed") return blend_equal_division_handle();
  if (name == "psi_of_square") return psi_of_square_handle();
  if (name.rfind("psi_point", 0) == 0) {
    const auto open = name.find('(');
    const auto close = name.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open) return psi_point_handle(Rational(1, 3));
    return psi_point_handle(Rational::parse(name.substr(open + 1, close - open - 1)));
  }
  if (name.rfind("phi_two_player", 0) == 0) {
    const auto open = name.find('(');
    const auto close = name.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open) return phi_two_player_handle(Rational(1, 2));
    return phi_two_player_handle(Rational::parse(name.substr(open + 1, close - open - 1)));
  }
  return std::nullopt;
}

/// Players whose coordinate never changes the value.
inline Coalition find_null_players(const StepGame& g) {
  const auto& grid = g.grid();
  PlayerMask nulls = 0;
  for (int i = 0; i < g.n(); ++i) {
    bool null = true;
    for (std::size_t idx = 0; idx < grid.size() && null; ++idx) {
      const auto base = idx - static_cast<std::size_t>(grid.digit(idx, i)) * grid.stride(i);
      null = g.at(idx) == g.at(base);
    }
    if (null) nulls |= PlayerMask{1} << i;
  }
  return Coalition(g.n(), nulls);
}

/// Relabels players: in the result, player k plays the role of player perm[k].
inline StepGame permute_players(const StepGame& g, const std::vector<int>& perm) {
  const auto& grid = g.grid();
  std::vector<Rational> values(grid.size());
  std::vector<int> src(static_cast<std::size_t>(g.n()));
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    for (int k = 0; k < g.n(); ++k) src[perm[k]] = grid.digit(idx, k);
    values[idx] = g.value(src);
  }
  return StepGame(g.disc(), g.n(), std::move(values), g.tag());
}

/// Pairs (i, j), i < j, whose swap leaves the value table unchanged. 0-based.
inline std::vector<std::pair<int, int>> find_symmetric_pairs(const StepGame& g) {
  std::vector<std::pair<int, int>> out;
  std::vector<int> perm(static_cast<std::size_t>(g.n()));
  for (int i = 0; i < g.n(); ++i) {
    for (int j = i + 1; j < g.n(); ++j) {
      std::iota(perm.begin(), perm.end(), 0);
      std::swap(perm[i], perm[j]);
      if (permute_players(g, perm) == g) out.emplace_back(i, j);
    }
  }
  return out;
}

struct AxiomResult {
  bool pass = true;
  int checks = 0;
  std::string witness;

  void record(bool ok, const std::string& why) {
    ++checks;
    if (!ok && pass) {
      pass = false;
      witness = why;
    }
  }
};

struct AxiomReport {
  std::string index;
  std::map<std::string, AxiomResult> axioms;

  bool all_pass() const {
    return std::all_of(axioms.begin(), axioms.end(), [](const auto& kv) { return kv.second.pass; });
  }
  /// Names of the failing axioms, in the fixed order E, P, A, S, NP, T, HIS.
  std::vector<std::string> failing() const {
    std::vector<std::string> out;
    for (const char* k : {"E", "P", "A", "S", "NP", "T", "HIS"}) {
      auto it = axioms.find(k);
      if (it != axioms.end() && !it->second.pass) out.emplace_back(k);
    }
    return out;
  }
};

struct AxiomOptions {
  std::uint64_t seed = 1;
  /// Permutations tried per game for anonymity.
  int permutations = 2;
  /// Boundary-face increments tried per game for the HIS spot check.
  int his_trials = 6;
};

namespace detail {

inline std::string shares_str(const PowerVector& p) { return p.str(); }

/// The boundary face with S at 1 (or 0 when lower) over the box coordinates
/// rest; raising it by eps moves the influence of S by +eps (or -eps) on D.
struct HisProbe {
  PlayerMask S;
  bool lower;
  std::size_t face;
  Rational slack;
  Rational volume;
};

inline std::vector<HisProbe> his_probes(const StepGame& g) {
  const auto& grid = g.grid();
  const int n = g.n();
  const int top = grid.top();
  std::vector<HisProbe> out;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    PlayerMask at_top = 0;
    PlayerMask at_bottom = 0;
    bool shape_ok = true;
    for (int i = 0; i < n; ++i) {
      const int d = grid.digit(idx, i);
      if (d == top) at_top |= PlayerMask{1} << i;
      else if (d == 0) at_bottom |= PlayerMask{1} << i;
      else if (d % 2 == 0) shape_ok = false;
    }
    if (!shape_ok || (at_top != 0) == (at_bottom != 0)) continue;
    const PlayerMask S = at_top != 0 ? at_top : at_bottom;
    if (S == full_mask(n)) continue;
    const bool lower = at_bottom != 0;
    // Raising the face keeps monotonicity up to the smallest covering face.
    std::optional<Rational> slack;
    for (int i = 0; i < n; ++i) {
      if (grid.digit(idx, i) == top) continue;
      const Rational gap = g.at(idx + grid.stride(i)) - g.at(idx);
      slack = slack ? min(*slack, gap) : gap;
    }
    if (!slack || slack->sign() <= 0) continue;
    Rational vol(1);
    for (int i = 0; i < n; ++i) {
      if (!contains(S, i)) vol *= g.disc().length(grid.digit(idx, i));
    }
    out.push_back(HisProbe{S, lower, idx, *slack, vol});
  }
  return out;
}

}  // namespace detail

/// Runs every axiom check of `h` on each game of the suite.
inline AxiomReport check_axioms(const IndexHandle& h, const std::vector<StepGame>& suite, const AxiomOptions& opt = {}) {
  AxiomReport rep;
  rep.index = h.name;
  auto& E = rep.axioms["E"];
  auto& P = rep.axioms["P"];
  auto& A = rep.axioms["A"];
  auto& S = rep.axioms["S"];
  auto& NP = rep.axioms["NP"];
  auto& T = rep.axioms["T"];
  auto& HIS = rep.axioms["HIS"];
  std::mt19937_64 rng(opt.seed);
  // Observed (lambda, gamma) per coalition S, keyed by (n, S).
  std::map<std::pair<int, PlayerMask>, std::pair<Rational, Rational>> constants;
  std::map<std::pair<int, PlayerMask>, std::string> constants_origin;

  for (std::size_t gi = 0; gi < suite.size(); ++gi) {
    const auto& g = suite[gi];
    const int n = g.n();
    const std::string tag = "game #" + std::to_string(gi + 1);
    const auto phi = h.compute(g);

    E.record(phi.sum() == Rational(1), tag + ": shares sum to " + phi.sum().str());
    for (int i = 0; i < n; ++i) {
      P.record(phi.shares[i].sign() >= 0, tag + ": player " + std::to_string(i + 1) + " gets " + phi.shares[i].str());
    }
    const auto nulls = find_null_players(g);
    for (int i : nulls.players()) {
      NP.record(phi.shares[i].is_zero(),
                tag + ": null player " + std::to_string(i + 1) + " gets " + phi.shares[i].str());
    }
    for (auto [i, j] : find_symmetric_pairs(g)) {
      S.record(phi.shares[i] == phi.shares[j], tag + ": symmetric players " + std::to_string(i + 1) + "," +
                                                   std::to_string(j + 1) + " get " + phi.str());
    }
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int r = 0; r < opt.permutations; ++r) {
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const auto psi_perm = h.compute(permute_players(g, perm));
      bool same = true;
      for (int k = 0; k < n; ++k) same = same && psi_perm.shares[k] == phi.shares[perm[k]];
      A.record(same, tag + ": relabelled game gives " + psi_perm.str() + " against " + phi.str());
    }
    // Transfer against the next game of the same size.
    for (std::size_t gj = gi + 1; gj < suite.size(); ++gj) {
      if (suite[gj].n() != n) continue;
      const auto [hi, lo] = join_meet(g, suite[gj]);
      const auto lhs = phi + h.compute(suite[gj]);
      const auto rhs = h.compute(hi) + h.compute(lo);
      T.record(lhs == rhs, tag + " with game #" + std::to_string(gj + 1) + ": " + lhs.str() + " vs " + rhs.str());
      break;
    }
    // HIS: raise single boundary faces and read off the implied constants.
    auto probes = detail::his_probes(g);
    std::shuffle(probes.begin(), probes.end(), rng);
    if (static_cast<int>(probes.size()) > opt.his_trials) probes.resize(static_cast<std::size_t>(opt.his_trials));
    for (const auto& pr : probes) {
      const Rational eps = pr.slack;
      std::vector<Rational> values(g.values().begin(), g.values().end());
      values[pr.face] += eps;
      const StepGame g2(g.disc(), n, std::move(values), RegularityTag::raw);
      std::vector<Interval> iv(static_cast<std::size_t>(n), Interval{Rational(0), Rational(1)});
      for (int i = 0; i < n; ++i) {
        if (!contains(pr.S, i)) {
          const int d = g.grid().digit(pr.face, i);
          iv[i] = Interval{g.disc().lower(d), g.disc().upper(d)};
        }
      }
      const auto inc = LocalIncrement::make(Coalition(n, pr.S), pr.lower ? -eps : eps,
                                            Domain(n, full_mask(n) & ~pr.S, std::move(iv)));
      const auto chk = check_local_increment(g, g2, inc);
      if (!chk.ok) {
        HIS.record(false, tag + ": probe is not a local increment: " + chk.message);
        continue;
      }
      const auto diff = h.compute(g2) - phi;
      const Rational scale = inc.epsilon * pr.volume;
      std::optional<Rational> lam;
      std::optional<Rational> gam;
      bool uniform = true;
      for (int i = 0; i < n; ++i) {
        if (contains(pr.S, i)) {
          const Rational l = diff.shares[i] / scale;
          uniform = uniform && (!lam || *lam == l);
          lam = l;
        } else {
          const Rational gm = -diff.shares[i] / scale;
          uniform = uniform && (!gam || *gam == gm);
          gam = gm;
        }
      }
      std::string who;
      for (int i : members(pr.S)) who += (who.empty() ? "" : ",") + std::to_string(i + 1);
      const std::string what = tag + ", S={" + who + "}, eps=" + inc.epsilon.str() + ", vol=" + pr.volume.str();
      if (!uniform) {
        HIS.record(false, what + ": share change " + diff.str() + " is not uniform within S and outside S");
        continue;
      }
      const auto key = std::make_pair(n, pr.S);
      const auto observed = std::make_pair(*lam, *gam);
      auto it = constants.find(key);
      if (it == constants.end()) {
        constants.emplace(key, observed);
        constants_origin.emplace(key, what);
        HIS.record(true, "");
      } else {
        HIS.record(it->second == observed,
                   what + ": implied (lambda, gamma) = (" + observed.first.str() + ", " + observed.second.str() +
                       ") but " + constants_origin[key] + " gave (" + it->second.first.str() + ", " +
                       it->second.second.str() + ")");
      }
    }
  }
  return rep;
}

struct SeparationRow {
  Rational alpha;
  PowerVector psi;
  PowerVector psi_point;
  bool differs;
};

struct SeparationReport {
  std::vector<SeparationRow> rows;
  /// Rational brackets (lo, hi) around each root of alpha - alpha^2 = 1/6 where
  /// psi_point - psi changes sign.
  std::vector<std::pair<Rational, Rational>> brackets;
};

/// Compares Psi and the point variant on x1 * x2^2, and brackets the two
/// values of alpha where they agree.
inline SeparationReport separation_demo() {
  SeparationReport rep;
  const auto v = x1x2sq(2);
  const auto psi = psi_product_oracle({Rational(1), Rational(2)});
  for (const auto& a : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(1)}) {
    const auto pa = psi_point(v, a);
    rep.rows.push_back({a, psi, pa, !(pa == psi)});
  }
  auto gap = [&](const Rational& a) { return psi_point(v, a).shares[0] - psi.shares[0]; };
  for (const auto& [lo, hi] : {std::pair{Rational(21, 100), Rational(22, 100)}, std::pair{Rational(78, 100), Rational(79, 100)}}) {
    if (gap(lo).sign() * gap(hi).sign() < 0) rep.brackets.emplace_back(lo, hi);
  }
  return rep;
}

}  // namespace powerdex
