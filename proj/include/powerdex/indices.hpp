#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "powerdex/combinatorics.hpp"
#include "powerdex/evaluable_game.hpp"
#include "powerdex/games.hpp"
#include "powerdex/power_vector.hpp"
#include "powerdex/step_game.hpp"

namespace powerdex {

/// C(v,T) for every T, indexed by player mask.
struct BoundaryAverages {
  int n = 0;
  std::vector<Rational> table;

  const Rational& operator()(PlayerMask t) const { return table.at(t); }
  friend bool operator==(const BoundaryAverages&, const BoundaryAverages&) = default;
};

/// sum_{S containing i} (s-1)!(n-s)!/n! * [C(S) - C(S \ i)] for any table C.
inline PowerVector shapley_from_table(int n, std::span<const Rational> c) {
  std::vector<Rational> w(static_cast<std::size_t>(n) + 1);
  for (int s = 1; s <= n; ++s) w[s] = marginal_weight(s, n);
  std::vector<Rational> out(static_cast<std::size_t>(n));
  for (PlayerMask s = 1; s <= full_mask(n); ++s) {
    const auto& ws = w[popcount(s)];
    for (int i : members(s)) out[i] += ws * (c[s] - c[s & ~(PlayerMask{1} << i)]);
    if (s == full_mask(n)) break;
  }
  return PowerVector::exact(std::move(out));
}

inline PowerVector ssi_coalition(const CoalitionFunction& v) { return shapley_from_table(v.n(), v.values()); }
inline PowerVector ssi_coalition(const SimpleGame& v) { return ssi_coalition(v.function()); }

enum class VoteModel { all_yes, all_no, uniform_half };

namespace detail {
inline void check_permutation_cap(int n, int cap) {
  if (n > cap) throw input_error("enumeration over n! orderings is capped at n <= " + std::to_string(cap));
}
}  // namespace detail

/// Pivot counting over roll-call orderings. all_yes and all_no fix one vote
/// vector; uniform_half averages over all 2^n of them. The pivot is the voter
/// after whom the outcome can no longer change.
inline PowerVector ssi_roll_call(const SimpleGame& v, VoteModel model) {
  const int n = v.n();
  detail::check_permutation_cap(n, 8);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<long long> count(static_cast<std::size_t>(n), 0);
  const PlayerMask all = full_mask(n);
  const PlayerMask first = model == VoteModel::all_yes ? all : 0;
  const PlayerMask last = model == VoteModel::all_no ? 0 : all;
  long long trials = 0;
  do {
    for (PlayerMask votes = first;; ++votes) {
      PlayerMask yes = 0;
      PlayerMask no = 0;
      for (int t = 0; t < n; ++t) {
        const int p = perm[t];
        const bool was_open = !v.wins(yes) && v.wins(all & ~no);
        if (contains(votes, p)) yes |= PlayerMask{1} << p; else no |= PlayerMask{1} << p;
        const bool now_open = !v.wins(yes) && v.wins(all & ~no);
        if (was_open && !now_open) {
          ++count[p];
          break;
        }
      }
      ++trials;
      if (votes == last) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<Rational> out;
  for (auto c : count) out.emplace_back(c, trials);
  return PowerVector::exact(std::move(out));
}

/// h-pivot counting over all orderings and all input profiles.
inline PowerVector jk_ssi_pivot(const JKGame& v) {
  const int n = v.n();
  const int j = v.j();
  const int k = v.k();
  const std::size_t profiles = v.profile_count();
  {
    mpz_class work = factorial(std::min(n, kMaxPlayers)) * mpz_class(static_cast<unsigned long>(profiles));
    if (n > 8 || work > 122880) throw input_error("jk_ssi_pivot: n! * j^n exceeds 122880");
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<long long> count(static_cast<std::size_t>(n), 0);
  std::vector<int> lo_prof(static_cast<std::size_t>(n));
  std::vector<int> hi_prof(static_cast<std::size_t>(n));
  do {
    for (std::size_t idx = 0; idx < profiles; ++idx) {
      const auto x = v.decode(idx);
      std::fill(lo_prof.begin(), lo_prof.end(), 0);
      std::fill(hi_prof.begin(), hi_prof.end(), j - 1);
      int lo = 0;
      int hi = k - 1;
      for (int t = 0; t < n; ++t) {
        const int p = perm[t];
        lo_prof[p] = hi_prof[p] = x[p];
        const int lo2 = v(lo_prof);
        const int hi2 = v(hi_prof);
        // Player p is the h-pivot when {>= h} and {<= h-1} were both still
        // reachable before its vote and only one of them is afterwards.
        for (int h = 1; h < k; ++h) {
          const bool open_before = lo < h && h <= hi;
          const bool open_after = lo2 < h && h <= hi2;
          if (open_before && !open_after) ++count[p];
        }
        lo = lo2;
        hi = hi2;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  const mpz_class denom = factorial(n) * mpz_class(static_cast<unsigned long>(profiles)) * (k - 1);
  std::vector<Rational> out;
  for (auto c : count) out.emplace_back(mpq_class(mpz_class(static_cast<long>(c)), denom));
  return PowerVector::exact(std::move(out));
}

/// Discrete C(v,T) = (1/(j^n (k-1))) sum_x [v(top_T, x_-T) - v(0_T, x_-T)].
inline BoundaryAverages jk_boundary_averages(const JKGame& v) {
  const int n = v.n();
  const std::size_t profiles = v.profile_count();
  if ((std::size_t{1} << n) * profiles > (std::size_t{1} << 22)) {
    throw input_error("jk_ssi_marginal: 2^n * j^n exceeds 2^22");
  }
  BoundaryAverages c{n, std::vector<Rational>(std::size_t{1} << n)};
  std::vector<int> hi(static_cast<std::size_t>(n));
  std::vector<int> lo(static_cast<std::size_t>(n));
  for (PlayerMask t = 0; t <= full_mask(n); ++t) {
    long long total = 0;
    for (std::size_t idx = 0; idx < profiles; ++idx) {
      const auto x = v.decode(idx);
      for (int i = 0; i < n; ++i) {
        hi[i] = contains(t, i) ? v.j() - 1 : x[i];
        lo[i] = contains(t, i) ? 0 : x[i];
      }
      total += v(hi) - v(lo);
    }
    c.table[t] = Rational(mpq_class(mpz_class(static_cast<long>(total)),
                                    mpz_class(static_cast<unsigned long>(profiles)) * (v.k() - 1)));
    if (t == full_mask(n)) break;
  }
  return c;
}

inline PowerVector jk_ssi_marginal(const JKGame& v) {
  const auto c = jk_boundary_averages(v);
  return shapley_from_table(v.n(), c.table);
}

/// Exact C(g,T): integrate, over the boxes of the remaining coordinates, the
/// gap between the faces with T pinned at 1 and T pinned at 0.
inline BoundaryAverages boundary_averages(const StepGame& g) {
  const int n = g.n();
  const auto& grid = g.grid();
  const auto& disc = g.disc();
  const int p = disc.p();
  const int top = grid.top();
  BoundaryAverages c{n, std::vector<Rational>(std::size_t{1} << n)};
  std::vector<Rational> len(static_cast<std::size_t>(p));
  for (int h = 0; h < p; ++h) len[h] = disc[h + 1] - disc[h];

  std::vector<int> free_box(static_cast<std::size_t>(n));
  for (PlayerMask t = 1; t <= full_mask(n); ++t) {
    std::size_t pinned_top = 0;
    for (int i : members(t)) pinned_top += static_cast<std::size_t>(top) * grid.stride(i);
    const auto rest = members(full_mask(n) & ~t);
    std::fill(free_box.begin(), free_box.end(), 0);
    Rational total;
    while (true) {
      std::size_t base = 0;
      Rational vol(1);
      for (int i : rest) {
        base += static_cast<std::size_t>(2 * free_box[i] + 1) * grid.stride(i);
        vol *= len[free_box[i]];
      }
      total += vol * (g.at(base + pinned_top) - g.at(base));
      std::size_t r = 0;
      for (; r < rest.size(); ++r) {
        if (++free_box[rest[r]] < p) break;
        free_box[rest[r]] = 0;
      }
      if (r == rest.size()) break;
    }
    c.table[t] = total;
    if (t == full_mask(n)) break;
  }
  return c;
}

inline PowerVector psi_exact(const StepGame& g) {
  const auto c = boundary_averages(g);
  return shapley_from_table(g.n(), c.table);
}

/// Point variant: the roll-call uncertainty reduction evaluated at the constant
/// profile (alpha, ..., alpha), summed literally over all orderings.
inline PowerVector psi_point(const EvaluableGame& v, const Rational& alpha) {
  if (alpha < Rational(0) || alpha > Rational(1)) throw input_error("psi_point: alpha must lie in [0,1]");
  const int n = v.n();
  detail::check_permutation_cap(n, 8);
  // D(T) = v(1_T, a_-T) - v(0_T, a_-T) depends only on T, so cache it.
  std::vector<Rational> gap(std::size_t{1} << n);
  std::vector<Rational> x(static_cast<std::size_t>(n));
  for (PlayerMask t = 0; t <= full_mask(n); ++t) {
    for (int i = 0; i < n; ++i) x[i] = contains(t, i) ? Rational(1) : alpha;
    const Rational top = v(std::span<const Rational>(x));
    for (int i = 0; i < n; ++i) x[i] = contains(t, i) ? Rational(0) : alpha;
    gap[t] = top - v(std::span<const Rational>(x));
    if (t == full_mask(n)) break;
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Rational> out(static_cast<std::size_t>(n));
  do {
    PlayerMask later = full_mask(n);
    for (int t = 0; t < n; ++t) {
      const PlayerMask before = later;
      later &= ~(PlayerMask{1} << perm[t]);
      out[perm[t]] += gap[before] - gap[later];
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  const Rational nf(mpq_class(factorial(n)));
  for (auto& r : out) r /= nf;
  return PowerVector::exact(std::move(out));
}

/// Closed form for prod_i x_i^{a_i}, all a_i > 0.
inline PowerVector psi_product_oracle(const std::vector<Rational>& exponents) {
  const int n = static_cast<int>(exponents.size());
  if (n < 1 || n > 12) throw input_error("psi_product_oracle: n must be in 1..12");
  for (const auto& a : exponents) {
    if (a.sign() <= 0) throw input_error("psi_product_oracle: exponents must be positive");
  }
  Rational lambda(1);
  for (const auto& a : exponents) lambda *= a + Rational(1);
  const Rational nf(mpq_class(factorial(n)));
  std::vector<Rational> out;
  for (int i = 0; i < n; ++i) {
    Rational sum;
    const PlayerMask others = full_mask(n) & ~(PlayerMask{1} << i);
    for (PlayerMask t = others;; t = (t - 1) & others) {
      Rational term(mpq_class(factorial(popcount(t)) * factorial(n - 1 - popcount(t))));
      for (int j : members(t)) term *= exponents[j] + Rational(1);
      sum += term;
      if (t == 0) break;
    }
    out.push_back((Rational(mpq_class(factorial(n - 1))) + exponents[i] * sum) / (nf * lambda));
  }
  return PowerVector::exact(std::move(out));
}

/// Two-player family a_i + a_j C({i}) - a_i C({j}).
inline PowerVector phi_two_player(const Rational& a1, const Rational& a2, const StepGame& v) {
  if (v.n() != 2) throw input_error("phi_two_player: game must have exactly two players");
  if (a1.sign() < 0 || a2.sign() < 0 || a1 + a2 != Rational(1)) {
    throw input_error("phi_two_player: weights must be nonnegative and sum to 1");
  }
  const auto c = boundary_averages(v);
  return PowerVector::exact({a1 + a2 * c(1) - a1 * c(2), a2 + a1 * c(2) - a2 * c(1)});
}

}  // namespace powerdex
