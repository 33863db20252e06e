#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "powerdex/rational.hpp"

namespace powerdex {

/// Upper bound on the number of players for any coalition-indexed table.
inline constexpr int kMaxPlayers = 20;

using PlayerMask = std::uint32_t;

inline constexpr PlayerMask full_mask(int n) {
  return n >= 32 ? ~PlayerMask{0} : ((PlayerMask{1} << n) - 1);
}
inline constexpr int popcount(PlayerMask m) { return std::popcount(m); }
inline constexpr bool contains(PlayerMask m, int player) { return ((m >> player) & 1U) != 0; }

namespace detail {
inline const std::array<mpz_class, kMaxPlayers + 1>& factorial_table() {
  static const auto table = [] {
    std::array<mpz_class, kMaxPlayers + 1> t;
    t[0] = 1;
    for (int i = 1; i <= kMaxPlayers; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table;
}
}  // namespace detail

inline const mpz_class& factorial(int k) {
  if (k < 0 || k > kMaxPlayers) throw std::out_of_range("factorial: argument out of table range");
  return detail::factorial_table()[k];
}

/// (s-1)!(n-s)!/n!, the weight of a coalition of size s containing the player.
inline Rational marginal_weight(int s, int n) {
  if (s < 1 || s > n) return Rational(0);
  return Rational(mpq_class(factorial(s - 1) * factorial(n - s), factorial(n)));
}

/// s!(n-s-1)!/n!, the loss rate of an outsider when coalition S gains.
inline Rational outsider_weight(int s, int n) {
  if (s < 0 || s > n - 1) return Rational(0);
  return Rational(mpq_class(factorial(s) * factorial(n - s - 1), factorial(n)));
}

/// Players of a mask as 0-based indices, ascending.
inline std::vector<int> members(PlayerMask m) {
  std::vector<int> out;
  for (int i = 0; m != 0; ++i, m >>= 1) {
    if (m & 1U) out.push_back(i);
  }
  return out;
}

}  // namespace powerdex
