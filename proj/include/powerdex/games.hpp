#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "powerdex/combinatorics.hpp"
#include "powerdex/rational.hpp"

namespace powerdex {

/// A set of players drawn from {0, ..., n-1}. Players are 0-based internally;
/// JSON and CLI surfaces use 1-based numbering.
class Coalition {
 public:
  Coalition() = default;
  Coalition(int n, PlayerMask mask) : mask_(mask), n_(n) {
    if (n < 0 || n > kMaxPlayers) throw input_error("coalition: player count out of range");
    if ((mask & ~full_mask(n)) != 0) throw input_error("coalition: member outside player set");
  }
  static Coalition of(int n, std::initializer_list<int> players) {
    PlayerMask m = 0;
    for (int p : players) m |= PlayerMask{1} << p;
    return Coalition(n, m);
  }
  static Coalition empty(int n) { return Coalition(n, 0); }
  static Coalition grand(int n) { return Coalition(n, full_mask(n)); }

  PlayerMask mask() const { return mask_; }
  int n() const { return n_; }
  int size() const { return popcount(mask_); }
  bool contains(int player) const { return powerdex::contains(mask_, player); }
  bool is_empty() const { return mask_ == 0; }
  bool is_grand() const { return mask_ == full_mask(n_); }
  std::vector<int> players() const { return members(mask_); }
  Coalition complement() const { return Coalition(n_, full_mask(n_) & ~mask_); }

  friend bool operator==(const Coalition&, const Coalition&) = default;

 private:
  PlayerMask mask_ = 0;
  int n_ = 0;
};

/// Total table 2^N -> Q indexed by player bitmask.
class CoalitionFunction {
 public:
  CoalitionFunction() = default;
  explicit CoalitionFunction(int n) : n_(check_n(n)), values_(std::size_t{1} << n) {}
  CoalitionFunction(int n, std::vector<Rational> values) : n_(check_n(n)), values_(std::move(values)) {
    if (values_.size() != (std::size_t{1} << n_)) throw input_error("coalition function: table must have 2^n entries");
  }

  int n() const { return n_; }
  const Rational& operator()(PlayerMask s) const { return values_.at(s); }
  Rational& operator()(PlayerMask s) { return values_.at(s); }
  std::span<const Rational> values() const { return values_; }

  bool is_monotone() const {
    for (PlayerMask s = 0; s < values_.size(); ++s) {
      for (int i = 0; i < n_; ++i) {
        if (!contains(s, i) && values_[s | (PlayerMask{1} << i)] < values_[s]) return false;
      }
    }
    return true;
  }

  bool is_binary() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](const Rational& r) { return r == Rational(0) || r == Rational(1); });
  }

  friend bool operator==(const CoalitionFunction&, const CoalitionFunction&) = default;

 private:
  static int check_n(int n) {
    if (n < 1 || n > kMaxPlayers) throw input_error("player count must be in 1..20");
    return n;
  }
  int n_ = 0;
  std::vector<Rational> values_;
};

/// Monotone {0,1}-valued coalition function with v(empty)=0 and v(N)=1.
class SimpleGame {
 public:
  explicit SimpleGame(CoalitionFunction inner) : inner_(std::move(inner)) {
    if (!inner_.is_binary()) throw input_error("simple game: values must be 0 or 1");
    if (inner_(0) != Rational(0)) throw input_error("simple game: empty coalition must lose");
    if (inner_(full_mask(inner_.n())) != Rational(1)) throw input_error("simple game: grand coalition must win");
    if (!inner_.is_monotone()) throw input_error("simple game: winning set is not upward closed");
  }

  /// Builds the game whose winning coalitions are all supersets of the given ones.
  static SimpleGame from_minimal_winning(int n, const std::vector<PlayerMask>& generators) {
    CoalitionFunction v(n);
    for (PlayerMask s = 0; s <= full_mask(n); ++s) {
      const bool wins = std::any_of(generators.begin(), generators.end(),
                                    [s](PlayerMask g) { return (g & ~s) == 0; });
      v(s) = wins ? 1 : 0;
      if (s == full_mask(n)) break;
    }
    return SimpleGame(std::move(v));
  }

  /// Weighted game [quota; w_1, ..., w_n].
  static SimpleGame weighted(const Rational& quota, const std::vector<Rational>& weights) {
    const int n = static_cast<int>(weights.size());
    CoalitionFunction v(n);
    for (PlayerMask s = 0; s <= full_mask(n); ++s) {
      Rational w;
      for (int i : members(s)) w += weights[i];
      v(s) = (w >= quota) ? 1 : 0;
      if (s == full_mask(n)) break;
    }
    return SimpleGame(std::move(v));
  }

  int n() const { return inner_.n(); }
  bool wins(PlayerMask s) const { return inner_(s) == Rational(1); }
  const CoalitionFunction& function() const { return inner_; }

  friend bool operator==(const SimpleGame&, const SimpleGame&) = default;

 private:
  CoalitionFunction inner_;
};

/// (j,k) simple game: monotone map {0..j-1}^n -> {0..k-1} with fixed extremes.
/// Profiles are stored in mixed radix j with player 0 the least significant digit.
class JKGame {
 public:
  JKGame(int n, int j, int k, std::vector<int> values) : n_(n), j_(j), k_(k), values_(std::move(values)) {
    if (n < 1 || n > kMaxPlayers) throw input_error("(j,k) game: player count must be in 1..20");
    if (j < 2 || k < 2) throw input_error("(j,k) game: j and k must be at least 2");
    if (values_.size() != profile_count()) throw input_error("(j,k) game: table must have j^n entries");
    for (int level : values_) {
      if (level < 0 || level >= k) throw input_error("(j,k) game: output level out of range");
    }
    if (values_.front() != 0) throw input_error("(j,k) game: v(0,...,0) must be 0");
    if (values_.back() != k - 1) throw input_error("(j,k) game: v(j-1,...,j-1) must be k-1");
    for (std::size_t idx = 0; idx < values_.size(); ++idx) {
      std::size_t stride = 1;
      for (int i = 0; i < n_; ++i, stride *= static_cast<std::size_t>(j_)) {
        const auto digit = static_cast<int>((idx / stride) % static_cast<std::size_t>(j_));
        if (digit + 1 < j_ && values_[idx + stride] < values_[idx]) {
          throw input_error("(j,k) game: not monotone at profile " + std::to_string(idx));
        }
      }
    }
  }

  /// Lifts a simple game to the equivalent (2,2) game.
  static JKGame from_simple(const SimpleGame& g) {
    std::vector<int> values(std::size_t{1} << g.n());
    for (PlayerMask s = 0; s < values.size(); ++s) values[s] = g.wins(s) ? 1 : 0;
    return JKGame(g.n(), 2, 2, std::move(values));
  }

  int n() const { return n_; }
  int j() const { return j_; }
  int k() const { return k_; }
  std::size_t profile_count() const {
    std::size_t c = 1;
    for (int i = 0; i < n_; ++i) c *= static_cast<std::size_t>(j_);
    return c;
  }

  std::size_t encode(std::span<const int> profile) const {
    std::size_t idx = 0;
    for (int i = n_ - 1; i >= 0; --i) idx = idx * static_cast<std::size_t>(j_) + static_cast<std::size_t>(profile[i]);
    return idx;
  }
  std::vector<int> decode(std::size_t idx) const {
    std::vector<int> x(n_);
    for (int i = 0; i < n_; ++i) {
      x[i] = static_cast<int>(idx % static_cast<std::size_t>(j_));
      idx /= static_cast<std::size_t>(j_);
    }
    return x;
  }

  int operator()(std::span<const int> profile) const { return values_[encode(profile)]; }
  int at(std::size_t idx) const { return values_[idx]; }
  std::span<const int> values() const { return values_; }

  friend bool operator==(const JKGame&, const JKGame&) = default;

 private:
  int n_;
  int j_;
  int k_;
  std::vector<int> values_;
};

}  // namespace powerdex
