#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "powerdex/rational.hpp"

namespace powerdex {

/// Per-player shares, either exact rationals or Monte-Carlo estimates with
/// standard errors.
struct PowerVector {
  enum class Mode { exact, mc };

  Mode mode = Mode::exact;
  std::vector<Rational> shares;
  std::vector<double> estimate;
  std::vector<double> stderr_;
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  static PowerVector exact(std::vector<Rational> s) {
    PowerVector p;
    p.shares = std::move(s);
    return p;
  }
  static PowerVector zeros(int n) { return exact(std::vector<Rational>(static_cast<std::size_t>(n))); }

  std::size_t size() const { return mode == Mode::exact ? shares.size() : estimate.size(); }
  bool is_exact() const { return mode == Mode::exact; }

  Rational sum() const {
    Rational s;
    for (const auto& r : shares) s += r;
    return s;
  }

  PowerVector& operator+=(const PowerVector& o) {
    for (std::size_t i = 0; i < shares.size(); ++i) shares[i] += o.shares.at(i);
    return *this;
  }
  PowerVector& operator-=(const PowerVector& o) {
    for (std::size_t i = 0; i < shares.size(); ++i) shares[i] -= o.shares.at(i);
    return *this;
  }
  friend PowerVector operator+(PowerVector a, const PowerVector& b) { return a += b; }
  friend PowerVector operator-(PowerVector a, const PowerVector& b) { return a -= b; }
  friend PowerVector operator*(const Rational& c, PowerVector a) {
    for (auto& r : a.shares) r *= c;
    return a;
  }

  friend bool operator==(const PowerVector& a, const PowerVector& b) {
    return a.mode == b.mode && a.shares == b.shares && a.estimate == b.estimate && a.stderr_ == b.stderr_;
  }

  std::string str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < size(); ++i) {
      if (i) out += ", ";
      out += is_exact() ? shares[i].str() : std::to_string(estimate[i]);
    }
    return out + ")";
  }
};

}  // namespace powerdex
