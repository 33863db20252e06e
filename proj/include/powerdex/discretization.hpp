#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "powerdex/rational.hpp"

namespace powerdex {

/// Breakpoints 0 = a_0 < a_1 < ... < a_p = 1 shared by every axis.
class Discretization {
 public:
  Discretization() : alpha_{Rational(0), Rational(1)} {}
  explicit Discretization(std::vector<Rational> alpha) : alpha_(std::move(alpha)) {
    if (alpha_.size() < 2) throw input_error("discretization needs at least the breakpoints 0 and 1");
    if (alpha_.front() != Rational(0) || alpha_.back() != Rational(1)) {
      throw input_error("discretization must start at 0 and end at 1");
    }
    for (std::size_t h = 1; h < alpha_.size(); ++h) {
      if (!(alpha_[h - 1] < alpha_[h])) throw input_error("discretization breakpoints must be strictly increasing");
    }
  }

  /// (0, 1/l, 2/l, ..., 1)
  static Discretization uniform(int l) {
    if (l < 1) throw input_error("uniform discretization needs l >= 1");
    std::vector<Rational> a;
    for (int h = 0; h <= l; ++h) a.emplace_back(h, l);
    return Discretization(std::move(a));
  }

  int p() const { return static_cast<int>(alpha_.size()) - 1; }
  const Rational& operator[](int h) const { return alpha_.at(static_cast<std::size_t>(h)); }
  std::span<const Rational> breakpoints() const { return alpha_; }

  Rational mesh() const {
    Rational w;
    for (int h = 1; h <= p(); ++h) w = max(w, alpha_[h] - alpha_[h - 1]);
    return w;
  }

  /// Index h with alpha_h == x, or -1.
  int find(const Rational& x) const {
    auto it = std::lower_bound(alpha_.begin(), alpha_.end(), x);
    return (it != alpha_.end() && *it == x) ? static_cast<int>(it - alpha_.begin()) : -1;
  }

  /// Doubled coordinate of the face containing x in [0,1].
  int locate(const Rational& x) const {
    if (x < Rational(0) || x > Rational(1)) throw input_error("coordinate outside [0,1]: " + x.str());
    auto it = std::lower_bound(alpha_.begin(), alpha_.end(), x);
    const int h = static_cast<int>(it - alpha_.begin());
    return (*it == x) ? 2 * h : 2 * h - 1;
  }

  int locate(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) throw input_error("coordinate outside [0,1]");
    int lo = 0;
    int hi = p();
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      if (alpha_d(mid) <= x) lo = mid; else hi = mid;
    }
    if (alpha_d(lo) == x) return 2 * lo;
    if (alpha_d(hi) == x) return 2 * hi;
    return 2 * lo + 1;
  }

  /// Lower and upper breakpoint of a doubled coordinate (equal for points).
  const Rational& lower(int d) const { return alpha_.at(static_cast<std::size_t>(d / 2)); }
  const Rational& upper(int d) const { return alpha_.at(static_cast<std::size_t>((d + 1) / 2)); }
  Rational length(int d) const { return upper(d) - lower(d); }
  /// Midpoint of the face coordinate; the point itself for even d.
  Rational center(int d) const { return (lower(d) + upper(d)) / Rational(2); }

  bool refines(const Discretization& coarse) const {
    return std::all_of(coarse.alpha_.begin(), coarse.alpha_.end(),
                       [this](const Rational& a) { return find(a) >= 0; });
  }

  static Discretization merge(const Discretization& a, const Discretization& b) {
    std::vector<Rational> out;
    std::set_union(a.alpha_.begin(), a.alpha_.end(), b.alpha_.begin(), b.alpha_.end(), std::back_inserter(out));
    return Discretization(std::move(out));
  }

  /// Adds breakpoints (each must lie in [0,1]).
  Discretization with_points(std::vector<Rational> extra) const {
    for (const auto& x : extra) {
      if (x < Rational(0) || x > Rational(1)) throw input_error("breakpoint outside [0,1]");
    }
    extra.insert(extra.end(), alpha_.begin(), alpha_.end());
    std::sort(extra.begin(), extra.end());
    extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
    return Discretization(std::move(extra));
  }

  friend bool operator==(const Discretization&, const Discretization&) = default;

 private:
  double alpha_d(int h) const { return alpha_[static_cast<std::size_t>(h)].to_double(); }
  std::vector<Rational> alpha_;
};

/// Doubled face coordinates, one entry per player, each in {0..2p}.
using FaceIndex = std::vector<int>;

/// Mixed-radix addressing of the (2p+1)^n faces. Player 0 is the least
/// significant digit.
class FaceGrid {
 public:
  static constexpr std::size_t kMaxFaces = 1771561;  // 11^6

  FaceGrid(int n, int p) : n_(n), p_(p), radix_(2 * p + 1), stride_(static_cast<std::size_t>(n) + 1) {
    if (n < 1) throw input_error("step game needs at least one player");
    if (n > 6) throw input_error("step games are limited to n <= 6 players");
    stride_[0] = 1;
    for (int i = 0; i < n; ++i) {
      stride_[i + 1] = stride_[i] * static_cast<std::size_t>(radix_);
      if (stride_[i + 1] > kMaxFaces) throw input_error("face table exceeds (2*5+1)^6 entries");
    }
  }

  int n() const { return n_; }
  int p() const { return p_; }
  int top() const { return 2 * p_; }
  std::size_t size() const { return stride_[n_]; }
  std::size_t stride(int i) const { return stride_[i]; }

  int digit(std::size_t idx, int i) const {
    return static_cast<int>((idx / stride_[i]) % static_cast<std::size_t>(radix_));
  }

  std::size_t encode(std::span<const int> d) const {
    if (static_cast<int>(d.size()) != n_) throw input_error("face index has wrong dimension");
    std::size_t idx = 0;
    for (int i = n_ - 1; i >= 0; --i) {
      if (d[i] < 0 || d[i] > top()) throw input_error("face coordinate out of range");
      idx = idx * static_cast<std::size_t>(radix_) + static_cast<std::size_t>(d[i]);
    }
    return idx;
  }

  FaceIndex decode(std::size_t idx) const {
    FaceIndex d(n_);
    for (int i = 0; i < n_; ++i) {
      d[i] = static_cast<int>(idx % static_cast<std::size_t>(radix_));
      idx /= static_cast<std::size_t>(radix_);
    }
    return d;
  }

  bool is_box(std::size_t idx) const {
    for (int i = 0; i < n_; ++i) {
      if (digit(idx, i) % 2 == 0) return false;
    }
    return true;
  }

  std::size_t lowest_corner() const { return 0; }
  std::size_t highest_corner() const { return size() - 1; }

  /// Full-dimensional boxes adjacent to a face, E(d).
  std::vector<std::size_t> adjacent_boxes(std::size_t idx) const {
    std::vector<std::size_t> out{0};
    for (int i = 0; i < n_; ++i) {
      const int d = digit(idx, i);
      std::vector<std::size_t> next;
      for (int c : {d - 1, d, d + 1}) {
        if (c % 2 == 0 || c < 1 || c > top() - 1) continue;
        if (d % 2 == 1 && c != d) continue;
        for (auto base : out) next.push_back(base + static_cast<std::size_t>(c) * stride_[i]);
      }
      out = std::move(next);
    }
    return out;
  }

  /// All faces e of the closed box around b, i.e. |d_i - b_i| <= 1.
  std::vector<std::size_t> faces_of_box(std::size_t box) const {
    std::vector<std::size_t> out{0};
    for (int i = 0; i < n_; ++i) {
      const int b = digit(box, i);
      std::vector<std::size_t> next;
      for (int c = b - 1; c <= b + 1; ++c) {
        for (auto base : out) next.push_back(base + static_cast<std::size_t>(c) * stride_[i]);
      }
      out = std::move(next);
    }
    return out;
  }

  /// Enumerates the boxes of the grid in ascending index order.
  std::vector<std::size_t> boxes() const {
    std::vector<std::size_t> out;
    for (std::size_t idx = 0; idx < size(); ++idx) {
      if (is_box(idx)) out.push_back(idx);
    }
    return out;
  }

 private:
  int n_;
  int p_;
  int radix_;
  std::vector<std::size_t> stride_;
};

}  // namespace powerdex
