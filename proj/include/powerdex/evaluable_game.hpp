#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "powerdex/rational.hpp"
#include "powerdex/step_game.hpp"

namespace powerdex {

/// Black-box game on [0,1]^n. The floating evaluator is always present; the
/// exact one only when the family admits rational evaluation.
class EvaluableGame {
 public:
  using ExactFn = std::function<Rational(std::span<const Rational>)>;
  using FloatFn = std::function<double(std::span<const double>)>;

  EvaluableGame(int n, std::string name, FloatFn approx, ExactFn exact = {})
      : n_(n), name_(std::move(name)), approx_(std::move(approx)), exact_(std::move(exact)) {
    if (n < 1 || n > 20) throw input_error("evaluable game: player count must be in 1..20");
  }

  int n() const { return n_; }
  const std::string& name() const { return name_; }
  bool has_exact() const { return static_cast<bool>(exact_); }

  double operator()(std::span<const double> x) const { return approx_(x); }
  Rational operator()(std::span<const Rational> x) const {
    if (!exact_) throw input_error("game '" + name_ + "' has no exact evaluator");
    return exact_(x);
  }

 private:
  int n_;
  std::string name_;
  FloatFn approx_;
  ExactFn exact_;
};

/// sum_i w_i x_i^{k_i}; weights must be nonnegative and sum to 1.
inline EvaluableGame weighted_sum(std::vector<Rational> weights, std::vector<unsigned> powers = {}) {
  const int n = static_cast<int>(weights.size());
  if (powers.empty()) powers.assign(weights.size(), 1);
  if (powers.size() != weights.size()) throw input_error("weighted_sum: weights and powers differ in length");
  Rational total;
  for (const auto& w : weights) {
    if (w.sign() < 0) throw input_error("weighted_sum: negative weight");
    total += w;
  }
  if (total != Rational(1)) throw input_error("weighted_sum: weights must sum to 1");
  if (std::any_of(powers.begin(), powers.end(), [](unsigned k) { return k == 0; })) {
    throw input_error("weighted_sum: powers must be positive");
  }
  std::vector<double> wd;
  for (const auto& w : weights) wd.push_back(w.to_double());
  auto approx = [wd, powers](std::span<const double> x) {
    double s = 0;
    for (std::size_t i = 0; i < wd.size(); ++i) s += wd[i] * std::pow(x[i], static_cast<double>(powers[i]));
    return s;
  };
  auto exact = [weights, powers](std::span<const Rational> x) {
    Rational s;
    for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * pow(x[i], powers[i]);
    return s;
  };
  return EvaluableGame(n, "weighted_sum", approx, exact);
}

/// prod_i x_i^{a_i}. A zero exponent makes player i null. Exact evaluation is
/// available when every exponent is an integer.
inline EvaluableGame product(std::vector<Rational> exponents) {
  const int n = static_cast<int>(exponents.size());
  bool integral = true;
  bool any_positive = false;
  for (const auto& a : exponents) {
    if (a.sign() < 0) throw input_error("product: exponents must be nonnegative");
    if (a.sign() > 0) any_positive = true;
    if (a.denominator() != 1) integral = false;
  }
  if (!any_positive) throw input_error("product: at least one exponent must be positive");
  std::vector<double> ed;
  for (const auto& a : exponents) ed.push_back(a.to_double());
  auto approx = [ed](std::span<const double> x) {
    double s = 1;
    for (std::size_t i = 0; i < ed.size(); ++i) {
      if (ed[i] != 0.0) s *= std::pow(x[i], ed[i]);
    }
    return s;
  };
  EvaluableGame::ExactFn exact;
  if (integral) {
    std::vector<unsigned> ks;
    for (const auto& a : exponents) ks.push_back(static_cast<unsigned>(a.numerator().get_ui()));
    exact = [ks](std::span<const Rational> x) {
      Rational s(1);
      for (std::size_t i = 0; i < ks.size(); ++i) {
        if (ks[i] != 0) s *= pow(x[i], ks[i]);
      }
      return s;
    };
  }
  return EvaluableGame(n, "product", approx, exact);
}

/// v(x) = x_1 * x_2^2 on n >= 2 players; players 3..n are null.
inline EvaluableGame x1x2sq(int n = 2) {
  if (n < 2) throw input_error("x1x2sq needs at least two players");
  std::vector<Rational> e(static_cast<std::size_t>(n));
  e[0] = 1;
  e[1] = 2;
  auto g = product(std::move(e));
  return EvaluableGame(n, "x1x2sq", [g](std::span<const double> x) { return g(x); },
                       [g](std::span<const Rational> x) { return g(x); });
}

/// Smallest x_i whose cumulative weight (in ascending order of x) reaches 1/2.
inline EvaluableGame weighted_median(std::vector<Rational> weights) {
  const int n = static_cast<int>(weights.size());
  Rational total;
  for (const auto& w : weights) {
    if (w.sign() <= 0) throw input_error("weighted_median: weights must be positive");
    total += w;
  }
  if (total != Rational(1)) throw input_error("weighted_median: weights must sum to 1");
  auto pick = [weights](auto x) {
    std::vector<std::size_t> order(weights.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    Rational acc;
    for (auto i : order) {
      acc += weights[i];
      if (acc >= Rational(1, 2)) return x[i];
    }
    return x[order.back()];
  };
  return EvaluableGame(n, "weighted_median", [pick](std::span<const double> x) { return pick(x); },
                       [pick](std::span<const Rational> x) { return pick(x); });
}

inline EvaluableGame from_step(const StepGame& g) {
  return EvaluableGame(g.n(), "step", [g](std::span<const double> x) { return g.evaluate(x); },
                       [g](std::span<const Rational> x) { return g.evaluate(x); });
}

/// v -> v^2, pointwise.
inline EvaluableGame squared(const EvaluableGame& v) {
  EvaluableGame::ExactFn exact;
  if (v.has_exact()) {
    exact = [v](std::span<const Rational> x) {
      const Rational r = v(x);
      return r * r;
    };
  }
  return EvaluableGame(v.n(), v.name() + "^2",
                       [v](std::span<const double> x) {
                         const double r = v(x);
                         return r * r;
                       },
                       exact);
}

}  // namespace powerdex
