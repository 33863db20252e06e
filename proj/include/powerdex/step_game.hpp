#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "powerdex/discretization.hpp"
#include "powerdex/rational.hpp"

namespace powerdex {

enum class RegularityTag { raw, semi_regular, regular };

inline std::string to_string(RegularityTag t) {
  switch (t) {
    case RegularityTag::raw: return "raw";
    case RegularityTag::semi_regular: return "semi_regular";
    case RegularityTag::regular: return "regular";
  }
  return "raw";
}

inline RegularityTag parse_tag(const std::string& s) {
  if (s == "raw") return RegularityTag::raw;
  if (s == "semi_regular" || s == "semi-regular") return RegularityTag::semi_regular;
  if (s == "regular") return RegularityTag::regular;
  throw input_error("unknown regularity tag '" + s + "'");
}

/// Piecewise constant function on the faces of a rectangular paving of [0,1]^n.
/// Stores one value per face in a dense table addressed by FaceGrid.
class StepGame {
 public:
  StepGame(Discretization disc, int n, std::vector<Rational> values, RegularityTag tag)
      : disc_(std::move(disc)), grid_(n, disc_.p()), values_(std::move(values)), tag_(tag) {
    if (values_.size() != grid_.size()) throw input_error("step game: value table has the wrong size");
  }

  const Discretization& disc() const { return disc_; }
  const FaceGrid& grid() const { return grid_; }
  int n() const { return grid_.n(); }
  RegularityTag tag() const { return tag_; }
  std::span<const Rational> values() const { return values_; }

  const Rational& at(std::size_t idx) const { return values_[idx]; }
  const Rational& value(std::span<const int> d) const { return values_[grid_.encode(d)]; }

  std::size_t locate(std::span<const Rational> x) const {
    if (static_cast<int>(x.size()) != n()) throw input_error("point has wrong dimension");
    std::size_t idx = 0;
    for (int i = 0; i < n(); ++i) idx += static_cast<std::size_t>(disc_.locate(x[i])) * grid_.stride(i);
    return idx;
  }

  Rational evaluate(std::span<const Rational> x) const { return values_[locate(x)]; }

  double evaluate(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n()) throw input_error("point has wrong dimension");
    std::size_t idx = 0;
    for (int i = 0; i < n(); ++i) idx += static_cast<std::size_t>(disc_.locate(x[i])) * grid_.stride(i);
    return values_[idx].to_double();
  }

  /// Same table under a different tag. No checking; see validate().
  StepGame with_tag(RegularityTag tag) const { return StepGame(disc_, n(), values_, tag); }

  friend bool operator==(const StepGame& a, const StepGame& b) {
    return a.tag_ == b.tag_ && a.disc_ == b.disc_ && a.n() == b.n() && a.values_ == b.values_;
  }

 private:
  Discretization disc_;
  FaceGrid grid_;
  std::vector<Rational> values_;
  RegularityTag tag_;
};

namespace detail {

inline Rational average_over_boxes(const FaceGrid& grid, std::span<const Rational> values, std::size_t idx) {
  const auto boxes = grid.adjacent_boxes(idx);
  Rational sum;
  for (auto b : boxes) sum += values[b];
  return sum / Rational(static_cast<long>(boxes.size()));
}

/// Overwrites every non-box face with the mean of its adjacent boxes and pins
/// the two global corners.
inline void regular_fill(const FaceGrid& grid, std::vector<Rational>& values) {
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    if (!grid.is_box(idx)) values[idx] = average_over_boxes(grid, values, idx);
  }
  values[grid.lowest_corner()] = 0;
  values[grid.highest_corner()] = 1;
}

inline std::string face_string(const FaceGrid& grid, std::size_t idx) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < grid.n(); ++i) os << (i ? "," : "") << grid.digit(idx, i);
  os << ')';
  return os.str();
}

}  // namespace detail

/// Regular step game from its box values. Keys are doubled face coordinates
/// with every entry odd.
inline StepGame make_regular_step(const Discretization& disc, int n, const std::map<FaceIndex, Rational>& boxes) {
  FaceGrid grid(n, disc.p());
  std::vector<Rational> values(grid.size());
  std::vector<bool> seen(grid.size(), false);
  for (const auto& [d, r] : boxes) {
    const auto idx = grid.encode(d);
    if (!grid.is_box(idx)) throw input_error("box key " + detail::face_string(grid, idx) + " is not full-dimensional");
    if (r < Rational(0) || r > Rational(1)) throw input_error("box value " + r.str() + " outside [0,1]");
    values[idx] = r;
    seen[idx] = true;
  }
  for (auto b : grid.boxes()) {
    if (!seen[b]) throw input_error("missing value for box " + detail::face_string(grid, b));
  }
  detail::regular_fill(grid, values);
  return StepGame(disc, n, std::move(values), RegularityTag::regular);
}

/// Regular step game built from a callback giving each box's value.
template <class BoxFn>
StepGame make_regular_step_from(const Discretization& disc, int n, BoxFn&& box_value) {
  FaceGrid grid(n, disc.p());
  std::map<FaceIndex, Rational> boxes;
  for (auto b : grid.boxes()) {
    auto d = grid.decode(b);
    boxes.emplace(d, box_value(std::as_const(d)));
  }
  return make_regular_step(disc, n, boxes);
}

/// The game with every box at 0: value 0 everywhere except the all-ones corner.
inline StepGame zero_game(int n, const Discretization& disc = Discretization()) {
  return make_regular_step_from(disc, n, [](const FaceIndex&) { return Rational(0); });
}

/// Re-expresses g on a finer grid. Pointwise identical; tagged raw.
inline StepGame refine(const StepGame& g, const Discretization& fine) {
  const auto& coarse = g.disc();
  if (!fine.refines(coarse)) throw input_error("refine: target grid does not contain all breakpoints");
  const FaceGrid out_grid(g.n(), fine.p());
  std::vector<int> coord_map(static_cast<std::size_t>(out_grid.top()) + 1);
  for (int d = 0; d <= out_grid.top(); ++d) coord_map[d] = coarse.locate(fine.center(d));
  std::vector<Rational> values(out_grid.size());
  for (std::size_t idx = 0; idx < out_grid.size(); ++idx) {
    std::size_t src = 0;
    for (int i = 0; i < g.n(); ++i) src += static_cast<std::size_t>(coord_map[out_grid.digit(idx, i)]) * g.grid().stride(i);
    values[idx] = g.at(src);
  }
  return StepGame(fine, g.n(), std::move(values), RegularityTag::raw);
}

/// (u max v, u min v) on the merged grid, both tagged raw.
inline std::pair<StepGame, StepGame> join_meet(const StepGame& u, const StepGame& v) {
  if (u.n() != v.n()) throw input_error("join_meet: player counts differ");
  const auto merged = Discretization::merge(u.disc(), v.disc());
  const auto uf = refine(u, merged);
  const auto vf = refine(v, merged);
  std::vector<Rational> hi(uf.values().size());
  std::vector<Rational> lo(uf.values().size());
  for (std::size_t idx = 0; idx < hi.size(); ++idx) {
    hi[idx] = max(uf.at(idx), vf.at(idx));
    lo[idx] = min(uf.at(idx), vf.at(idx));
  }
  return {StepGame(merged, u.n(), std::move(hi), RegularityTag::raw),
          StepGame(merged, u.n(), std::move(lo), RegularityTag::raw)};
}

/// Each coarse box takes the minimum over the fine boxes it covers; the other
/// faces follow the averaging rule.
inline StepGame coarsen(const StepGame& v, const Discretization& coarse) {
  const auto& fine = v.disc();
  if (!fine.refines(coarse)) throw input_error("coarsen: target grid is not a sub-grid");
  // For each coarse box coordinate, the range of fine box coordinates inside it.
  std::vector<std::pair<int, int>> cover(static_cast<std::size_t>(2 * coarse.p()) + 1);
  for (int k = 0; k < coarse.p(); ++k) {
    cover[2 * k + 1] = {2 * fine.find(coarse[k]) + 1, 2 * fine.find(coarse[k + 1]) - 1};
  }
  const auto& fg = v.grid();
  return make_regular_step_from(coarse, v.n(), [&](const FaceIndex& d) {
    std::vector<int> cur(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) cur[i] = cover[d[i]].first;
    Rational best = v.value(cur);
    while (true) {
      std::size_t i = 0;
      for (; i < d.size(); ++i) {
        if (cur[i] + 2 <= cover[d[i]].second) {
          cur[i] += 2;
          break;
        }
        cur[i] = cover[d[i]].first;
      }
      if (i == d.size()) break;
      best = min(best, v.at(fg.encode(cur)));
    }
    return best;
  });
}

struct ValidationReport {
  bool monotone = true;
  bool in_range = true;
  bool semi_regular = true;
  bool regular = true;
  bool tag_consistent = true;
  std::vector<std::string> violations;

  bool ok() const { return monotone && in_range && tag_consistent; }
};

inline ValidationReport validate(const StepGame& g) {
  ValidationReport rep;
  const auto& grid = g.grid();
  const int top = grid.top();
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const auto& val = g.at(idx);
    if (val < Rational(0) || val > Rational(1)) {
      if (rep.in_range) rep.violations.push_back("value " + val.str() + " outside [0,1] at " + detail::face_string(grid, idx));
      rep.in_range = false;
    }
    // Face comparability is exactly d <= d' componentwise, so covering pairs suffice.
    for (int i = 0; i < grid.n(); ++i) {
      if (grid.digit(idx, i) == top) continue;
      const auto up = idx + grid.stride(i);
      if (g.at(up) < val) {
        if (rep.monotone) {
          rep.violations.push_back("monotonicity: " + detail::face_string(grid, idx) + " = " + val.str() + " > " +
                                   detail::face_string(grid, up) + " = " + g.at(up).str());
        }
        rep.monotone = false;
      }
    }
    if (grid.is_box(idx)) continue;
    bool interior = true;
    for (int i = 0; i < grid.n(); ++i) {
      const int d = grid.digit(idx, i);
      if (d == 0 || d == top) interior = false;
    }
    const bool corner = idx == grid.lowest_corner() || idx == grid.highest_corner();
    if (!(interior && rep.semi_regular) && !(!corner && rep.regular)) continue;
    if (detail::average_over_boxes(grid, g.values(), idx) != val) {
      if (interior) rep.semi_regular = false;
      if (!corner) rep.regular = false;
    }
  }
  if (g.at(grid.lowest_corner()) != Rational(0) || g.at(grid.highest_corner()) != Rational(1)) rep.regular = false;
  switch (g.tag()) {
    case RegularityTag::raw: break;
    case RegularityTag::semi_regular: rep.tag_consistent = rep.semi_regular; break;
    case RegularityTag::regular: rep.tag_consistent = rep.regular; break;
  }
  if (!rep.tag_consistent) rep.violations.push_back("game is tagged " + to_string(g.tag()) + " but fails that condition");
  return rep;
}

}  // namespace powerdex
