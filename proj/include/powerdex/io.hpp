#pragma once

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "powerdex/games.hpp"
#include "powerdex/his.hpp"
#include "powerdex/power_vector.hpp"
#include "powerdex/step_game.hpp"

namespace powerdex::io {

using json = nlohmann::ordered_json;

/// Largest grid accepted from input files.
inline constexpr int kMaxInputBoxes = 5;

inline std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string cell;
  std::istringstream is(text);
  while (std::getline(is, cell, ',')) {
    std::size_t pos = 0;
    while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
    if (pos == cell.size()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(cell.substr(pos), &used));
      if (cell.find_first_not_of(" \t", pos + used) != std::string::npos) throw input_error("");
    } catch (const std::exception&) {
      throw input_error("not an integer list: '" + text + "'");
    }
  }
  return out;
}

inline std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

inline Rational rational_of(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) throw input_error("rationals must be given as strings such as \"3/10\" or \"0.3\"");
  throw input_error("expected a rational, got " + j.dump());
}

inline json shares_json(const PowerVector& p) {
  json a = json::array();
  if (p.is_exact()) {
    for (const auto& r : p.shares) a.push_back(r.str());
  } else {
    for (std::size_t i = 0; i < p.estimate.size(); ++i) a.push_back(json::array({p.estimate[i], p.stderr_[i]}));
  }
  return a;
}

inline json players_json(PlayerMask m) {
  json a = json::array();
  for (int i : members(m)) a.push_back(i + 1);
  return a;
}

inline int get_n(const json& j) {
  if (!j.contains("n") || !j["n"].is_number_integer()) throw input_error("game JSON needs an integer \"n\"");
  const int n = j["n"].get<int>();
  if (n < 1 || n > kMaxPlayers) throw input_error("n must lie in 1..20");
  return n;
}

inline PlayerMask mask_from_players(const json& list, int n) {
  if (!list.is_array()) throw input_error("a coalition must be a list of player numbers");
  PlayerMask m = 0;
  for (const auto& p : list) {
    if (!p.is_number_integer()) throw input_error("player numbers must be integers");
    const int i = p.get<int>();
    if (i < 1 || i > n) throw input_error("player " + std::to_string(i) + " out of range 1.." + std::to_string(n));
    m |= PlayerMask{1} << (i - 1);
  }
  return m;
}

// ---------------------------------------------------------------- coalitions

/// {"n", "winning": [[...], ...], "list": "full" | "minimal"}; alternatively
/// {"n", "values": {"1,3": "1/2", "": "0", ...}} with missing entries 0.
inline CoalitionFunction parse_coalition_function(const json& j) {
  const int n = get_n(j);
  CoalitionFunction v(n);
  if (j.contains("values")) {
    if (!j["values"].is_object()) throw input_error("\"values\" must be an object keyed by player lists");
    for (const auto& [key, val] : j["values"].items()) {
      PlayerMask m = 0;
      for (int i : parse_int_list(key)) {
        if (i < 1 || i > n) throw input_error("player " + std::to_string(i) + " out of range");
        m |= PlayerMask{1} << (i - 1);
      }
      v(m) = rational_of(val);
    }
    return v;
  }
  if (!j.contains("winning") || !j["winning"].is_array()) throw input_error("simple game JSON needs \"winning\"");
  const std::string list = j.value("list", std::string("full"));
  std::vector<PlayerMask> gens;
  for (const auto& c : j["winning"]) gens.push_back(mask_from_players(c, n));
  if (list == "minimal") return SimpleGame::from_minimal_winning(n, gens).function();
  if (list != "full") throw input_error("\"list\" must be \"full\" or \"minimal\"");
  for (auto m : gens) v(m) = 1;
  return v;
}

inline SimpleGame parse_simple_game(const json& j) { return SimpleGame(parse_coalition_function(j)); }

inline json to_json(const CoalitionFunction& v) {
  json out;
  out["n"] = v.n();
  if (v.is_binary()) {
    json w = json::array();
    for (PlayerMask m = 0; m < v.values().size(); ++m) {
      if (v(m) == Rational(1)) w.push_back(players_json(m));
    }
    out["winning"] = w;
    out["list"] = "full";
  } else {
    json vals = json::object();
    for (PlayerMask m = 0; m < v.values().size(); ++m) {
      if (!v(m).is_zero()) {
        std::vector<int> ps;
        for (int i : members(m)) ps.push_back(i + 1);
        vals[join_ints(ps)] = v(m).str();
      }
    }
    out["values"] = vals;
  }
  return out;
}

inline json to_json(const SimpleGame& v) { return to_json(v.function()); }

// ------------------------------------------------------------------ (j,k)

/// {"n", "j", "k", "values": {"x1,...,xn": level}} with 0-based levels;
/// missing profiles default to 0.
inline JKGame parse_jk_game(const json& j) {
  const int n = get_n(j);
  if (!j.contains("j") || !j.contains("k")) throw input_error("(j,k) game JSON needs \"j\" and \"k\"");
  const int jj = j["j"].get<int>();
  const int kk = j["k"].get<int>();
  if (jj < 2 || kk < 2 || jj > 16 || kk > 1 << 16) throw input_error("j and k must be at least 2 (j at most 16)");
  std::size_t profiles = 1;
  for (int i = 0; i < n; ++i) {
    profiles *= static_cast<std::size_t>(jj);
    if (profiles > (std::size_t{1} << 22)) throw input_error("(j,k) game too large: j^n exceeds 2^22");
  }
  std::vector<int> values(profiles, 0);
  if (!j.contains("values") || !j["values"].is_object()) throw input_error("(j,k) game JSON needs a \"values\" object");
  for (const auto& [key, val] : j["values"].items()) {
    const auto x = parse_int_list(key);
    if (static_cast<int>(x.size()) != n) throw input_error("profile '" + key + "' must have n entries");
    std::size_t idx = 0;
    std::size_t stride = 1;
    for (int i = 0; i < n; ++i, stride *= static_cast<std::size_t>(jj)) {
      if (x[i] < 0 || x[i] >= jj) throw input_error("profile '" + key + "' has a level outside 0..j-1");
      idx += static_cast<std::size_t>(x[i]) * stride;
    }
    if (!val.is_number_integer()) throw input_error("output levels must be integers");
    values[idx] = val.get<int>();
  }
  return JKGame(n, jj, kk, std::move(values));
}

inline json to_json(const JKGame& v) {
  json out;
  out["n"] = v.n();
  out["j"] = v.j();
  out["k"] = v.k();
  json vals = json::object();
  for (std::size_t idx = 0; idx < v.profile_count(); ++idx) vals[join_ints(v.decode(idx))] = v.at(idx);
  out["values"] = vals;
  return out;
}

// ------------------------------------------------------------------- steps

/// {"n", "alpha": [...], "tag", "boxes": {"i1,...": "r"}, "faces": {...}}.
/// Box keys are 1-based box numbers per axis. "faces" keys are doubled face
/// coordinates and override the averaged fill on raw or semi-regular games.
inline StepGame parse_step_game(const json& j) {
  const int n = get_n(j);
  if (n > 6) throw input_error("step games are limited to n <= 6");
  std::vector<Rational> alpha;
  if (j.contains("alpha")) {
    if (!j["alpha"].is_array()) throw input_error("\"alpha\" must be a list of breakpoints");
    for (const auto& a : j["alpha"]) alpha.push_back(rational_of(a));
  } else {
    alpha = {Rational(0), Rational(1)};
  }
  const Discretization disc(alpha);
  if (disc.p() > kMaxInputBoxes) throw input_error("at most 5 boxes per axis are supported");
  const auto tag = parse_tag(j.value("tag", std::string("regular")));
  const FaceGrid grid(n, disc.p());

  std::map<FaceIndex, Rational> boxes;
  if (!j.contains("boxes") || !j["boxes"].is_object()) throw input_error("step game JSON needs a \"boxes\" object");
  for (const auto& [key, val] : j["boxes"].items()) {
    auto d = parse_int_list(key);
    if (static_cast<int>(d.size()) != n) throw input_error("box key '" + key + "' must have n entries");
    for (auto& x : d) {
      if (x < 1 || x > disc.p()) throw input_error("box key '" + key + "' out of range 1.." + std::to_string(disc.p()));
      x = 2 * x - 1;
    }
    if (!boxes.emplace(d, rational_of(val)).second) throw input_error("duplicate box key '" + key + "'");
  }
  const auto base = make_regular_step(disc, n, boxes);
  if (!j.contains("faces")) return base.with_tag(tag);
  if (tag == RegularityTag::regular) throw input_error("\"faces\" overrides are only allowed for raw or semi_regular games");
  std::vector<Rational> values(base.values().begin(), base.values().end());
  for (const auto& [key, val] : j["faces"].items()) {
    const auto d = parse_int_list(key);
    if (static_cast<int>(d.size()) != n) throw input_error("face key '" + key + "' must have n entries");
    for (int x : d) {
      if (x < 0 || x > grid.top()) throw input_error("face key '" + key + "' out of range 0.." + std::to_string(grid.top()));
    }
    const auto idx = grid.encode(d);
    if (grid.is_box(idx)) throw input_error("face key '" + key + "' is a box; use \"boxes\"");
    values[idx] = rational_of(val);
  }
  return StepGame(disc, n, std::move(values), tag);
}

inline json to_json(const StepGame& g) {
  const auto& grid = g.grid();
  json out;
  out["n"] = g.n();
  json alpha = json::array();
  for (const auto& a : g.disc().breakpoints()) alpha.push_back(a.str());
  out["alpha"] = alpha;
  out["tag"] = to_string(g.tag());
  json boxes = json::object();
  std::vector<Rational> fill(g.values().begin(), g.values().end());
  for (auto b : grid.boxes()) {
    auto d = grid.decode(b);
    for (auto& x : d) x = (x + 1) / 2;
    boxes[join_ints(d)] = g.at(b).str();
  }
  out["boxes"] = boxes;
  detail::regular_fill(grid, fill);
  json faces = json::object();
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    if (!grid.is_box(idx) && fill[idx] != g.at(idx)) faces[join_ints(grid.decode(idx))] = g.at(idx).str();
  }
  if (!faces.empty()) out["faces"] = faces;
  return out;
}

// ------------------------------------------------------------------- dispatch

using AnyGame = std::variant<CoalitionFunction, JKGame, StepGame>;

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw input_error(std::string("malformed JSON: ") + e.what());
  }
}

/// Picks the format by its characteristic keys.
inline AnyGame parse_any(const json& j) {
  if (!j.is_object()) throw input_error("game JSON must be an object");
  try {
    if (j.contains("alpha") || j.contains("boxes")) return parse_step_game(j);
    if (j.contains("j") || j.contains("k")) return parse_jk_game(j);
    return parse_coalition_function(j);
  } catch (const json::exception& e) {
    throw input_error(std::string("bad game JSON: ") + e.what());
  }
}

inline json to_json(const LocalIncrement& inc) {
  json d = json::array();
  for (int i = 0; i < inc.S.n(); ++i) {
    if (contains(inc.D.players, i)) d.push_back(json::array({inc.D.iv[i].lo.str(), inc.D.iv[i].hi.str()}));
  }
  json out;
  out["S"] = players_json(inc.S.mask());
  out["eps"] = inc.epsilon.str();
  out["D"] = d;
  return out;
}

}  // namespace powerdex::io
