#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "powerdex/appendix.hpp"
#include "powerdex/axioms.hpp"
#include "powerdex/embeddings.hpp"
#include "powerdex/his.hpp"
#include "powerdex/indices.hpp"
#include "powerdex/io.hpp"
#include "powerdex/monte_carlo.hpp"
#include "powerdex/random_games.hpp"

namespace powerdex::cli {

using io::json;

enum class Format { json, markdown, csv };

struct Context {
  std::istream& in;
  std::ostream& out;
  Format format = Format::json;
};

namespace detail {

inline std::string read_input(Context& ctx, const std::string& path, const std::string& inline_json) {
  if (!inline_json.empty()) return inline_json;
  if (path.empty()) throw input_error("no input given (pass a file, '-' for stdin, or --json)");
  if (path == "-") return {std::istreambuf_iterator<char>(ctx.in), std::istreambuf_iterator<char>()};
  std::ifstream f(path);
  if (!f) throw input_error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline io::AnyGame read_game(Context& ctx, const std::string& path, const std::string& inline_json) {
  return io::parse_any(io::parse_json_text(read_input(ctx, path, inline_json)));
}

template <class T>
T expect(io::AnyGame g, const char* what) {
  if (auto* p = std::get_if<T>(&g)) return std::move(*p);
  throw input_error(std::string("this command expects ") + what);
}

inline JKGame as_jk(io::AnyGame g) {
  if (auto* p = std::get_if<JKGame>(&g)) return std::move(*p);
  if (auto* p = std::get_if<CoalitionFunction>(&g)) return JKGame::from_simple(SimpleGame(*p));
  throw input_error("this command expects a (j,k) game or a simple game");
}

/// Rejects non-monotone or out-of-range step games with the first witness.
inline void require_valid(const StepGame& g) {
  const auto rep = validate(g);
  if (!rep.monotone || !rep.in_range) throw input_error("step game is not an interval simple game: " + rep.violations.front());
}

inline std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::string cell;
  std::istringstream is(text);
  while (std::getline(is, cell, ',')) {
    if (cell.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(Rational::parse(cell));
  }
  return out;
}

inline PlayerMask parse_players(const std::string& text, int n) {
  PlayerMask m = 0;
  for (int i : io::parse_int_list(text)) {
    if (i < 1 || i > n) throw input_error("player " + std::to_string(i) + " out of range 1.." + std::to_string(n));
    m |= PlayerMask{1} << (i - 1);
  }
  return m;
}

inline std::string coalition_label(PlayerMask m) {
  std::string s = "{";
  for (int i : members(m)) s += (s.size() > 1 ? "," : "") + std::to_string(i + 1);
  return s + "}";
}

/// Built-in evaluable family: x1x2sq, product:a1,a2,..., weighted:w1,...,
/// median:w1,... .
inline EvaluableGame parse_family(const std::string& spec, int n) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const auto args = colon == std::string::npos ? std::vector<Rational>{} : parse_rational_list(spec.substr(colon + 1));
  if (name == "x1x2sq") return x1x2sq(n);
  if (args.empty()) throw input_error("family '" + name + "' needs parameters, e.g. " + name + ":1,2");
  if (name == "product") return product(args);
  if (name == "weighted") return weighted_sum(args);
  if (name == "median") return weighted_median(args);
  throw input_error("unknown family '" + name + "' (x1x2sq, product, weighted, median)");
}

inline void emit_table(Context& ctx, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  if (ctx.format == Format::csv) {
    for (std::size_t c = 0; c < header.size(); ++c) ctx.out << (c ? "," : "") << header[c];
    ctx.out << '\n';
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < r.size(); ++c) {
        const bool quote = r[c].find(',') != std::string::npos;
        ctx.out << (c ? "," : "") << (quote ? "\"" : "") << r[c] << (quote ? "\"" : "");
      }
      ctx.out << '\n';
    }
    return;
  }
  ctx.out << '|';
  for (const auto& h : header) ctx.out << ' ' << h << " |";
  ctx.out << "\n|";
  for (std::size_t c = 0; c < header.size(); ++c) ctx.out << "---|";
  ctx.out << '\n';
  for (const auto& r : rows) {
    ctx.out << '|';
    for (const auto& cell : r) ctx.out << ' ' << cell << " |";
    ctx.out << '\n';
  }
}

inline std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

inline void emit_power(Context& ctx, const std::string& index, const PowerVector& p,
                       const std::optional<BoundaryAverages>& c = std::nullopt) {
  if (ctx.format == Format::json) {
    json j;
    j["index"] = index;
    j["mode"] = p.is_exact() ? "exact" : "mc";
    j["shares"] = io::shares_json(p);
    if (!p.is_exact()) {
      j["estimate"] = p.estimate;
      j["stderr"] = p.stderr_;
      j["samples"] = p.samples;
      j["seed"] = p.seed;
    }
    if (c) {
      json t = json::object();
      for (PlayerMask m = 0; m < c->table.size(); ++m) t[coalition_label(m)] = c->table[m].str();
      j["C"] = t;
    }
    ctx.out << j.dump() << '\n';
    return;
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.is_exact()) rows.push_back({std::to_string(i + 1), p.shares[i].str()});
    else rows.push_back({std::to_string(i + 1), fmt_double(p.estimate[i]), fmt_double(p.stderr_[i])});
  }
  if (p.is_exact()) emit_table(ctx, {"player", index}, rows);
  else emit_table(ctx, {"player", index, "stderr"}, rows);
}

inline void emit_json(Context& ctx, const json& j) { ctx.out << j.dump() << '\n'; }

}  // namespace detail

/// Runs one command. Returns the process exit code: 0 on success, 2 on any
/// input or validation error (diagnostic as JSON on err).
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Exact Shapley-Shubik-type power indices for simple, (j,k) and interval games", "powerdex"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  int threads = 0;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "markdown", "csv"}));
  app.add_option("--threads", threads, "Worker cap for parallel sections (falls back to POWERDEX_THREADS)");

  std::string path;
  std::string inline_json;
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", path, "Game JSON file, or - for stdin");
    sub->add_option("--json", inline_json, "Game JSON given inline");
  };
  Context ctx{in, out};
  std::function<void()> action;

  auto* ssi = app.add_subcommand("ssi", "Shapley-Shubik index of a coalition function");
  add_input(ssi);
  ssi->callback([&] {
    action = [&] { emit_power(ctx, "ssi", ssi_coalition(expect<CoalitionFunction>(read_game(ctx, path, inline_json), "a simple game"))); };
  });

  std::string vote = "uniform_half";
  auto* roll = app.add_subcommand("rollcall", "Roll-call pivot enumeration for a simple game");
  add_input(roll);
  roll->add_option("--vote", vote, "Vote model")->check(CLI::IsMember({"all_yes", "all_no", "uniform_half"}));
  roll->callback([&] {
    action = [&] {
      const auto g = SimpleGame(expect<CoalitionFunction>(read_game(ctx, path, inline_json), "a simple game"));
      const auto model = vote == "all_yes" ? VoteModel::all_yes : vote == "all_no" ? VoteModel::all_no : VoteModel::uniform_half;
      emit_power(ctx, "ssi_roll_call", ssi_roll_call(g, model));
    };
  });

  std::string form = "marginal";
  bool with_c = false;
  auto* jk = app.add_subcommand("jk-ssi", "Index of a (j,k) game");
  add_input(jk);
  jk->add_option("--form", form, "Computation form")->check(CLI::IsMember({"pivot", "marginal"}));
  jk->add_flag("--with-c", with_c, "Include the boundary-average table");
  jk->callback([&] {
    action = [&] {
      const auto g = as_jk(read_game(ctx, path, inline_json));
      std::optional<BoundaryAverages> c;
      if (with_c) c = jk_boundary_averages(g);
      emit_power(ctx, form == "pivot" ? "jk_ssi_pivot" : "jk_ssi_marginal", form == "pivot" ? jk_ssi_pivot(g) : jk_ssi_marginal(g), c);
    };
  });

  bool exact_flag = false;
  bool mc_flag = false;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  std::string family;
  int family_n = 2;
  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", family, "Built-in game instead of a file: x1x2sq, product:..., weighted:..., median:...");
    sub->add_option("--n", family_n, "Player count for the x1x2sq family");
  };
  auto* psi = app.add_subcommand("psi", "Interval-game index of a step game or built-in family");
  add_input(psi);
  add_family(psi);
  auto* exact_opt = psi->add_flag("--exact", exact_flag, "Exact evaluation (default)");
  psi->add_flag("--mc", mc_flag, "Monte-Carlo estimate")->excludes(exact_opt);
  psi->add_option("--samples", samples, "Monte-Carlo sample count")->check(CLI::PositiveNumber);
  psi->add_option("--seed", seed, "Monte-Carlo seed");
  psi->add_flag("--with-c", with_c, "Include the boundary-average table");
  psi->callback([&] {
    action = [&] {
      if (mc_flag) {
        const auto v = family.empty() ? from_step(expect<StepGame>(read_game(ctx, path, inline_json), "a step game"))
                                      : parse_family(family, family_n);
        emit_power(ctx, "psi", psi_mc(v, samples, seed, threads));
        return;
      }
      if (!family.empty()) {
        const auto colon = family.find(':');
        const std::string name = family.substr(0, colon);
        const auto params = colon == std::string::npos ? std::vector<Rational>{} : parse_rational_list(family.substr(colon + 1));
        if (name == "x1x2sq") {
          // Players beyond the first two are null.
          auto p = psi_product_oracle({Rational(1), Rational(2)});
          p.shares.resize(static_cast<std::size_t>(std::max(family_n, 2)));
          emit_power(ctx, "psi", p);
        } else if (name == "product") {
          emit_power(ctx, "psi", psi_product_oracle(params));
        } else if (name == "weighted") {
          parse_family(family, family_n);
          emit_power(ctx, "psi", PowerVector::exact(params));
        } else {
          throw input_error("no exact form for family '" + name + "'; use --mc");
        }
        return;
      }
      const auto g = expect<StepGame>(read_game(ctx, path, inline_json), "a step game");
      require_valid(g);
      std::optional<BoundaryAverages> c;
      if (with_c) c = boundary_averages(g);
      emit_power(ctx, "psi", psi_exact(g), c);
    };
  });

  std::string alpha_text;
  auto* point = app.add_subcommand("psi-point", "Point variant at the constant profile (alpha, ..., alpha)");
  add_input(point);
  add_family(point);
  point->add_option("--alpha", alpha_text, "Constant profile value in [0,1]")->required();
  point->callback([&] {
    action = [&] {
      const auto v = family.empty() ? from_step(expect<StepGame>(read_game(ctx, path, inline_json), "a step game"))
                                    : parse_family(family, family_n);
      const auto a = Rational::parse(alpha_text);
      emit_power(ctx, "psi_point(" + a.str() + ")", psi_point(v, a));
    };
  });

  std::string tau_text;
  bool semireg = false;
  bool natural = false;
  auto* embed = app.add_subcommand("embed", "Embed a (j,k) or simple game as a step game");
  add_input(embed);
  auto* nat_opt = embed->add_flag("--natural", natural, "Natural embedding on the uniform j-grid (default)");
  auto* tau_opt = embed->add_option("--tau", tau_text, "Embedding on (0, tau, 1) for j = 2")->excludes(nat_opt);
  embed->add_flag("--semiregular", semireg, "Semi-regular embedding of a simple game")->excludes(nat_opt)->excludes(tau_opt);
  embed->callback([&] {
    action = [&] {
      auto g = read_game(ctx, path, inline_json);
      if (semireg) {
        emit_json(ctx, io::to_json(embed_simple_semiregular(expect<CoalitionFunction>(std::move(g), "a simple game"))));
      } else if (!tau_text.empty()) {
        emit_json(ctx, io::to_json(embed_2k_tau(as_jk(std::move(g)), Rational::parse(tau_text))));
      } else {
        emit_json(ctx, io::to_json(embed_jk(as_jk(std::move(g)))));
      }
    };
  });

  auto* coarse = app.add_subcommand("coarsen", "Coarsen a step game onto a sub-grid");
  add_input(coarse);
  coarse->add_option("--alpha", alpha_text, "Comma-separated breakpoints, e.g. 0,1/4,1")->required();
  coarse->callback([&] {
    action = [&] {
      const auto g = expect<StepGame>(read_game(ctx, path, inline_json), "a step game");
      require_valid(g);
      emit_json(ctx, io::to_json(coarsen(g, Discretization(parse_rational_list(alpha_text)))));
    };
  });

  auto* check = app.add_subcommand("validate", "Monotonicity, range and regularity report for a step game");
  add_input(check);
  check->callback([&] {
    action = [&] {
      const auto rep = validate(expect<StepGame>(read_game(ctx, path, inline_json), "a step game"));
      json j;
      j["monotone"] = rep.monotone;
      j["in_range"] = rep.in_range;
      j["semi_regular"] = rep.semi_regular;
      j["regular"] = rep.regular;
      j["tag_consistent"] = rep.tag_consistent;
      j["violations"] = rep.violations;
      emit_json(ctx, j);
    };
  });

  std::string box_text;
  std::string eps_text;
  bool lump = false;
  auto* apply = app.add_subcommand("his-apply", "Raise one box of a regular step game and report the face moves");
  add_input(apply);
  apply->add_option("--box", box_text, "1-based box numbers per axis, e.g. 2,1,2")->required();
  apply->add_option("--eps", eps_text, "Nonnegative increase")->required();
  apply->add_flag("--lump", lump, "Report moves grouped by (S, D)");
  apply->callback([&] {
    action = [&] {
      const auto u = expect<StepGame>(read_game(ctx, path, inline_json), "a step game");
      require_valid(u);
      auto e_bar = io::parse_int_list(box_text);
      if (static_cast<int>(e_bar.size()) != u.n()) throw input_error("--box needs one entry per player");
      for (auto& d : e_bar) {
        if (d < 1 || d > u.disc().p()) throw input_error("--box entry out of range");
        d = 2 * d - 1;
      }
      const auto before = psi_exact(u);
      const auto res = apply_box_increment(u, e_bar, Rational::parse(eps_text));
      json moves = json::array();
      if (lump) {
        for (const auto& inc : lump_moves(res.moves)) {
          auto m = io::to_json(inc);
          m["delta"] = io::shares_json(his_delta(inc, u.n()));
          moves.push_back(m);
        }
      } else {
        for (const auto& fm : res.moves) {
          auto m = io::to_json(fm.inc);
          m["face"] = res.game.grid().decode(fm.face);
          m["amount"] = fm.amount.str();
          m["matter"] = fm.cls.matter;
          m["delta"] = io::shares_json(fm.delta);
          moves.push_back(m);
        }
      }
      json j;
      j["delta"] = io::shares_json(res.delta);
      j["psi_before"] = io::shares_json(before);
      j["psi_after"] = io::shares_json(psi_exact(res.game));
      j["moves"] = moves;
      j["game"] = io::to_json(res.game);
      emit_json(ctx, j);
    };
  });

  auto* build = app.add_subcommand("his-build", "Rebuild a regular game from the all-zero game by box increments");
  add_input(build);
  build->callback([&] {
    action = [&] {
      const auto v = expect<StepGame>(read_game(ctx, path, inline_json), "a step game");
      const auto t = build_by_increments(v);
      std::vector<std::vector<std::string>> rows;
      for (const auto& s : t.steps) {
        std::vector<int> box;
        for (int d : s.box) box.push_back((d + 1) / 2);
        if (ctx.format == Format::json) {
          json j;
          j["phase"] = s.phase;
          json a = json::array();
          for (const auto& x : s.grid.breakpoints()) a.push_back(x.str());
          j["alpha"] = a;
          j["box"] = box;
          j["eps"] = s.eps.str();
          j["delta"] = io::shares_json(s.delta);
          j["psi"] = io::shares_json(s.psi_after);
          emit_json(ctx, j);
        } else {
          rows.push_back({std::to_string(s.phase), io::join_ints(box), s.eps.str(), s.delta.str(), s.psi_after.str()});
        }
      }
      if (ctx.format == Format::json) {
        json j;
        j["final"] = true;
        j["psi"] = io::shares_json(t.psi);
        j["psi_exact"] = io::shares_json(psi_exact(v));
        emit_json(ctx, j);
      } else {
        emit_table(ctx, {"phase", "box", "eps", "delta", "psi"}, rows);
      }
    };
  });

  auto* replay = app.add_subcommand("replay-appendix", "Replay the worked two-player example move by move");
  replay->callback([&] {
    action = [&] {
      std::vector<std::vector<std::string>> rows;
      for (const auto& s : replay_appendix()) {
        if (ctx.format == Format::json) {
          json j;
          j["move"] = s.move;
          auto incj = io::to_json(s.inc);
          j["S"] = incj["S"];
          j["eps"] = incj["eps"];
          j["D"] = incj["D"];
          j["psi_his"] = io::shares_json(s.psi_his);
          j["psi_exact"] = io::shares_json(s.psi_exact);
          emit_json(ctx, j);
        } else {
          std::string d;
          for (int i : members(s.inc.D.players)) {
            d += (d.empty() ? "" : " x ") + ("[" + s.inc.D.iv[i].lo.str() + "," + s.inc.D.iv[i].hi.str() + "]");
          }
          rows.push_back({std::to_string(s.move), std::to_string(s.phase), coalition_label(s.inc.S.mask()), s.inc.epsilon.str(), d,
                          s.psi_his.str(), s.psi_exact.str()});
        }
      }
      if (ctx.format != Format::json) emit_table(ctx, {"move", "phase", "S", "eps", "D", "psi_his", "psi_exact"}, rows);
    };
  });

  int l = 2;
  auto* t1 = app.add_subcommand("table1", "Share changes of the faces that matter for the box (l-1/2, 1/2, l-1/2)");
  t1->add_option("--l", l, "Boxes per axis")->check(CLI::Range(2, 5));
  t1->add_option("--eps", eps_text, "Increase (default 1)");
  t1->callback([&] {
    action = [&] {
      const Rational eps = eps_text.empty() ? Rational(1) : Rational::parse(eps_text);
      const FaceGrid grid(3, l);
      std::vector<std::vector<std::string>> rows;
      json arr = json::array();
      for (const auto& r : table1(l, eps)) {
        std::string face;
        for (int i = 0; i < 3; ++i) {
          if (r.face[i] == 0 || r.face[i] == grid.top()) {
            face += (face.empty() ? "" : ", ") + ("x" + std::to_string(i + 1) + "=" + (r.face[i] == 0 ? "0" : "1"));
          }
        }
        rows.push_back({face, coalition_label(r.S.mask()), r.volume.str(), r.delta.shares[0].str(),
                        r.delta.shares[1].str(), r.delta.shares[2].str()});
        json j;
        j["face"] = face;
        j["S"] = io::players_json(r.S.mask());
        j["vol"] = r.volume.str();
        j["delta"] = io::shares_json(r.delta);
        arr.push_back(j);
      }
      if (ctx.format == Format::json) emit_json(ctx, arr);
      else emit_table(ctx, {"face", "S", "vol(D)", "change 1", "change 2", "change 3"}, rows);
    };
  });

  std::string L_text;
  std::string U_text;
  auto* corner = app.add_subcommand("corner", "Total share change for raising the corner box (1/2 on L, l-1/2 on U)");
  corner->add_option("--L", L_text, "Players at the low end, e.g. 2")->required();
  corner->add_option("--U", U_text, "Players at the high end, e.g. 1,3")->required();
  corner->add_option("--l", l, "Boxes per axis")->check(CLI::Range(2, 5));
  corner->add_option("--eps", eps_text, "Increase (default 1)");
  corner->callback([&] {
    action = [&] {
      const auto lp = io::parse_int_list(L_text);
      const auto up = io::parse_int_list(U_text);
      const int n = static_cast<int>(lp.size() + up.size());
      if (n < 2 || n > 6) throw input_error("L and U together must name 2..6 players");
      const Coalition L(n, parse_players(L_text, n));
      const Coalition U(n, parse_players(U_text, n));
      const Rational eps = eps_text.empty() ? Rational(1) : Rational::parse(eps_text);
      std::vector<Rational> shares;
      for (int i = 0; i < n; ++i) shares.push_back(corner_increase(L, U, eps, l, i));
      const auto [u, e_bar] = corner_box_setup(L, U, l);
      const auto box = apply_box_increment(u, e_bar, eps);
      if (ctx.format == Format::json) {
        json j;
        j["L"] = io::players_json(L.mask());
        j["U"] = io::players_json(U.mask());
        j["l"] = l;
        j["eps"] = eps.str();
        j["shares"] = io::shares_json(PowerVector::exact(shares));
        j["box_delta"] = io::shares_json(box.delta);
        emit_json(ctx, j);
      } else {
        std::vector<std::vector<std::string>> rows;
        for (int i = 0; i < n; ++i) rows.push_back({std::to_string(i + 1), shares[i].str(), box.delta.shares[i].str()});
        emit_table(ctx, {"player", "formula", "box increment"}, rows);
      }
    };
  });

  std::string index_name = "psi";
  std::string suite_path;
  int random_count = 0;
  auto* ax = app.add_subcommand("axioms", "Check the axioms for an index on a suite of step games");
  ax->add_option("--index", index_name, "psi, 2psi, half_psi_half_ed, psi_of_square, psi_point(a), phi_two_player(a1)");
  auto* suite_opt = ax->add_option("--suite", suite_path, "JSON file with a list of step games");
  ax->add_option("--random", random_count, "Number of random games")->excludes(suite_opt)->check(CLI::Range(1, 1000));
  ax->add_option("--seed", seed, "Seed for the random suite and the checks");
  ax->callback([&] {
    action = [&] {
      const auto h = handle_by_name(index_name);
      if (!h) throw input_error("unknown index '" + index_name + "'");
      std::vector<StepGame> suite;
      if (!suite_path.empty()) {
        const auto j = io::parse_json_text(read_input(ctx, suite_path, ""));
        const auto& list = j.is_object() && j.contains("games") ? j["games"] : j;
        if (!list.is_array()) throw input_error("suite must be a JSON list of step games (or {\"games\": [...]})");
        for (const auto& g : list) {
          suite.push_back(expect<StepGame>(io::parse_any(g), "step games in the suite"));
          require_valid(suite.back());
        }
      } else {
        suite = random_axiom_suite(seed, random_count > 0 ? random_count : 50);
      }
      if (index_name.rfind("phi_two_player", 0) == 0) {
        for (const auto& g : suite) {
          if (g.n() != 2) throw input_error("phi_two_player needs a suite of two-player games");
        }
      }
      AxiomOptions opt;
      opt.seed = seed;
      const auto rep = check_axioms(*h, suite, opt);
      if (ctx.format == Format::json) {
        json j;
        j["index"] = rep.index;
        j["games"] = suite.size();
        json axioms = json::object();
        for (const char* k : {"E", "P", "A", "S", "NP", "T", "HIS"}) {
          const auto& a = rep.axioms.at(k);
          json r;
          r["pass"] = a.pass;
          r["checks"] = a.checks;
          if (!a.pass) r["witness"] = a.witness;
          axioms[k] = r;
        }
        j["axioms"] = axioms;
        j["failing"] = rep.failing();
        emit_json(ctx, j);
      } else {
        std::vector<std::vector<std::string>> rows;
        for (const char* k : {"E", "P", "A", "S", "NP", "T", "HIS"}) {
          const auto& a = rep.axioms.at(k);
          rows.push_back({k, a.pass ? "pass" : "FAIL", std::to_string(a.checks), a.witness});
        }
        emit_table(ctx, {"axiom", "result", "checks", "witness"}, rows);
      }
    };
  });

  auto* sep = app.add_subcommand("separation-demo", "Psi against the point variant on x1*x2^2");
  sep->callback([&] {
    action = [&] {
      const auto rep = separation_demo();
      if (ctx.format == Format::json) {
        json rows = json::array();
        for (const auto& r : rep.rows) {
          json j;
          j["alpha"] = r.alpha.str();
          j["psi"] = io::shares_json(r.psi);
          j["psi_point"] = io::shares_json(r.psi_point);
          j["differs"] = r.differs;
          rows.push_back(j);
        }
        json br = json::array();
        for (const auto& [lo, hi] : rep.brackets) br.push_back(json::array({lo.str(), hi.str()}));
        json j;
        j["rows"] = rows;
        j["equal_between"] = br;
        emit_json(ctx, j);
      } else {
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : rep.rows) rows.push_back({r.alpha.str(), r.psi.str(), r.psi_point.str(), r.differs ? "yes" : "no"});
        emit_table(ctx, {"alpha", "psi", "psi_point", "differs"}, rows);
      }
    };
  });

  auto fail = [&](const std::string& kind, const std::string& msg) {
    json j;
    j["error"] = kind;
    j["message"] = msg;
    err << j.dump() << '\n';
    return 2;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    return fail("usage_error", e.what());
  } catch (const input_error& e) {
    return fail("input_error", e.what());
  }
  ctx.format = format == "markdown" ? Format::markdown : format == "csv" ? Format::csv : Format::json;
  try {
    if (action) action();
  } catch (const input_error& e) {
    return fail("input_error", e.what());
  } catch (const std::domain_error& e) {
    return fail("input_error", e.what());
  } catch (const std::invalid_argument& e) {
    return fail("input_error", e.what());
  }
  return 0;
}

}  // namespace powerdex::cli
