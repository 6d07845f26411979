// Copyright 2026 The qgh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/// @file
/// Command dispatch for the `qgh` tool. Every command writes one JSON report.
/// Exit codes: 0 computed, 1 input error, 2 solver failure, 3 size guard.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qgh/json_io.hpp"
#include "qgh/qgh.hpp"

namespace qgh::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kSolverError = 2, kSizeGuard = 3 };

struct RunConfig {
  std::string command;
  std::vector<std::string> args;  ///< argv without the program name
  std::vector<std::string> inputs;
  double tol = 1e-7;
  std::uint64_t seed = 0;
  std::string output;  ///< empty: stdout
  bool b_variant = false;
  bool edges_only = false;
  std::size_t trials = 100000;
  std::size_t c_max = 0;
  std::vector<std::string> candidates;
};

/// Tolerance used for verification checks (strategies, maps, representations).
inline constexpr double kCheckTol = 1e-8;

namespace detail {

inline Json sdp_json(const SdpSolution& s) {
  return Json{{"status", to_string(s.status)},
              {"iterations", s.iterations},
              {"primal_residual", s.primal_residual},
              {"dual_residual", s.dual_residual}};
}

inline Json violations_json(const std::vector<Violation>& vs) {
  Json out = Json::array();
  for (const auto& v : vs)
    out.push_back(Json{{"condition", v.condition}, {"index", v.index}, {"magnitude", v.magnitude}});
  return out;
}

inline Json map_check_json(const MapCheckReport& r) {
  Json f = Json::array();
  for (const auto& x : r.failures)
    f.push_back(Json{{"v", x.v}, {"w", x.w}, {"x", x.x}, {"y", x.y}, {"value", x.value}});
  return Json{{"pass", r.pass}, {"worst", r.worst}, {"failures", f}};
}

inline Correlation load_correlation(const std::string& path) {
  try {
    return correlation_from_json(parse_json(read_file(path), path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline GameRepresentation load_representation(const std::string& path) {
  try {
    return representation_from_json(parse_json(read_file(path), path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline SdpOptions sdp_options(const RunConfig& c) {
  SdpOptions o;
  o.tol = c.tol;
  return o;
}

/// ϑ programs never run looser than 1e-9 so that ceilings stay stable.
inline SdpOptions theta_options(const RunConfig& c) {
  SdpOptions o = theta_solver_options();
  o.tol = std::min(c.tol, o.tol);
  return o;
}

inline void need(const RunConfig& c, std::size_t k) {
  if (c.inputs.size() != k)
    throw InputError(c.command + ": expected " + std::to_string(k) + " input file(s), got " +
                     std::to_string(c.inputs.size()));
}

inline Json vect_json(const VectResult& r) {
  Json j{{"feasible", r.feasible()},
         {"status", to_string(r.status)},
         {"iterations", r.iterations},
         {"note", r.note}};
  if (r.feasible()) j["witness"] = to_json(*r.witness);
  return j;
}

inline void require_converged(const VectResult& r, const std::string& who) {
  if (r.status == SdpStatus::max_iterations)
    throw SolverError(who + ": SDP solver hit the iteration limit after " +
                      std::to_string(r.iterations) + " iterations");
  if (r.status == SdpStatus::optimal && !r.feasible())
    throw SolverError(who + ": " + r.note);
}

inline Json theta_json(const ThetaResult& t) {
  Json j{{"value", t.value}, {"variant", to_string(t.variant)}};
  j["solver"] = sdp_json(t.solve);
  return j;
}

using Handler = std::function<Json(const RunConfig&)>;

inline const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"theta",
       [](const RunConfig& c) {
         need(c, 1);
         const Graph g = load_graph(c.inputs[0]);
         Json j{{"graph", to_json(g)}};
         j.update(theta_json(lovasz_theta(g, theta_options(c))));
         return j;
       }},
      {"theta-plus",
       [](const RunConfig& c) {
         need(c, 1);
         const Graph g = load_graph(c.inputs[0]);
         Json j{{"graph", to_json(g)}};
         j.update(theta_json(theta_plus(g, theta_options(c))));
         return j;
       }},
      {"chi-vect",
       [](const RunConfig& c) {
         need(c, 1);
         const Graph g = load_graph(c.inputs[0]);
         const auto t = theta_plus(complement(g), theta_options(c));
         Json j{{"graph", to_json(g)},
                {"value", static_cast<std::size_t>(std::ceil(t.value - kCeilingGuard))},
                {"theta_plus_complement", t.value}};
         if (c.c_max > 0) {
           const auto s = chi_vect_by_search(g, c.c_max, sdp_options(c));
           Json statuses = Json::array();
           for (auto st : s.statuses) statuses.push_back(to_string(st));
           j["search"] = Json{{"c_max", c.c_max},
                              {"value", s.value ? Json(*s.value) : Json(nullptr)},
                              {"statuses", statuses}};
         }
         return j;
       }},
      {"homo",
       [](const RunConfig& c) {
         need(c, 2);
         const auto f = find_homomorphism(load_graph(c.inputs[0]), load_graph(c.inputs[1]));
         Json j{{"found", f.has_value()}};
         if (f) j["map"] = to_json(*f);
         return j;
       }},
      {"chi",
       [](const RunConfig& c) {
         need(c, 1);
         return Json{{"value", chromatic_number(load_graph(c.inputs[0]))}};
       }},
      {"omega",
       [](const RunConfig& c) {
         need(c, 1);
         return Json{{"value", clique_number(load_graph(c.inputs[0]))}};
       }},
      {"core",
       [](const RunConfig& c) {
         need(c, 1);
         const auto r = classical_core(load_graph(c.inputs[0]));
         Json chain = Json::array();
         for (const auto& s : r.chain)
           chain.push_back(Json{{"domain", s.domain},
                                {"mapping", s.mapping},
                                {"power", s.power},
                                {"image", s.image}});
         return Json{{"core", to_json(r.core)}, {"vertices", r.vertices}, {"chain", chain}};
       }},
      {"homo-vect",
       [](const RunConfig& c) {
         need(c, 2);
         const auto r = vect_homomorphism_feasibility(load_graph(c.inputs[0]),
                                                      load_graph(c.inputs[1]), !c.b_variant,
                                                      sdp_options(c));
         require_converged(r, "homo-vect");
         Json j = vect_json(r);
         j["variant"] = c.b_variant ? "B" : "vect";
         return j;
       }},
      {"verify-strategy",
       [](const RunConfig& c) {
         need(c, 3);
         const Correlation p = load_correlation(c.inputs[0]);
         const Graph g = load_graph(c.inputs[1]), h = load_graph(c.inputs[2]);
         const auto valid = validate(p);
         Json j{{"valid", valid.empty()}, {"validity_violations", violations_json(valid)}};
         const auto r = is_winning_strategy(p, g, h, kCheckTol);
         j["synchronous"] = r.synchronous;
         j["winning"] = valid.empty() && r.winning;
         j["violations"] = violations_json(r.violations);
         if (valid.empty()) {
           const ChoiMap phi = choi_of(p).map;
           j["trace_preserving"] = map_check_json(verify_trace_preserving(phi, g, kCheckTol));
           j["operator_system_preserving"] =
               map_check_json(verify_operator_system_preserving(phi, g, h, kCheckTol));
         }
         return j;
       }},
      {"compose",
       [](const RunConfig& c) {
         need(c, 2);
         const Correlation p = load_correlation(c.inputs[0]), q = load_correlation(c.inputs[1]);
         require_valid(p, "compose");
         require_valid(q, "compose");
         return Json{{"order", "q o p"}, {"correlation", to_json(compose(q, p))}};
       }},
      {"simulate",
       [](const RunConfig& c) {
         need(c, 3);
         const Correlation p = load_correlation(c.inputs[0]);
         const Graph g = load_graph(c.inputs[1]), h = load_graph(c.inputs[2]);
         const auto mode = c.edges_only ? RefereeMode::edges_only : RefereeMode::uniform_pairs;
         const auto r = simulate_game(p, g, h, c.trials, c.seed, mode);
         return Json{{"referee", c.edges_only ? "edges_only" : "uniform_pairs"},
                     {"trials", r.trials},
                     {"wins", r.wins},
                     {"frequency", r.frequency},
                     {"exact_win_probability", win_probability(p, g, h, mode)}};
       }},
      {"local-membership",
       [](const RunConfig& c) {
         need(c, 3);
         const auto r = local_membership(load_correlation(c.inputs[0]), load_graph(c.inputs[1]),
                                         load_graph(c.inputs[2]));
         Json terms = Json::array();
         for (std::size_t k = 0; k < r.maps.size(); ++k)
           terms.push_back(Json{{"weight", r.weights[k]}, {"f", r.maps[k].f}});
         return Json{{"feasible", r.feasible},
                     {"homomorphism_count", r.homomorphism_count},
                     {"infeasibility", r.infeasibility},
                     {"decomposition", terms}};
       }},
      {"choi",
       [](const RunConfig& c) {
         need(c, 1);
         const auto r = choi_of(load_correlation(c.inputs[0]));
         return Json{{"min_eigenvalue", r.min_eigenvalue},
                     {"psd", r.psd},
                     {"hermitian", r.map.hermitian},
                     {"map", to_json(r.map)}};
       }},
      {"qcore",
       [](const RunConfig& c) {
         need(c, 2);
         const Correlation p = load_correlation(c.inputs[0]);
         const Graph g = load_graph(c.inputs[1]);
         std::vector<Correlation> cands;
         for (const auto& f : c.candidates) cands.push_back(load_correlation(f));
         const auto r = quantum_core_candidate(p, g, cands, std::max(c.tol, 1e-7));
         Json cmp = Json::array();
         for (const auto& x : r.comparisons)
           cmp.push_back(Json{{"candidate", c.candidates[x.candidate]},
                              {"comparable", x.comparable_input},
                              {"result_leq_candidate", x.result_leq_candidate},
                              {"candidate_leq_result", x.candidate_leq_result}});
         Json history = Json::array();
         for (const auto& h : r.cesaro.history)
           history.push_back(Json{{"doubling", h.iteration},
                                  {"horizon", h.horizon},
                                  {"step_residual", h.step_residual},
                                  {"idempotence_residual", h.idempotence_residual}});
         return Json{{"converged", r.cesaro.converged},
                     {"doublings", r.cesaro.iterations},
                     {"horizon", r.cesaro.horizon},
                     {"step_residual", r.cesaro.step_residual},
                     {"idempotence_defect", r.idempotence_defect},
                     {"absorbs_input", r.absorbs_input},
                     {"winning", r.winning.winning},
                     {"choi_min_eigenvalue", r.choi_min_eigenvalue},
                     {"comparisons", cmp},
                     {"notes", r.notes},
                     {"history", history},
                     {"correlation", to_json(r.cesaro.r)}};
       }},
      {"verify-rep",
       [](const RunConfig& c) {
         need(c, 3);
         const auto r = verify_representation(load_representation(c.inputs[0]),
                                              load_graph(c.inputs[1]), load_graph(c.inputs[2]),
                                              kCheckTol);
         return Json{{"pass", r.pass},
                     {"projection_error", r.projection_error},
                     {"completeness_error", r.completeness_error},
                     {"orthogonality_error", r.orthogonality_error}};
       }},
      {"rep-to-corr",
       [](const RunConfig& c) {
         if (c.inputs.size() != 1 && c.inputs.size() != 3)
           throw InputError("rep-to-corr: expected rep.json [G H]");
         const auto r = load_representation(c.inputs[0]);
         if (c.inputs.size() == 3) {
           const Graph g = load_graph(c.inputs[1]), h = load_graph(c.inputs[2]);
           return Json{{"graphs_checked", true},
                       {"correlation", to_json(representation_to_correlation(r, g, h))}};
         }
         return Json{{"graphs_checked", false},
                     {"correlation", to_json(representation_to_correlation(r))}};
       }},
      {"compose-reps",
       [](const RunConfig& c) {
         need(c, 2);
         return Json{{"representation",
                      to_json(compose_representations(load_representation(c.inputs[0]),
                                                      load_representation(c.inputs[1])))}};
       }},
      {"cb-check",
       [](const RunConfig& c) {
         need(c, 2);
         const auto r = cb_bound_check(load_representation(c.inputs[0]), load_graph(c.inputs[1]),
                                       kCheckTol);
         return Json{{"pass", r.pass},
                     {"zz_norm", r.zz_norm},
                     {"theta", r.theta},
                     {"hypotheses_hold", r.hypotheses_hold},
                     {"diagonal_error", r.diagonal_error},
                     {"edge_error", r.edge_error}};
       }},
      {"obstruction",
       [](const RunConfig& c) {
         need(c, 2);
         return Json{{"not_representable",
                      trivial_obstruction(load_graph(c.inputs[0]), load_graph(c.inputs[1]))},
                     {"criterion", "G has an edge and H has none"}};
       }},
      {"sandwich",
       [](const RunConfig& c) {
         need(c, 1);
         const Graph g = load_graph(c.inputs[0]);
         const auto r = sandwich_report(g, theta_options(c));
         return Json{{"graph", to_json(g)},
                     {"omega", r.omega},
                     {"theta_complement", r.theta_bar},
                     {"chi", r.chi},
                     {"holds", r.holds}};
       }},
  };
  return table;
}

inline std::optional<double> env_double(const char* name) {
  const char* s = std::getenv(name);
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (*end != '\0') throw InputError(std::string(name) + ": not a number: " + s);
  return v;
}

inline std::optional<std::uint64_t> env_u64(const char* name) {
  const char* s = std::getenv(name);
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  const auto v = std::strtoull(s, &end, 10);
  if (*end != '\0') throw InputError(std::string(name) + ": not an integer: " + s);
  return v;
}

inline Json error_json(const char* kind, const std::string& msg) {
  return Json{{"error", kind}, {"message", msg}};
}

}  // namespace detail

/// Runs one invocation. `args` excludes the program name.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.args = args;

  CLI::App app{"Quantum graph homomorphism toolkit", "qgh"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  struct Descr {
    const char* name;
    const char* help;
  };
  static const Descr commands[] = {
      {"theta", "Lovász theta of G"},
      {"theta-plus", "theta+ of G (adds X >= 0)"},
      {"chi-vect", "vector chromatic number of G"},
      {"homo", "find a homomorphism G -> H"},
      {"chi", "chromatic number of G"},
      {"omega", "clique number of G"},
      {"core", "classical core of G"},
      {"homo-vect", "vect (or B) homomorphism feasibility G -> H"},
      {"verify-strategy", "check p.json as a winning strategy for G -> H"},
      {"compose", "compose p.json then q.json"},
      {"simulate", "Monte Carlo rounds of the game G -> H played with p.json"},
      {"local-membership", "decompose p.json into homomorphism strategies"},
      {"choi", "Choi matrix of p.json"},
      {"qcore", "Cesàro idempotent of a winning self-strategy p.json of G"},
      {"verify-rep", "check rep.json as a representation for G -> H"},
      {"rep-to-corr", "correlation of rep.json under the normalized trace"},
      {"compose-reps", "compose rep1.json (G,H) with rep2.json (H,K)"},
      {"cb-check", "cb-norm bound check of rep.json against theta(G)"},
      {"obstruction", "trivial non-representability test for G -> H"},
      {"sandwich", "omega(G) <= theta(complement G) <= chi(G)"},
  };

  std::optional<double> tol_flag;
  std::optional<std::uint64_t> seed_flag;
  for (const auto& d : commands) {
    auto* sub = app.add_subcommand(d.name, d.help);
    sub->add_option("inputs", cfg.inputs, "input files")->required();
    sub->add_option("--tol", tol_flag, "solver tolerance (default 1e-7, env QGH_TOL)");
    sub->add_option("-o,--output", cfg.output, "write the report here instead of stdout");
    const std::string name = d.name;
    if (name == "homo-vect") sub->add_flag("--b-variant", cfg.b_variant, "drop X >= 0");
    if (name == "simulate") {
      sub->add_option("--trials", cfg.trials, "number of rounds")->check(CLI::PositiveNumber);
      sub->add_option("--seed", seed_flag, "RNG seed (default 0, env QGH_SEED)");
      sub->add_flag("--edges-only", cfg.edges_only,
                    "ask only equal or adjacent question pairs");
    }
    if (name == "chi-vect")
      sub->add_option("--c-max", cfg.c_max, "also scan vect feasibility for c <= c_max");
    if (name == "qcore")
      sub->add_option("--candidate", cfg.candidates, "idempotent to compare against");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);  // --help, --version
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (const auto t = detail::env_double("QGH_TOL")) cfg.tol = *t;
    if (const auto s = detail::env_u64("QGH_SEED")) cfg.seed = *s;
    if (tol_flag) cfg.tol = *tol_flag;
    if (seed_flag) cfg.seed = *seed_flag;
    if (!(cfg.tol > 0.0)) throw InputError("tol must be positive");

    Json report{{"tool", "qgh"},
                {"version", kVersion},
                {"command", cfg.command},
                {"argv", cfg.args},
                {"tolerances", {{"tol", cfg.tol}, {"check_tol", kCheckTol}}}};
    if (cfg.command == "simulate") report["seed"] = cfg.seed;
    Json result = detail::handlers().at(cfg.command)(cfg);
    for (auto& [k, v] : result.items()) report[k] = v;

    const std::string text = report.dump(2) + "\n";
    if (cfg.output.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) throw InputError("cannot write " + cfg.output);
      f << text;
    }
    return kOk;
  } catch (const SizeGuardError& e) {
    err << detail::error_json("size_guard", e.what()).dump(2) << '\n';
    return kSizeGuard;
  } catch (const SolverError& e) {
    err << detail::error_json("solver", e.what()).dump(2) << '\n';
    return kSolverError;
  } catch (const InputError& e) {
    err << detail::error_json("input", e.what()).dump(2) << '\n';
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << detail::error_json("input", e.what()).dump(2) << '\n';
    return kInputError;
  }
}

}  // namespace qgh::cli
