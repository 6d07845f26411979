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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "qgh/cli.hpp"
#include "support.hpp"

using namespace qgh;
using Catch::Approx;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
  Json json() const { return Json::parse(out); }
  Json error() const { return Json::parse(err); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const std::string& name) { return std::string(QGH_DATA_DIR) + "/" + name; }

std::string temp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("qgh_cli_" + name)).string();
}

std::string write_json(const std::string& name, const Json& j) {
  const auto path = temp(name);
  std::ofstream(path, std::ios::binary) << j.dump();
  return path;
}

// Unsets on destruction so one test cannot leak into the next.
struct EnvGuard {
  const char* name;
  EnvGuard(const char* n, const char* v) : name(n) { setenv(n, v, 1); }
  ~EnvGuard() { unsetenv(name); }
};

}  // namespace

TEST_CASE("theta of C5") {
  const auto r = run({"theta", data("C5.txt")});
  REQUIRE(r.code == cli::kOk);
  const auto j = r.json();
  CHECK(j["value"].get<double>() == Approx(std::sqrt(5.0)).margin(1e-6));
  CHECK(j["solver"]["status"] == "optimal");
  CHECK(j["graph"]["n"] == 5);
}

TEST_CASE("obstruction and homomorphism search") {
  auto r = run({"obstruction", data("K2.txt"), data("E3.txt")});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.json()["not_representable"] == true);
  r = run({"obstruction", data("K2.txt"), data("K3.txt")});
  CHECK(r.json()["not_representable"] == false);

  r = run({"homo", data("C5.txt"), data("K2.txt")});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.json()["found"] == false);
  CHECK_FALSE(r.json().contains("map"));

  r = run({"homo", data("C6.col"), data("K2.txt")});
  REQUIRE(r.code == cli::kOk);
  const auto f = r.json()["map"]["f"].get<std::vector<Vertex>>();
  CHECK(testing::preserves_edges(f, cycle_graph(6), complete_graph(2)));
}

TEST_CASE("classical commands") {
  CHECK(run({"chi", data("petersen.col")}).json()["value"] == 3);
  CHECK(run({"omega", data("petersen.col")}).json()["value"] == 2);
  const auto core = run({"core", data("C6.col")}).json();
  CHECK(core["core"]["n"] == 2);
  CHECK(core["core"]["edges"].size() == 1);
  CHECK(run({"chi-vect", data("C5.txt")}).json()["value"] == 3);
  const auto cv = run({"chi-vect", data("C5.txt"), "--c-max", "3"}).json();
  CHECK(cv["search"]["value"] == 3);
  CHECK(cv["search"]["statuses"].size() == 3);
  const auto s = run({"sandwich", data("C5.txt")}).json();
  CHECK(s["omega"] == 2);
  CHECK(s["chi"] == 3);
  CHECK(s["holds"] == true);
  CHECK(run({"theta-plus", data("C5.txt")}).json()["value"].get<double>() ==
        Approx(std::sqrt(5.0)).margin(1e-5));
}

TEST_CASE("homo-vect reports heuristic infeasibility verbatim") {
  auto r = run({"homo-vect", data("C5.txt"), data("K2.txt")});
  REQUIRE(r.code == cli::kOk);
  auto j = r.json();
  CHECK(j["feasible"] == false);
  CHECK(j["status"] == "infeasible_heuristic");
  CHECK(j["variant"] == "vect");

  r = run({"homo-vect", data("C5.txt"), data("K3.txt")});
  REQUIRE(r.code == cli::kOk);
  j = r.json();
  CHECK(j["feasible"] == true);
  CHECK(j["witness"]["nm"] == 15);

  r = run({"homo-vect", data("K2.txt"), data("K2.txt"), "--b-variant"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.json()["variant"] == "B");
}

TEST_CASE("strategy commands") {
  const auto p = write_json("parity.json", to_json(deterministic_correlation({0, 1, 0, 1, 0, 1}, 2)));
  const auto swap = write_json("swap.json", to_json(deterministic_correlation({1, 0}, 2)));
  const auto constant = write_json("constant.json", to_json(deterministic_correlation({0, 0}, 2)));

  auto j = run({"verify-strategy", p, data("C6.col"), data("K2.txt")}).json();
  CHECK(j["winning"] == true);
  CHECK(j["trace_preserving"]["pass"] == true);
  CHECK(j["operator_system_preserving"]["pass"] == true);
  j = run({"verify-strategy", constant, data("K2.txt"), data("K2.txt")}).json();
  CHECK(j["winning"] == false);
  CHECK(j["synchronous"] == true);
  CHECK_FALSE(j["violations"].empty());

  j = run({"compose", swap, swap}).json();
  CHECK(correlation_from_json(j["correlation"]) == identity_correlation(2));

  j = run({"simulate", p, data("C6.col"), data("K2.txt"), "--trials", "5000", "--seed", "4"}).json();
  CHECK(j["frequency"] == 1.0);
  CHECK(j["seed"] == 4);
  j = run({"simulate", constant, data("K2.txt"), data("K2.txt"), "--trials", "20000"}).json();
  CHECK(j["exact_win_probability"] == 0.5);
  CHECK(std::abs(j["frequency"].get<double>() - 0.5) <= 3.0 * std::sqrt(0.25 / 20000));
  j = run({"simulate", constant, data("K2.txt"), data("K2.txt"), "--trials", "10",
           "--edges-only"})
          .json();
  CHECK(j["referee"] == "edges_only");

  j = run({"local-membership", p, data("C6.col"), data("K2.txt")}).json();
  CHECK(j["feasible"] == true);
  CHECK(j["homomorphism_count"] == 2);

  j = run({"choi", swap}).json();
  CHECK(j["psd"] == true);
  CHECK(j["map"]["choi"].size() == 16);

  const auto half = write_json(
      "half.json", to_json(mix({identity_correlation(2), deterministic_correlation({1, 0}, 2)},
                               {0.5, 0.5})));
  j = run({"qcore", swap, data("K2.txt"), "--candidate", half}).json();
  CHECK(j["converged"] == true);
  CHECK(j["winning"] == true);
  CHECK(j["comparisons"][0]["result_leq_candidate"] == true);
  CHECK_FALSE(j["history"].empty());
  CHECK_FALSE(j["notes"].empty());
}

TEST_CASE("representation commands") {
  const auto rep = write_json("rep.json", to_json(rep_from_map({0, 1, 0, 1, 2}, 3)));
  const auto k2k3 = write_json("k2k3.json", to_json(rep_from_map({0, 2}, 3)));
  const auto c6k2 = write_json("c6k2.json", to_json(rep_from_map({0, 1, 0, 1, 0, 1}, 2)));

  auto j = run({"verify-rep", rep, data("C5.txt"), data("K3.txt")}).json();
  CHECK(j["pass"] == true);
  j = run({"rep-to-corr", rep}).json();
  CHECK(j["graphs_checked"] == false);
  CHECK(correlation_from_json(j["correlation"]) ==
        deterministic_correlation({0, 1, 0, 1, 2}, 3));
  j = run({"rep-to-corr", rep, data("C5.txt"), data("K3.txt")}).json();
  CHECK(j["graphs_checked"] == true);
  j = run({"compose-reps", c6k2, k2k3}).json();
  CHECK(j["representation"]["d"] == 1);
  j = run({"cb-check", rep, data("C5.txt")}).json();
  CHECK(j["pass"] == true);
  CHECK(j["zz_norm"].get<double>() == Approx(2.0));

  // Bad relations surface as input errors when a correlation is requested.
  const auto bad = write_json("bad_rep.json", to_json(rep_from_map({0, 0, 1, 2, 1}, 3)));
  CHECK(run({"verify-rep", bad, data("C5.txt"), data("K3.txt")}).json()["pass"] == false);
  CHECK(run({"rep-to-corr", bad, data("C5.txt"), data("K3.txt")}).code == cli::kInputError);
  CHECK(run({"rep-to-corr", bad, data("C5.txt")}).code == cli::kInputError);
}

TEST_CASE("reports embed version, argv and tolerances") {
  const std::vector<std::string> args{"chi", data("C5.txt")};
  const auto j = run(args).json();
  CHECK(j["tool"] == "qgh");
  CHECK(j["version"] == kVersion);
  CHECK(j["command"] == "chi");
  CHECK(j["argv"].get<std::vector<std::string>>() == args);
  CHECK(j["tolerances"]["tol"] == 1e-7);
  CHECK(j["tolerances"]["check_tol"] == cli::kCheckTol);
}

TEST_CASE("identical invocations give identical bytes") {
  const auto p = write_json("det_uniform.json", [] {
    Correlation u(2, 2);
    for (auto& e : u.data()) e = 0.25;
    return to_json(u);
  }());
  const std::vector<std::string> sim{"simulate", p, data("K2.txt"), data("K2.txt"), "--trials",
                                     "3000", "--seed", "11"};
  CHECK(run(sim).out == run(sim).out);
  const std::vector<std::string> th{"theta", data("petersen.col")};
  CHECK(run(th).out == run(th).out);
}

TEST_CASE("output file option") {
  const auto path = temp("out.json");
  std::filesystem::remove(path);
  const auto r = run({"omega", data("K3.txt"), "-o", path});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.empty());
  CHECK(Json::parse(read_file(path))["value"] == 3);
}

TEST_CASE("environment overrides and flag precedence") {
  const auto p = write_json("env_uniform.json", [] {
    Correlation u(2, 2);
    for (auto& e : u.data()) e = 0.25;
    return to_json(u);
  }());
  const std::vector<std::string> base{"simulate", p, data("K2.txt"), data("K2.txt"), "--trials",
                                      "100"};
  {
    EnvGuard seed("QGH_SEED", "99");
    EnvGuard tol("QGH_TOL", "1e-6");
    auto j = run(base).json();
    CHECK(j["seed"] == 99);
    CHECK(j["tolerances"]["tol"] == 1e-6);
    auto args = base;
    args.insert(args.end(), {"--seed", "5", "--tol", "1e-5"});
    j = run(args).json();
    CHECK(j["seed"] == 5);
    CHECK(j["tolerances"]["tol"] == 1e-5);
  }
  CHECK(run(base).json()["seed"] == 0);
  {
    EnvGuard bad("QGH_SEED", "abc");
    CHECK(run(base).code == cli::kInputError);
  }
}

TEST_CASE("exit codes") {
  // 1: unreadable, malformed or ill-formed input.
  auto r = run({"theta", "/nonexistent/qgh.txt"});
  CHECK(r.code == cli::kInputError);
  CHECK(r.error()["error"] == "input");
  const auto malformed = temp("malformed.txt");
  std::ofstream(malformed) << "3\n0 7\n";
  r = run({"chi", malformed});
  CHECK(r.code == cli::kInputError);
  CHECK(r.error()["message"].get<std::string>().find("line 2") != std::string::npos);
  CHECK(run({"theta", data("C5.txt"), "--tol", "-1"}).code == cli::kInputError);
  CHECK(run({"no-such-command"}).code == cli::kInputError);
  CHECK(run({"theta"}).code == cli::kInputError);
  CHECK(run({"homo", data("C5.txt")}).code == cli::kInputError);
  const auto bad_corr = write_json("bad_corr.json", Json{{"n", 1}, {"m", 1}, {"p", 1}});
  CHECK(run({"choi", bad_corr}).code == cli::kInputError);

  // 2: the solver cannot reach an unattainable tolerance.
  r = run({"theta", data("C5.txt"), "--tol", "1e-300"});
  CHECK(r.code == cli::kSolverError);
  CHECK(r.error()["error"] == "solver");

  // 3: exact searches refuse large inputs.
  const auto big = temp("big.txt");
  std::ofstream(big) << "41\n";
  r = run({"chi", big});
  CHECK(r.code == cli::kSizeGuard);
  CHECK(r.error()["error"] == "size_guard");

  // 0 with a negative finding.
  CHECK(run({"homo", data("K3.txt"), data("K2.txt")}).code == cli::kOk);
}

TEST_CASE("help and version exit cleanly") {
  auto r = run({"--version"});
  CHECK(r.code == 0);
  CHECK(r.out.find(kVersion) != std::string::npos);
  r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("sandwich") != std::string::npos);
}
