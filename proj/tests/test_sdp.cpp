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
#include <cstring>

#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace qgh;
using Catch::Approx;

namespace {

// max X01 + X10 over unit-trace PSD 2×2 matrices [[a, b], [b, 1−a]] by a
// grid over a and the extreme admissible b.
double grid_optimum_2x2() {
  double best = -1e9;
  for (int k = 0; k <= 100000; ++k) {
    const double a = k / 100000.0;
    best = std::max(best, 2.0 * std::sqrt(a * (1.0 - a)));
  }
  return best;
}

SdpProblem off_diagonal_problem() {
  SdpProblem prob(2);
  prob.objective = SymMatrix{{0, 1}, {1, 0}};
  prob.eq_constraints.push_back({SymMatrix::identity(2), 1.0});
  return prob;
}

void check_optimal_invariants(const SdpProblem& prob, const SdpSolution& sol, double tol) {
  REQUIRE(sol.status == SdpStatus::optimal);
  const auto& x = sol.x;
  for (const auto& c : prob.eq_constraints) {
    double lhs = 0.0;
    for (std::size_t i = 0; i < prob.dim; ++i)
      for (std::size_t j = 0; j < prob.dim; ++j) lhs += c.a(i, j) * x(i, j);
    CHECK(std::abs(lhs - c.b) <= tol * (1.0 + std::abs(c.b)));
  }
  for (auto [i, j] : prob.zero_pattern) CHECK(std::abs(x(i, j)) <= tol);
  for (auto [i, j] : prob.nonneg_pattern) CHECK(x(i, j) >= -tol);
  CHECK(min_eigenvalue(x) >= -tol * (1.0 + frobenius_norm(x.matrix())));
  CHECK(sol.primal_residual <= tol);
  CHECK(sol.dual_residual <= tol);
}

}  // namespace

TEST_CASE("2x2 off-diagonal maximum matches grid search") {
  const auto prob = off_diagonal_problem();
  const auto sol = solve_sdp(prob);
  check_optimal_invariants(prob, sol, 1e-7);
  CHECK(sol.objective_value == Approx(grid_optimum_2x2()).margin(1e-6));
  CHECK(max_abs(sol.x.matrix() - RealMatrix(2, 2, 0.5)) < 1e-6);
}

TEST_CASE("diagonal feasibility with all off-diagonals pinned") {
  SdpProblem prob(4);
  prob.eq_constraints.push_back({SymMatrix::identity(4), 1.0});
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) prob.pin_zero(i, j);
  const auto sol = solve_sdp(prob);
  check_optimal_invariants(prob, sol, 1e-7);
  CHECK(trace(sol.x.matrix()) == Approx(1.0));
}

TEST_CASE("odd-cycle theta program matches the closed form") {
  for (std::size_t n : {5u, 7u, 9u}) {
    const Graph g = cycle_graph(n);
    SdpProblem prob(n);
    prob.objective = SymMatrix(RealMatrix(n, n, 1.0));
    prob.eq_constraints.push_back({SymMatrix::identity(n), 1.0});
    for (auto [u, v] : g.edges()) prob.pin_zero(u, v);
    const auto sol = solve_sdp(prob);
    check_optimal_invariants(prob, sol, 1e-7);
    CHECK(sol.objective_value == Approx(testing::odd_cycle_theta(n)).margin(1e-4));
  }
}

TEST_CASE("nonnegativity constraints are honoured") {
  // max −(X01 + X10) with X ≥ 0 on (0,1): optimum 0 instead of 1.
  SdpProblem prob = off_diagonal_problem();
  prob.objective = SymMatrix{{0, -1}, {-1, 0}};
  prob.require_nonneg(0, 1);
  const auto sol = solve_sdp(prob);
  check_optimal_invariants(prob, sol, 1e-7);
  CHECK(sol.objective_value == Approx(0.0).margin(1e-6));

  prob.nonneg_pattern.clear();
  CHECK(solve_sdp(prob).objective_value == Approx(1.0).margin(1e-6));
}

TEST_CASE("zero pins override nonnegativity on the same entry") {
  SdpProblem prob = off_diagonal_problem();
  prob.require_all_nonneg();
  prob.pin_zero(0, 1);
  const auto sol = solve_sdp(prob);
  check_optimal_invariants(prob, sol, 1e-7);
  CHECK(sol.x(0, 1) == Approx(0.0).margin(1e-7));
}

TEST_CASE("inconsistent equalities are reported infeasible at once") {
  SdpProblem prob(2);
  prob.eq_constraints.push_back({SymMatrix::identity(2), 1.0});
  prob.eq_constraints.push_back({SymMatrix::identity(2), 2.0});
  const auto sol = solve_sdp(prob);
  CHECK(sol.status == SdpStatus::infeasible_heuristic);
  CHECK(sol.iterations == 0);
  CHECK_FALSE(sol.feasible());
}

TEST_CASE("cone-infeasible problems stall and are flagged heuristically") {
  // Unit trace with X01 = 1 forces a 2×2 minor a(1−a) ≥ 1, impossible.
  SdpProblem prob(2);
  prob.eq_constraints.push_back({SymMatrix::identity(2), 1.0});
  prob.eq_constraints.push_back({SymMatrix{{0, 0.5}, {0.5, 0}}, 1.0});
  const auto sol = solve_sdp(prob);
  CHECK(sol.status == SdpStatus::infeasible_heuristic);
  CHECK(std::string(to_string(sol.status)).find("heuristic") != std::string::npos);
}

TEST_CASE("redundant equalities do not break the projection") {
  SdpProblem prob = off_diagonal_problem();
  prob.eq_constraints.push_back({SymMatrix{{2, 0}, {0, 2}}, 2.0});
  const auto sol = solve_sdp(prob);
  check_optimal_invariants(prob, sol, 1e-7);
  CHECK(sol.objective_value == Approx(1.0).margin(1e-6));
}

TEST_CASE("iteration limit is reported") {
  SdpOptions opt;
  opt.max_iter = 3;
  const auto sol = solve_sdp(off_diagonal_problem(), opt);
  CHECK(sol.status == SdpStatus::max_iterations);
  CHECK(sol.iterations == 3);
}

TEST_CASE("solve_sdp is deterministic bit for bit") {
  const Graph g = petersen_graph();
  SdpProblem prob(10);
  prob.objective = SymMatrix(RealMatrix(10, 10, 1.0));
  prob.eq_constraints.push_back({SymMatrix::identity(10), 1.0});
  for (auto [u, v] : g.edges()) prob.pin_zero(u, v);
  prob.require_all_nonneg();
  SdpOptions opt;
  opt.record_log = true;
  const auto a = solve_sdp(prob, opt);
  const auto b = solve_sdp(prob, opt);
  REQUIRE(a.iterations == b.iterations);
  CHECK(std::memcmp(a.x.matrix().data().data(), b.x.matrix().data().data(),
                    sizeof(double) * 100) == 0);
  REQUIRE(a.log.size() == b.log.size());
  for (std::size_t k = 0; k < a.log.size(); ++k) {
    CHECK(a.log[k].primal_residual == b.log[k].primal_residual);
    CHECK(a.log[k].rho == b.log[k].rho);
  }
  CHECK_FALSE(a.log.empty());
}

TEST_CASE("bad arguments are rejected") {
  SdpOptions opt;
  opt.tol = 0.0;
  CHECK_THROWS_AS(solve_sdp(off_diagonal_problem(), opt), InputError);
  SdpProblem empty(0);
  CHECK_THROWS_AS(solve_sdp(empty), InputError);
}
