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
#include <numbers>

#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace qgh;
using Catch::Approx;

namespace {

// Rank-one projection onto (cos t, e^{iφ} sin t).
HermMatrix ray(double t, double phi) {
  const Complex a(std::cos(t), 0.0), b = std::polar(std::sin(t), phi);
  return HermMatrix(ComplexMatrix{{a * std::conj(a), a * std::conj(b)},
                                  {b * std::conj(a), b * std::conj(b)}});
}

HermMatrix complement_of(const HermMatrix& p) {
  return HermMatrix(ComplexMatrix::identity(p.dim()) - p.matrix());
}

// Two non-commuting binary measurements on C^2; E2 has no edges, so any
// pair of PVMs is a representation of the E2 -> K2 game.
GameRepresentation qubit_e2_k2() {
  GameRepresentation r(2, 2, 2);
  r(0, 0) = ray(0.0, 0.0);
  r(0, 1) = complement_of(r(0, 0));
  r(1, 0) = ray(std::numbers::pi / 8, 0.7);
  r(1, 1) = complement_of(r(1, 0));
  return r;
}

// K2 -> K3 on C^2: vertex 0 answers {0,1} along P, vertex 1 answers {2,0}.
GameRepresentation qubit_k2_k3() {
  const HermMatrix p = ray(0.3, 1.1), q = complement_of(p);
  GameRepresentation r(2, 2, 3);
  r(0, 0) = p;
  r(0, 1) = q;
  r(1, 2) = p;
  r(1, 0) = q;
  return r;
}

std::vector<GameRepresentation> verified_reps_with_graphs(std::vector<std::pair<Graph, Graph>>& gh) {
  std::vector<GameRepresentation> reps;
  const Graph c5 = cycle_graph(5), k3 = complete_graph(3), c6 = cycle_graph(6),
              k2 = complete_graph(2);
  for (const auto& f : testing::brute_homomorphisms(c5, k3)) {
    reps.push_back(rep_from_map(f, 3));
    gh.emplace_back(c5, k3);
  }
  reps.push_back(qubit_e2_k2());
  gh.emplace_back(empty_graph(2), k2);
  reps.push_back(qubit_k2_k3());
  gh.emplace_back(k2, k3);
  reps.push_back(compose_representations(rep_from_map({0, 1, 0, 1, 0, 1}, 2), qubit_k2_k3()));
  gh.emplace_back(c6, k3);
  reps.push_back(direct_sum(rep_from_map({0, 1, 0, 1, 2}, 3), rep_from_map({1, 2, 1, 2, 0}, 3)));
  gh.emplace_back(c5, k3);
  return reps;
}

}  // namespace

TEST_CASE("verify_representation examples") {
  const Graph c5 = cycle_graph(5), k3 = complete_graph(3);
  const auto coloring = rep_from_map({0, 1, 0, 1, 2}, 3);
  auto r = verify_representation(coloring, c5, k3);
  CHECK(r.pass);
  CHECK(r.graphs_checked);
  CHECK(r.projection_error == 0.0);

  GameRepresentation half(2, 2, 2);
  for (auto& e : half.e) e = HermMatrix(ComplexMatrix::identity(2) * Complex(0.5));
  r = verify_representation(half, empty_graph(2), complete_graph(2));
  CHECK_FALSE(r.pass);
  CHECK(r.projection_error == Approx(0.25));

  GameRepresentation twice(1, 2, 2);
  for (auto& e : twice.e) e = HermMatrix(ComplexMatrix(1, 1, 1.0));
  r = verify_representation(twice, empty_graph(2), complete_graph(2));
  CHECK_FALSE(r.pass);
  CHECK(r.projection_error == 0.0);
  CHECK(r.completeness_error == Approx(1.0));

  // A non-homomorphism map breaks only the edge relation.
  r = verify_representation(rep_from_map({0, 0, 1, 2, 1}, 3), c5, k3);
  CHECK_FALSE(r.pass);
  CHECK(r.completeness_error == 0.0);
  CHECK(r.orthogonality_error == Approx(1.0));

  CHECK(verify_representation(qubit_e2_k2(), empty_graph(2), complete_graph(2)).pass);
  CHECK(verify_representation(qubit_k2_k3(), complete_graph(2), complete_graph(3)).pass);
  CHECK_THROWS_AS(verify_representation(coloring, cycle_graph(6), k3), InputError);
}

TEST_CASE("trivial obstruction") {
  for (std::size_t m = 1; m <= 3; ++m) CHECK(trivial_obstruction(complete_graph(2), empty_graph(m)));
  CHECK_FALSE(trivial_obstruction(empty_graph(2), empty_graph(3)));
  CHECK_FALSE(trivial_obstruction(complete_graph(2), complete_graph(2)));
  // Agrees with exhaustive search at d = 1: no map sends an edge into E_m.
  for (std::size_t m = 1; m <= 3; ++m)
    CHECK(testing::brute_homomorphisms(complete_graph(2), empty_graph(m)).empty());
}

TEST_CASE("compose_representations examples") {
  const Graph c6 = cycle_graph(6), k2 = complete_graph(2), k3 = complete_graph(3);
  const std::vector<Vertex> f{0, 1, 0, 1, 0, 1}, g{0, 2};
  const auto gf = compose_representations(rep_from_map(f, 2), rep_from_map(g, 3));
  CHECK(gf.d == 1);
  const auto direct = rep_from_map({0, 2, 0, 2, 0, 2}, 3);
  for (std::size_t k = 0; k < gf.e.size(); ++k) CHECK(gf.e[k].matrix() == direct.e[k].matrix());
  CHECK(representation_to_correlation(gf) == deterministic_correlation({0, 2, 0, 2, 0, 2}, 3));

  const auto id = identity_representation(3);
  const auto idid = compose_representations(id, id);
  CHECK(idid.d == 1);
  for (std::size_t k = 0; k < id.e.size(); ++k) CHECK(idid.e[k].matrix() == id.e[k].matrix());

  const auto mixed = compose_representations(rep_from_map(f, 2), qubit_k2_k3());
  CHECK(mixed.d == 2);
  CHECK(verify_representation(mixed, c6, k3).pass);

  CHECK_THROWS_AS(compose_representations(rep_from_map(f, 2), id), InputError);
}

TEST_CASE("composed representations always verify") {
  const Graph k2 = complete_graph(2), k3 = complete_graph(3), c6 = cycle_graph(6);
  for (const auto& f : testing::brute_homomorphisms(c6, k2))
    for (const auto& g : testing::brute_homomorphisms(k2, k3)) {
      const auto r = compose_representations(rep_from_map(f, 2), rep_from_map(g, 3));
      CHECK(verify_representation(r, c6, k3).pass);
      std::vector<Vertex> gf(6);
      for (std::size_t v = 0; v < 6; ++v) gf[v] = g[f[v]];
      CHECK(representation_to_correlation(r) == deterministic_correlation(gf, 3));
    }
  // Quantum factor first, then a classical relabeling of K3.
  const auto r = compose_representations(qubit_k2_k3(), rep_from_map({1, 2, 0}, 3));
  CHECK(verify_representation(r, k2, k3).pass);
}

TEST_CASE("representation to correlation examples") {
  const Graph c5 = cycle_graph(5), k3 = complete_graph(3);
  const std::vector<Vertex> f1{0, 1, 0, 1, 2}, f2{1, 2, 1, 2, 0};
  CHECK(representation_to_correlation(rep_from_map(f1, 3), c5, k3) ==
        deterministic_correlation(f1, 3));

  const auto sum = direct_sum(rep_from_map(f1, 3), rep_from_map(f2, 3));
  CHECK(sum.d == 2);
  const auto expected =
      mix({deterministic_correlation(f1, 3), deterministic_correlation(f2, 3)}, {0.5, 0.5});
  CHECK(max_abs_diff(representation_to_correlation(sum, c5, k3), expected) <= 1e-15);

  const auto weighted = representation_to_correlation(sum, BlockTrace{{1, 1}, {0.25, 0.75}});
  CHECK(max_abs_diff(weighted, mix({deterministic_correlation(f1, 3),
                                    deterministic_correlation(f2, 3)},
                                   {0.25, 0.75})) <= 1e-15);

  CHECK_THROWS_AS(representation_to_correlation(rep_from_map({0, 0, 1, 2, 1}, 3), c5, k3),
                  InputError);
  CHECK_THROWS_AS(representation_to_correlation(sum, BlockTrace{{1, 1}, {0.5, 0.6}}), InputError);
  CHECK_THROWS_AS(representation_to_correlation(sum, BlockTrace{{3}, {1.0}}), InputError);
  // The qubit rep is not block diagonal with 1+1 blocks.
  CHECK_THROWS_AS(representation_to_correlation(qubit_e2_k2(), BlockTrace{{1, 1}, {0.5, 0.5}}),
                  InputError);
}

TEST_CASE("qubit representation gives the squared-overlap correlation") {
  // p(x,y|0,1) = tr(P_x Q_y)/2, with the overlap |⟨0|ψ⟩|² = cos²(π/8).
  const auto p = representation_to_correlation(qubit_e2_k2());
  const double c2 = std::pow(std::cos(std::numbers::pi / 8), 2);
  CHECK(p(0, 1, 0, 0) == Approx(c2 / 2));
  CHECK(p(0, 1, 0, 1) == Approx((1 - c2) / 2));
  CHECK(p(0, 0, 0, 0) == Approx(0.5));
  CHECK(p(0, 0, 0, 1) == Approx(0.0).margin(1e-15));
}

TEST_CASE("correlations of verified representations are winning and vect") {
  std::vector<std::pair<Graph, Graph>> gh;
  const auto reps = verified_reps_with_graphs(gh);
  for (std::size_t k = 0; k < reps.size(); ++k) {
    const auto& [g, h] = gh[k];
    REQUIRE(verify_representation(reps[k], g, h).pass);
    const auto p = representation_to_correlation(reps[k], g, h);
    CHECK(validate(p).empty());
    CHECK(is_synchronous(p).synchronous);
    CHECK(is_winning_strategy(p, g, h).winning);
    const auto phi = choi_of(p).map;
    CHECK(verify_trace_preserving(phi, g).pass);
    CHECK(verify_operator_system_preserving(phi, g, h).pass);
    CHECK(synchronous_vect_membership(p).feasible());
  }
}

TEST_CASE("gamma factorization") {
  const auto id = identity_representation(2);
  for (std::size_t v = 0; v < 2; ++v)
    for (std::size_t w = 0; w < 2; ++w) {
      const auto out = gamma_apply(id, RealMatrix::unit(2, 2, v, w));
      CHECK(out == ComplexMatrix::unit(2, 2, v, w));
    }

  std::vector<std::pair<Graph, Graph>> gh;
  const auto reps = verified_reps_with_graphs(gh);
  for (const auto& r : reps) {
    const auto p = representation_to_correlation(r);
    for (std::size_t v = 0; v < r.n_g; ++v)
      for (std::size_t w = 0; w < r.n_g; ++w) {
        const auto unit = RealMatrix::unit(r.n_g, r.n_g, v, w);
        const auto traced = normalized_partial_trace(gamma_apply(r, unit), r.n_h, r.d);
        const auto direct = apply(p, unit);
        for (std::size_t x = 0; x < r.n_h; ++x)
          for (std::size_t y = 0; y < r.n_h; ++y)
            CHECK(std::abs(traced(x, y) - direct(x, y)) <= 1e-12);
      }
    const auto gi = gamma_apply(r, RealMatrix::identity(r.n_g));
    CHECK(min_eigenvalue(HermMatrix(gi)) >= -1e-10);
  }
  CHECK_THROWS_AS(gamma_apply(id, RealMatrix(3, 3)), InputError);
  CHECK_THROWS_AS(normalized_partial_trace(ComplexMatrix(3, 3), 2, 2), InputError);
}

TEST_CASE("cb bound examples") {
  const Graph c5 = cycle_graph(5);
  // Color classes of sizes 2, 2, 1: the block norm is the largest class.
  const auto r = cb_bound_check(rep_from_map({0, 1, 0, 1, 2}, 3), c5);
  CHECK(r.zz_norm == Approx(2.0).margin(1e-10));
  CHECK(r.theta == Approx(std::sqrt(5.0)).margin(1e-6));
  CHECK(r.hypotheses_hold);
  CHECK(r.pass);

  for (std::size_t n = 1; n <= 5; ++n) {
    const auto k = cb_bound_check(identity_representation(n), complete_graph(n));
    CHECK(k.zz_norm == Approx(1.0).margin(1e-10));
    CHECK(k.theta == Approx(1.0).margin(1e-5));
    CHECK(k.pass);
  }

  // A non-homomorphism breaks the edge hypothesis before any norm check.
  const auto bad = cb_bound_check(rep_from_map({0, 0, 1, 2, 1}, 3), c5);
  CHECK_FALSE(bad.hypotheses_hold);
  CHECK_FALSE(bad.pass);
  CHECK(bad.edge_error == Approx(1.0));
}

TEST_CASE("cb bound holds for every verified representation") {
  std::vector<std::pair<Graph, Graph>> gh;
  const auto reps = verified_reps_with_graphs(gh);
  for (std::size_t k = 0; k < reps.size(); ++k) {
    const auto r = cb_bound_check(reps[k], gh[k].first);
    CHECK(r.diagonal_error <= 1e-8);
    CHECK(r.pass);
    CHECK(r.zz_norm <= r.theta + 1e-5);
  }
}

TEST_CASE("direct sums and shape checks") {
  const auto a = rep_from_map({0, 1}, 2), b = identity_representation(2);
  const auto s = direct_sum(a, b);
  CHECK(s.d == 2);
  CHECK(verify_representation(s, complete_graph(2), complete_graph(2)).pass);
  CHECK_THROWS_AS(direct_sum(a, identity_representation(3)), InputError);
  CHECK_THROWS_AS(rep_from_map({0, 3}, 3), InputError);
  GameRepresentation broken(2, 2, 2);
  broken.e.pop_back();
  CHECK_THROWS_AS(verify_projections(broken), InputError);
}
