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

// A short tour: theta of C5, a coloring as a game strategy, its Choi map,
// a Cesàro core candidate and a one-dimensional representation.

#include <cstdio>

#include "qgh/qgh.hpp"

int main() {
  using namespace qgh;

  const Graph c5 = cycle_graph(5), k3 = complete_graph(3);
  const auto th = lovasz_theta(c5);
  std::printf("theta(C5)      = %.9f (%d iterations)\n", th.value, th.solve.iterations);
  std::printf("chi_vect(C5)   = %zu, chi(C5) = %zu\n", chi_vect(c5), chromatic_number(c5));

  const auto f = find_homomorphism(c5, k3);
  if (!f) return 1;
  const auto strat = from_homomorphism(f->f, c5, k3);
  std::printf("coloring wins  = %s\n", is_winning_strategy(strat.p, c5, k3).winning ? "yes" : "no");
  const auto sim = simulate_game(strat.p, c5, k3, 10000, 1);
  std::printf("simulated wins = %zu / %zu\n", sim.wins, sim.trials);

  const auto choi = choi_of(strat.p);
  std::printf("choi min eig   = %.3g, trace preserving on C5: %s\n", choi.min_eigenvalue,
              verify_trace_preserving(choi.map, c5).pass ? "yes" : "no");

  const auto swap = deterministic_correlation({1, 0}, 2);
  const auto core = quantum_core_candidate(swap, complete_graph(2));
  std::printf("K2 swap core   = p(0,0|0,0) %.6f, p(1,0|0,0) %.6f after %d doublings\n",
              core.cesaro.r(0, 0, 0, 0), core.cesaro.r(0, 0, 1, 0), core.cesaro.iterations);

  const auto rep = rep_from_map(f->f, 3);
  const auto check = verify_representation(rep, c5, k3);
  const auto cb = cb_bound_check(rep, c5);
  std::printf("rep verifies   = %s, |ZZ*| = %.6f <= theta %.6f\n", check.pass ? "yes" : "no",
              cb.zz_norm, cb.theta);
  return 0;
}
