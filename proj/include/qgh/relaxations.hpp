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
/// Lovász ϑ and ϑ⁺, the vector chromatic number, and the clique/ϑ/chromatic
/// sandwich.
///
/// Both ϑ programs use the edge-vanishing form
///
///     ϑ(G) = max Σ_ij X_ij  s.t.  tr X = 1,  X ⪰ 0,  X_ij = 0 for ij ∈ E(G)
///
/// so ϑ(K_n) = 1 and ϑ(E_n) = n; ϑ⁺ adds X ≥ 0 entrywise.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>

#include "qgh/correlation.hpp"
#include "qgh/error.hpp"
#include "qgh/graph.hpp"
#include "qgh/homomorphism.hpp"
#include "qgh/sdp.hpp"

namespace qgh {

enum class ThetaVariant { theta, theta_plus };

inline const char* to_string(ThetaVariant v) {
  return v == ThetaVariant::theta ? "theta" : "theta_plus";
}

struct ThetaResult {
  double value = 0.0;
  SymMatrix witness;
  ThetaVariant variant = ThetaVariant::theta;
  SdpSolution solve;  ///< full solver diagnostics
};

/// Options used for every ϑ solve; tighter than the engine default so the
/// value carries well under the 1e-6 ceiling guard of chi_vect.
inline SdpOptions theta_solver_options() {
  SdpOptions o;
  o.tol = 1e-9;
  return o;
}

inline ThetaResult solve_theta(const Graph& g, ThetaVariant variant,
                               const SdpOptions& opt = theta_solver_options()) {
  const std::size_t n = g.size();
  SdpProblem prob(n);
  prob.objective = SymMatrix(RealMatrix(n, n, 1.0));
  prob.eq_constraints.push_back({SymMatrix::identity(n), 1.0});
  for (auto [u, v] : g.edges()) prob.pin_zero(u, v);
  if (variant == ThetaVariant::theta_plus) prob.require_all_nonneg();

  ThetaResult r;
  r.variant = variant;
  r.solve = solve_sdp(prob, opt);
  if (!r.solve.feasible())
    throw SolverError(std::string(to_string(variant)) + ": solver status " +
                      to_string(r.solve.status) + " after " +
                      std::to_string(r.solve.iterations) + " iterations");
  r.value = r.solve.objective_value;
  r.witness = r.solve.x;
  return r;
}

inline ThetaResult lovasz_theta(const Graph& g,
                                const SdpOptions& opt = theta_solver_options()) {
  return solve_theta(g, ThetaVariant::theta, opt);
}

inline ThetaResult theta_plus(const Graph& g, const SdpOptions& opt = theta_solver_options()) {
  return solve_theta(g, ThetaVariant::theta_plus, opt);
}

inline constexpr double kCeilingGuard = 1e-6;

/// ⌈ϑ⁺(Ḡ) − 1e-6⌉.
inline std::size_t chi_vect(const Graph& g, const SdpOptions& opt = theta_solver_options()) {
  const double t = theta_plus(complement(g), opt).value;
  return static_cast<std::size_t>(std::ceil(t - kCeilingGuard));
}

struct ChiVectSearch {
  std::optional<std::size_t> value;  ///< least feasible c ≤ c_max
  std::vector<SdpStatus> statuses;   ///< per c = 1, 2, ...
};

/// Least c ≤ c_max for which the vect program G -> K_c is feasible, by
/// ascending scan.
inline ChiVectSearch chi_vect_by_search(const Graph& g, std::size_t c_max,
                                        const SdpOptions& opt = {}) {
  if (c_max == 0) throw InputError("chi_vect_by_search: c_max must be >= 1");
  ChiVectSearch out;
  for (std::size_t c = 1; c <= c_max; ++c) {
    const auto r = vect_homomorphism_feasibility(g, complete_graph(c), true, opt);
    out.statuses.push_back(r.status);
    if (r.feasible()) {
      out.value = c;
      break;
    }
  }
  return out;
}

struct SandwichReport {
  std::size_t omega = 0;
  double theta_bar = 0.0;  ///< ϑ(Ḡ)
  std::size_t chi = 0;
  bool holds = false;
};

/// ω(G) ≤ ϑ(Ḡ) ≤ χ(G), with exact ω and χ.
inline SandwichReport sandwich_report(const Graph& g,
                                      const SdpOptions& opt = theta_solver_options()) {
  if (g.size() > kExactGuard)
    throw SizeGuardError("sandwich_report: n > " + std::to_string(kExactGuard));
  SandwichReport r;
  r.omega = clique_number(g);
  r.chi = chromatic_number(g);
  r.theta_bar = lovasz_theta(complement(g), opt).value;
  r.holds = static_cast<double>(r.omega) <= r.theta_bar + kCeilingGuard &&
            r.theta_bar <= static_cast<double>(r.chi) + kCeilingGuard;
  return r;
}

}  // namespace qgh
