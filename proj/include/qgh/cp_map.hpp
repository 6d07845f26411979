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
/// The linear map φ_p(E_{v,w}) = Σ_{x,y} p(x,y|v,w) E_{x,y} attached to a
/// correlation: its Choi matrix, checks that it maps the operator system of
/// G into that of H trace-preservingly, the entry-sum and entrywise 1-norm,
/// and the Cesàro idempotent of a self-strategy together with the partial
/// order on idempotents.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qgh/correlation.hpp"
#include "qgh/error.hpp"
#include "qgh/graph.hpp"
#include "qgh/linalg.hpp"

namespace qgh {

struct ChoiMap {
  std::size_t n = 0, m = 0;
  /// choi[(v,x),(w,y)] = p(x,y|v,w), rows/cols flattened as v·m + x.
  SymMatrix choi;
  Correlation source;
  /// False when p(x,y|v,w) != p(y,x|w,v) somewhere; the Choi matrix is then
  /// not Hermitian and `choi` holds its symmetric part.
  bool hermitian = true;
};

struct ChoiReport {
  ChoiMap map;
  double min_eigenvalue = 0.0;
  bool psd = false;  ///< advisory; guaranteed only for synchronous vector p
};

inline constexpr double kChoiPsdTolerance = 1e-8;

inline ChoiReport choi_of(const Correlation& p) {
  require_valid(p, "choi_of");
  const std::size_t n = p.inputs(), m = p.outputs();
  RealMatrix c(n * m, n * m);
  bool hermitian = true;
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) {
          c(v * m + x, w * m + y) = p(v, w, x, y);
          if (p(v, w, x, y) != p(w, v, y, x)) hermitian = false;
        }
  ChoiReport r;
  r.map = ChoiMap{n, m, SymMatrix(c), p, hermitian};
  r.min_eigenvalue = min_eigenvalue(r.map.choi);
  r.psd = hermitian &&
          r.min_eigenvalue >= -kChoiPsdTolerance * (1.0 + frobenius_norm(r.map.choi.matrix()));
  return r;
}

/// φ_p(A) for an n×n matrix A: B_{x,y} = Σ_{v,w} A_{v,w} p(x,y|v,w).
template <typename T>
Matrix<T> apply(const Correlation& p, const Matrix<T>& a) {
  const std::size_t n = p.inputs(), m = p.outputs();
  if (a.rows() != n || a.cols() != n)
    throw InputError("apply: matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  Matrix<T> b(m, m);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w) {
      const T avw = a(v, w);
      if (avw == T{}) continue;
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) b(x, y) += avw * p(v, w, x, y);
    }
  return b;
}

template <typename T>
Matrix<T> apply(const ChoiMap& phi, const Matrix<T>& a) {
  return apply(phi.source, a);
}

/// σ(A) = Σ a_ij.
template <typename T>
T sigma(const Matrix<T>& a) {
  T s{};
  for (const auto& x : a.data()) s += x;
  return s;
}

/// ||A||₁ = Σ |a_ij|.
template <typename T>
double one_norm(const Matrix<T>& a) {
  double s = 0.0;
  for (const auto& x : a.data()) s += std::abs(x);
  return s;
}

struct MapCheckFailure {
  std::size_t v = 0, w = 0;  ///< source matrix unit E_{v,w}
  std::size_t x = 0, y = 0;  ///< offending target entry (unused for trace checks)
  double value = 0.0;
};

struct MapCheckReport {
  bool pass = true;
  double worst = 0.0;
  std::vector<MapCheckFailure> failures;
};

/// tr φ(E_{v,w}) = δ_{v,w} on every support pair of G.
inline MapCheckReport verify_trace_preserving(const ChoiMap& phi, const Graph& g,
                                              double tol = 1e-8) {
  if (phi.n != g.size()) throw InputError("verify_trace_preserving: size mismatch");
  MapCheckReport r;
  for (auto [v, w] : operator_system_support(g).pairs) {
    double tr = 0.0;
    for (std::size_t x = 0; x < phi.m; ++x) tr += phi.source(v, w, x, x);
    const double err = std::abs(tr - (v == w ? 1.0 : 0.0));
    r.worst = std::max(r.worst, err);
    if (err > tol) {
      r.pass = false;
      r.failures.push_back({v, w, 0, 0, tr});
    }
  }
  return r;
}

/// φ(E_{v,w}) vanishes outside the support of H for every support pair of G,
/// and images of diagonal units are diagonal.
inline MapCheckReport verify_operator_system_preserving(const ChoiMap& phi, const Graph& g,
                                                        const Graph& h, double tol = 1e-8) {
  if (phi.n != g.size() || phi.m != h.size())
    throw InputError("verify_operator_system_preserving: size mismatch");
  MapCheckReport r;
  for (auto [v, w] : operator_system_support(g).pairs)
    for (std::size_t x = 0; x < phi.m; ++x)
      for (std::size_t y = 0; y < phi.m; ++y) {
        const bool allowed = v == w ? x == y : (x == y || h.adjacent(x, y));
        if (allowed) continue;
        const double val = phi.source(v, w, x, y);
        r.worst = std::max(r.worst, std::abs(val));
        if (std::abs(val) > tol) {
          r.pass = false;
          r.failures.push_back({v, w, x, y, val});
        }
      }
  return r;
}

// ---------------------------------------------------------------------------
// Cesàro idempotents.

struct CesaroStep {
  int iteration = 0;
  double horizon = 0.0;          ///< N, the number of averaged powers
  double step_residual = 0.0;    ///< ||c_N − c_{N/2}||_∞
  double idempotence_residual = 0.0;  ///< ||c_N ∘ c_N − c_N||_∞
};

struct CesaroResult {
  Correlation r;
  bool converged = false;
  int iterations = 0;
  double horizon = 1.0;
  double step_residual = 0.0;
  double idempotence_residual = 0.0;
  std::vector<CesaroStep> history;
};

/// Cesàro mean c_N = (1/N) Σ_{k=1..N} p^k of the composition powers of a
/// square synchronous p, evaluated at N = 2, 4, 8, ... through
/// c_{2N} = ½ (c_N + p^N ∘ c_N). Stops once both the change between
/// successive means and the idempotence defect are ≤ tol. Each doubling
/// counts as one iteration; at most 62 are possible.
inline CesaroResult cesaro_idempotent(const Correlation& p, double tol = 1e-6,
                                      int max_iter = 100000) {
  require_valid(p, "cesaro_idempotent");
  if (p.inputs() != p.outputs())
    throw InputError("cesaro_idempotent: correlation must be square (n = m)");
  if (!is_synchronous(p).synchronous)
    throw InputError("cesaro_idempotent: correlation is not synchronous");

  CesaroResult out;
  Correlation mean = p;   // c_N
  Correlation power = p;  // p^N
  double horizon = 1.0;
  const int limit = std::min(max_iter, 62);
  for (int it = 1; it <= limit; ++it) {
    Correlation next = compose(power, mean);
    for (std::size_t k = 0; k < next.data().size(); ++k)
      next.data()[k] = 0.5 * (mean.data()[k] + next.data()[k]);
    power = compose(power, power);
    horizon *= 2.0;

    CesaroStep step{it, horizon, max_abs_diff(next, mean),
                    max_abs_diff(compose(next, next), next)};
    out.history.push_back(step);
    mean = std::move(next);
    out.iterations = it;
    out.step_residual = step.step_residual;
    out.idempotence_residual = step.idempotence_residual;
    if (step.step_residual <= tol && step.idempotence_residual <= tol) {
      out.converged = true;
      break;
    }
  }
  out.horizon = horizon;
  out.r = std::move(mean);
  return out;
}

/// ||r ∘ r − r||_∞.
inline double idempotence_defect(const Correlation& r) {
  return max_abs_diff(compose(r, r), r);
}

/// r ≤ s iff r ∘ s = s ∘ r = r. Both must be square and idempotent within tol.
inline bool idempotent_leq(const Correlation& r, const Correlation& s, double tol = 1e-6) {
  if (r.inputs() != r.outputs() || s.inputs() != s.outputs() || r.inputs() != s.inputs())
    throw InputError("idempotent_leq: need square correlations of equal size");
  if (idempotence_defect(r) > tol || idempotence_defect(s) > tol)
    throw InputError("idempotent_leq: inputs must be idempotent");
  return max_abs_diff(compose(r, s), r) <= tol && max_abs_diff(compose(s, r), r) <= tol;
}

struct CoreComparison {
  std::size_t candidate = 0;
  bool result_leq_candidate = false;
  bool candidate_leq_result = false;
  bool comparable_input = true;  ///< false when the candidate is not idempotent
};

struct CoreCandidateReport {
  CesaroResult cesaro;
  StrategyReport winning;
  double idempotence_defect = 0.0;
  double absorbs_input = 0.0;  ///< max(||r∘p − r||, ||p∘r − r||)
  double choi_min_eigenvalue = 0.0;
  bool idempotent = false;
  std::vector<CoreComparison> comparisons;
  std::vector<std::string> notes;
};

/// Runs the Cesàro iteration on a winning self-strategy of G and checks that
/// the limit is again a winning, idempotent strategy. Minimality is not
/// certified; `candidates` are only compared in the partial order.
inline CoreCandidateReport quantum_core_candidate(const Correlation& p, const Graph& g,
                                                  const std::vector<Correlation>& candidates = {},
                                                  double tol = 1e-6) {
  if (!is_winning_strategy(p, g, g).winning)
    throw InputError("quantum_core_candidate: input is not a winning G -> G strategy");
  CoreCandidateReport rep;
  rep.cesaro = cesaro_idempotent(p, tol);
  if (!rep.cesaro.converged)
    throw SolverError("quantum_core_candidate: Cesàro iteration did not converge (step " +
                      std::to_string(rep.cesaro.step_residual) + ", idempotence " +
                      std::to_string(rep.cesaro.idempotence_residual) + ")");
  const auto& r = rep.cesaro.r;
  rep.winning = is_winning_strategy(r, g, g, tol);
  rep.idempotence_defect = idempotence_defect(r);
  rep.idempotent = rep.idempotence_defect <= tol;
  rep.absorbs_input = std::max(max_abs_diff(compose(r, p), r), max_abs_diff(compose(p, r), r));
  rep.choi_min_eigenvalue = choi_of(r).min_eigenvalue;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    CoreComparison c;
    c.candidate = k;
    if (idempotence_defect(candidates[k]) > tol) {
      c.comparable_input = false;
    } else {
      c.result_leq_candidate = idempotent_leq(r, candidates[k], tol);
      c.candidate_leq_result = idempotent_leq(candidates[k], r, tol);
    }
    rep.comparisons.push_back(c);
  }
  rep.notes.push_back("minimality is not certified; the result is an idempotent winning "
                      "strategy absorbing the input (r o p = p o r = r)");
  rep.notes.push_back("uniqueness of minimal idempotents is not assumed");
  rep.notes.push_back("for a finite-dimensional quantum input the limit is only certified "
                      "at the closure (qa) level");
  return rep;
}

}  // namespace qgh
