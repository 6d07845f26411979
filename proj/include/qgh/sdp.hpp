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
/// Dense first-order SDP solver.
///
/// Solves
///
///     maximize ⟨C, X⟩  s.t.  ⟨A_i, X⟩ = b_i,  X_ij = 0 on a zero pattern,
///                            X_ij ≥ 0 on a nonneg pattern,  X ⪰ 0
///
/// by consensus ADMM: the iterate X lives in the affine set (equalities and
/// zero pins), a copy Z lives in the PSD cone and, when a nonneg pattern is
/// present, a second copy W lives in the nonnegative box. The affine step is
/// an exact Frobenius projection; the cone step is a full eigendecomposition.
///
/// Infeasibility is only ever reported heuristically: when the consensus gap
/// stops shrinking while still well above tolerance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qgh/error.hpp"
#include "qgh/linalg.hpp"

namespace qgh {

using IndexPair = std::pair<std::size_t, std::size_t>;

struct SdpConstraint {
  SymMatrix a;
  double b = 0.0;
};

struct SdpProblem {
  std::size_t dim = 0;
  SymMatrix objective;                        ///< C; maximize ⟨C, X⟩
  std::vector<SdpConstraint> eq_constraints;  ///< ⟨A_i, X⟩ = b_i
  std::set<IndexPair> zero_pattern;           ///< pinned to 0 (symmetric)
  std::set<IndexPair> nonneg_pattern;         ///< constrained ≥ 0 (symmetric)

  explicit SdpProblem(std::size_t n = 0) : dim(n), objective(n) {}

  void pin_zero(std::size_t i, std::size_t j) {
    zero_pattern.insert({std::min(i, j), std::max(i, j)});
  }
  void require_nonneg(std::size_t i, std::size_t j) {
    nonneg_pattern.insert({std::min(i, j), std::max(i, j)});
  }
  void require_all_nonneg() {
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i; j < dim; ++j) nonneg_pattern.insert({i, j});
  }
};

enum class SdpStatus { optimal, infeasible_heuristic, max_iterations };

inline const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::optimal: return "optimal";
    case SdpStatus::infeasible_heuristic: return "infeasible_heuristic";
    case SdpStatus::max_iterations: return "max_iterations";
  }
  return "unknown";
}

struct SdpLogEntry {
  int iteration = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double rho = 0.0;
  double objective = 0.0;
};

struct SdpOptions {
  double tol = 1e-7;
  int max_iter = 50000;
  double rho = 1.0;
  /// Iterations the gap may fail to improve by 1% before declaring the
  /// problem (heuristically) infeasible.
  int stall_window = 1000;
  /// Iterations between residual-balancing updates of ρ.
  int adapt_every = 50;
  bool record_log = false;
  int log_every = 100;
};

struct SdpSolution {
  SymMatrix x;
  double objective_value = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  SdpStatus status = SdpStatus::max_iterations;
  int iterations = 0;
  std::string note;
  std::vector<SdpLogEntry> log;

  bool feasible() const { return status == SdpStatus::optimal; }
};

namespace detail {

struct SparseSym {
  // Upper-triangle entries (i <= j) of a symmetric matrix.
  std::vector<std::size_t> i, j;
  std::vector<double> w;
};

// Frobenius inner product of an upper-triangle sparse symmetric matrix with a
// dense symmetric one.
inline double frob_dot(const SparseSym& a, const RealMatrix& y) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.w.size(); ++k)
    s += (a.i[k] == a.j[k] ? 1.0 : 2.0) * a.w[k] * y(a.i[k], a.j[k]);
  return s;
}

/// Exact Frobenius projection onto {X symmetric : X = 0 on the zero pattern,
/// ⟨A_i, X⟩ = b_i}. Redundant constraints are dropped by pivoted Cholesky
/// on the Gram matrix of the masked constraint matrices.
class AffineProjector {
 public:
  AffineProjector(const SdpProblem& prob) : n_(prob.dim), mask_(n_ * n_, 0) {
    for (auto [i, j] : prob.zero_pattern) mask_[i * n_ + j] = mask_[j * n_ + i] = 1;

    std::vector<SparseSym> all;
    std::vector<double> rhs;
    for (const auto& c : prob.eq_constraints) {
      if (c.a.dim() != n_) throw InputError("SDP constraint dimension mismatch");
      SparseSym s;
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i; j < n_; ++j)
          if (c.a(i, j) != 0.0 && !mask_[i * n_ + j]) {
            s.i.push_back(i);
            s.j.push_back(j);
            s.w.push_back(c.a(i, j));
          }
      all.push_back(std::move(s));
      rhs.push_back(c.b);
    }

    // Gram matrix of the masked constraints.
    const std::size_t m = all.size();
    RealMatrix gram(m, m);
    {
      RealMatrix scratch(n_, n_);
      for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t e = 0; e < all[k].w.size(); ++e)
          scratch(all[k].i[e], all[k].j[e]) = all[k].w[e];
        for (std::size_t l = k; l < m; ++l) {
          const double g = frob_dot(all[l], scratch);
          gram(k, l) = gram(l, k) = g;
        }
        for (std::size_t e = 0; e < all[k].w.size(); ++e)
          scratch(all[k].i[e], all[k].j[e]) = 0.0;
      }
    }

    // Pivoted Cholesky: greedily keep the constraint with the largest
    // remaining Schur diagonal.
    std::vector<std::size_t> perm(m);
    for (std::size_t k = 0; k < m; ++k) perm[k] = k;
    RealMatrix work = gram;
    double max_diag = 0.0;
    for (std::size_t k = 0; k < m; ++k) max_diag = std::max(max_diag, gram(k, k));
    const double cutoff = 1e-12 * std::max(1.0, max_diag);
    std::size_t rank = 0;
    RealMatrix l(m, m);
    for (; rank < m; ++rank) {
      std::size_t best = rank;
      for (std::size_t k = rank; k < m; ++k)
        if (work(perm[k], perm[k]) > work(perm[best], perm[best])) best = k;
      if (work(perm[best], perm[best]) <= cutoff) break;
      std::swap(perm[rank], perm[best]);
      for (std::size_t c = 0; c < rank; ++c) std::swap(l(rank, c), l(best, c));
      const std::size_t p = perm[rank];
      const double piv = std::sqrt(work(p, p));
      l(rank, rank) = piv;
      for (std::size_t k = rank + 1; k < m; ++k) {
        const std::size_t q = perm[k];
        l(k, rank) = work(q, p) / piv;
      }
      for (std::size_t k = rank + 1; k < m; ++k)
        for (std::size_t t = rank + 1; t <= k; ++t) {
          const std::size_t q = perm[k], r = perm[t];
          work(q, r) -= l(k, rank) * l(t, rank);
          work(r, q) = work(q, r);
        }
    }
    chol_ = RealMatrix(rank, rank);
    for (std::size_t a = 0; a < rank; ++a)
      for (std::size_t b = 0; b <= a; ++b) chol_(a, b) = l(a, b);
    for (std::size_t k = 0; k < rank; ++k) {
      active_.push_back(all[perm[k]]);
      b_.push_back(rhs[perm[k]]);
    }
    for (std::size_t k = rank; k < m; ++k) {
      dropped_.push_back(all[perm[k]]);
      dropped_b_.push_back(rhs[perm[k]]);
    }
  }

  void project(RealMatrix& y) const {
    for (std::size_t k = 0; k < n_ * n_; ++k)
      if (mask_[k]) y.data()[k] = 0.0;
    const std::size_t r = active_.size();
    if (r == 0) return;
    std::vector<double> lambda(r);
    for (std::size_t k = 0; k < r; ++k) lambda[k] = frob_dot(active_[k], y) - b_[k];
    // Solve L Lᵀ λ = residual.
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = 0; b < a; ++b) lambda[a] -= chol_(a, b) * lambda[b];
      lambda[a] /= chol_(a, a);
    }
    for (std::size_t a = r; a-- > 0;) {
      for (std::size_t b = a + 1; b < r; ++b) lambda[a] -= chol_(b, a) * lambda[b];
      lambda[a] /= chol_(a, a);
    }
    for (std::size_t k = 0; k < r; ++k) {
      const auto& s = active_[k];
      for (std::size_t e = 0; e < s.w.size(); ++e) {
        const double d = lambda[k] * s.w[e];
        y(s.i[e], s.j[e]) -= d;
        if (s.i[e] != s.j[e]) y(s.j[e], s.i[e]) -= d;
      }
    }
  }

  /// Largest violation of a dropped (linearly dependent) constraint at a
  /// point of the projected affine set; nonzero means the equalities are
  /// inconsistent.
  double inconsistency() const {
    RealMatrix y(n_, n_);
    project(y);
    double worst = 0.0;
    for (std::size_t k = 0; k < dropped_.size(); ++k)
      worst = std::max(worst, std::abs(frob_dot(dropped_[k], y) - dropped_b_[k]) /
                                  (1.0 + std::abs(dropped_b_[k])));
    return worst;
  }

 private:
  std::size_t n_;
  std::vector<unsigned char> mask_;
  std::vector<SparseSym> active_, dropped_;
  std::vector<double> b_, dropped_b_;
  RealMatrix chol_;
};

inline double frob_dist_sq(const RealMatrix& a, const RealMatrix& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    const double d = a.data()[k] - b.data()[k];
    s += d * d;
  }
  return s;
}

inline double frob_inner(const RealMatrix& a, const RealMatrix& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) s += a.data()[k] * b.data()[k];
  return s;
}

}  // namespace detail

inline SdpSolution solve_sdp(const SdpProblem& prob, const SdpOptions& opt = {}) {
  if (opt.tol <= 0.0) throw InputError("solve_sdp: tol must be positive");
  const std::size_t n = prob.dim;
  if (n == 0) throw InputError("solve_sdp: empty problem");
  if (prob.objective.dim() != n) throw InputError("solve_sdp: objective dimension mismatch");

  SdpSolution sol;
  const detail::AffineProjector affine(prob);
  if (const double gap = affine.inconsistency(); gap > 1e-9) {
    sol.status = SdpStatus::infeasible_heuristic;
    sol.x = SymMatrix(n);
    sol.primal_residual = gap;
    sol.note = "equality constraints are inconsistent on the zero pattern";
    return sol;
  }

  std::vector<std::size_t> nonneg;
  for (auto [i, j] : prob.nonneg_pattern)
    if (!prob.zero_pattern.count({i, j})) {
      nonneg.push_back(i * n + j);
      if (i != j) nonneg.push_back(j * n + i);
    }
  const bool use_box = !nonneg.empty();

  const RealMatrix& c = prob.objective.matrix();
  RealMatrix x(n, n), z(n, n), u(n, n), w(n, n), uw(n, n);
  double rho = opt.rho;
  double best_gap = 1e300;
  int stall = 0;

  for (int it = 1; it <= opt.max_iter; ++it) {
    // Affine step.
    RealMatrix target(n, n);
    if (use_box) {
      for (std::size_t k = 0; k < n * n; ++k)
        target.data()[k] = 0.5 * (z.data()[k] - u.data()[k] + w.data()[k] -
                                  uw.data()[k]) +
                           c.data()[k] / (2.0 * rho);
    } else {
      for (std::size_t k = 0; k < n * n; ++k)
        target.data()[k] = z.data()[k] - u.data()[k] + c.data()[k] / rho;
    }
    affine.project(target);
    x = std::move(target);

    // Cone steps.
    RealMatrix z_prev = z;
    z = psd_project(SymMatrix(x + u)).matrix();
    RealMatrix w_prev = w;
    if (use_box) {
      w = x + uw;
      for (std::size_t k : nonneg) w.data()[k] = std::max(w.data()[k], 0.0);
    }

    // Dual updates.
    u += x;
    u -= z;
    double r2 = detail::frob_dist_sq(x, z);
    double s2 = detail::frob_dist_sq(z, z_prev);
    if (use_box) {
      uw += x;
      uw -= w;
      r2 += detail::frob_dist_sq(x, w);
      s2 += detail::frob_dist_sq(w, w_prev);
    }
    const double r = std::sqrt(r2);
    const double s = rho * std::sqrt(s2);
    sol.primal_residual = r;
    sol.dual_residual = s;
    sol.iterations = it;

    if (opt.record_log && (it % opt.log_every == 0 || it == 1))
      sol.log.push_back({it, r, s, rho, detail::frob_inner(c, x)});

    if (r <= opt.tol && s <= opt.tol) {
      sol.status = SdpStatus::optimal;
      break;
    }

    if (r < 0.99 * best_gap) {
      best_gap = r;
      stall = 0;
    } else if (++stall >= opt.stall_window && r > 10.0 * opt.tol) {
      sol.status = SdpStatus::infeasible_heuristic;
      sol.note = "consensus gap stalled at " + std::to_string(r);
      break;
    }

    // Residual balancing; u and uw are scaled duals so they rescale with ρ.
    if (it % opt.adapt_every != 0) continue;
    if (r > 10.0 * s && rho < 1e6) {
      rho *= 2.0;
      u *= 0.5;
      uw *= 0.5;
    } else if (s > 10.0 * r && rho > 1e-6) {
      rho *= 0.5;
      u *= 2.0;
      uw *= 2.0;
    }
  }

  sol.x = SymMatrix(x);
  sol.objective_value = detail::frob_inner(c, sol.x.matrix());
  return sol;
}

}  // namespace qgh
