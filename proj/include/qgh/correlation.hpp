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
/// Correlations p(x,y|v,w) for the graph homomorphism game: validation,
/// the synchronous and winning conditions, composition, deterministic and
/// sampled quantum strategies, membership in the local and synchronous
/// vector classes, and a Monte Carlo referee.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qgh/error.hpp"
#include "qgh/graph.hpp"
#include "qgh/homomorphism.hpp"
#include "qgh/linalg.hpp"
#include "qgh/lp.hpp"
#include "qgh/rng.hpp"
#include "qgh/sdp.hpp"

namespace qgh {

/// Dense tensor p[v][w][x][y]: probability of answers (x, y) on questions
/// (v, w), with n questions and m answers per player.
class Correlation {
 public:
  Correlation() = default;
  Correlation(std::size_t n, std::size_t m) : n_(n), m_(m), p_(n * n * m * m, 0.0) {
    if (n == 0 || m == 0) throw InputError("correlation needs n, m >= 1");
  }

  std::size_t inputs() const { return n_; }
  std::size_t outputs() const { return m_; }

  double& operator()(std::size_t v, std::size_t w, std::size_t x, std::size_t y) {
    return p_[index(v, w, x, y)];
  }
  double operator()(std::size_t v, std::size_t w, std::size_t x, std::size_t y) const {
    return p_[index(v, w, x, y)];
  }

  std::span<const double> data() const { return p_; }
  std::span<double> data() { return p_; }

  bool operator==(const Correlation&) const = default;

 private:
  std::size_t index(std::size_t v, std::size_t w, std::size_t x, std::size_t y) const {
    return ((v * n_ + w) * m_ + x) * m_ + y;
  }

  std::size_t n_ = 0, m_ = 0;
  std::vector<double> p_;
};

/// Largest entrywise difference; shapes must agree.
inline double max_abs_diff(const Correlation& a, const Correlation& b) {
  if (a.inputs() != b.inputs() || a.outputs() != b.outputs())
    throw InputError("correlation shape mismatch");
  double d = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    d = std::max(d, std::abs(a.data()[k] - b.data()[k]));
  return d;
}

/// One failed condition: which rule, at which index tuple, by how much.
struct Violation {
  std::string condition;
  std::vector<std::size_t> index;
  double magnitude = 0.0;
};

inline constexpr double kNegativeTolerance = 1e-12;
inline constexpr double kNormalizationTolerance = 1e-9;

/// Every violated entry of nonnegativity and per-(v,w) normalization.
inline std::vector<Violation> validate(const Correlation& p) {
  std::vector<Violation> out;
  const std::size_t n = p.inputs(), m = p.outputs();
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w) {
      double sum = 0.0;
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) {
          const double e = p(v, w, x, y);
          if (!std::isfinite(e) || e < -kNegativeTolerance)
            out.push_back({"nonnegative", {v, w, x, y}, e});
          sum += e;
        }
      if (!(std::abs(sum - 1.0) <= kNormalizationTolerance))
        out.push_back({"normalized", {v, w}, sum - 1.0});
    }
  return out;
}

inline void require_valid(const Correlation& p, const char* who) {
  if (const auto v = validate(p); !v.empty())
    throw InputError(std::string(who) + ": invalid correlation (" + v.front().condition +
                     " violated, " + std::to_string(v.size()) + " violations)");
}

struct SynchronousReport {
  bool synchronous = true;
  std::vector<Violation> violations;
};

/// p(x,y|v,v) ≤ tol for all v and x ≠ y.
inline SynchronousReport is_synchronous(const Correlation& p, double tol = 1e-8) {
  SynchronousReport r;
  for (std::size_t v = 0; v < p.inputs(); ++v)
    for (std::size_t x = 0; x < p.outputs(); ++x)
      for (std::size_t y = 0; y < p.outputs(); ++y)
        if (x != y && p(v, v, x, y) > tol) {
          r.synchronous = false;
          r.violations.push_back({"synchronous", {v, v, x, y}, p(v, v, x, y)});
        }
  return r;
}

struct StrategyReport {
  bool synchronous = false;
  bool winning = false;
  std::vector<Violation> violations;  ///< condition "synchronous" or "edge"
};

/// Winning iff synchronous and p(x,y|v,w) ≤ tol whenever v ~ w in G and
/// x ≁ y in H (including x = y, since H has no loops).
inline StrategyReport is_winning_strategy(const Correlation& p, const Graph& g,
                                          const Graph& h, double tol = 1e-8) {
  if (p.inputs() != g.size() || p.outputs() != h.size())
    throw InputError("is_winning_strategy: correlation shape does not match graphs");
  StrategyReport r;
  auto sync = is_synchronous(p, tol);
  r.synchronous = sync.synchronous;
  r.violations = std::move(sync.violations);
  for (auto [v, w] : g.edges())
    for (auto [a, b] : {std::pair{v, w}, std::pair{w, v}})
      for (std::size_t x = 0; x < h.size(); ++x)
        for (std::size_t y = 0; y < h.size(); ++y)
          if (!h.adjacent(x, y) && p(a, b, x, y) > tol)
            r.violations.push_back({"edge", {a, b, x, y}, p(a, b, x, y)});
  r.winning = r.violations.empty();
  return r;
}

/// Deterministic correlation p(x,y|v,w) = [x = f(v)][y = f(w)].
inline Correlation deterministic_correlation(const std::vector<Vertex>& f, std::size_t m) {
  Correlation p(f.size(), m);
  for (std::size_t v = 0; v < f.size(); ++v)
    for (std::size_t w = 0; w < f.size(); ++w) {
      if (f[v] >= m || f[w] >= m) throw InputError("deterministic map value out of range");
      p(v, w, f[v], f[w]) = 1.0;
    }
  return p;
}

inline Correlation identity_correlation(std::size_t n) {
  std::vector<Vertex> id(n);
  for (std::size_t v = 0; v < n; ++v) id[v] = v;
  return deterministic_correlation(id, n);
}

struct HomomorphismStrategy {
  Correlation p;
  bool winning = false;  ///< false when f is not a graph homomorphism
};

/// The classical strategy of a vertex map. Built even when f is not a
/// homomorphism; `winning` tells the caller which case it is.
inline HomomorphismStrategy from_homomorphism(const std::vector<Vertex>& f, const Graph& g,
                                              const Graph& h) {
  const auto map = make_vertex_map(f, g, h);
  return {deterministic_correlation(map.f, h.size()), map.homomorphism};
}

/// r(a,b|v,w) = Σ_{x,y} q(a,b|x,y) p(x,y|v,w): play p, then q on its answers.
inline Correlation compose(const Correlation& q, const Correlation& p) {
  if (q.inputs() != p.outputs())
    throw InputError("compose: q inputs (" + std::to_string(q.inputs()) +
                     ") != p outputs (" + std::to_string(p.outputs()) + ")");
  const std::size_t n = p.inputs(), m = p.outputs(), l = q.outputs();
  Correlation r(n, l);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) {
          const double pxy = p(v, w, x, y);
          if (pxy == 0.0) continue;
          for (std::size_t a = 0; a < l; ++a)
            for (std::size_t b = 0; b < l; ++b) r(v, w, a, b) += q(x, y, a, b) * pxy;
        }
  return r;
}

/// Convex combination Σ_k weights[k]·parts[k].
inline Correlation mix(const std::vector<Correlation>& parts, const std::vector<double>& weights) {
  if (parts.empty() || parts.size() != weights.size())
    throw InputError("mix: need one weight per correlation");
  Correlation r(parts.front().inputs(), parts.front().outputs());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (parts[k].inputs() != r.inputs() || parts[k].outputs() != r.outputs())
      throw InputError("mix: shape mismatch");
    for (std::size_t e = 0; e < r.data().size(); ++e)
      r.data()[e] += weights[k] * parts[k].data()[e];
  }
  return r;
}

// ---------------------------------------------------------------------------
// Synchronous vector correlations.

/// Gram matrix M[(v,x),(w,y)] = ⟨h_{v,x}, h_{w,y}⟩ over flattened pairs
/// (v,x) -> v·m + x.
struct GramWitness {
  std::size_t n = 0, m = 0;
  SymMatrix gram;
  bool nonneg_mode = true;  ///< true: vect; false: the B variant (no sign constraint)
};

struct WitnessCheck {
  double min_eigenvalue = 0.0;
  double orthogonality_error = 0.0;
  double sum_error = 0.0;
  double most_negative_entry = 0.0;
  bool ok = false;
};

/// Checks PSD-ness, h_{v,x} ⊥ h_{v,y}, the unit-sum constraints and, in
/// nonneg mode, entrywise nonnegativity. `tol` scales the PSD, orthogonality
/// and sign checks; the sum check uses 10·tol.
inline WitnessCheck check_witness(const GramWitness& w, double tol = 1e-8) {
  const std::size_t n = w.n, m = w.m;
  const auto& g = w.gram;
  if (g.dim() != n * m) throw InputError("check_witness: dimension mismatch");
  WitnessCheck c;
  c.min_eigenvalue = min_eigenvalue(g);
  double most_neg = 0.0;
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t u = 0; u < n; ++u) {
      double s = 0.0;
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) {
          const double e = g(v * m + x, u * m + y);
          s += e;
          if (v == u && x != y) c.orthogonality_error = std::max(c.orthogonality_error, std::abs(e));
          most_neg = std::min(most_neg, e);
        }
      c.sum_error = std::max(c.sum_error, std::abs(s - 1.0));
    }
  c.most_negative_entry = most_neg;
  const double scale = 1.0 + frobenius_norm(g.matrix());
  c.ok = c.min_eigenvalue >= -tol * scale && c.orthogonality_error <= tol &&
         c.sum_error <= 10.0 * tol && (!w.nonneg_mode || most_neg >= -tol);
  return c;
}

struct VectResult {
  std::optional<GramWitness> witness;  ///< present iff feasible
  SdpStatus status = SdpStatus::max_iterations;
  std::string note;
  int iterations = 0;

  bool feasible() const { return witness.has_value(); }
};

namespace detail {

inline std::size_t flat(std::size_t v, std::size_t x, std::size_t m) { return v * m + x; }

// Orthogonality pins and unit-sum equalities shared by every synchronous
// vector program on n questions and m answers.
inline SdpProblem synchronous_gram_program(std::size_t n, std::size_t m, bool nonneg) {
  const std::size_t dim = n * m;
  SdpProblem prob(dim);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = x + 1; y < m; ++y) prob.pin_zero(flat(v, x, m), flat(v, y, m));
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = v; w < n; ++w) {
      SymMatrix a(dim);
      const double weight = v == w ? 1.0 : 0.5;
      // ⟨A, M⟩ = Σ_{x,y} M[(v,x),(w,y)]; off-diagonal blocks appear twice.
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) a.set(flat(v, x, m), flat(w, y, m), weight);
      prob.eq_constraints.push_back({a, 1.0});
    }
  if (nonneg) prob.require_all_nonneg();
  return prob;
}

inline VectResult finish_vect(const SdpSolution& sol, std::size_t n, std::size_t m, bool nonneg,
                              double tol) {
  VectResult r;
  r.status = sol.status;
  r.iterations = sol.iterations;
  r.note = sol.note;
  if (sol.status == SdpStatus::optimal) {
    GramWitness w{n, m, sol.x, nonneg};
    if (check_witness(w, tol).ok)
      r.witness = std::move(w);
    else
      r.note = "solver converged but witness failed verification";
  } else if (sol.status == SdpStatus::infeasible_heuristic) {
    r.note = "infeasible (heuristic)" + (sol.note.empty() ? "" : ": " + sol.note);
  }
  return r;
}

}  // namespace detail

/// Witness verification tolerance for SDP-produced Gram matrices.
inline constexpr double kSdpWitnessTolerance = 1e-6;

/// Searches for a Gram witness whose entries equal p exactly. Every entry is
/// pinned, so this decides whether the Choi-shaped matrix of p is a
/// synchronous vector Gram matrix.
inline VectResult synchronous_vect_membership(const Correlation& p, bool nonneg_mode = true,
                                              const SdpOptions& opt = {}) {
  require_valid(p, "synchronous_vect_membership");
  if (!is_synchronous(p).synchronous)
    throw InputError("synchronous_vect_membership: correlation is not synchronous");
  const std::size_t n = p.inputs(), m = p.outputs(), dim = n * m;
  auto prob = detail::synchronous_gram_program(n, m, nonneg_mode);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = v; w < n; ++w)
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) {
          const std::size_t i = detail::flat(v, x, m), j = detail::flat(w, y, m);
          if (i > j) continue;
          // Both p(x,y|v,w) and p(y,x|w,v) land on this symmetric entry.
          if (std::abs(p(v, w, x, y) - p(w, v, y, x)) > 1e-12) {
            VectResult r;
            r.status = SdpStatus::infeasible_heuristic;
            r.note = "p(x,y|v,w) != p(y,x|w,v): no symmetric Gram matrix matches";
            return r;
          }
          const double target = p(v, w, x, y);
          if (target == 0.0) {
            prob.pin_zero(i, j);
          } else {
            SymMatrix a(dim);
            a.set(i, j, i == j ? 1.0 : 0.5);
            prob.eq_constraints.push_back({a, target});
          }
        }
  return detail::finish_vect(solve_sdp(prob, opt), n, m, nonneg_mode, kSdpWitnessTolerance);
}

/// Feasibility of a winning synchronous vector strategy for G -> H
/// (nonneg_mode = true) or of the B-homomorphism program (false).
inline VectResult vect_homomorphism_feasibility(const Graph& g, const Graph& h,
                                                bool nonneg_mode = true,
                                                const SdpOptions& opt = {}) {
  const std::size_t n = g.size(), m = h.size();
  auto prob = detail::synchronous_gram_program(n, m, nonneg_mode);
  for (auto [v, w] : g.edges())
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y)
        if (!h.adjacent(x, y)) prob.pin_zero(detail::flat(v, x, m), detail::flat(w, y, m));
  return detail::finish_vect(solve_sdp(prob, opt), n, m, nonneg_mode, kSdpWitnessTolerance);
}

/// Gram witness of a deterministic strategy: h_{v,x} = η if f(v) = x else 0.
inline GramWitness deterministic_witness(const std::vector<Vertex>& f, std::size_t m) {
  const std::size_t n = f.size();
  SymMatrix g(n * m);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w) g.set(v * m + f[v], w * m + f[w], 1.0);
  return {n, m, g, true};
}

/// Correlation read off a Gram witness: p(x,y|v,w) = M[(v,x),(w,y)].
inline Correlation correlation_from_witness(const GramWitness& w) {
  Correlation p(w.n, w.m);
  for (std::size_t v = 0; v < w.n; ++v)
    for (std::size_t u = 0; u < w.n; ++u)
      for (std::size_t x = 0; x < w.m; ++x)
        for (std::size_t y = 0; y < w.m; ++y) p(v, u, x, y) = w.gram(v * w.m + x, u * w.m + y);
  return p;
}

// ---------------------------------------------------------------------------
// Local (classical) membership.

struct LocalMembership {
  bool feasible = false;
  std::vector<VertexMap> maps;   ///< homomorphisms with positive weight
  std::vector<double> weights;   ///< parallel to maps
  std::size_t homomorphism_count = 0;
  double infeasibility = 0.0;    ///< phase-I optimum
};

inline constexpr double kLocalGuard = 1e6;

/// Decides whether a winning p is a convex combination of deterministic
/// homomorphism strategies, by exact enumeration plus a phase-I LP.
inline LocalMembership local_membership(const Correlation& p, const Graph& g, const Graph& h,
                                        double tol = 1e-9) {
  require_valid(p, "local_membership");
  if (std::pow(static_cast<double>(h.size()), static_cast<double>(g.size())) > kLocalGuard)
    throw SizeGuardError("local_membership: m^n exceeds 10^6");
  if (!is_winning_strategy(p, g, h).winning)
    throw InputError("local_membership: correlation is not a winning strategy");

  const auto homs = enumerate_homomorphisms(g, h);
  LocalMembership out;
  out.homomorphism_count = homs.size();
  const std::size_t n = g.size(), m = h.size();

  // Rows: every (v,w,x,y) entry some homomorphism can reach, plus Σλ = 1.
  std::vector<std::size_t> rows;
  for (std::size_t e = 0; e < p.data().size(); ++e) {
    const std::size_t y = e % m, x = (e / m) % m, w = (e / (m * m)) % n, v = e / (m * m * n);
    bool reachable = false;
    for (const auto& f : homs)
      if (f.f[v] == x && f.f[w] == y) {
        reachable = true;
        break;
      }
    if (reachable)
      rows.push_back(e);
    else if (p.data()[e] > tol) {
      out.infeasibility = p.data()[e];
      return out;  // mass where no homomorphism can put any
    }
  }
  if (homs.empty()) return out;

  RealMatrix a(rows.size() + 1, homs.size());
  std::vector<double> b(rows.size() + 1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::size_t e = rows[r];
    const std::size_t y = e % m, x = (e / m) % m, w = (e / (m * m)) % n, v = e / (m * m * n);
    for (std::size_t k = 0; k < homs.size(); ++k)
      a(r, k) = (homs[k].f[v] == x && homs[k].f[w] == y) ? 1.0 : 0.0;
    b[r] = p.data()[e];
  }
  for (std::size_t k = 0; k < homs.size(); ++k) a(rows.size(), k) = 1.0;
  b[rows.size()] = 1.0;

  const auto lp = lp_feasibility(a, b, tol);
  out.feasible = lp.feasible;
  out.infeasibility = lp.infeasibility;
  if (lp.feasible)
    for (std::size_t k = 0; k < homs.size(); ++k)
      if (lp.solution[k] > tol) {
        out.maps.push_back(homs[k]);
        out.weights.push_back(lp.solution[k]);
      }
  return out;
}

// ---------------------------------------------------------------------------
// Sampling quantum strategies.

namespace detail {

// Haar-random unitary: complex Gaussian matrix, modified Gram-Schmidt on
// columns, phases fixed so the R factor has a positive diagonal.
inline ComplexMatrix haar_unitary(std::size_t d, Rng& rng) {
  ComplexMatrix u(d, d);
  for (auto& z : u.data()) z = Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex dot{};
      for (std::size_t i = 0; i < d; ++i) dot += std::conj(u(i, k)) * u(i, j);
      for (std::size_t i = 0; i < d; ++i) u(i, j) -= dot * u(i, k);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < d; ++i) norm += std::norm(u(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < d; ++i) u(i, j) /= norm;
  }
  return u;
}

}  // namespace detail

/// Projections P[v][x] of a sampled PVM family; shared with the
/// representation code.
inline std::vector<std::vector<ComplexMatrix>> sample_pvms(std::size_t n, std::size_t m,
                                                           std::size_t d, std::uint64_t seed) {
  if (d == 0) throw InputError("sample_pvms: dimension must be >= 1");
  Rng rng(seed, 0x5eed);
  std::vector<std::vector<ComplexMatrix>> out(n, std::vector<ComplexMatrix>(m, ComplexMatrix(d, d)));
  for (std::size_t v = 0; v < n; ++v) {
    const auto u = detail::haar_unitary(d, rng);
    for (std::size_t col = 0; col < d; ++col) {
      const std::size_t x = rng.below(m);
      auto& proj = out[v][x];
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) proj(i, j) += u(i, col) * std::conj(u(j, col));
    }
  }
  return out;
}

/// p(x,y|v,w) = tr(P_{v,x} P_{w,y}) / d for Haar-random PVMs on C^d, each
/// basis column assigned to a uniformly random answer.
inline Correlation sample_q_correlation(std::size_t n, std::size_t m, std::size_t d,
                                        std::uint64_t seed) {
  const auto pvm = sample_pvms(n, m, d, seed);
  Correlation p(n, m);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) {
          // tr(AB) = Σ_ij A_ij B_ji
          Complex t{};
          const auto& a = pvm[v][x];
          const auto& b = pvm[w][y];
          for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) t += a(i, j) * b(j, i);
          p(v, w, x, y) = std::max(0.0, t.real() / static_cast<double>(d));
        }
  return p;
}

// ---------------------------------------------------------------------------
// Monte Carlo referee.

enum class RefereeMode {
  uniform_pairs,  ///< (v, w) uniform over V(G)²
  edges_only,     ///< uniform over the diagonal and both orientations of E(G)
};

inline std::vector<std::pair<Vertex, Vertex>> referee_questions(const Graph& g, RefereeMode mode) {
  std::vector<std::pair<Vertex, Vertex>> q;
  if (mode == RefereeMode::uniform_pairs) {
    for (Vertex v = 0; v < g.size(); ++v)
      for (Vertex w = 0; w < g.size(); ++w) q.emplace_back(v, w);
  } else {
    for (Vertex v = 0; v < g.size(); ++v) q.emplace_back(v, v);
    for (auto [v, w] : g.edges()) {
      q.emplace_back(v, w);
      q.emplace_back(w, v);
    }
  }
  return q;
}

/// The referee's verdict on a single round.
inline bool round_won(const Graph& g, const Graph& h, Vertex v, Vertex w, Vertex x, Vertex y) {
  if (v == w && x != y) return false;
  if (g.adjacent(v, w) && !h.adjacent(x, y)) return false;
  return true;
}

struct SimulationResult {
  std::size_t trials = 0;
  std::size_t wins = 0;
  double frequency = 0.0;
};

/// Plays `trials` rounds. Trial t draws from its own counter-based stream
/// (seed, t), so the outcome does not depend on evaluation order.
inline SimulationResult simulate_game(const Correlation& p, const Graph& g, const Graph& h,
                                      std::size_t trials, std::uint64_t seed,
                                      RefereeMode mode = RefereeMode::uniform_pairs) {
  require_valid(p, "simulate_game");
  if (p.inputs() != g.size() || p.outputs() != h.size())
    throw InputError("simulate_game: correlation shape does not match graphs");
  if (trials == 0) throw InputError("simulate_game: trials must be >= 1");
  const auto questions = referee_questions(g, mode);
  const std::size_t m = h.size();
  SimulationResult r;
  r.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(seed, t);
    const auto [v, w] = questions[rng.below(questions.size())];
    const double u = rng.uniform();
    double cum = 0.0;
    std::size_t pick = m * m;
    std::size_t last_positive = 0;
    for (std::size_t k = 0; k < m * m; ++k) {
      const double pk = p(v, w, k / m, k % m);
      if (pk <= 0.0) continue;
      last_positive = k;
      cum += pk;
      if (u < cum) {
        pick = k;
        break;
      }
    }
    if (pick == m * m) pick = last_positive;  // rounding left u past the total
    if (round_won(g, h, v, w, pick / m, pick % m)) ++r.wins;
  }
  r.frequency = static_cast<double>(r.wins) / static_cast<double>(trials);
  return r;
}

/// Exact winning probability under the referee distribution.
inline double win_probability(const Correlation& p, const Graph& g, const Graph& h,
                              RefereeMode mode = RefereeMode::uniform_pairs) {
  const auto questions = referee_questions(g, mode);
  double total = 0.0;
  for (auto [v, w] : questions)
    for (std::size_t x = 0; x < h.size(); ++x)
      for (std::size_t y = 0; y < h.size(); ++y)
        if (round_won(g, h, v, w, x, y)) total += p(v, w, x, y);
  return total / static_cast<double>(questions.size());
}

}  // namespace qgh
