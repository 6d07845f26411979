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
/// Finite-dimensional representations of the homomorphism game: families of
/// d×d projections E_{v,x} with Σ_x E_{v,x} = I and E_{v,x}E_{w,y} = 0 when
/// v ~ w in G but x ≁ y in H.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qgh/correlation.hpp"
#include "qgh/error.hpp"
#include "qgh/graph.hpp"
#include "qgh/homomorphism.hpp"
#include "qgh/linalg.hpp"
#include "qgh/relaxations.hpp"

namespace qgh {

struct GameRepresentation {
  std::size_t d = 0;
  std::size_t n_g = 0, n_h = 0;
  std::vector<HermMatrix> e;  ///< E_{v,x} at v·n_h + x

  GameRepresentation() = default;
  GameRepresentation(std::size_t dim, std::size_t ng, std::size_t nh)
      : d(dim), n_g(ng), n_h(nh), e(ng * nh, HermMatrix(dim)) {}

  const HermMatrix& operator()(std::size_t v, std::size_t x) const { return e[v * n_h + x]; }
  HermMatrix& operator()(std::size_t v, std::size_t x) { return e[v * n_h + x]; }
};

inline void check_shape(const GameRepresentation& r, const char* who) {
  if (r.d == 0 || r.n_g == 0 || r.n_h == 0 || r.e.size() != r.n_g * r.n_h)
    throw InputError(std::string(who) + ": malformed representation");
  for (const auto& m : r.e)
    if (m.dim() != r.d) throw InputError(std::string(who) + ": block dimension mismatch");
}

struct RepresentationReport {
  double projection_error = 0.0;    ///< max ||E² − E||_max
  double completeness_error = 0.0;  ///< max ||Σ_x E_{v,x} − I||_max
  double orthogonality_error = 0.0; ///< max ||E_{v,x}E_{w,y}||_max over forbidden pairs
  bool graphs_checked = false;
  bool pass = false;
};

/// Projection and completeness only; no graph relations.
inline RepresentationReport verify_projections(const GameRepresentation& r, double tol = 1e-8) {
  check_shape(r, "verify_representation");
  RepresentationReport rep;
  const auto id = ComplexMatrix::identity(r.d);
  for (std::size_t v = 0; v < r.n_g; ++v) {
    ComplexMatrix sum(r.d, r.d);
    for (std::size_t x = 0; x < r.n_h; ++x) {
      const auto& a = r(v, x).matrix();
      rep.projection_error = std::max(rep.projection_error, max_abs(a * a - a));
      sum += a;
    }
    rep.completeness_error = std::max(rep.completeness_error, max_abs(sum - id));
  }
  rep.pass = rep.projection_error <= tol && rep.completeness_error <= tol;
  return rep;
}

inline RepresentationReport verify_representation(const GameRepresentation& r, const Graph& g,
                                                  const Graph& h, double tol = 1e-8) {
  if (r.n_g != g.size() || r.n_h != h.size())
    throw InputError("verify_representation: vertex counts do not match the graphs");
  RepresentationReport rep = verify_projections(r, tol);
  rep.graphs_checked = true;
  for (auto [v, w] : g.edges())
    for (std::size_t x = 0; x < r.n_h; ++x)
      for (std::size_t y = 0; y < r.n_h; ++y) {
        if (h.adjacent(x, y)) continue;
        // E_{w,y}E_{v,x} is the adjoint, so one order suffices.
        rep.orthogonality_error =
            std::max(rep.orthogonality_error, max_abs(r(v, x).matrix() * r(w, y).matrix()));
      }
  rep.pass = rep.pass && rep.orthogonality_error <= tol;
  return rep;
}

/// G has an edge and H has none: no representation exists.
inline bool trivial_obstruction(const Graph& g, const Graph& h) {
  return g.edge_count() > 0 && h.edge_count() == 0;
}

/// d = 1 representation of a vertex map: E_{v,x} = [f(v) = x].
inline GameRepresentation rep_from_map(const std::vector<Vertex>& f, std::size_t n_h) {
  GameRepresentation r(1, f.size(), n_h);
  for (std::size_t v = 0; v < f.size(); ++v) {
    if (f[v] >= n_h) throw InputError("rep_from_map: image vertex out of range");
    r(v, f[v]) = HermMatrix(ComplexMatrix(1, 1, 1.0));
  }
  return r;
}

inline GameRepresentation identity_representation(std::size_t n) {
  std::vector<Vertex> id(n);
  for (std::size_t v = 0; v < n; ++v) id[v] = v;
  return rep_from_map(id, n);
}

/// Block-diagonal sum, dimension d1 + d2.
inline GameRepresentation direct_sum(const GameRepresentation& a, const GameRepresentation& b) {
  check_shape(a, "direct_sum");
  check_shape(b, "direct_sum");
  if (a.n_g != b.n_g || a.n_h != b.n_h) throw InputError("direct_sum: vertex count mismatch");
  GameRepresentation r(a.d + b.d, a.n_g, a.n_h);
  for (std::size_t k = 0; k < r.e.size(); ++k) {
    ComplexMatrix m(r.d, r.d);
    for (std::size_t i = 0; i < a.d; ++i)
      for (std::size_t j = 0; j < a.d; ++j) m(i, j) = a.e[k](i, j);
    for (std::size_t i = 0; i < b.d; ++i)
      for (std::size_t j = 0; j < b.d; ++j) m(a.d + i, a.d + j) = b.e[k](i, j);
    r.e[k] = HermMatrix(m);
  }
  return r;
}

/// G_{v,a} = Σ_x E_{v,x} ⊗ F_{x,a}, a representation for G -> K of
/// dimension d1·d2.
inline GameRepresentation compose_representations(const GameRepresentation& r1,
                                                   const GameRepresentation& r2) {
  check_shape(r1, "compose_representations");
  check_shape(r2, "compose_representations");
  if (r1.n_h != r2.n_g)
    throw InputError("compose_representations: target of the first (" + std::to_string(r1.n_h) +
                     ") differs from source of the second (" + std::to_string(r2.n_g) + ")");
  GameRepresentation out(r1.d * r2.d, r1.n_g, r2.n_h);
  for (std::size_t v = 0; v < r1.n_g; ++v)
    for (std::size_t a = 0; a < r2.n_h; ++a) {
      ComplexMatrix m(out.d, out.d);
      for (std::size_t x = 0; x < r1.n_h; ++x) m += kron(r1(v, x).matrix(), r2(x, a).matrix());
      out(v, a) = HermMatrix(m);
    }
  return out;
}

/// A tracial state on a block-diagonal representation: τ(A) = Σ_k w_k
/// tr(A_kk)/size_k with blocks laid out consecutively.
struct BlockTrace {
  std::vector<std::size_t> sizes;
  std::vector<double> weights;
};

namespace detail {

/// tr(A B) without forming the product.
inline Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t lo,
                             std::size_t hi) {
  Complex s{};
  for (std::size_t i = lo; i < hi; ++i)
    for (std::size_t j = lo; j < hi; ++j) s += a(i, j) * b(j, i);
  return s;
}

inline void check_block_trace(const GameRepresentation& r, const BlockTrace& t, double tol) {
  if (t.sizes.empty() || t.sizes.size() != t.weights.size())
    throw InputError("block trace: sizes and weights must be non-empty and of equal length");
  std::size_t total = 0;
  double wsum = 0.0;
  for (std::size_t k = 0; k < t.sizes.size(); ++k) {
    if (t.sizes[k] == 0) throw InputError("block trace: zero block size");
    if (t.weights[k] < 0.0) throw InputError("block trace: negative weight");
    total += t.sizes[k];
    wsum += t.weights[k];
  }
  if (total != r.d) throw InputError("block trace: block sizes do not sum to d");
  if (std::abs(wsum - 1.0) > 1e-9) throw InputError("block trace: weights must sum to 1");
  // Every E must respect the block structure, otherwise τ is not tracial on
  // the algebra they generate.
  std::vector<std::size_t> block_of(r.d);
  for (std::size_t k = 0, i = 0; k < t.sizes.size(); ++k)
    for (std::size_t s = 0; s < t.sizes[k]; ++s) block_of[i++] = k;
  for (const auto& e : r.e)
    for (std::size_t i = 0; i < r.d; ++i)
      for (std::size_t j = 0; j < r.d; ++j)
        if (block_of[i] != block_of[j] && std::abs(e(i, j)) > tol)
          throw InputError("block trace: representation is not block diagonal");
}

}  // namespace detail

/// p(x,y|v,w) = Re τ(E_{v,x} E_{w,y}), τ the normalized trace unless a block
/// trace is given. The graph-free relations are always checked; pass G and H
/// to check orthogonality as well.
inline Correlation representation_to_correlation(const GameRepresentation& r,
                                                 const std::optional<BlockTrace>& trace = {},
                                                 double tol = 1e-8) {
  if (const auto rep = verify_projections(r, tol); !rep.pass)
    throw InputError("representation_to_correlation: not a family of complete projections "
                     "(projection error " + std::to_string(rep.projection_error) +
                     ", completeness error " + std::to_string(rep.completeness_error) + ")");
  BlockTrace t = trace.value_or(BlockTrace{{r.d}, {1.0}});
  detail::check_block_trace(r, t, tol);

  Correlation p(r.n_g, r.n_h);
  for (std::size_t v = 0; v < r.n_g; ++v)
    for (std::size_t w = 0; w < r.n_g; ++w)
      for (std::size_t x = 0; x < r.n_h; ++x)
        for (std::size_t y = 0; y < r.n_h; ++y) {
          double s = 0.0;
          for (std::size_t k = 0, lo = 0; k < t.sizes.size(); lo += t.sizes[k], ++k) {
            if (t.weights[k] == 0.0) continue;
            const Complex tr = detail::trace_product(r(v, x).matrix(), r(w, y).matrix(), lo,
                                                     lo + t.sizes[k]);
            s += t.weights[k] * tr.real() / static_cast<double>(t.sizes[k]);
          }
          // Rounding can leave tiny negatives; the exact value is ≥ 0.
          p(v, w, x, y) = std::max(s, 0.0);
        }
  return p;
}

inline Correlation representation_to_correlation(const GameRepresentation& r, const Graph& g,
                                                 const Graph& h,
                                                 const std::optional<BlockTrace>& trace = {},
                                                 double tol = 1e-8) {
  const auto rep = verify_representation(r, g, h, tol);
  if (!rep.pass)
    throw InputError("representation_to_correlation: representation fails verification "
                     "(orthogonality error " + std::to_string(rep.orthogonality_error) + ")");
  return representation_to_correlation(r, trace, tol);
}

/// Γ(A) for an n_g×n_g matrix A, an (m·d)×(m·d) matrix whose (x,y) block is
/// Σ_{v,w} A_{v,w} E_{v,x} E_{w,y}; row index x·d + i.
template <typename T>
ComplexMatrix gamma_apply(const GameRepresentation& r, const Matrix<T>& a) {
  check_shape(r, "gamma_apply");
  if (a.rows() != r.n_g || a.cols() != r.n_g)
    throw InputError("gamma_apply: matrix must be " + std::to_string(r.n_g) + "x" +
                     std::to_string(r.n_g));
  const std::size_t m = r.n_h, d = r.d;
  ComplexMatrix out(m * d, m * d);
  for (std::size_t v = 0; v < r.n_g; ++v)
    for (std::size_t w = 0; w < r.n_g; ++w) {
      const Complex avw(a(v, w));
      if (avw == Complex{}) continue;
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) {
          const ComplexMatrix prod = r(v, x).matrix() * r(w, y).matrix();
          for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) out(x * d + i, y * d + j) += avw * prod(i, j);
        }
    }
  return out;
}

/// (id_m ⊗ tr/d): the m×m matrix of normalized block traces.
inline ComplexMatrix normalized_partial_trace(const ComplexMatrix& big, std::size_t m,
                                              std::size_t d) {
  if (big.rows() != m * d || big.cols() != m * d)
    throw InputError("normalized_partial_trace: dimension mismatch");
  ComplexMatrix out(m, m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      Complex s{};
      for (std::size_t i = 0; i < d; ++i) s += big(x * d + i, y * d + i);
      out(x, y) = s / static_cast<double>(d);
    }
  return out;
}

struct CbBoundReport {
  double zz_norm = 0.0;  ///< ||ZZ*||, the operator norm of the block matrix
  double theta = 0.0;    ///< ϑ(G)
  double diagonal_error = 0.0;  ///< max ||p_{v,v} − I||
  double edge_error = 0.0;      ///< max ||p_{v,w}|| over edges
  bool hypotheses_hold = false;
  bool pass = false;
};

/// ZZ* is the (n_g·d)-square block matrix with blocks p_{v,w} = Σ_x
/// E_{v,x}E_{w,x}. Its norm, which is the cb norm of φ_p, is compared with
/// ϑ(G)(1 + 1e-6). The block hypotheses p_{v,v} = I and p_{v,w} = 0 on edges
/// are checked first; the norm check only passes when they hold.
inline CbBoundReport cb_bound_check(const GameRepresentation& r, const Graph& g,
                                    double tol = 1e-8) {
  check_shape(r, "cb_bound_check");
  if (r.n_g != g.size()) throw InputError("cb_bound_check: vertex count mismatch");
  const std::size_t n = r.n_g, d = r.d;
  const auto id = ComplexMatrix::identity(d);
  ComplexMatrix zz(n * d, n * d);
  CbBoundReport rep;
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w) {
      ComplexMatrix block(d, d);
      for (std::size_t x = 0; x < r.n_h; ++x) block += r(v, x).matrix() * r(w, x).matrix();
      if (v == w) rep.diagonal_error = std::max(rep.diagonal_error, max_abs(block - id));
      else if (g.adjacent(v, w)) rep.edge_error = std::max(rep.edge_error, max_abs(block));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) zz(v * d + i, w * d + j) = block(i, j);
    }
  rep.hypotheses_hold = rep.diagonal_error <= tol && rep.edge_error <= tol;
  rep.zz_norm = max_eigenvalue(HermMatrix(zz));
  rep.theta = lovasz_theta(g).value;
  rep.pass = rep.hypotheses_hold && rep.zz_norm <= rep.theta * (1.0 + 1e-6);
  return rep;
}

}  // namespace qgh
