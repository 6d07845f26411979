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

// Independent brute-force oracles shared by the unit and acceptance suites.
// Nothing here calls the search or solver code under test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <set>
#include <vector>

#include "qgh/qgh.hpp"

namespace qgh::testing {

/// All m^n functions [n] -> [m], in odometer order.
inline std::vector<std::vector<Vertex>> all_maps(std::size_t n, std::size_t m) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> f(n, 0);
  for (;;) {
    out.push_back(f);
    std::size_t i = 0;
    while (i < n && ++f[i] == m) f[i++] = 0;
    if (i == n) break;
  }
  return out;
}

/// Edge check written directly against the adjacency relation.
inline bool preserves_edges(const std::vector<Vertex>& f, const Graph& g, const Graph& h) {
  for (Vertex u = 0; u < g.size(); ++u)
    for (Vertex v = 0; v < g.size(); ++v)
      if (g.adjacent(u, v) && !h.adjacent(f[u], f[v])) return false;
  return true;
}

inline std::vector<std::vector<Vertex>> brute_homomorphisms(const Graph& g, const Graph& h) {
  std::vector<std::vector<Vertex>> out;
  for (auto& f : all_maps(g.size(), h.size()))
    if (preserves_edges(f, g, h)) out.push_back(f);
  return out;
}

inline std::size_t brute_chromatic(const Graph& g) {
  for (std::size_t c = 1;; ++c)
    if (!brute_homomorphisms(g, complete_graph(c)).empty()) return c;
}

inline std::size_t brute_clique(const Graph& g) {
  const std::size_t n = g.size();
  std::size_t best = 1;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<Vertex> s;
    for (Vertex v = 0; v < n; ++v)
      if (mask & (1u << v)) s.push_back(v);
    bool clique = true;
    for (std::size_t i = 0; i < s.size() && clique; ++i)
      for (std::size_t j = i + 1; j < s.size() && clique; ++j) clique = g.adjacent(s[i], s[j]);
    if (clique) best = std::max(best, s.size());
  }
  return best;
}

inline bool isomorphic(const Graph& a, const Graph& b) {
  if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
  std::vector<Vertex> perm(a.size());
  for (Vertex v = 0; v < a.size(); ++v) perm[v] = v;
  do {
    bool ok = true;
    for (auto [u, v] : a.edges())
      if (!b.adjacent(perm[u], perm[v])) {
        ok = false;
        break;
      }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// The graph on n vertices whose edges are the set bits of `mask` over the
/// pairs (i<j) in lexicographic order.
inline Graph graph_from_mask(std::size_t n, std::uint32_t mask) {
  std::vector<Edge> e;
  std::size_t bit = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v, ++bit)
      if (mask & (1u << bit)) e.emplace_back(u, v);
  return Graph(n, e);
}

/// One representative per isomorphism class of graphs on n vertices.
inline std::vector<Graph> unlabeled_graphs(std::size_t n) {
  std::vector<Graph> reps;
  const std::size_t pairs = n * (n - 1) / 2;
  for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
    Graph g = graph_from_mask(n, mask);
    bool seen = false;
    for (const auto& r : reps)
      if (isomorphic(g, r)) {
        seen = true;
        break;
      }
    if (!seen) reps.push_back(std::move(g));
  }
  return reps;
}

/// Every unlabeled graph with 1..max_n vertices (18 graphs for max_n = 4).
inline std::vector<Graph> small_graphs(std::size_t max_n) {
  std::vector<Graph> out;
  for (std::size_t n = 1; n <= max_n; ++n)
    for (auto& g : unlabeled_graphs(n)) out.push_back(std::move(g));
  return out;
}

inline RealMatrix random_matrix(std::size_t n, Rng& rng) {
  RealMatrix a(n, n);
  for (auto& x : a.data()) x = rng.normal();
  return a;
}

inline RealMatrix random_nonneg_matrix(std::size_t n, Rng& rng) {
  RealMatrix a(n, n);
  for (auto& x : a.data()) x = rng.uniform();
  return a;
}

/// ϑ of an odd cycle in closed form.
inline double odd_cycle_theta(std::size_t n) {
  const double c = std::cos(std::numbers::pi / static_cast<double>(n));
  return static_cast<double>(n) * c / (1.0 + c);
}

/// Direct quadruple sum for the composed correlation, indexed independently of
/// the library's flattening.
inline double composed_entry(const Correlation& q, const Correlation& p, std::size_t v,
                             std::size_t w, std::size_t a, std::size_t b) {
  double s = 0.0;
  for (std::size_t x = 0; x < p.outputs(); ++x)
    for (std::size_t y = 0; y < p.outputs(); ++y) s += q(x, y, a, b) * p(v, w, x, y);
  return s;
}

}  // namespace qgh::testing
