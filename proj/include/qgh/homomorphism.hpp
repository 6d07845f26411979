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
/// Exact classical graph homomorphism algorithms: backtracking search and
/// enumeration, chromatic and clique numbers, idempotent powers of
/// endomorphisms, and cores via repeated retraction.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qgh/error.hpp"
#include "qgh/graph.hpp"

namespace qgh {

/// Total function V(G) -> V(H). `homomorphism` is only set by code that has
/// checked edge preservation.
struct VertexMap {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<Vertex> f;
  bool homomorphism = false;

  Vertex operator()(Vertex v) const { return f[v]; }
  bool operator==(const VertexMap& o) const {
    return n == o.n && m == o.m && f == o.f;
  }
};

inline bool is_homomorphism(const std::vector<Vertex>& f, const Graph& g,
                            const Graph& h) {
  if (f.size() != g.size()) return false;
  for (Vertex x : f)
    if (x >= h.size()) return false;
  for (auto [u, v] : g.edges())
    if (!h.adjacent(f[u], f[v])) return false;
  return true;
}

/// Checks the map against (G, H) and returns it with the flag set
/// accordingly. Throws on a partial or out-of-range map.
inline VertexMap make_vertex_map(std::vector<Vertex> f, const Graph& g,
                                 const Graph& h) {
  if (f.size() != g.size())
    throw InputError("vertex map length " + std::to_string(f.size()) +
                     " != source size " + std::to_string(g.size()));
  for (Vertex x : f)
    if (x >= h.size()) throw InputError("vertex map value out of range");
  VertexMap out{g.size(), h.size(), std::move(f), false};
  out.homomorphism = is_homomorphism(out.f, g, h);
  return out;
}

/// g ∘ f.
inline VertexMap compose_maps(const VertexMap& g, const VertexMap& f) {
  if (f.m != g.n) throw InputError("compose_maps: shape mismatch");
  VertexMap out{f.n, g.m, std::vector<Vertex>(f.n), false};
  for (Vertex v = 0; v < f.n; ++v) out.f[v] = g.f[f.f[v]];
  out.homomorphism = f.homomorphism && g.homomorphism;
  return out;
}

namespace detail {

// Vertices by descending degree, ties by ascending index.
inline std::vector<Vertex> search_order(const Graph& g) {
  std::vector<Vertex> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return g.degree(a) > g.degree(b);
  });
  return order;
}

// Calls `visit` on each homomorphism in deterministic order until it
// returns false.
inline void for_each_homomorphism(const Graph& g, const Graph& h,
                                  const std::function<bool(const std::vector<Vertex>&)>& visit) {
  const auto order = search_order(g);
  const std::size_t n = g.size();
  constexpr Vertex unset = static_cast<Vertex>(-1);
  std::vector<Vertex> f(n, unset);
  // Neighbours of order[i] that appear earlier in the order.
  std::vector<std::vector<Vertex>> earlier(n);
  {
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
    for (std::size_t i = 0; i < n; ++i)
      for (Vertex w : g.neighbours(order[i]))
        if (pos[w] < i) earlier[i].push_back(w);
  }
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (stop) return;
    if (depth == n) {
      if (!visit(f)) stop = true;
      return;
    }
    const Vertex v = order[depth];
    for (Vertex x = 0; x < h.size() && !stop; ++x) {
      bool ok = true;
      for (Vertex w : earlier[depth])
        if (!h.adjacent(x, f[w])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      f[v] = x;
      rec(depth + 1);
    }
    f[v] = unset;
  };
  rec(0);
}

}  // namespace detail

/// First homomorphism G -> H in the deterministic search order (vertices by
/// descending degree, targets ascending), or nullopt when none exists.
inline std::optional<VertexMap> find_homomorphism(const Graph& g, const Graph& h) {
  std::optional<VertexMap> found;
  detail::for_each_homomorphism(g, h, [&](const std::vector<Vertex>& f) {
    found = VertexMap{g.size(), h.size(), f, true};
    return false;
  });
  return found;
}

/// All homomorphisms G -> H. Without an explicit `limit`, refuses inputs with
/// m^n > 10^6; with one, stops after `limit` maps.
inline std::vector<VertexMap> enumerate_homomorphisms(
    const Graph& g, const Graph& h, std::optional<std::size_t> limit = std::nullopt) {
  if (!limit) {
    const double space = std::pow(static_cast<double>(h.size()),
                                  static_cast<double>(g.size()));
    if (space > 1e6)
      throw SizeGuardError("enumerate_homomorphisms: m^n = " + std::to_string(space) +
                           " exceeds 10^6; pass an explicit limit");
  }
  std::vector<VertexMap> out;
  detail::for_each_homomorphism(g, h, [&](const std::vector<Vertex>& f) {
    out.push_back(VertexMap{g.size(), h.size(), f, true});
    return !limit || out.size() < *limit;
  });
  return out;
}

inline constexpr std::size_t kExactGuard = 40;

/// Least c with a homomorphism G -> K_c.
inline std::size_t chromatic_number(const Graph& g) {
  if (g.size() > kExactGuard)
    throw SizeGuardError("chromatic_number: n > " + std::to_string(kExactGuard));
  for (std::size_t c = 1;; ++c)
    if (find_homomorphism(g, complete_graph(c))) return c;
}

/// Maximum clique size by branch and bound on candidate sets.
inline std::size_t clique_number(const Graph& g) {
  if (g.size() > kExactGuard)
    throw SizeGuardError("clique_number: n > " + std::to_string(kExactGuard));
  std::size_t best = 0;
  std::function<void(std::size_t, std::vector<Vertex>)> expand =
      [&](std::size_t size, std::vector<Vertex> cand) {
        if (cand.empty()) {
          best = std::max(best, size);
          return;
        }
        while (!cand.empty()) {
          if (size + cand.size() <= best) return;
          const Vertex v = cand.back();
          cand.pop_back();
          std::vector<Vertex> next;
          for (Vertex w : cand)
            if (g.adjacent(v, w)) next.push_back(w);
          expand(size + 1, std::move(next));
        }
        best = std::max(best, size);
      };
  std::vector<Vertex> all(g.size());
  std::iota(all.begin(), all.end(), 0);
  expand(0, all);
  return best;
}

struct IdempotentPower {
  std::size_t k = 0;
  VertexMap power;  ///< f^k, satisfies power ∘ power = power
};

/// Smallest k along f, f², f³, ... with f^k idempotent.
inline IdempotentPower iterate_to_idempotent(const VertexMap& f, const Graph& g) {
  if (f.n != g.size() || f.m != g.size() || !is_homomorphism(f.f, g, g))
    throw InputError("iterate_to_idempotent: not an endomorphism of the graph");
  VertexMap power = f;
  power.homomorphism = true;
  std::set<std::vector<Vertex>> seen;
  for (std::size_t k = 1;; ++k) {
    if (compose_maps(power, power).f == power.f) return {k, power};
    // The power sequence is eventually periodic and its cycle contains an
    // idempotent, so a repeat before success is impossible.
    if (!seen.insert(power.f).second)
      throw SolverError("iterate_to_idempotent: power cycle without idempotent");
    power = compose_maps(f, power);
  }
}

/// Graph on f(V(G)) with (x, y) an edge iff some edge (v, w) of G has
/// f(v) = x, f(w) = y; `to_parent` lists the image vertices ascending.
inline InducedSubgraph image_graph(const VertexMap& f, const Graph& g) {
  std::set<Vertex> img(f.f.begin(), f.f.end());
  std::vector<Vertex> verts(img.begin(), img.end());
  std::map<Vertex, Vertex> index;
  for (std::size_t i = 0; i < verts.size(); ++i) index[verts[i]] = i;
  std::vector<Edge> e;
  for (auto [u, v] : g.edges()) {
    const Vertex a = index[f.f[u]];
    const Vertex b = index[f.f[v]];
    if (a == b) throw InputError("image_graph: map collapses an edge");
    e.emplace_back(a, b);
  }
  return {Graph(verts.size(), e), verts};
}

struct RetractionStep {
  std::vector<Vertex> domain;   ///< vertices (original labels) before the step
  std::vector<Vertex> mapping;  ///< retraction, mapping[i] is the image of domain[i]
  std::size_t power = 0;        ///< k with (endomorphism)^k idempotent
  std::vector<Vertex> image;    ///< vertices (original labels) kept
};

struct CoreResult {
  Graph core;
  std::vector<Vertex> vertices;  ///< core vertex i is original vertex vertices[i]
  std::vector<RetractionStep> chain;
};

inline constexpr std::size_t kCoreGuard = 20;

namespace detail {

// Endomorphism of `g` avoiding vertex `u` in its image, if any.
inline std::optional<VertexMap> endomorphism_avoiding(const Graph& g, Vertex u) {
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < g.size(); ++v)
    if (v != u) rest.push_back(v);
  const auto sub = induced_subgraph(g, rest);
  auto h = find_homomorphism(g, sub.graph);
  if (!h) return std::nullopt;
  VertexMap out{g.size(), g.size(), std::vector<Vertex>(g.size()), true};
  for (Vertex v = 0; v < g.size(); ++v) out.f[v] = sub.to_parent[h->f[v]];
  return out;
}

}  // namespace detail

/// True iff every endomorphism of `g` is surjective (exhaustive search).
inline bool is_core(const Graph& g) {
  if (g.size() == 1) return true;
  for (Vertex u = 0; u < g.size(); ++u)
    if (detail::endomorphism_avoiding(g, u)) return false;
  return true;
}

/// A core of G, reached by repeatedly retracting onto the image of an
/// idempotent power of a non-surjective endomorphism.
inline CoreResult classical_core(const Graph& g) {
  if (g.size() > kCoreGuard)
    throw SizeGuardError("classical_core: n > " + std::to_string(kCoreGuard));
  CoreResult out;
  out.vertices.resize(g.size());
  std::iota(out.vertices.begin(), out.vertices.end(), 0);
  Graph current = g;

  for (;;) {
    std::optional<VertexMap> shrink;
    if (current.size() > 1)
      for (Vertex u = 0; u < current.size() && !shrink; ++u)
        shrink = detail::endomorphism_avoiding(current, u);
    if (!shrink) break;

    const auto idem = iterate_to_idempotent(*shrink, current);
    const auto img = image_graph(idem.power, current);
    // For an idempotent endomorphism the pushed-forward graph is the induced
    // subgraph on the image.
    if (!(induced_subgraph(current, img.to_parent).graph == img.graph))
      throw SolverError("classical_core: image graph differs from induced subgraph");

    RetractionStep step;
    step.domain = out.vertices;
    step.power = idem.k;
    for (Vertex v = 0; v < current.size(); ++v)
      step.mapping.push_back(out.vertices[idem.power.f[v]]);
    std::vector<Vertex> kept;
    for (Vertex x : img.to_parent) kept.push_back(out.vertices[x]);
    step.image = kept;
    out.chain.push_back(std::move(step));

    out.vertices = kept;
    current = img.graph;
  }
  if (!is_core(current)) throw SolverError("classical_core: result is not a core");
  out.core = current;
  return out;
}

}  // namespace qgh
