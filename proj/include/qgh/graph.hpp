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
/// Finite simple graphs: construction, complement, induced subgraphs, the
/// support pattern of the graph's operator system, and text parsing.

#include <algorithm>
#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgh/error.hpp"

namespace qgh {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;  ///< always stored with first < second

/// Loop-free undirected graph on vertices 0..n-1. Immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from unordered pairs. Duplicates (in either orientation)
  /// collapse; loops and out-of-range endpoints throw.
  Graph(std::size_t n, const std::vector<Edge>& edges) : n_(n), adj_(n * n, 0) {
    if (n == 0) throw InputError("graph must have at least one vertex");
    std::set<Edge> canon;
    for (auto [u, v] : edges) {
      if (u >= n || v >= n)
        throw InputError("edge endpoint out of range: {" + std::to_string(u) +
                         "," + std::to_string(v) + "}");
      if (u == v) throw InputError("loop edge at vertex " + std::to_string(u));
      canon.insert({std::min(u, v), std::max(u, v)});
    }
    edges_.assign(canon.begin(), canon.end());
    for (auto [u, v] : edges_) adj_[u * n + v] = adj_[v * n + u] = 1;
  }

  std::size_t size() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Edges sorted lexicographically with u < v.
  const std::vector<Edge>& edges() const { return edges_; }

  bool adjacent(Vertex u, Vertex v) const { return adj_[u * n_ + v] != 0; }

  std::size_t degree(Vertex v) const {
    std::size_t d = 0;
    for (Vertex w = 0; w < n_; ++w) d += adj_[v * n_ + w];
    return d;
  }

  std::vector<Vertex> neighbours(Vertex v) const {
    std::vector<Vertex> out;
    for (Vertex w = 0; w < n_; ++w)
      if (adjacent(v, w)) out.push_back(w);
    return out;
  }

  bool operator==(const Graph& o) const {
    return n_ == o.n_ && edges_ == o.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<unsigned char> adj_;
};

/// Ordered index pairs spanning the operator system of a graph: the
/// diagonal plus both orientations of every edge.
struct SupportSet {
  std::size_t n = 0;
  std::set<std::pair<std::size_t, std::size_t>> pairs;

  bool contains(std::size_t i, std::size_t j) const {
    return pairs.count({i, j}) != 0;
  }
};

inline Graph complete_graph(std::size_t c) {
  if (c == 0) throw InputError("complete_graph: zero vertex count");
  std::vector<Edge> e;
  for (Vertex u = 0; u < c; ++u)
    for (Vertex v = u + 1; v < c; ++v) e.emplace_back(u, v);
  return Graph(c, e);
}

inline Graph empty_graph(std::size_t m) {
  if (m == 0) throw InputError("empty_graph: zero vertex count");
  return Graph(m, {});
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InputError("cycle_graph: need at least 3 vertices");
  std::vector<Edge> e;
  for (Vertex v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return Graph(n, e);
}

inline Graph path_graph(std::size_t n) {
  if (n == 0) throw InputError("path_graph: zero vertex count");
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph(n, e);
}

/// Outer 5-cycle 0..4, inner pentagram 5..9, spokes v -- v+5.
inline Graph petersen_graph() {
  std::vector<Edge> e;
  for (Vertex v = 0; v < 5; ++v) {
    e.emplace_back(v, (v + 1) % 5);
    e.emplace_back(5 + v, 5 + (v + 2) % 5);
    e.emplace_back(v, v + 5);
  }
  return Graph(10, e);
}

inline Graph complement(const Graph& g) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < g.size(); ++u)
    for (Vertex v = u + 1; v < g.size(); ++v)
      if (!g.adjacent(u, v)) e.emplace_back(u, v);
  return Graph(g.size(), e);
}

inline SupportSet operator_system_support(const Graph& g) {
  SupportSet s{g.size(), {}};
  for (Vertex v = 0; v < g.size(); ++v) s.pairs.insert({v, v});
  for (auto [u, v] : g.edges()) {
    s.pairs.insert({u, v});
    s.pairs.insert({v, u});
  }
  return s;
}

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_parent;  ///< new index -> original vertex
};

/// Subgraph induced on `subset`; new labels follow ascending original order.
inline InducedSubgraph induced_subgraph(const Graph& g,
                                        std::vector<Vertex> subset) {
  if (subset.empty()) throw InputError("induced_subgraph: empty vertex set");
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  if (subset.back() >= g.size())
    throw InputError("induced_subgraph: vertex out of range");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = i + 1; j < subset.size(); ++j)
      if (g.adjacent(subset[i], subset[j])) e.emplace_back(i, j);
  return {Graph(subset.size(), e), subset};
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

// Reads exactly `count` non-negative integers from `s`, rejecting trailing junk.
inline std::vector<long long> read_ints(const std::string& s, std::size_t count,
                                        std::size_t line) {
  std::istringstream in(s);
  std::vector<long long> out(count);
  for (auto& x : out)
    if (!(in >> x)) parse_fail(line, "expected " + std::to_string(count) +
                                         " integers in '" + s + "'");
  std::string rest;
  if (in >> rest) parse_fail(line, "unexpected token '" + rest + "'");
  for (auto x : out)
    if (x < 0) parse_fail(line, "negative vertex index");
  return out;
}

}  // namespace detail

/// Parses either the edge-list format (first data line `n`, then `u v`
/// 0-indexed pairs, `#` comments) or DIMACS `.col` (`c` comments,
/// `p edge n m`, `e u v` 1-indexed). Errors name the offending line.
inline Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  bool dimacs = false;
  bool have_n = false;
  std::size_t n = 0;
  std::vector<Edge> edges;

  auto add_edge = [&](long long u, long long v, std::size_t line) {
    if (static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
      detail::parse_fail(line, "vertex out of range (n=" + std::to_string(n) + ")");
    if (u == v) detail::parse_fail(line, "loop edge at vertex " + std::to_string(u));
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::trim(raw);
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line = detail::trim(line.substr(0, hash));
    if (line.empty()) continue;

    if (!have_n) {
      if (line[0] == 'c' && (line.size() == 1 || line[1] == ' ')) continue;
      if (line[0] == 'p') {
        std::istringstream ps(line);
        std::string p, kind;
        long long nv = -1, ne = -1;
        if (!(ps >> p >> kind >> nv >> ne) || p != "p" ||
            (kind != "edge" && kind != "col") || nv <= 0 || ne < 0)
          detail::parse_fail(lineno, "malformed DIMACS problem line");
        dimacs = true;
        n = static_cast<std::size_t>(nv);
      } else {
        const auto v = detail::read_ints(line, 1, lineno);
        if (v[0] == 0) detail::parse_fail(lineno, "vertex count must be positive");
        n = static_cast<std::size_t>(v[0]);
      }
      have_n = true;
      continue;
    }

    if (dimacs) {
      if (line[0] == 'c' && (line.size() == 1 || line[1] == ' ')) continue;
      if (line[0] != 'e' || line.size() < 2 || line[1] != ' ')
        detail::parse_fail(lineno, "expected 'e u v'");
      const auto uv = detail::read_ints(line.substr(2), 2, lineno);
      if (uv[0] == 0 || uv[1] == 0)
        detail::parse_fail(lineno, "DIMACS vertices are 1-indexed");
      add_edge(uv[0] - 1, uv[1] - 1, lineno);
    } else {
      const auto uv = detail::read_ints(line, 2, lineno);
      add_edge(uv[0], uv[1], lineno);
    }
  }
  if (!have_n) throw InputError("empty graph description");
  return Graph(n, edges);
}

/// Canonical edge-list text: `n` then sorted `u v` lines.
inline std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << g.size() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

}  // namespace qgh
