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
/// JSON encodings of the data model. Needs nlohmann/json (vendor/json.hpp).
///
///   Graph            {"n": 5, "edges": [[0,1], ...]}
///   Correlation      {"n": .., "m": .., "p": [v][w][x][y]}
///   GramWitness      {"n": .., "m": .., "nm": .., "M": [..], "nonneg_mode": true}
///   ChoiMap          {"n": .., "m": .., "choi": [..]}
///   VertexMap        {"n": .., "m": .., "f": [..]}
///   representation   {"d": .., "nG": .., "nH": .., "E": [v][x] {"re": [..], "im": [..]}}
///
/// Matrices are row-major flat arrays (length d² inside "E", (nm)² for M and
/// choi). Doubles are written in shortest round-trip form.

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qgh/correlation.hpp"
#include "qgh/cp_map.hpp"
#include "qgh/error.hpp"
#include "qgh/game_algebra.hpp"
#include "qgh/graph.hpp"
#include "qgh/homomorphism.hpp"

namespace qgh {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(std::string(what) + ": missing field \"" + key + "\"");
  return j.at(key);
}

inline std::size_t count_field(const Json& j, const char* key, const char* what) {
  const Json& v = field(j, key, what);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw InputError(std::string(what) + ": \"" + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

inline double number(const Json& v, const char* what) {
  if (!v.is_number()) throw InputError(std::string(what) + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InputError(std::string(what) + ": non-finite number");
  return x;
}

inline const Json& array_of(const Json& v, std::size_t len, const char* what) {
  if (!v.is_array() || v.size() != len)
    throw InputError(std::string(what) + ": expected an array of length " + std::to_string(len));
  return v;
}

inline Json matrix_json(const RealMatrix& a) {
  Json flat = Json::array();
  for (double x : a.data()) flat.push_back(x);
  return flat;
}

inline RealMatrix matrix_from_json(const Json& j, std::size_t n, const char* what) {
  array_of(j, n * n, what);
  RealMatrix a(n, n);
  for (std::size_t k = 0; k < n * n; ++k) a.data()[k] = number(j[k], what);
  return a;
}

}  // namespace detail

inline Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return Json{{"n", g.size()}, {"edges", edges}};
}

inline Graph graph_from_json(const Json& j) {
  const std::size_t n = detail::count_field(j, "n", "graph");
  const Json& e = detail::field(j, "edges", "graph");
  if (!e.is_array()) throw InputError("graph: \"edges\" must be an array");
  std::vector<Edge> edges;
  for (const auto& pair : e) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned() ||
        !pair[1].is_number_unsigned())
      throw InputError("graph: each edge must be a pair of non-negative integers");
    edges.emplace_back(pair[0].get<Vertex>(), pair[1].get<Vertex>());
  }
  return Graph(n, edges);
}

inline Json to_json(const Correlation& p) {
  const std::size_t n = p.inputs(), m = p.outputs();
  Json vs = Json::array();
  for (std::size_t v = 0; v < n; ++v) {
    Json ws = Json::array();
    for (std::size_t w = 0; w < n; ++w) {
      Json xs = Json::array();
      for (std::size_t x = 0; x < m; ++x) {
        Json ys = Json::array();
        for (std::size_t y = 0; y < m; ++y) ys.push_back(p(v, w, x, y));
        xs.push_back(std::move(ys));
      }
      ws.push_back(std::move(xs));
    }
    vs.push_back(std::move(ws));
  }
  return Json{{"n", n}, {"m", m}, {"p", vs}};
}

/// Shape-checked; probabilistic validity is left to the consumer.
inline Correlation correlation_from_json(const Json& j) {
  const std::size_t n = detail::count_field(j, "n", "correlation");
  const std::size_t m = detail::count_field(j, "m", "correlation");
  if (n == 0 || m == 0) throw InputError("correlation: n and m must be >= 1");
  const Json& a = detail::array_of(detail::field(j, "p", "correlation"), n, "correlation p");
  Correlation p(n, m);
  for (std::size_t v = 0; v < n; ++v) {
    detail::array_of(a[v], n, "correlation p[v]");
    for (std::size_t w = 0; w < n; ++w) {
      detail::array_of(a[v][w], m, "correlation p[v][w]");
      for (std::size_t x = 0; x < m; ++x) {
        detail::array_of(a[v][w][x], m, "correlation p[v][w][x]");
        for (std::size_t y = 0; y < m; ++y)
          p(v, w, x, y) = detail::number(a[v][w][x][y], "correlation entry");
      }
    }
  }
  return p;
}

inline Json to_json(const GramWitness& w) {
  return Json{{"n", w.n},
              {"m", w.m},
              {"nm", w.n * w.m},
              {"M", detail::matrix_json(w.gram.matrix())},
              {"nonneg_mode", w.nonneg_mode}};
}

inline GramWitness witness_from_json(const Json& j) {
  GramWitness w;
  w.n = detail::count_field(j, "n", "witness");
  w.m = detail::count_field(j, "m", "witness");
  w.gram = SymMatrix(detail::matrix_from_json(detail::field(j, "M", "witness"), w.n * w.m,
                                              "witness M"));
  if (j.contains("nonneg_mode")) w.nonneg_mode = j.at("nonneg_mode").get<bool>();
  return w;
}

inline Json to_json(const ChoiMap& c) {
  return Json{{"n", c.n}, {"m", c.m}, {"choi", detail::matrix_json(c.choi.matrix())}};
}

inline Json to_json(const VertexMap& f) {
  return Json{{"n", f.n}, {"m", f.m}, {"f", f.f}};
}

inline VertexMap vertex_map_from_json(const Json& j) {
  VertexMap f;
  f.n = detail::count_field(j, "n", "vertex map");
  f.m = detail::count_field(j, "m", "vertex map");
  const Json& a = detail::array_of(detail::field(j, "f", "vertex map"), f.n, "vertex map f");
  for (const auto& x : a) {
    if (!x.is_number_unsigned() || x.get<std::size_t>() >= f.m)
      throw InputError("vertex map: image out of range");
    f.f.push_back(x.get<Vertex>());
  }
  return f;
}

inline Json to_json(const GameRepresentation& r) {
  Json e = Json::array();
  for (std::size_t v = 0; v < r.n_g; ++v) {
    Json row = Json::array();
    for (std::size_t x = 0; x < r.n_h; ++x) {
      Json re = Json::array(), im = Json::array();
      for (const auto& z : r(v, x).matrix().data()) {
        re.push_back(z.real());
        im.push_back(z.imag());
      }
      row.push_back(Json{{"re", re}, {"im", im}});
    }
    e.push_back(std::move(row));
  }
  return Json{{"d", r.d}, {"nG", r.n_g}, {"nH", r.n_h}, {"E", e}};
}

/// Rejects blocks that are not Hermitian within 1e-8 rather than silently
/// symmetrizing them. "im" may be omitted for real blocks.
inline GameRepresentation representation_from_json(const Json& j) {
  const std::size_t d = detail::count_field(j, "d", "representation");
  const std::size_t ng = detail::count_field(j, "nG", "representation");
  const std::size_t nh = detail::count_field(j, "nH", "representation");
  if (d == 0 || ng == 0 || nh == 0) throw InputError("representation: d, nG, nH must be >= 1");
  const Json& e = detail::array_of(detail::field(j, "E", "representation"), ng, "representation E");
  GameRepresentation r(d, ng, nh);
  for (std::size_t v = 0; v < ng; ++v) {
    detail::array_of(e[v], nh, "representation E[v]");
    for (std::size_t x = 0; x < nh; ++x) {
      const Json& block = e[v][x];
      const Json& re = detail::array_of(detail::field(block, "re", "representation block"), d * d,
                                        "representation re");
      ComplexMatrix m(d, d);
      for (std::size_t k = 0; k < d * d; ++k)
        m.data()[k] = Complex(detail::number(re[k], "representation re"), 0.0);
      if (block.contains("im")) {
        const Json& im = detail::array_of(block.at("im"), d * d, "representation im");
        for (std::size_t k = 0; k < d * d; ++k)
          m.data()[k] += Complex(0.0, detail::number(im[k], "representation im"));
      }
      if (max_abs(m - adjoint(m)) > 1e-8)
        throw InputError("representation: E[" + std::to_string(v) + "][" + std::to_string(x) +
                         "] is not Hermitian");
      r(v, x) = HermMatrix(m);
    }
  }
  return r;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(origin + ": invalid JSON: " + e.what());
  }
}

/// A graph file: JSON when the first non-blank character is '{', otherwise
/// the edge-list or DIMACS text formats.
inline Graph load_graph(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && text[first] == '{')
      return graph_from_json(parse_json(text, path));
    return parse_graph(text);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace qgh
