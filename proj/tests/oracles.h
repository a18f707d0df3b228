// Copyright 2026 The Authors.
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

// Test-only reference implementations and random generators. Nothing here
// calls into the library's algorithms; the point is to have a second,
// independently written answer for every quantity the tests check.

#ifndef OMI_TESTS_ORACLES_H_
#define OMI_TESTS_ORACLES_H_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <vector>

#include "omi/graph.h"
#include "omi/matroid.h"

namespace omi::testing {

using Rng = std::mt19937_64;

inline std::uint32_t uniform(Rng& rng, std::uint32_t lo, std::uint32_t hi) {
  return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
}

using Subset = std::vector<Element>;
using IndepFn = std::function<bool(const Subset&)>;

// Acyclicity by depth-first search over an adjacency list: a forest on V
// vertices with c components has exactly V - c edges.
inline bool is_forest(std::size_t vertex_count, const std::vector<Edge>& edges,
                      const Subset& xs) {
  std::vector<std::vector<Vertex>> adj(vertex_count);
  for (Element e : xs) {
    if (edges[e].u == edges[e].v) return false;
    adj[edges[e].u].push_back(edges[e].v);
    adj[edges[e].v].push_back(edges[e].u);
  }
  std::vector<char> seen(vertex_count, 0);
  std::size_t components = 0;
  for (Vertex s = 0; s < vertex_count; ++s) {
    if (seen[s]) continue;
    ++components;
    std::vector<Vertex> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : adj[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return xs.size() == vertex_count - components;
}

inline bool fits_partition(const std::vector<std::uint32_t>& class_of,
                           const std::vector<std::uint32_t>& capacity,
                           const Subset& xs) {
  std::vector<std::uint32_t> load(capacity.size(), 0);
  for (Element e : xs) {
    if (++load[class_of[e]] > capacity[class_of[e]]) return false;
  }
  return true;
}

inline Subset subset_of(const Subset& ground, std::uint32_t mask) {
  Subset out;
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (mask >> i & 1u) out.push_back(ground[i]);
  }
  return out;
}

// Largest independent subset of `xs`, by enumeration.
inline std::size_t exhaustive_rank(const IndepFn& indep, const Subset& xs) {
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << xs.size()); ++mask) {
    auto s = subset_of(xs, mask);
    if (s.size() > best && indep(s)) best = s.size();
  }
  return best;
}

// Largest set independent under both predicates, by enumeration.
inline std::size_t exhaustive_common(const IndepFn& a, const IndepFn& b,
                                     const Subset& ground) {
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << ground.size()); ++mask) {
    auto s = subset_of(ground, mask);
    if (s.size() > best && a(s) && b(s)) best = s.size();
  }
  return best;
}

// Largest matching by enumerating edge subsets and checking endpoints
// pairwise.
inline std::size_t exhaustive_matching(const Graph& g) {
  const std::size_t m = g.edges.size();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::size_t count = std::popcount(mask);
    if (count <= best) continue;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      if (g.edges[i].u == g.edges[i].v) ok = false;
      for (std::size_t j = i + 1; j < m && ok; ++j) {
        if (!(mask >> j & 1u)) continue;
        const Edge a = g.edges[i], b = g.edges[j];
        if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) ok = false;
      }
    }
    if (ok) best = count;
  }
  return best;
}

struct PartitionSpec {
  std::vector<std::uint32_t> class_of;
  std::vector<std::uint32_t> capacity;
};

inline PartitionSpec random_partition(Rng& rng, std::size_t m,
                                      std::uint32_t max_classes,
                                      std::uint32_t max_cap) {
  PartitionSpec p;
  const std::uint32_t classes = uniform(rng, 1, max_classes);
  for (std::size_t e = 0; e < m; ++e) {
    p.class_of.push_back(uniform(rng, 0, classes - 1));
  }
  for (std::uint32_t c = 0; c < classes; ++c) {
    p.capacity.push_back(uniform(rng, 0, max_cap));
  }
  return p;
}

inline Graph random_multigraph(Rng& rng, std::size_t n, std::size_t m,
                               bool loops) {
  Graph g;
  g.vertex_count = n;
  for (std::size_t i = 0; i < m; ++i) {
    Vertex u = uniform(rng, 0, n - 1), v = uniform(rng, 0, n - 1);
    while (!loops && u == v && n > 1) v = uniform(rng, 0, n - 1);
    g.edges.push_back({u, v});
  }
  return g;
}

inline Graph random_bipartite(Rng& rng, std::size_t left, std::size_t right,
                              std::size_t m) {
  Graph g;
  g.vertex_count = left + right;
  g.left_count = left;
  for (std::size_t i = 0; i < m; ++i) {
    g.edges.push_back({uniform(rng, 0, left - 1),
                       static_cast<Vertex>(left + uniform(rng, 0, right - 1))});
  }
  return g;
}

// A random matroid from one of the concrete families, together with a
// reference predicate written without the library.
struct RandomMatroid {
  MatroidPtr matroid;
  IndepFn reference;
};

inline RandomMatroid random_matroid(Rng& rng, std::size_t m) {
  switch (uniform(rng, 0, 2)) {
    case 0: {
      auto p = random_partition(rng, m, 4, 2);
      auto fn = [p](const Subset& xs) {
        return fits_partition(p.class_of, p.capacity, xs);
      };
      return {std::make_shared<PartitionMatroid>(p.class_of, p.capacity), fn};
    }
    case 1: {
      const std::size_t k = uniform(rng, 0, static_cast<std::uint32_t>(m));
      return {std::make_shared<UniformMatroid>(m, k),
              [k](const Subset& xs) { return xs.size() <= k; }};
    }
    default: {
      const std::size_t n = uniform(rng, 2, 5);
      auto g = random_multigraph(rng, n, m, true);
      auto fn = [n, edges = g.edges](const Subset& xs) {
        return is_forest(n, edges, xs);
      };
      return {std::make_shared<GraphicMatroid>(n, g.edges), fn};
    }
  }
}

}  // namespace omi::testing

#endif  // OMI_TESTS_ORACLES_H_
