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

#include "omi/graph.h"

#include <queue>
#include <stdexcept>

namespace omi {

std::optional<std::vector<std::uint8_t>> bipartition(const Graph& g) {
  constexpr std::uint8_t kUnset = 2;
  std::vector<std::uint8_t> colour(g.vertex_count, kUnset);
  if (g.left_count) {
    for (const Edge& e : g.edges) {
      if (e.u >= *g.left_count || e.v < *g.left_count) return std::nullopt;
    }
    for (std::size_t x = 0; x < g.vertex_count; ++x) {
      colour[x] = x < *g.left_count ? 0 : 1;
    }
    return colour;
  }
  std::vector<std::vector<Vertex>> adj(g.vertex_count);
  for (const Edge& e : g.edges) {
    if (e.u == e.v) return std::nullopt;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (Vertex s = 0; s < g.vertex_count; ++s) {
    if (colour[s] != kUnset) continue;
    colour[s] = 0;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      const Vertex x = q.front();
      q.pop();
      for (Vertex y : adj[x]) {
        if (colour[y] == kUnset) {
          colour[y] = colour[x] ^ 1;
          q.push(y);
        } else if (colour[y] == colour[x]) {
          return std::nullopt;
        }
      }
    }
  }
  return colour;
}

Graph as_bipartite(const Graph& g) {
  auto colour = bipartition(g);
  if (!colour) throw std::invalid_argument("graph is not bipartite");
  if (g.left_count) return g;
  std::vector<Vertex> relabel(g.vertex_count);
  std::size_t left = 0;
  for (std::size_t x = 0; x < g.vertex_count; ++x) {
    if ((*colour)[x] == 0) relabel[x] = static_cast<Vertex>(left++);
  }
  std::size_t right = left;
  for (std::size_t x = 0; x < g.vertex_count; ++x) {
    if ((*colour)[x] == 1) relabel[x] = static_cast<Vertex>(right++);
  }
  Graph out;
  out.vertex_count = g.vertex_count;
  out.left_count = left;
  out.edges.reserve(g.edges.size());
  for (const Edge& e : g.edges) {
    Vertex a = relabel[e.u];
    Vertex b = relabel[e.v];
    if (a > b) std::swap(a, b);
    out.edges.push_back({a, b});
  }
  return out;
}

bool is_matching(const Graph& g, const ElementSet& edges) {
  std::vector<std::uint8_t> used(g.vertex_count, 0);
  for (Element id : edges) {
    if (id >= g.edges.size()) throw std::out_of_range("edge id out of range");
    const Edge& e = g.edges[id];
    if (e.u == e.v || used[e.u] || used[e.v]) return false;
    used[e.u] = used[e.v] = 1;
  }
  return true;
}

}  // namespace omi
