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

#ifndef OMI_GRAPH_H_
#define OMI_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "omi/element_set.h"

namespace omi {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected multigraph whose edges are the ground elements: edge i has
// element id i. When `left_count` is set the graph is bipartite with sides
// [0, left_count) and [left_count, vertex_count), and every edge has
// u < left_count <= v.
struct Graph {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;
  std::optional<std::size_t> left_count;

  std::size_t edge_count() const { return edges.size(); }
};

// Two-colouring of the vertices (0 = left, 1 = right), or nullopt if the
// graph has an odd cycle or a self-loop. Respects `left_count` when present.
std::optional<std::vector<std::uint8_t>> bipartition(const Graph& g);

// Returns a copy with `left_count` set and every edge oriented left-to-right,
// with vertices relabelled so that the left side is a prefix. Throws
// std::invalid_argument if the graph is not bipartite. Edge ids are kept.
Graph as_bipartite(const Graph& g);

// True iff the edges in `edges` pairwise share no endpoint.
bool is_matching(const Graph& g, const ElementSet& edges);

}  // namespace omi

#endif  // OMI_GRAPH_H_
