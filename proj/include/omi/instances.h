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

// Instance generators. Every generator is a pure function of its arguments.

#ifndef OMI_INSTANCES_H_
#define OMI_INSTANCES_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "omi/graph.h"
#include "omi/matroid.h"

namespace omi {

struct Instance {
  std::string family;
  // Present for graph families; edge i is element i.
  std::optional<Graph> graph;
  // Matroid encoding over [0, ground_size). Empty for non-bipartite graphs,
  // whose matchings are not an intersection of two matroids.
  std::vector<MatroidPtr> matroids;
  std::size_t ground_size = 0;
  // Optimum known from the construction, for families where no exact
  // polynomial method applies (general graphs, k >= 3 matroids).
  std::optional<std::size_t> known_opt;

  std::vector<const Matroid*> matroid_ptrs() const;
};

// M1 = partition by left endpoint, M2 = partition by right endpoint, all
// capacities 1. The graph needs `left_count` with edges oriented left to
// right (see as_bipartite).
std::vector<MatroidPtr> bipartite_partition_pair(const Graph& g);

// |U1| = |V1| = n1, |U2| = |V2| = n2; perfect matchings U1-V1 and U2-V2
// plus the complete graph between U2 and V1. Vertices: U1, U2 on the left
// then V1, V2 on the right. Elements: the U1-V1 matching, the U2-V2
// matching, then the U2-V1 block in row-major order.
Instance gen_thick_z(std::size_t n1, std::size_t n2);

// Two one-by-one Thick-Z graphs joined by a single edge between the degree-2
// left vertex of the first and the degree-2 right vertex of the second.
// 7 edges, maximum matching 4.
Instance gen_joined_thick_z();

// K_n plus one pendant edge at each clique vertex. Vertices [0, n) form the
// clique, vertex n + i is the pendant of i. Elements: clique edges in
// lexicographic order, then pendants. Maximum matching n.
Instance gen_bomb(std::size_t n);

// Superposition of d random perfect matchings on n + n vertices, repaired
// to avoid parallel edges. std::invalid_argument if d > n.
Instance gen_regular_bipartite(std::size_t n, std::size_t d,
                               std::uint64_t seed);

// Each of the n * n pairs is an edge with probability `prob`.
Instance gen_er_bipartite(std::size_t n, double prob, std::uint64_t seed);

// Two partition matroids on m elements; each element picks a class in
// [0, classes) independently per matroid, capacities uniform in {1, 2}.
Instance gen_random_partition_pair(std::size_t m, std::size_t classes,
                                   std::uint64_t seed);

// Two graphic matroids, each the cycle matroid of m random non-loop edges
// on `vertices` vertices.
Instance gen_random_graphic_pair(std::size_t m, std::size_t vertices,
                                 std::uint64_t seed);

// k uniform matroids on m elements with the given ranks.
Instance gen_k_uniform_family(std::size_t k, std::vector<std::size_t> ranks,
                              std::size_t m);

// k-dimensional analogue of balanced Thick-Z as k partition matroids. There
// are k groups of n optimal elements, each on private classes; element
// (i_1, ..., i_k) of the n^k block conflicts with the i_j-th optimal element
// of group j in matroid j. Optimum k * n; greedy tends to 1/k of it.
// Elements: groups in order, then the block in row-major order.
Instance gen_k_thick_z(std::size_t n, std::size_t k);

// Named construction, e.g. family "thick_z" with {"n": "200"}. Recognised
// families and keys:
//   thick_z n1 n2 | balanced_thick_z n | joined_thick_z | bomb n |
//   regular_bipartite n d | er_bipartite n prob | random_partition_pair m
//   classes | random_graphic_pair m vertices | k_uniform_family k m ranks
//   (comma separated) | k_thick_z n k
// `seed` is used by the random families. std::invalid_argument on unknown
// family or missing keys.
Instance make_instance(const std::string& family,
                       const std::map<std::string, std::string>& params,
                       std::uint64_t seed);

}  // namespace omi

#endif  // OMI_INSTANCES_H_
