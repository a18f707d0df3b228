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

#include "omi/instances.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "omi/random.h"

namespace omi {
namespace {

Instance from_bipartite(std::string family, Graph g) {
  Instance inst;
  inst.family = std::move(family);
  inst.ground_size = g.edges.size();
  inst.matroids = bipartite_partition_pair(g);
  inst.graph = std::move(g);
  return inst;
}

std::size_t get_size(const std::map<std::string, std::string>& params,
                     const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw std::invalid_argument("missing parameter " + key);
  std::size_t pos = 0;
  const unsigned long long v = std::stoull(it->second, &pos);
  if (pos != it->second.size()) {
    throw std::invalid_argument("bad integer for " + key + ": " + it->second);
  }
  return static_cast<std::size_t>(v);
}

double get_real(const std::map<std::string, std::string>& params,
                const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw std::invalid_argument("missing parameter " + key);
  return std::stod(it->second);
}

}  // namespace

std::vector<const Matroid*> Instance::matroid_ptrs() const {
  std::vector<const Matroid*> out;
  for (const auto& m : matroids) out.push_back(m.get());
  return out;
}

std::vector<MatroidPtr> bipartite_partition_pair(const Graph& g) {
  if (!g.left_count) throw std::invalid_argument("graph has no bipartition");
  const std::size_t left = *g.left_count;
  std::vector<std::uint32_t> c1, c2;
  c1.reserve(g.edges.size());
  c2.reserve(g.edges.size());
  for (const Edge& e : g.edges) {
    if (e.u >= left || e.v < left || e.v >= g.vertex_count) {
      throw std::invalid_argument("edge not oriented left to right");
    }
    c1.push_back(e.u);
    c2.push_back(static_cast<std::uint32_t>(e.v - left));
  }
  return {std::make_shared<PartitionMatroid>(
              std::move(c1), std::vector<std::uint32_t>(left, 1)),
          std::make_shared<PartitionMatroid>(
              std::move(c2),
              std::vector<std::uint32_t>(g.vertex_count - left, 1))};
}

Instance gen_thick_z(std::size_t n1, std::size_t n2) {
  if (n1 == 0 || n2 == 0) throw std::invalid_argument("Thick-Z sides must be >= 1");
  const Vertex u1 = 0, u2 = static_cast<Vertex>(n1);
  const Vertex v1 = static_cast<Vertex>(n1 + n2);
  const Vertex v2 = static_cast<Vertex>(2 * n1 + n2);
  Graph g;
  g.vertex_count = 2 * (n1 + n2);
  g.left_count = n1 + n2;
  g.edges.reserve(n1 + n2 + n1 * n2);
  for (Vertex i = 0; i < n1; ++i) g.edges.push_back({u1 + i, v1 + i});
  for (Vertex i = 0; i < n2; ++i) g.edges.push_back({u2 + i, v2 + i});
  for (Vertex a = 0; a < n2; ++a) {
    for (Vertex b = 0; b < n1; ++b) g.edges.push_back({u2 + a, v1 + b});
  }
  return from_bipartite(n1 == n2 ? "balanced_thick_z" : "thick_z", std::move(g));
}

Instance gen_joined_thick_z() {
  // Left a1..a4 = 0..3, right b1..b4 = 4..7. Black edges a1b1, a2b2, a3b3,
  // a4b4; blue a2b1, a4b3; the joining edge a2b3.
  Graph g;
  g.vertex_count = 8;
  g.left_count = 4;
  g.edges = {{0, 4}, {1, 5}, {1, 4}, {2, 6}, {3, 7}, {3, 6}, {1, 6}};
  return from_bipartite("joined_thick_z", std::move(g));
}

Instance gen_bomb(std::size_t n) {
  if (n < 2) throw std::invalid_argument("bomb graph needs n >= 2");
  Graph g;
  g.vertex_count = 2 * n;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) g.edges.push_back({a, b});
  }
  for (Vertex a = 0; a < n; ++a) g.edges.push_back({a, static_cast<Vertex>(n + a)});
  Instance inst;
  inst.family = "bomb";
  inst.ground_size = g.edges.size();
  inst.known_opt = n;
  inst.graph = std::move(g);
  return inst;
}

Instance gen_regular_bipartite(std::size_t n, std::size_t d,
                               std::uint64_t seed) {
  if (n == 0 || d == 0 || d > n) {
    throw std::invalid_argument("regular bipartite needs 1 <= d <= n");
  }
  Engine rng(seed);
  std::vector<std::vector<char>> used(n, std::vector<char>(n, 0));
  Graph g;
  g.vertex_count = 2 * n;
  g.left_count = n;
  for (std::size_t layer = 0; layer < d; ++layer) {
    std::vector<Element> perm(n);
    bool done = false;
    for (int attempt = 0; attempt < 1000 && !done; ++attempt) {
      std::iota(perm.begin(), perm.end(), 0);
      shuffle(perm, rng);
      // Swap-repair the positions that would duplicate an earlier layer.
      for (std::size_t round = 0; round < 50 * n; ++round) {
        std::size_t bad = n;
        for (std::size_t i = 0; i < n && bad == n; ++i) {
          if (used[i][perm[i]]) bad = i;
        }
        if (bad == n) {
          done = true;
          break;
        }
        const std::size_t j = uniform_below(rng, n);
        if (!used[bad][perm[j]] && !used[j][perm[bad]]) {
          std::swap(perm[bad], perm[j]);
        }
      }
    }
    if (!done) throw std::runtime_error("could not build a simple regular graph");
    for (std::size_t i = 0; i < n; ++i) {
      used[i][perm[i]] = 1;
      g.edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(n + perm[i])});
    }
  }
  return from_bipartite("regular_bipartite", std::move(g));
}

Instance gen_er_bipartite(std::size_t n, double prob, std::uint64_t seed) {
  if (!(prob >= 0.0 && prob <= 1.0)) {
    throw std::invalid_argument("edge probability outside [0, 1]");
  }
  Engine rng(seed);
  Graph g;
  g.vertex_count = 2 * n;
  g.left_count = n;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = 0; b < n; ++b) {
      if (unit_real(rng) < prob) g.edges.push_back({a, static_cast<Vertex>(n + b)});
    }
  }
  return from_bipartite("er_bipartite", std::move(g));
}

Instance gen_random_partition_pair(std::size_t m, std::size_t classes,
                                   std::uint64_t seed) {
  if (classes == 0) throw std::invalid_argument("need at least one class");
  Engine rng(seed);
  Instance inst;
  inst.family = "random_partition_pair";
  inst.ground_size = m;
  for (int side = 0; side < 2; ++side) {
    std::vector<std::uint32_t> class_of(m), capacity(classes);
    for (auto& c : class_of) c = static_cast<std::uint32_t>(uniform_below(rng, classes));
    for (auto& c : capacity) c = static_cast<std::uint32_t>(1 + uniform_below(rng, 2));
    inst.matroids.push_back(
        std::make_shared<PartitionMatroid>(std::move(class_of), std::move(capacity)));
  }
  return inst;
}

Instance gen_random_graphic_pair(std::size_t m, std::size_t vertices,
                                 std::uint64_t seed) {
  if (vertices < 2) throw std::invalid_argument("need at least two vertices");
  Engine rng(seed);
  Instance inst;
  inst.family = "random_graphic_pair";
  inst.ground_size = m;
  for (int side = 0; side < 2; ++side) {
    std::vector<Edge> edges(m);
    for (auto& e : edges) {
      e.u = static_cast<Vertex>(uniform_below(rng, vertices));
      do {
        e.v = static_cast<Vertex>(uniform_below(rng, vertices));
      } while (e.v == e.u);
    }
    inst.matroids.push_back(std::make_shared<GraphicMatroid>(vertices, std::move(edges)));
  }
  return inst;
}

Instance gen_k_uniform_family(std::size_t k, std::vector<std::size_t> ranks,
                              std::size_t m) {
  if (ranks.size() != k) throw std::invalid_argument("need one rank per matroid");
  Instance inst;
  inst.family = "k_uniform_family";
  inst.ground_size = m;
  inst.known_opt = std::min(m, *std::min_element(ranks.begin(), ranks.end()));
  for (std::size_t r : ranks) inst.matroids.push_back(std::make_shared<UniformMatroid>(m, r));
  return inst;
}

Instance gen_k_thick_z(std::size_t n, std::size_t k) {
  if (n == 0 || k < 2) throw std::invalid_argument("k_thick_z needs n >= 1, k >= 2");
  std::size_t block = 1;
  for (std::size_t j = 0; j < k; ++j) {
    if (block > (std::size_t{1} << 26) / n) throw std::invalid_argument("k_thick_z too large");
    block *= n;
  }
  const std::size_t m = k * n + block;
  std::vector<std::vector<std::uint32_t>> class_of(k, std::vector<std::uint32_t>(m));
  for (std::size_t g = 0; g < k; ++g) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        class_of[j][g * n + i] = static_cast<std::uint32_t>(g * n + i);
      }
    }
  }
  for (std::size_t b = 0; b < block; ++b) {
    // Row-major digits: the last coordinate varies fastest.
    std::size_t rest = b;
    for (std::size_t j = k; j-- > 0;) {
      class_of[j][k * n + b] = static_cast<std::uint32_t>(j * n + rest % n);
      rest /= n;
    }
  }
  Instance inst;
  inst.family = "k_thick_z";
  inst.ground_size = m;
  inst.known_opt = k * n;
  for (std::size_t j = 0; j < k; ++j) {
    inst.matroids.push_back(std::make_shared<PartitionMatroid>(
        std::move(class_of[j]), std::vector<std::uint32_t>(k * n, 1)));
  }
  return inst;
}

Instance make_instance(const std::string& family,
                       const std::map<std::string, std::string>& params,
                       std::uint64_t seed) {
  if (family == "thick_z") {
    return gen_thick_z(get_size(params, "n1"), get_size(params, "n2"));
  }
  if (family == "balanced_thick_z") {
    const std::size_t n = get_size(params, "n");
    return gen_thick_z(n, n);
  }
  if (family == "joined_thick_z") return gen_joined_thick_z();
  if (family == "bomb") return gen_bomb(get_size(params, "n"));
  if (family == "regular_bipartite") {
    return gen_regular_bipartite(get_size(params, "n"), get_size(params, "d"), seed);
  }
  if (family == "er_bipartite") {
    return gen_er_bipartite(get_size(params, "n"), get_real(params, "prob"), seed);
  }
  if (family == "random_partition_pair") {
    return gen_random_partition_pair(get_size(params, "m"),
                                     get_size(params, "classes"), seed);
  }
  if (family == "random_graphic_pair") {
    return gen_random_graphic_pair(get_size(params, "m"),
                                   get_size(params, "vertices"), seed);
  }
  if (family == "k_uniform_family") {
    std::vector<std::size_t> ranks;
    auto it = params.find("ranks");
    if (it == params.end()) throw std::invalid_argument("missing parameter ranks");
    std::stringstream ss(it->second);
    for (std::string tok; std::getline(ss, tok, ',');) ranks.push_back(std::stoull(tok));
    return gen_k_uniform_family(get_size(params, "k"), std::move(ranks),
                                get_size(params, "m"));
  }
  if (family == "k_thick_z") {
    return gen_k_thick_z(get_size(params, "n"), get_size(params, "k"));
  }
  throw std::invalid_argument("unknown family " + family);
}

}  // namespace omi
