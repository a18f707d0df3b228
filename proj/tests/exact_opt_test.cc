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

#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "omi/exact_opt.h"
#include "omi/matroid_ops.h"
#include "oracles.h"

namespace omi {
namespace {

using testing::Rng;
using testing::Subset;

Subset all_ids(std::size_t m) {
  Subset out(m);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

// Bipartite graph as a pair of partition matroids: one class per left vertex
// and one class per right vertex, all capacities 1.
struct PartitionPair {
  PartitionMatroid m1, m2;
};

PartitionPair encode(const Graph& g) {
  const std::size_t left = *g.left_count;
  std::vector<std::uint32_t> c1, c2;
  for (const Edge& e : g.edges) {
    c1.push_back(e.u);
    c2.push_back(e.v - static_cast<Vertex>(left));
  }
  return {PartitionMatroid(c1, std::vector<std::uint32_t>(left, 1)),
          PartitionMatroid(c2, std::vector<std::uint32_t>(
                                   g.vertex_count - left, 1))};
}

Graph bipartite(std::size_t left, std::size_t right,
                std::vector<std::pair<Vertex, Vertex>> pairs) {
  Graph g;
  g.vertex_count = left + right;
  g.left_count = left;
  for (auto [a, b] : pairs) {
    g.edges.push_back({a, static_cast<Vertex>(left + b)});
  }
  return g;
}

// Thick-Z written out by hand: U1 = [0, n), U2 = [n, 2n) on the left,
// V1 = [0, n), V2 = [n, 2n) on the right.
Graph hand_thick_z(Vertex n) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex i = 0; i < n; ++i) pairs.push_back({i, i});
  for (Vertex i = 0; i < n; ++i) pairs.push_back({n + i, n + i});
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = 0; b < n; ++b) pairs.push_back({n + a, b});
  }
  return bipartite(2 * n, 2 * n, pairs);
}

// Greedy's expected size over all arrival orders, by enumeration.
Rational enumerated_greedy(const Matroid& m1, const Matroid& m2,
                           std::size_t m) {
  Subset order = all_ids(m);
  Rational total = 0;
  std::size_t count = 0;
  do {
    Subset t;
    for (Element e : order) {
      t.push_back(e);
      if (!m1.is_independent(t) || !m2.is_independent(t)) t.pop_back();
    }
    total += t.size();
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  return total / count;
}

TEST_CASE("uniform pair optimum is the smaller rank bound") {
  UniformMatroid a(10, 3), b(10, 5);
  const auto r = exact_intersection(a, b, all_ids(10));
  CHECK(r.opt_size == 3);
  CHECK(r.opt_set.size() == 3);
  CHECK(r.oracle_calls > 0);
}

TEST_CASE("brute force edge cases") {
  UniformMatroid a(3, 3), b(3, 3);
  CHECK(brute_force_intersection(a, b, {}).opt_size == 0);
  const Element only[] = {1};
  CHECK(brute_force_intersection(a, b, only).opt_size == 1);
  UniformMatroid big(21, 21);
  CHECK_THROWS_AS(brute_force_intersection(big, big, all_ids(21)),
                  std::length_error);
  CHECK_THROWS_AS(exact_intersection(a, b, Subset{0, 0}), std::invalid_argument);
}

TEST_CASE("thick-z optimum is both perfect matchings") {
  for (Vertex n : {1u, 2u, 5u}) {
    const Graph g = hand_thick_z(n);
    auto pp = encode(g);
    const auto ex = exact_intersection(pp.m1, pp.m2, all_ids(g.edge_count()));
    CHECK(ex.opt_size == 2 * n);
    const auto hk = max_bipartite_matching(g);
    CHECK(hk.opt_size == 2 * n);
    CHECK(is_matching(g, hk.opt_set));
    CHECK(partition_pair_optimum(pp.m1, pp.m2).opt_size == 2 * n);
  }
}

TEST_CASE("matching fast paths on simple graphs") {
  const Graph perfect = bipartite(4, 4, {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  CHECK(max_bipartite_matching(perfect).opt_size == 4);
  Graph odd;
  odd.vertex_count = 3;
  odd.edges = {{0, 1}, {1, 2}, {2, 0}};
  CHECK_THROWS_AS(max_bipartite_matching(odd), std::invalid_argument);
}

TEST_CASE("exchange graph agrees with brute force and enumeration") {
  Rng rng(21);
  for (int round = 0; round < 300; ++round) {
    const std::size_t m = testing::uniform(rng, 0, 10);
    auto a = testing::random_matroid(rng, m);
    auto b = testing::random_matroid(rng, m);
    const Subset ground = all_ids(m);
    const auto ex = exact_intersection(*a.matroid, *b.matroid, ground);
    const auto bf = brute_force_intersection(*a.matroid, *b.matroid, ground);
    const auto ref = testing::exhaustive_common(a.reference, b.reference, ground);
    REQUIRE(ex.opt_size == ref);
    REQUIRE(bf.opt_size == ref);
    REQUIRE(ex.opt_set.size() == ex.opt_size);
    REQUIRE(a.reference(ex.opt_set.sorted()));
    REQUIRE(b.reference(ex.opt_set.sorted()));
    REQUIRE(a.reference(bf.opt_set.sorted()));
    REQUIRE(b.reference(bf.opt_set.sorted()));
    const auto ground_set = ElementSet(m, ground);
    REQUIRE(ex.opt_size <= std::min(rank(*a.matroid, ground_set),
                                    rank(*b.matroid, ground_set)));
    // Deterministic.
    REQUIRE(exact_intersection(*a.matroid, *b.matroid, ground).opt_set ==
            ex.opt_set);
  }
}

TEST_CASE("exchange graph on a sub-ground") {
  Rng rng(22);
  for (int round = 0; round < 100; ++round) {
    const std::size_t m = testing::uniform(rng, 1, 10);
    auto a = testing::random_matroid(rng, m);
    auto b = testing::random_matroid(rng, m);
    Subset sub;
    for (Element e = 0; e < m; ++e) {
      if (rng() % 2) sub.push_back(e);
    }
    std::shuffle(sub.begin(), sub.end(), rng);
    const auto ex = exact_intersection(*a.matroid, *b.matroid, sub);
    for (Element e : ex.opt_set) {
      REQUIRE(std::count(sub.begin(), sub.end(), e) == 1);
    }
    REQUIRE(ex.opt_size ==
            testing::exhaustive_common(a.reference, b.reference, sub));
  }
}

TEST_CASE("hopcroft-karp agrees with enumeration") {
  Rng rng(23);
  for (int round = 0; round < 500; ++round) {
    const std::size_t left = testing::uniform(rng, 1, 5);
    const std::size_t right = testing::uniform(rng, 1, 5);
    const std::size_t m = testing::uniform(rng, 0, 10);
    const Graph g = testing::random_bipartite(rng, left, right, m);
    const auto hk = max_bipartite_matching(g);
    REQUIRE(hk.opt_size == testing::exhaustive_matching(g));
    REQUIRE(is_matching(g, hk.opt_set));
  }
}

TEST_CASE("hopcroft-karp on larger graphs agrees with the exchange graph") {
  Rng rng(24);
  for (int round = 0; round < 30; ++round) {
    const Graph g = testing::random_bipartite(
        rng, testing::uniform(rng, 5, 20), testing::uniform(rng, 5, 20),
        testing::uniform(rng, 10, 60));
    auto pp = encode(g);
    const auto hk = max_bipartite_matching(g);
    const auto ex = exact_intersection(pp.m1, pp.m2, all_ids(g.edge_count()));
    REQUIRE(hk.opt_size == ex.opt_size);
    REQUIRE(partition_pair_optimum(pp.m1, pp.m2).opt_size == ex.opt_size);
  }
}

TEST_CASE("partition-pair flow with larger capacities") {
  Rng rng(25);
  for (int round = 0; round < 200; ++round) {
    const std::size_t m = testing::uniform(rng, 0, 10);
    auto p1 = testing::random_partition(rng, m, 4, 3);
    auto p2 = testing::random_partition(rng, m, 4, 3);
    PartitionMatroid a(p1.class_of, p1.capacity), b(p2.class_of, p2.capacity);
    const auto flow = partition_pair_optimum(a, b);
    const auto ref = testing::exhaustive_common(
        [&](const Subset& xs) {
          return testing::fits_partition(p1.class_of, p1.capacity, xs);
        },
        [&](const Subset& xs) {
          return testing::fits_partition(p2.class_of, p2.capacity, xs);
        },
        all_ids(m));
    REQUIRE(flow.opt_size == ref);
    REQUIRE(a.is_independent(flow.opt_set));
    REQUIRE(b.is_independent(flow.opt_set));
  }
}

TEST_CASE("online optimum on tiny instances") {
  UniformMatroid one(1, 1);
  const Element e0[] = {0};
  CHECK(optimal_online_value(one, one, e0).expected_value == 1);

  UniformMatroid free4(4, 4);
  CHECK(optimal_online_value(free4, free4, all_ids(4)).expected_value == 4);

  UniformMatroid big(11, 11);
  CHECK_THROWS_AS(optimal_online_value(big, big, all_ids(11)),
                  std::length_error);
}

TEST_CASE("online optimum on the three-edge path is five thirds") {
  const Graph g = hand_thick_z(1);
  REQUIRE(g.edge_count() == 3);
  auto pp = encode(g);
  const auto dp = optimal_online_value(pp.m1, pp.m2, all_ids(3));
  CHECK(dp.expected_value == Rational(5, 3));
  CHECK(dp.state_count > 0);
}

TEST_CASE("online optimum on two joined thick-z graphs") {
  // a1..a4 = 0..3, b1..b4 = 0..3.
  const Graph g = bipartite(
      4, 4, {{0, 0}, {1, 1}, {1, 0}, {2, 2}, {3, 3}, {3, 2}, {1, 2}});
  auto pp = encode(g);
  REQUIRE(max_bipartite_matching(g).opt_size == 4);
  const auto dp = optimal_online_value(pp.m1, pp.m2, all_ids(7));
  MESSAGE("joined thick-z online optimum = " << to_string(dp.expected_value));
  CHECK(dp.expected_value / 4 <= Rational(69, 84));
  CHECK(dp.expected_value >= enumerated_greedy(pp.m1, pp.m2, 7));
}

TEST_CASE("online optimum sits between greedy and the offline optimum") {
  Rng rng(26);
  for (int round = 0; round < 40; ++round) {
    const std::size_t m = testing::uniform(rng, 1, 6);
    auto a = testing::random_matroid(rng, m);
    auto b = testing::random_matroid(rng, m);
    const auto dp = optimal_online_value(*a.matroid, *b.matroid, all_ids(m));
    const auto opt = exact_intersection(*a.matroid, *b.matroid, all_ids(m));
    REQUIRE(dp.expected_value <= opt.opt_size);
    REQUIRE(dp.expected_value >=
            enumerated_greedy(*a.matroid, *b.matroid, m));
  }
}

}  // namespace
}  // namespace omi
