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
#include <memory>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "omi/io.h"
#include "omi/matroid.h"
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

ElementSet as_set(std::size_t universe, const Subset& xs) {
  return ElementSet(universe, xs);
}

TEST_CASE("element set basics") {
  ElementSet s(5, {3, 1});
  CHECK(s.size() == 2);
  CHECK(s.contains(1));
  CHECK_FALSE(s.contains(0));
  CHECK_FALSE(s.contains(99));
  CHECK_FALSE(s.insert(3));
  CHECK(s.insert(0));
  CHECK(s.erase(3));
  CHECK_FALSE(s.erase(3));
  CHECK(s.sorted() == std::vector<Element>{0, 1});
  CHECK(s == ElementSet(5, {1, 0}));
  CHECK_THROWS_AS(s.insert(5), std::out_of_range);
  CHECK(set_union(ElementSet(4, {0}), ElementSet(4, {2})).sorted() ==
        std::vector<Element>{0, 2});
  CHECK(set_difference(ElementSet(4, {0, 1, 2}), ElementSet(4, {1})).sorted() ==
        std::vector<Element>{0, 2});
  CHECK(is_subset(ElementSet(4, {1}), ElementSet(4, {1, 2})));
  CHECK_FALSE(is_subset(ElementSet(4, {3}), ElementSet(4, {1, 2})));
}

TEST_CASE("small families answer the obvious questions") {
  GraphicMatroid triangle(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(triangle.is_independent({}));
  CHECK(triangle.is_independent({0, 1}));
  CHECK_FALSE(triangle.is_independent({0, 1, 2}));
  CHECK(rank(triangle, ElementSet(3, {0, 1, 2})) == 2);

  PartitionMatroid one_class({0, 0}, {1});
  CHECK(one_class.is_independent({0}));
  CHECK_FALSE(one_class.is_independent({0, 1}));

  UniformMatroid u(5, 2);
  CHECK(rank(u, ElementSet(5, {0, 1, 2, 3, 4})) == 2);

  GraphicMatroid loop(1, {{0, 0}});
  CHECK_FALSE(loop.is_independent({0}));
}

TEST_CASE("domain errors") {
  UniformMatroid u(3, 2);
  CHECK_THROWS_AS(u.is_independent({3}), std::out_of_range);
  CHECK_THROWS_AS(u.is_independent({1, 1}), std::invalid_argument);
  auto state = u.new_state();
  CHECK_THROWS_AS(state->can_add(7), std::out_of_range);
  state->add(0);
  CHECK_THROWS_AS(state->can_add(0), std::invalid_argument);
}

TEST_CASE("every family agrees with its reference predicate on all subsets") {
  Rng rng(11);
  for (int round = 0; round < 60; ++round) {
    const std::size_t m = testing::uniform(rng, 1, 9);
    auto rm = testing::random_matroid(rng, m);
    const Subset ground = all_ids(m);
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      const Subset xs = testing::subset_of(ground, mask);
      REQUIRE(rm.matroid->is_independent(xs) == rm.reference(xs));
    }
  }
}

TEST_CASE("hereditary and exchange axioms on random probes") {
  Rng rng(12);
  for (int probe = 0; probe < 200; ++probe) {
    const std::size_t m = testing::uniform(rng, 2, 12);
    auto rm = testing::random_matroid(rng, m);
    const Matroid& mat = *rm.matroid;
    CHECK(mat.is_independent({}));

    // Random chain: once dependent, every superset stays dependent.
    Subset order = all_ids(m);
    std::shuffle(order.begin(), order.end(), rng);
    Subset chain;
    bool dependent = false;
    for (Element e : order) {
      chain.push_back(e);
      const bool indep = mat.is_independent(chain);
      if (dependent) REQUIRE_FALSE(indep);
      dependent = dependent || !indep;
    }

    // Exchange between two independent sets grown greedily from shuffles.
    auto grow = [&](std::size_t cap) {
      Subset s, sh = all_ids(m);
      std::shuffle(sh.begin(), sh.end(), rng);
      for (Element e : sh) {
        if (s.size() == cap) break;
        s.push_back(e);
        if (!mat.is_independent(s)) s.pop_back();
      }
      return s;
    };
    Subset y = grow(m);
    if (y.empty()) continue;
    Subset x = grow(testing::uniform(rng, 0, y.size() - 1));
    if (x.size() >= y.size()) continue;
    bool exchanged = false;
    for (Element e : y) {
      if (std::find(x.begin(), x.end(), e) != x.end()) continue;
      Subset xe = x;
      xe.push_back(e);
      if (mat.is_independent(xe)) exchanged = true;
    }
    REQUIRE(exchanged);
  }
}

TEST_CASE("rank matches exhaustive search, is monotone and submodular") {
  Rng rng(13);
  for (int round = 0; round < 200; ++round) {
    const std::size_t m = testing::uniform(rng, 1, 10);
    auto rm = testing::random_matroid(rng, m);
    auto pick = [&] {
      return testing::subset_of(all_ids(m),
                                testing::uniform(rng, 0, (1u << m) - 1));
    };
    const Subset a = pick(), b = pick();
    Subset ab, a_and_b;
    for (Element e = 0; e < m; ++e) {
      const bool in_a = std::count(a.begin(), a.end(), e) > 0;
      const bool in_b = std::count(b.begin(), b.end(), e) > 0;
      if (in_a || in_b) ab.push_back(e);
      if (in_a && in_b) a_and_b.push_back(e);
    }
    auto r = [&](const Subset& xs) { return rank(*rm.matroid, as_set(m, xs)); };
    REQUIRE(r(a) == testing::exhaustive_rank(rm.reference, a));
    REQUIRE(r(ab) == testing::exhaustive_rank(rm.reference, ab));
    REQUIRE(r(a_and_b) <= r(a));
    REQUIRE(r(a) <= r(ab));
    REQUIRE(r(a) + r(b) >= r(ab) + r(a_and_b));
  }
}

TEST_CASE("rank uses at most one call per element") {
  UniformMatroid u(8, 3);
  const auto before = u.calls();
  rank(u, ElementSet(8, {0, 1, 2, 3, 4, 5}));
  CHECK(u.calls() - before <= 6);
}

TEST_CASE("span") {
  GraphicMatroid path(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(in_span(path, ElementSet(3, {0, 1}), 2));
  CHECK(in_span(path, ElementSet(3, {0, 1}), 0));
  CHECK_FALSE(in_span(path, ElementSet(3, {0}), 2));

  Rng rng(14);
  for (int round = 0; round < 200; ++round) {
    const std::size_t m = testing::uniform(rng, 1, 9);
    auto rm = testing::random_matroid(rng, m);
    const Subset t = testing::subset_of(all_ids(m),
                                        testing::uniform(rng, 0, (1u << m) - 1));
    const Element e = testing::uniform(rng, 0, m - 1);
    Subset te = t;
    if (std::find(te.begin(), te.end(), e) == te.end()) te.push_back(e);
    const bool expected = testing::exhaustive_rank(rm.reference, te) ==
                          testing::exhaustive_rank(rm.reference, t);
    REQUIRE(in_span(*rm.matroid, as_set(m, t), e) == expected);
    if (rm.reference(t)) {
      const auto before = rm.matroid->calls();
      REQUIRE(in_span(*rm.matroid, as_set(m, t), e, true) == expected);
      REQUIRE(rm.matroid->calls() - before <= 1);
    }
  }
}

// Cycle of forest + e, found by walking the tree path between e's endpoints.
Subset tree_cycle(std::size_t n, const std::vector<Edge>& edges,
                  const Subset& forest, Element e) {
  std::vector<std::vector<std::pair<Vertex, Element>>> adj(n);
  for (Element f : forest) {
    adj[edges[f].u].push_back({edges[f].v, f});
    adj[edges[f].v].push_back({edges[f].u, f});
  }
  std::vector<int> via(n, -1);
  std::vector<Vertex> parent(n, 0);
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{edges[e].u};
  seen[edges[e].u] = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (auto [w, f] : adj[v]) {
      if (seen[w]) continue;
      seen[w] = 1;
      parent[w] = v;
      via[w] = static_cast<int>(f);
      stack.push_back(w);
    }
  }
  Subset cycle{e};
  if (edges[e].u != edges[e].v) {
    for (Vertex v = edges[e].v; v != edges[e].u; v = parent[v]) {
      cycle.push_back(static_cast<Element>(via[v]));
    }
  }
  std::sort(cycle.begin(), cycle.end());
  return cycle;
}

TEST_CASE("circuits") {
  GraphicMatroid g(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}});
  CHECK(find_circuit(g, ElementSet(4, {0, 1, 2}), 3) ==
        std::vector<Element>{0, 1, 3});
  UniformMatroid u(3, 2);
  CHECK(find_circuit(u, ElementSet(3, {0, 1}), 2) ==
        std::vector<Element>{0, 1, 2});
  CHECK_THROWS_AS(find_circuit(g, ElementSet(4, {0}), 3), PreconditionError);
  GraphicMatroid tri(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK_THROWS_AS(find_circuit(tri, ElementSet(3, {0, 1, 2}), 2),
                  PreconditionError);

  Rng rng(15);
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = testing::uniform(rng, 2, 6);
    const std::size_t m = testing::uniform(rng, 2, 12);
    auto graph = testing::random_multigraph(rng, n, m, true);
    GraphicMatroid gm(n, graph.edges);
    Subset order = all_ids(m);
    std::shuffle(order.begin(), order.end(), rng);
    Subset forest;
    for (Element e : order) {
      forest.push_back(e);
      if (!testing::is_forest(n, graph.edges, forest)) forest.pop_back();
    }
    for (Element e : order) {
      if (std::find(forest.begin(), forest.end(), e) != forest.end()) continue;
      const auto before = gm.calls();
      const auto c = find_circuit(gm, as_set(m, forest), e);
      REQUIRE(gm.calls() - before <= forest.size() + 2);
      REQUIRE(c == tree_cycle(n, graph.edges, forest, e));
      REQUIRE_FALSE(gm.is_independent(c));
      for (Element x : c) {
        Subset minus;
        for (Element y : c) {
          if (y != x) minus.push_back(y);
        }
        REQUIRE(gm.is_independent(minus));
      }
    }
  }
}

TEST_CASE("contraction") {
  auto u = std::make_shared<UniformMatroid>(6, 4);
  auto c = contract(u, ElementSet(6, {0, 1}));
  CHECK_FALSE(c->in_ground(0));
  CHECK(c->in_ground(2));
  CHECK(c->ground_size() == 4);
  CHECK(c->is_independent({2, 3}));
  CHECK_FALSE(c->is_independent({2, 3, 4}));
  CHECK_THROWS_AS(c->is_independent({0}), std::out_of_range);

  auto tri = std::make_shared<GraphicMatroid>(
      3, std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}});
  CHECK_THROWS_AS(contract(tri, ElementSet(3, {0, 1, 2})), PreconditionError);

  // Contracting the middle edge of a path on 0-1-2-3 with a chord 0-3 and a
  // parallel edge to the middle: compare with the explicitly contracted graph
  // where vertices 1 and 2 merge.
  std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {0, 3}, {1, 2}};
  auto g = std::make_shared<GraphicMatroid>(4, edges);
  auto gc = contract(g, ElementSet(5, {1}));
  std::vector<Edge> merged;
  for (Edge e : edges) {
    auto fold = [](Vertex v) { return v == 2 ? Vertex{1} : v; };
    merged.push_back({fold(e.u), fold(e.v)});
  }
  const Subset rest{0, 2, 3, 4};
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    const Subset xs = testing::subset_of(rest, mask);
    REQUIRE(gc->is_independent(xs) == testing::is_forest(4, merged, xs));
  }

  // Empty contraction is the identity on every subset.
  Rng rng(16);
  for (int round = 0; round < 40; ++round) {
    const std::size_t m = testing::uniform(rng, 1, 8);
    auto rm = testing::random_matroid(rng, m);
    auto same = contract(rm.matroid, ElementSet(m));
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      const Subset xs = testing::subset_of(all_ids(m), mask);
      REQUIRE(same->is_independent(xs) == rm.reference(xs));
    }
  }
}

TEST_CASE("restriction") {
  auto tri = std::make_shared<GraphicMatroid>(
      3, std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}});
  auto tree = restrict_to(tri, ElementSet(3, {0, 1}));
  CHECK(tree->is_independent({0, 1}));
  CHECK_THROWS_AS(tree->is_independent({0, 2}), std::out_of_range);
  auto full = restrict_to(tri, ElementSet(3, {0, 1, 2}));
  CHECK_FALSE(full->is_independent({0, 1, 2}));
  auto c = contract(tri, ElementSet(3, {0}));
  CHECK_THROWS_AS(restrict_to(c, ElementSet(3, {0, 1})), std::out_of_range);
}

TEST_CASE("contraction and restriction commute") {
  Rng rng(17);
  for (int round = 0; round < 100; ++round) {
    const std::size_t m = testing::uniform(rng, 2, 9);
    auto rm = testing::random_matroid(rng, m);
    Subset order = all_ids(m);
    std::shuffle(order.begin(), order.end(), rng);
    Subset t;
    const std::size_t t_target = testing::uniform(rng, 0, 3);
    for (Element e : order) {
      if (t.size() == t_target) break;
      t.push_back(e);
      if (!rm.reference(t)) t.pop_back();
    }
    Subset f;
    for (Element e = 0; e < m; ++e) {
      if (std::find(t.begin(), t.end(), e) == t.end() && rng() % 2) {
        f.push_back(e);
      }
    }
    Subset ft = f;
    ft.insert(ft.end(), t.begin(), t.end());
    auto lhs = restrict_to(contract(rm.matroid, as_set(m, t)), as_set(m, f));
    auto rhs = contract(restrict_to(rm.matroid, as_set(m, ft)), as_set(m, t));
    for (std::uint32_t mask = 0; mask < (1u << f.size()); ++mask) {
      const Subset xs = testing::subset_of(f, mask);
      Subset xt = xs;
      xt.insert(xt.end(), t.begin(), t.end());
      const bool expected = rm.reference(xt);
      REQUIRE(lhs->is_independent(xs) == expected);
      REQUIRE(rhs->is_independent(xs) == expected);
    }
  }
}

TEST_CASE("incremental states agree with set queries") {
  Rng rng(18);
  for (int round = 0; round < 300; ++round) {
    const std::size_t m = testing::uniform(rng, 1, 12);
    auto rm = testing::random_matroid(rng, m);
    MatroidPtr mat = rm.matroid;
    if (round % 3 == 1) {
      Subset t;
      for (Element e = 0; e < m; ++e) {
        t.push_back(e);
        if (!rm.reference(t) || rng() % 3 == 0) t.pop_back();
      }
      mat = contract(mat, as_set(m, t));
    } else if (round % 3 == 2) {
      Subset keep;
      for (Element e = 0; e < m; ++e) {
        if (rng() % 4) keep.push_back(e);
      }
      mat = restrict_to(mat, as_set(m, keep));
    }
    Subset order;
    for (Element e = 0; e < m; ++e) {
      if (mat->in_ground(e)) order.push_back(e);
    }
    std::shuffle(order.begin(), order.end(), rng);
    auto state = mat->new_state();
    Subset members;
    for (Element e : order) {
      Subset with = members;
      with.push_back(e);
      const bool expected = mat->is_independent(with);
      REQUIRE(state->can_add(e) == expected);
      if (expected && rng() % 4) {
        state->add(e);
        members.push_back(e);
      }
    }
  }
}

TEST_CASE("call counting is exact through wrappers") {
  auto base = std::make_shared<UniformMatroid>(6, 3);
  CountingMatroid counted(*base);
  counted.is_independent({0, 1});
  counted.is_independent({});
  CHECK(counted.calls() == 2);
  CHECK(base->calls() == 2);

  auto state = counted.new_state();
  state->can_add(0);
  state->add(0);
  state->can_add(1);
  CHECK(counted.calls() == 4);
  CHECK(base->calls() == 4);

  auto c = contract(base, ElementSet(6, {5}));
  const auto before = base->calls();
  c->is_independent({0});
  CHECK(c->calls() == 1);
  CHECK(base->calls() - before == 1);
}

TEST_CASE("instance files round-trip") {
  MatroidDocument doc;
  doc.matroids.push_back(std::make_shared<PartitionMatroid>(
      std::vector<std::uint32_t>{0, 1, 1}, std::vector<std::uint32_t>{1, 2}));
  doc.matroids.push_back(std::make_shared<GraphicMatroid>(
      3, std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}}));
  doc.matroids.push_back(std::make_shared<UniformMatroid>(3, 1));
  doc.sets["T"] = {0, 2};
  doc.attrs["family"] = "test";
  std::stringstream ss;
  write_matroid_document(ss, doc);
  const auto back = read_matroid_document(ss);
  REQUIRE(back.matroids.size() == 3);
  CHECK(back.sets.at("T") == std::vector<Element>{0, 2});
  CHECK(back.attrs.at("family") == "test");
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::uint32_t mask = 0; mask < 8; ++mask) {
      const Subset xs = testing::subset_of(all_ids(3), mask);
      REQUIRE(back.matroids[i]->is_independent(xs) ==
              doc.matroids[i]->is_independent(xs));
    }
  }

  std::istringstream bad("matroid partition m=2\nclass 0 0\ncap 0 1\n");
  CHECK_THROWS_AS(read_matroid_document(bad), std::runtime_error);
  std::istringstream junk("matroid partition m=1\nclass 0 0\nfoo\n");
  CHECK_THROWS_WITH_AS(read_matroid_document(junk), "line 3: unexpected line "
                       "for partition block: foo", std::runtime_error);

  Graph g;
  g.vertex_count = 4;
  g.left_count = 2;
  g.edges = {{0, 2}, {1, 3}, {1, 2}};
  std::stringstream gs;
  write_graph(gs, g);
  const Graph h = read_graph(gs);
  CHECK(h.edges == g.edges);
  CHECK(h.left_count == g.left_count);
}

TEST_CASE("bipartition and matching helpers") {
  Graph odd;
  odd.vertex_count = 3;
  odd.edges = {{0, 1}, {1, 2}, {2, 0}};
  CHECK_FALSE(bipartition(odd).has_value());
  CHECK_THROWS_AS(as_bipartite(odd), std::invalid_argument);

  Graph path;
  path.vertex_count = 4;
  path.edges = {{1, 0}, {1, 2}, {3, 2}};
  const Graph b = as_bipartite(path);
  REQUIRE(b.left_count.has_value());
  for (const Edge& e : b.edges) {
    CHECK(e.u < *b.left_count);
    CHECK(e.v >= *b.left_count);
  }
  CHECK(is_matching(path, ElementSet(3, {0, 2})));
  CHECK_FALSE(is_matching(path, ElementSet(3, {0, 1})));
}

}  // namespace
}  // namespace omi
