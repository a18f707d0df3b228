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

#include "omi/sampling.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "omi/element_set.h"
#include "omi/exact_opt.h"
#include "omi/instances.h"
#include "omi/io.h"
#include "omi/matroid_ops.h"
#include "omi/random.h"

namespace omi {
namespace {

std::size_t universe_of(std::span<const MatroidPtr> ms) {
  std::size_t u = 0;
  for (const auto& m : ms) u = std::max(u, m->id_bound());
  return u;
}

void check_family(std::span<const MatroidPtr> ms, std::size_t side) {
  if (ms.size() < 2) throw std::invalid_argument("need at least two matroids");
  if (side >= ms.size()) throw std::invalid_argument("side out of range");
}

// T common independent, E~ duplicate free, disjoint from T, spanned by T in
// M_side.
void check_sampling_input(std::span<const MatroidPtr> ms, std::size_t side,
                          const ElementSet& t, std::span<const Element> e_tilde) {
  if (!is_common_independent(ms, t)) {
    throw std::invalid_argument("T is not common independent");
  }
  ElementSet seen(t.universe());
  for (Element e : e_tilde) {
    if (e >= t.universe()) throw std::invalid_argument("element outside the universe");
    if (!seen.insert(e)) throw std::invalid_argument("E~ repeats an element");
    if (t.contains(e)) throw std::invalid_argument("E~ meets T");
    if (!in_span(*ms[side], t, e, true)) {
      throw std::invalid_argument("E~ element " + std::to_string(e) +
                                  " is not spanned by T");
    }
  }
}

void check_i_tilde(std::span<const MatroidPtr> ms, std::size_t side,
                   const ElementSet& t, std::span<const Element> e_tilde,
                   std::span<const Element> i_tilde) {
  const ElementSet e_set(t.universe(), e_tilde);
  const ElementSet i_set(t.universe(), i_tilde);
  if (i_set.size() != i_tilde.size()) throw std::invalid_argument("I~ repeats an element");
  if (!is_subset(i_set, e_set)) throw std::invalid_argument("I~ is not inside E~");
  if (!ms[side]->is_independent(i_set)) {
    throw std::invalid_argument("I~ is dependent in the sampled matroid");
  }
  const ElementSet ti = set_union(t, i_set);
  for (std::size_t j = 0; j < ms.size(); ++j) {
    if (j != side && !ms[j]->is_independent(ti)) {
      throw std::invalid_argument("I~ is dependent in a matroid contracted by T");
    }
  }
}

// Circuit of A + x for independent A, empty if A + x is independent.
std::vector<Element> circuit_or_empty(const Matroid& m, const ElementSet& a,
                                      Element x) {
  std::vector<Element> probe(a.begin(), a.end());
  probe.push_back(x);
  if (m.is_independent(probe)) return {};
  return find_circuit(m, a, x);
}

RandomnessTape tape_for_mask(std::size_t universe, std::span<const Element> t,
                             std::uint32_t mask) {
  std::vector<std::uint8_t> bits(universe, 1);
  for (std::size_t b = 0; b < t.size(); ++b) bits[t[b]] = mask >> b & 1u;
  return RandomnessTape::from_bits(std::move(bits));
}

Rational power(const Rational& x, std::size_t n) {
  Rational out = 1;
  for (std::size_t i = 0; i < n; ++i) out *= x;
  return out;
}

// sum over c of weight[c] (1 - p)^c p^(n - c).
Rational binomial_mix(const std::vector<std::uint64_t>& by_ones,
                      const Rational& p) {
  const std::size_t n = by_ones.size() - 1;
  Rational total = 0;
  for (std::size_t c = 0; c <= n; ++c) {
    if (by_ones[c] == 0) continue;
    total += Rational(by_ones[c]) * power(1 - p, c) * power(p, n - c);
  }
  return total;
}

void check_probability(const Rational& p) {
  if (p < 0 || p > 1) throw std::invalid_argument("p outside [0, 1]");
}

}  // namespace

std::string to_string(LemmaMethod m) {
  return m == LemmaMethod::kExact ? "exact-enumeration" : "monte-carlo";
}

Rational sampling_bound(const Rational& p, std::size_t i_size, std::size_t k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  return p * Rational(i_size) / (1 + p * Rational(k - 1));
}

SampResult samp_alg(std::span<const MatroidPtr> matroids, std::size_t side,
                    std::span<const Element> t,
                    std::span<const Element> e_tilde,
                    const RandomnessTape& tape, ScanOrder scan,
                    bool record_trace) {
  check_family(matroids, side);
  const std::size_t u = universe_of(matroids);
  const ElementSet t_set(u, t);
  if (t_set.size() != t.size()) throw std::invalid_argument("T repeats an element");
  check_sampling_input(matroids, side, t_set, e_tilde);

  const Matroid& mi = *matroids[side];
  ElementSet s_prime(u), n_prime(u), t_prime = t_set;
  // cross[j]: T + N' in M_j for j != side.
  std::vector<std::unique_ptr<IndependenceState>> cross;
  for (std::size_t j = 0; j < matroids.size(); ++j) {
    if (j == side) {
      cross.push_back(nullptr);
      continue;
    }
    cross.push_back(matroids[j]->new_state());
    for (Element x : t) cross.back()->add(x);
  }

  SampResult out;
  for (Element e : e_tilde) {
    SampStep step;
    step.e = e;
    step.gate = true;
    for (std::size_t j = 0; j < matroids.size() && step.gate; ++j) {
      if (j != side) step.gate = cross[j]->can_add(e);
    }
    if (step.gate) {
      ElementSet base = set_union(set_union(s_prime, n_prime), t_prime);
      std::vector<Element> circuit;
      try {
        circuit = find_circuit(mi, base, e);
      } catch (const PreconditionError& err) {
        throw std::logic_error(std::string("no circuit through arriving element: ") +
                               err.what());
      }
      for (Element x : circuit) {
        if (t_prime.contains(x)) step.circuit.push_back(x);
      }
      if (scan == ScanOrder::kDescending) {
        std::reverse(step.circuit.begin(), step.circuit.end());
      }
      for (Element f : step.circuit) {
        t_prime.erase(f);
        const bool bit = tape.bit(f);
        step.reads.emplace_back(f, bit);
        if (bit) {
          s_prime.insert(f);
        } else {
          n_prime.insert(e);
          out.n_prime.push_back(e);
          for (std::size_t j = 0; j < matroids.size(); ++j) {
            if (j != side) cross[j]->add(e);
          }
          step.added = true;
          break;
        }
      }
    }
    if (record_trace) out.trace.push_back(std::move(step));
  }
  return out;
}

std::vector<Element> contracted_greedy(std::span<const MatroidPtr> matroids,
                                       std::size_t side,
                                       std::span<const Element> t,
                                       std::span<const Element> e_tilde,
                                       const RandomnessTape& tape) {
  check_family(matroids, side);
  const std::size_t u = universe_of(matroids);
  const ElementSet t_set(u, t);
  ElementSet s(u);
  for (Element x : t) {
    if (tape.bit(x)) s.insert(x);
  }
  std::vector<std::unique_ptr<IndependenceState>> states;
  std::vector<MatroidPtr> contracted;
  for (std::size_t j = 0; j < matroids.size(); ++j) {
    contracted.push_back(contract(matroids[j], j == side ? s : t_set));
    states.push_back(contracted.back()->new_state());
  }
  std::vector<Element> out;
  for (Element e : e_tilde) {
    bool ok = true;
    for (auto& st : states) {
      if (!st->can_add(e)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (auto& st : states) st->add(e);
    out.push_back(e);
  }
  return out;
}

std::vector<LemmaReport> verify_sampling_lemma_exact(
    std::span<const MatroidPtr> matroids, std::size_t side,
    std::span<const Element> t, std::span<const Element> e_tilde_order,
    std::span<const Element> i_tilde, std::span<const Rational> ps) {
  check_family(matroids, side);
  if (t.size() > kExactTapeLimit) {
    throw std::invalid_argument("|T| above the exact enumeration limit");
  }
  for (const Rational& p : ps) check_probability(p);
  const std::size_t u = universe_of(matroids);
  const ElementSet t_set(u, t);
  if (t_set.size() != t.size()) throw std::invalid_argument("T repeats an element");
  check_sampling_input(matroids, side, t_set, e_tilde_order);
  check_i_tilde(matroids, side, t_set, e_tilde_order, i_tilde);

  // Output sizes summed over the tapes with c ones.
  std::vector<std::uint64_t> by_ones(t.size() + 1, 0);
  const std::uint32_t tapes = 1u << t.size();
  for (std::uint32_t mask = 0; mask < tapes; ++mask) {
    const auto tape = tape_for_mask(u, t, mask);
    by_ones[std::popcount(mask)] +=
        contracted_greedy(matroids, side, t, e_tilde_order, tape).size();
  }
  std::vector<LemmaReport> out;
  for (const Rational& p : ps) {
    LemmaReport r;
    r.method = LemmaMethod::kExact;
    r.p = p;
    r.i_size = i_tilde.size();
    r.k = matroids.size();
    r.lhs_exact = binomial_mix(by_ones, p);
    r.lhs = to_double(r.lhs_exact);
    r.rhs = sampling_bound(p, r.i_size, r.k);
    r.holds = r.lhs_exact >= r.rhs;
    r.tapes = tapes;
    out.push_back(std::move(r));
  }
  return out;
}

LemmaReport verify_sampling_lemma_mc(std::span<const MatroidPtr> matroids,
                                     std::size_t side,
                                     std::span<const Element> t,
                                     std::span<const Element> e_tilde_order,
                                     std::span<const Element> i_tilde,
                                     const Rational& p, std::size_t trials,
                                     std::uint64_t seed) {
  check_family(matroids, side);
  check_probability(p);
  if (trials < 2) throw std::invalid_argument("need at least two trials");
  const std::size_t u = universe_of(matroids);
  const ElementSet t_set(u, t);
  if (t_set.size() != t.size()) throw std::invalid_argument("T repeats an element");
  check_sampling_input(matroids, side, t_set, e_tilde_order);
  check_i_tilde(matroids, side, t_set, e_tilde_order, i_tilde);

  const double pd = to_double(p);
  double sum = 0, sum_sq = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const RandomnessTape tape(pd, derive_seed(seed, trial));
    const double size = static_cast<double>(
        contracted_greedy(matroids, side, t, e_tilde_order, tape).size());
    sum += size;
    sum_sq += size * size;
  }
  const double n = static_cast<double>(trials);
  LemmaReport r;
  r.method = LemmaMethod::kMonteCarlo;
  r.p = p;
  r.i_size = i_tilde.size();
  r.k = matroids.size();
  r.lhs = sum / n;
  const double var = std::max(0.0, (sum_sq - n * r.lhs * r.lhs) / (n - 1));
  r.lhs_stderr = std::sqrt(var / n);
  r.rhs = sampling_bound(p, r.i_size, r.k);
  r.holds = r.lhs + 3 * r.lhs_stderr >= to_double(r.rhs);
  r.tapes = trials;
  return r;
}

std::vector<LemmaReport> verify_sampling_lemma_bipartite(
    const Graph& h, std::span<const Element> i_tilde,
    std::span<const Element> order, std::span<const Rational> ps,
    std::size_t trials, std::uint64_t seed) {
  if (!h.left_count) throw std::invalid_argument("graph has no bipartition");
  const std::size_t left = *h.left_count;
  for (const Edge& e : h.edges) {
    if (e.u >= left || e.v < left || e.v >= h.vertex_count) {
      throw std::invalid_argument("edge not oriented left to right");
    }
  }
  const std::size_t m = h.edges.size();
  ElementSet seen(m);
  for (Element e : order) {
    if (e >= m || !seen.insert(e)) {
      throw std::invalid_argument("order is not a permutation of the edges");
    }
  }
  if (seen.size() != m) throw std::invalid_argument("order misses an edge");
  const ElementSet i_set(m, i_tilde);
  if (i_set.size() != i_tilde.size() || !is_matching(h, i_set)) {
    throw std::invalid_argument("I~ is not a matching");
  }
  for (const Rational& p : ps) check_probability(p);

  // Only left vertices with an edge affect the outcome.
  std::vector<Vertex> active;
  {
    std::vector<char> has_edge(left, 0);
    for (const Edge& e : h.edges) has_edge[e.u] = 1;
    for (Vertex x = 0; x < left; ++x) {
      if (has_edge[x]) active.push_back(x);
    }
  }
  std::vector<char> kept(left, 0), used(h.vertex_count, 0);
  auto run_greedy = [&]() {
    std::fill(used.begin(), used.end(), 0);
    std::size_t size = 0;
    for (Element id : order) {
      const Edge& e = h.edges[id];
      if (!kept[e.u] || used[e.u] || used[e.v]) continue;
      used[e.u] = used[e.v] = 1;
      ++size;
    }
    return size;
  };

  std::vector<LemmaReport> out;
  if (active.size() <= kExactTapeLimit) {
    // A vertex is kept with probability p, so a sample dropping c vertices
    // has weight (1 - p)^c p^(n - c), the weighting of binomial_mix.
    const std::size_t n = active.size();
    std::vector<std::uint64_t> by_dropped(n + 1, 0);
    const std::uint32_t samples = 1u << n;
    for (std::uint32_t mask = 0; mask < samples; ++mask) {
      for (std::size_t b = 0; b < n; ++b) kept[active[b]] = mask >> b & 1u;
      by_dropped[n - std::popcount(mask)] += run_greedy();
    }
    for (const Rational& p : ps) {
      LemmaReport r;
      r.method = LemmaMethod::kExact;
      r.p = p;
      r.i_size = i_tilde.size();
      r.lhs_exact = binomial_mix(by_dropped, p);
      r.lhs = to_double(r.lhs_exact);
      r.rhs = sampling_bound(p, r.i_size, 2);
      r.holds = r.lhs_exact >= r.rhs;
      r.tapes = samples;
      out.push_back(std::move(r));
    }
    return out;
  }
  if (trials < 2) throw std::invalid_argument("need at least two trials");
  for (const Rational& p : ps) {
    const double pd = to_double(p);
    Engine rng(seed);
    double sum = 0, sum_sq = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
      for (Vertex x : active) kept[x] = unit_real(rng) < pd;
      const double size = static_cast<double>(run_greedy());
      sum += size;
      sum_sq += size * size;
    }
    const double nt = static_cast<double>(trials);
    LemmaReport r;
    r.method = LemmaMethod::kMonteCarlo;
    r.p = p;
    r.i_size = i_tilde.size();
    r.lhs = sum / nt;
    r.lhs_stderr =
        std::sqrt(std::max(0.0, (sum_sq - nt * r.lhs * r.lhs) / (nt - 1)) / nt);
    r.rhs = sampling_bound(p, r.i_size, 2);
    r.holds = r.lhs + 3 * r.lhs_stderr >= to_double(r.rhs);
    r.tapes = trials;
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

std::vector<std::uint32_t> random_classes(Engine& rng, std::size_t m,
                                          std::size_t classes) {
  std::vector<std::uint32_t> out(m);
  for (auto& c : out) c = static_cast<std::uint32_t>(uniform_below(rng, classes));
  return out;
}

MatroidPtr random_partition(Engine& rng, std::size_t m) {
  const std::size_t classes = 3 + uniform_below(rng, 5);
  std::vector<std::uint32_t> cap(classes);
  for (auto& c : cap) c = static_cast<std::uint32_t>(1 + uniform_below(rng, 2));
  return std::make_shared<PartitionMatroid>(random_classes(rng, m, classes),
                                            std::move(cap));
}

enum class Role { kT, kI, kNoise };

std::vector<std::size_t> of_role(const std::vector<Role>& roles, Role r) {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < roles.size(); ++e) {
    if (roles[e] == r) out.push_back(e);
  }
  return out;
}

// Splits `items` into g >= 1 nonempty groups; returns the group of each.
std::vector<Element> group(Engine& rng, std::size_t items, std::size_t g) {
  std::vector<Element> out(items);
  for (std::size_t i = 0; i < items; ++i) {
    out[i] = static_cast<Element>(i < g ? i : uniform_below(rng, g));
  }
  shuffle(out, rng);
  return out;
}

std::size_t group_count(Engine& rng, std::size_t n, bool unit) {
  if (unit || n <= 1) return n;
  return (n + 1) / 2 + uniform_below(rng, n - (n + 1) / 2 + 1);
}

// Partition matroid in which every non-T element is spanned by T.
MatroidPtr side_partition(Engine& rng, const std::vector<Role>& roles, bool unit) {
  const auto ts = of_role(roles, Role::kT);
  const std::size_t g = group_count(rng, ts.size(), unit);
  const auto tg = group(rng, ts.size(), g);
  std::vector<std::uint32_t> class_of(roles.size()), cap(g, 0), slack;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    class_of[ts[i]] = tg[i];
    ++cap[tg[i]];
  }
  slack = cap;
  for (std::size_t e = 0; e < roles.size(); ++e) {
    if (roles[e] == Role::kI) {
      std::vector<std::uint32_t> open;
      for (std::uint32_t c = 0; c < g; ++c) {
        if (slack[c] > 0) open.push_back(c);
      }
      class_of[e] = open[uniform_below(rng, open.size())];
      --slack[class_of[e]];
    } else if (roles[e] == Role::kNoise) {
      class_of[e] = static_cast<std::uint32_t>(uniform_below(rng, g));
    }
  }
  return std::make_shared<PartitionMatroid>(std::move(class_of), std::move(cap));
}

// Partition matroid in which T + I~ is independent; noise lands anywhere.
MatroidPtr other_partition(Engine& rng, const std::vector<Role>& roles, bool unit) {
  const auto ts = of_role(roles, Role::kT);
  const auto is = of_role(roles, Role::kI);
  const std::size_t g1 = group_count(rng, ts.size(), unit);
  const std::size_t g2 = group_count(rng, is.size(), unit);
  std::vector<std::uint32_t> class_of(roles.size()), cap(g1 + g2, 0);
  const auto tg = group(rng, ts.size(), g1);
  const auto ig = group(rng, is.size(), g2);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    class_of[ts[i]] = tg[i];
    ++cap[tg[i]];
  }
  for (std::size_t i = 0; i < is.size(); ++i) {
    class_of[is[i]] = static_cast<std::uint32_t>(g1 + ig[i]);
    ++cap[g1 + ig[i]];
  }
  for (std::size_t e = 0; e < roles.size(); ++e) {
    if (roles[e] == Role::kNoise) {
      class_of[e] = static_cast<std::uint32_t>(uniform_below(rng, g1 + g2));
    }
  }
  return std::make_shared<PartitionMatroid>(std::move(class_of), std::move(cap));
}

struct Forest {
  std::vector<Vertex> parent;
  explicit Forest(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  Vertex find(Vertex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

// T as a random forest: vertex v >= roots hangs off an earlier vertex.
std::size_t plant_forest(Engine& rng, const std::vector<std::size_t>& ts,
                         std::vector<Edge>& edges) {
  const std::size_t roots = 1 + uniform_below(rng, std::max<std::size_t>(1, ts.size() / 2));
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Vertex v = static_cast<Vertex>(roots + i);
    edges[ts[i]] = {static_cast<Vertex>(uniform_below(rng, v)), v};
  }
  return roots + ts.size();
}

// Graphic matroid in which every non-T element joins two vertices of one
// T component, and I~ is a forest.
MatroidPtr side_graphic(Engine& rng, std::vector<Role>& roles) {
  const auto ts = of_role(roles, Role::kT);
  std::vector<Edge> edges(roles.size());
  const std::size_t n = plant_forest(rng, ts, edges);
  Forest comp(n);
  for (std::size_t t : ts) comp.unite(edges[t].u, edges[t].v);
  std::vector<std::vector<Vertex>> members(n);
  for (Vertex v = 0; v < n; ++v) members[comp.find(v)].push_back(v);
  std::vector<Vertex> big;
  for (Vertex v = 0; v < n; ++v) {
    if (members[v].size() >= 2) big.push_back(v);
  }
  auto spanned_edge = [&]() {
    const auto& mem = members[big[uniform_below(rng, big.size())]];
    const Vertex a = mem[uniform_below(rng, mem.size())];
    Vertex b = a;
    while (b == a) b = mem[uniform_below(rng, mem.size())];
    return Edge{a, b};
  };
  Forest hidden(n);
  for (std::size_t e = 0; e < roles.size(); ++e) {
    if (roles[e] == Role::kT) continue;
    edges[e] = spanned_edge();
    if (roles[e] == Role::kI) {
      bool placed = hidden.unite(edges[e].u, edges[e].v);
      for (int tries = 0; tries < 20 && !placed; ++tries) {
        edges[e] = spanned_edge();
        placed = hidden.unite(edges[e].u, edges[e].v);
      }
      if (!placed) roles[e] = Role::kNoise;
    }
  }
  return std::make_shared<GraphicMatroid>(n, std::move(edges));
}

// Graphic matroid in which T + I~ is a forest: I~ edges reach new vertices.
MatroidPtr other_graphic(Engine& rng, const std::vector<Role>& roles) {
  const auto ts = of_role(roles, Role::kT);
  const auto is = of_role(roles, Role::kI);
  std::vector<Edge> edges(roles.size());
  std::size_t n = plant_forest(rng, ts, edges);
  for (std::size_t e : is) {
    edges[e] = {static_cast<Vertex>(uniform_below(rng, n)), static_cast<Vertex>(n)};
    ++n;
  }
  for (std::size_t e = 0; e < roles.size(); ++e) {
    if (roles[e] != Role::kNoise) continue;
    const Vertex a = static_cast<Vertex>(uniform_below(rng, n));
    Vertex b = a;
    while (b == a) b = static_cast<Vertex>(uniform_below(rng, n));
    edges[e] = {a, b};
  }
  return std::make_shared<GraphicMatroid>(n, std::move(edges));
}

// The previous approach: random matroids, T greedy. Kept as one family.
bool build_generic(Engine& rng, std::size_t max_t, LemmaInstance& inst) {
  const std::size_t m = 10 + uniform_below(rng, 9);
  inst.family = "generic_pair";
  inst.matroids = {random_partition(rng, m), random_partition(rng, m)};
  inst.side = uniform_below(rng, 2);
  std::vector<Element> order(m);
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);
  std::vector<std::unique_ptr<IndependenceState>> states;
  for (const auto& mt : inst.matroids) states.push_back(mt->new_state());
  std::vector<Element> t;
  for (Element e : order) {
    if (!states[0]->can_add(e) || !states[1]->can_add(e)) continue;
    states[0]->add(e);
    states[1]->add(e);
    t.push_back(e);
  }
  if (t.empty()) return false;
  shuffle(t, rng);
  t.resize(1 + uniform_below(rng, std::min(t.size(), max_t)));
  std::sort(t.begin(), t.end());
  const ElementSet t_set(m, t);
  std::vector<Element> e_tilde;
  for (Element e = 0; e < m; ++e) {
    if (!t_set.contains(e) && in_span(*inst.matroids[inst.side], t_set, e, true)) {
      e_tilde.push_back(e);
    }
  }
  if (e_tilde.empty()) return false;
  if (e_tilde.size() > 16) {
    shuffle(e_tilde, rng);
    e_tilde.resize(16);
    std::sort(e_tilde.begin(), e_tilde.end());
  }
  inst.t = std::move(t);
  inst.e_tilde = std::move(e_tilde);
  return true;
}

bool build_lemma_instance(Engine& rng, std::size_t family, std::size_t max_t,
                          LemmaInstance& inst) {
  inst.matroids.clear();
  if (family == 7) {
    if (!build_generic(rng, max_t, inst)) return false;
  } else {
    const std::size_t tn = (max_t + 1) / 2 + uniform_below(rng, max_t / 2 + 1);
    const std::size_t in = 1 + uniform_below(rng, std::min<std::size_t>(tn, 12));
    const std::size_t noise = uniform_below(rng, std::min<std::size_t>(16 - in, 8) + 1);
    std::vector<Role> roles;
    roles.insert(roles.end(), tn, Role::kT);
    roles.insert(roles.end(), in, Role::kI);
    roles.insert(roles.end(), noise, Role::kNoise);
    // Random ids, so scan orders and arrival orders mix the roles.
    std::vector<Element> perm(roles.size());
    std::iota(perm.begin(), perm.end(), 0);
    shuffle(perm, rng);
    std::vector<Role> placed(roles.size());
    for (std::size_t i = 0; i < roles.size(); ++i) placed[perm[i]] = roles[i];
    roles = std::move(placed);

    static constexpr const char* kNames[] = {
        "bipartite_matching", "partition_pair",   "graphic_pair",
        "partition_graphic",  "graphic_partition", "partition_triple",
        "mixed_triple"};
    inst.family = kNames[family];
    const std::size_t k = family >= 5 ? 3 : 2;
    inst.side = uniform_below(rng, k);
    inst.matroids.assign(k, nullptr);
    const bool side_graph = family == 2 || family == 4 || family == 6;
    // The side matroid goes first: a graphic side may demote I~ elements.
    inst.matroids[inst.side] = side_graph ? side_graphic(rng, roles)
                                          : side_partition(rng, roles, family == 0);
    for (std::size_t j = 0, other = 0; j < k; ++j) {
      if (j == inst.side) continue;
      bool graph = family == 2 || family == 3;
      if (family == 6) graph = other == 0;
      inst.matroids[j] = graph ? other_graphic(rng, roles)
                               : other_partition(rng, roles, family == 0);
      ++other;
    }
    inst.t.clear();
    inst.e_tilde.clear();
    inst.i_tilde.clear();
    for (Element e = 0; e < roles.size(); ++e) {
      if (roles[e] == Role::kT) {
        inst.t.push_back(e);
      } else {
        inst.e_tilde.push_back(e);
      }
      if (roles[e] == Role::kI) inst.i_tilde.push_back(e);
    }
  }

  const std::size_t k = inst.matroids.size();
  const std::size_t u = universe_of(inst.matroids);
  const ElementSet t_set(u, inst.t);
  if (k == 2) {
    // A largest valid I~, at least as large as any planted one.
    const auto other = contract(inst.matroids[1 - inst.side], t_set);
    inst.i_tilde =
        exact_intersection(*inst.matroids[inst.side], *other, inst.e_tilde)
            .opt_set.sorted();
  }
  check_sampling_input(inst.matroids, inst.side, t_set, inst.e_tilde);
  check_i_tilde(inst.matroids, inst.side, t_set, inst.e_tilde, inst.i_tilde);

  const auto& e_tilde = inst.e_tilde;
  inst.orders.clear();
  inst.orders.push_back(e_tilde);
  inst.orders.emplace_back(e_tilde.rbegin(), e_tilde.rend());
  std::vector<Element> bad_first;
  const ElementSet i_set(u, inst.i_tilde);
  for (Element e : e_tilde) {
    if (!i_set.contains(e)) bad_first.push_back(e);
  }
  bad_first.insert(bad_first.end(), inst.i_tilde.begin(), inst.i_tilde.end());
  inst.orders.push_back(std::move(bad_first));
  std::vector<Element> random_order = e_tilde;
  shuffle(random_order, rng);
  inst.orders.push_back(std::move(random_order));
  return true;
}

std::string join(std::span<const Element> xs) {
  std::string out;
  for (Element e : xs) out += " " + std::to_string(e);
  return out;
}

}  // namespace

LemmaInstance random_lemma_instance(std::uint64_t seed, std::size_t max_t) {
  if (max_t == 0 || max_t > kExactTapeLimit) {
    throw std::invalid_argument("max_t must be in [1, 20]");
  }
  LemmaInstance inst;
  inst.seed = seed;
  const std::size_t family = seed % 8;
  for (std::uint64_t attempt = 0;; ++attempt) {
    Engine rng(derive_seed(seed, attempt));
    if (build_lemma_instance(rng, family, max_t, inst)) return inst;
  }
}

void write_lemma_instance(std::ostream& out, const LemmaInstance& inst) {
  out << "# sampling lemma instance\n";
  for (const auto& m : inst.matroids) write_matroid(out, *m);
  out << "set T" << join(inst.t) << "\n";
  out << "set Etilde" << join(inst.e_tilde) << "\n";
  out << "set Itilde" << join(inst.i_tilde) << "\n";
  for (std::size_t i = 0; i < inst.orders.size(); ++i) {
    out << "set order" << i << join(inst.orders[i]) << "\n";
  }
  out << "attr family " << inst.family << "\n";
  out << "attr seed " << inst.seed << "\n";
  out << "attr side " << inst.side << "\n";
}

LemmaInstance read_lemma_instance_file(const std::string& path) {
  MatroidDocument doc = read_matroid_document_file(path);
  LemmaInstance inst;
  inst.matroids = std::move(doc.matroids);
  auto need = [&](const std::string& name) -> std::vector<Element>& {
    auto it = doc.sets.find(name);
    if (it == doc.sets.end()) throw std::runtime_error(path + ": missing set " + name);
    return it->second;
  };
  inst.t = need("T");
  inst.e_tilde = need("Etilde");
  inst.i_tilde = need("Itilde");
  for (std::size_t i = 0;; ++i) {
    auto it = doc.sets.find("order" + std::to_string(i));
    if (it == doc.sets.end()) break;
    inst.orders.push_back(it->second);
  }
  if (inst.orders.empty()) inst.orders.push_back(inst.e_tilde);
  if (auto it = doc.attrs.find("family"); it != doc.attrs.end()) inst.family = it->second;
  if (auto it = doc.attrs.find("seed"); it != doc.attrs.end()) {
    inst.seed = std::stoull(it->second);
  }
  if (auto it = doc.attrs.find("side"); it != doc.attrs.end()) {
    inst.side = std::stoull(it->second);
  }
  return inst;
}

InvariantReport track_invariant_sets(std::span<const MatroidPtr> matroids,
                                     std::size_t side,
                                     std::span<const Element> t,
                                     std::span<const Element> i_tilde,
                                     const RandomnessTape& tape,
                                     const SampResult& run) {
  check_family(matroids, side);
  const std::size_t u = universe_of(matroids);
  const std::size_t k = matroids.size();
  const Matroid& mi = *matroids[side];
  const ElementSet t_set(u, t);
  ElementSet s(u);
  for (Element x : t) {
    if (tape.bit(x)) s.insert(x);
  }
  ElementSet s_prime(u), n_prime(u), t_prime = t_set, i_prime(u, i_tilde);
  ElementSet remaining(u);
  for (const SampStep& st : run.trace) remaining.insert(st.e);

  InvariantReport rep;
  auto fail = [&](std::size_t step, std::string msg) {
    if (rep.ok) {
      rep.ok = false;
      rep.failed_step = step;
      rep.message = std::move(msg);
    }
  };
  // Removes some member of `circuit` that lies in I'; false if there is none.
  auto break_circuit = [&](const std::vector<Element>& circuit) {
    for (Element x : circuit) {
      if (i_prime.contains(x)) {
        i_prime.erase(x);
        return true;
      }
    }
    return false;
  };
  auto check_state = [&](std::size_t step) {
    if (!mi.is_independent(set_union(set_union(s_prime, n_prime), i_prime))) {
      fail(step, "S' + N' + I' dependent in the sampled matroid");
    }
    const ElementSet tni = set_union(set_union(t_set, n_prime), i_prime);
    for (std::size_t j = 0; j < k; ++j) {
      if (j != side && !matroids[j]->is_independent(tni)) {
        fail(step, "T + N' + I' dependent in matroid " + std::to_string(j));
      }
    }
    if (!is_subset(i_prime, remaining)) fail(step, "I' holds an element already seen");
    const ElementSet st = set_union(s_prime, t_prime);
    if (!is_subset(s, st) || !is_subset(st, t_set)) {
      fail(step, "S in S' + T' in T violated");
    }
    const ElementSet snt = set_union(set_union(s_prime, n_prime), t_prime);
    if (snt.size() != t.size()) fail(step, "|S' + N' + T'| differs from |T|");
    if (!mi.is_independent(snt)) fail(step, "S' + N' + T' dependent");
  };

  check_state(0);
  for (std::size_t idx = 0; idx < run.trace.size() && rep.ok; ++idx) {
    const SampStep& st = run.trace[idx];
    const Element e = st.e;
    std::size_t removed = 0;
    std::size_t ones = 0;
    for (const auto& [f, bit] : st.reads) {
      if (bit != tape.bit(f)) fail(idx, "trace disagrees with the tape");
      if (!t_prime.erase(f)) fail(idx, "read an element outside T'");
      const std::size_t before = i_prime.size();
      if (bit) {
        const auto c = circuit_or_empty(
            mi, set_union(set_union(s_prime, n_prime), i_prime), f);
        if (!c.empty() && !break_circuit(c)) fail(idx, "circuit without I' member");
        s_prime.insert(f);
        ++ones;
      } else {
        if (i_prime.contains(e)) i_prime.erase(e);
        const auto c1 = circuit_or_empty(
            mi, set_union(set_union(s_prime, n_prime), i_prime), e);
        if (!c1.empty() && !break_circuit(c1)) fail(idx, "circuit without I' member");
        for (std::size_t j = 0; j < k; ++j) {
          if (j == side) continue;
          const auto c2 = circuit_or_empty(
              *matroids[j], set_union(set_union(t_set, n_prime), i_prime), e);
          if (!c2.empty() && !break_circuit(c2)) fail(idx, "circuit without I' member");
        }
        n_prime.insert(e);
      }
      removed += before - i_prime.size();
    }
    remaining.erase(e);
    rep.removals.push_back(removed);
    const bool added = !st.reads.empty() && !st.reads.back().second;
    if (added != st.added) fail(idx, "trace outcome disagrees with its reads");
    const std::size_t limit = added ? ones + k : st.circuit.size();
    if (removed > limit) {
      fail(idx, "removed " + std::to_string(removed) + " elements, limit " +
                    std::to_string(limit));
    }
    check_state(idx + 1);
  }
  if (rep.ok && n_prime.sorted() != ElementSet(u, run.n_prime).sorted()) {
    fail(run.trace.size(), "replayed N' differs from the run");
  }
  rep.final_i_size = i_prime.size();
  return rep;
}

}  // namespace omi
