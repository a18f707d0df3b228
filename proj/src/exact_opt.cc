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

#include "omi/exact_opt.h"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>

namespace omi {
namespace {

std::vector<Element> sorted_ground(std::span<const Element> ground) {
  std::vector<Element> out(ground.begin(), ground.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw std::invalid_argument("ground set has duplicate elements");
  }
  return out;
}

std::size_t universe_of(const Matroid& a, const Matroid& b) {
  return std::max(a.id_bound(), b.id_bound());
}

// Shortest augmenting path search for one phase. Returns false when `in_set`
// is already maximum.
bool augment(const Matroid& m1, const Matroid& m2,
             const std::vector<Element>& ground, std::vector<char>& in_set) {
  const std::size_t n = ground.size();
  std::vector<Element> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_set[i]) current.push_back(ground[i]);
  }
  // current with slot `drop` replaced by x (drop == npos appends x).
  std::vector<Element> scratch;
  auto swapped = [&](std::size_t drop, Element x) {
    scratch.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (in_set[i] && i != drop) scratch.push_back(ground[i]);
    }
    scratch.push_back(x);
    return std::span<const Element>(scratch);
  };
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::vector<char> sink(n, 0);
  std::vector<std::size_t> parent(n, kNone);
  std::vector<char> seen(n, 0);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_set[i]) continue;
    sink[i] = m2.is_independent(swapped(kNone, ground[i]));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (in_set[i]) continue;
    if (!m1.is_independent(swapped(kNone, ground[i]))) continue;
    if (sink[i]) {
      in_set[i] = 1;
      return true;
    }
    seen[i] = 1;
    queue.push_back(i);
  }
  while (!queue.empty()) {
    const std::size_t a = queue.front();
    queue.pop_front();
    for (std::size_t b = 0; b < n; ++b) {
      if (seen[b] || in_set[b] == in_set[a]) continue;
      // Arc x -> y when I - y + x is in M2; arc y -> x when I - y + x in M1.
      const bool arc = in_set[a]
                           ? m1.is_independent(swapped(a, ground[b]))
                           : m2.is_independent(swapped(b, ground[a]));
      if (!arc) continue;
      seen[b] = 1;
      parent[b] = a;
      if (!in_set[b] && sink[b]) {
        for (std::size_t v = b; v != kNone; v = parent[v]) {
          in_set[v] = !in_set[v];
        }
        return true;
      }
      queue.push_back(b);
    }
  }
  return false;
}

OptResult make_result(std::size_t universe, const std::vector<Element>& members,
                      std::uint64_t calls) {
  OptResult r;
  r.opt_set = ElementSet(universe, members);
  r.opt_size = members.size();
  r.oracle_calls = calls;
  return r;
}

}  // namespace

OptResult exact_intersection(const Matroid& m1, const Matroid& m2,
                             std::span<const Element> ground) {
  const auto elems = sorted_ground(ground);
  CountingMatroid c1(m1), c2(m2);
  std::vector<char> in_set(elems.size(), 0);
  while (augment(c1, c2, elems, in_set)) {
  }
  std::vector<Element> members;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (in_set[i]) members.push_back(elems[i]);
  }
  return make_result(universe_of(m1, m2), members, c1.calls() + c2.calls());
}

OptResult brute_force_intersection(const Matroid& m1, const Matroid& m2,
                                   std::span<const Element> ground) {
  if (ground.size() > kBruteForceLimit) {
    throw std::length_error("brute force limited to " +
                            std::to_string(kBruteForceLimit) + " elements");
  }
  const auto elems = sorted_ground(ground);
  CountingMatroid c1(m1), c2(m2);
  const std::uint32_t n = static_cast<std::uint32_t>(elems.size());
  std::uint32_t best = 0;
  std::vector<Element> xs;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (std::popcount(mask) <= std::popcount(best)) continue;
    xs.clear();
    for (std::uint32_t i = 0; i < n; ++i) {
      if (mask >> i & 1u) xs.push_back(elems[i]);
    }
    if (c1.is_independent(xs) && c2.is_independent(xs)) best = mask;
  }
  xs.clear();
  for (std::uint32_t i = 0; i < n; ++i) {
    if (best >> i & 1u) xs.push_back(elems[i]);
  }
  return make_result(universe_of(m1, m2), xs, c1.calls() + c2.calls());
}

OptResult max_bipartite_matching(const Graph& input) {
  const Graph g = as_bipartite(input);
  const std::size_t left = *g.left_count;
  const std::size_t right = g.vertex_count - left;
  constexpr std::uint32_t kFree = std::numeric_limits<std::uint32_t>::max();
  constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

  // adj[u] lists (right vertex, edge id), ascending edge id.
  std::vector<std::vector<std::pair<std::uint32_t, Element>>> adj(left);
  for (Element e = 0; e < g.edges.size(); ++e) {
    adj[g.edges[e].u].push_back({g.edges[e].v - static_cast<Vertex>(left), e});
  }
  std::vector<std::uint32_t> match_l(left, kFree), match_r(right, kFree);
  std::vector<Element> edge_l(left, 0);
  std::vector<std::uint32_t> dist(left);
  std::vector<std::size_t> it(left);

  auto bfs = [&] {
    std::deque<std::uint32_t> q;
    bool found = false;
    for (std::uint32_t u = 0; u < left; ++u) {
      dist[u] = match_l[u] == kFree ? 0 : kInf;
      if (match_l[u] == kFree) q.push_back(u);
    }
    while (!q.empty()) {
      const auto u = q.front();
      q.pop_front();
      for (const auto& [v, e] : adj[u]) {
        const auto w = match_r[v];
        if (w == kFree) {
          found = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          q.push_back(w);
        }
      }
    }
    return found;
  };
  // Iterative DFS along the layered graph.
  auto dfs = [&](std::uint32_t root) {
    std::vector<std::uint32_t> stack{root};
    std::vector<std::pair<std::uint32_t, Element>> via;
    while (!stack.empty()) {
      const auto u = stack.back();
      bool advanced = false;
      while (it[u] < adj[u].size()) {
        const auto [v, e] = adj[u][it[u]++];
        const auto w = match_r[v];
        if (w == kFree) {
          via.push_back({v, e});
          // Flip the path: stack[i] gets via[i].
          for (std::size_t i = 0; i < stack.size(); ++i) {
            match_l[stack[i]] = via[i].first;
            edge_l[stack[i]] = via[i].second;
            match_r[via[i].first] = stack[i];
          }
          return true;
        }
        if (dist[w] == dist[u] + 1) {
          via.push_back({v, e});
          stack.push_back(w);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dist[u] = kInf;
        stack.pop_back();
        if (!via.empty()) via.pop_back();
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (std::uint32_t u = 0; u < left; ++u) {
      if (match_l[u] == kFree) dfs(u);
    }
  }
  std::vector<Element> members;
  for (std::uint32_t u = 0; u < left; ++u) {
    if (match_l[u] != kFree) members.push_back(edge_l[u]);
  }
  std::sort(members.begin(), members.end());
  return make_result(g.edges.size(), members, 0);
}

OptResult partition_pair_optimum(const PartitionMatroid& m1,
                                 const PartitionMatroid& m2) {
  using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS,
                                              boost::directedS>;
  using FlowGraph = boost::adjacency_list<
      boost::vecS, boost::vecS, boost::directedS, boost::no_property,
      boost::property<
          boost::edge_capacity_t, long,
          boost::property<boost::edge_residual_capacity_t, long,
                          boost::property<boost::edge_reverse_t,
                                          Traits::edge_descriptor>>>>;
  if (m1.id_bound() != m2.id_bound()) {
    throw std::invalid_argument("partition matroids on different ground sets");
  }
  const std::size_t m = m1.id_bound();
  const std::size_t k1 = m1.class_count(), k2 = m2.class_count();
  FlowGraph g(2 + k1 + k2);
  const std::size_t source = 0, target = 1;
  auto cap = boost::get(boost::edge_capacity, g);
  auto rev = boost::get(boost::edge_reverse, g);
  auto add_arc = [&](std::size_t a, std::size_t b, long c) {
    auto fwd = boost::add_edge(a, b, g).first;
    auto bwd = boost::add_edge(b, a, g).first;
    cap[fwd] = c;
    cap[bwd] = 0;
    rev[fwd] = bwd;
    rev[bwd] = fwd;
    return fwd;
  };
  for (std::uint32_t c = 0; c < k1; ++c) add_arc(source, 2 + c, m1.capacity(c));
  for (std::uint32_t c = 0; c < k2; ++c) {
    add_arc(2 + k1 + c, target, m2.capacity(c));
  }
  std::vector<Traits::edge_descriptor> element_arc;
  element_arc.reserve(m);
  for (Element e = 0; e < m; ++e) {
    element_arc.push_back(
        add_arc(2 + m1.class_of(e), 2 + k1 + m2.class_of(e), 1));
  }
  boost::push_relabel_max_flow(g, source, target);
  auto residual = boost::get(boost::edge_residual_capacity, g);
  std::vector<Element> members;
  for (Element e = 0; e < m; ++e) {
    if (residual[element_arc[e]] == 0) members.push_back(e);
  }
  return make_result(m, members, 0);
}

// Observation model. After k arrivals the algorithm has seen, for every
// subset of arrival positions, whether the corresponding elements are
// independent in M1 and in M2. Two arrival prefixes with the same record are
// indistinguishable, and given the record every consistent prefix is equally
// likely. A decision state is therefore (record, positions picked so far).
namespace {

class OnlineDp {
 public:
  OnlineDp(const Matroid& m1, const Matroid& m2, std::vector<Element> ground)
      : n_(ground.size()) {
    const std::uint32_t subsets = 1u << n_;
    indep1_.resize(subsets);
    indep2_.resize(subsets);
    std::vector<Element> xs;
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
      xs.clear();
      for (std::size_t i = 0; i < n_; ++i) {
        if (mask >> i & 1u) xs.push_back(ground[i]);
      }
      indep1_[mask] = m1.is_independent(xs);
      indep2_[mask] = m2.is_independent(xs);
    }
  }

  Rational solve() {
    std::vector<Prefix> all{Prefix{}};
    return value(std::string(), all, 0, 0);
  }

  std::size_t state_count() const { return memo_.size(); }

 private:
  // Local element indices in arrival order.
  using Prefix = std::vector<std::uint8_t>;
  struct Group {
    std::string ext;
    std::vector<Prefix> members;
  };

  // What the algorithm learns when local element x arrives after `p`: for
  // every subset s of earlier positions, is s + x independent in M1 and M2?
  std::string extension(const Prefix& p, std::uint8_t x) const {
    const std::size_t k = p.size();
    std::string ext(std::size_t{1} << k, '\0');
    for (std::uint32_t s = 0; s < (1u << k); ++s) {
      std::uint32_t mask = 1u << x;
      for (std::size_t j = 0; j < k; ++j) {
        if (s >> j & 1u) mask |= 1u << p[j];
      }
      ext[s] = static_cast<char>(indep1_[mask] | (indep2_[mask] << 1));
    }
    return ext;
  }

  const std::vector<Group>& groups(const std::string& record,
                                   const std::vector<Prefix>& cls) {
    auto it = groups_.find(record);
    if (it != groups_.end()) return it->second;
    std::vector<Group> out;
    std::unordered_map<std::string, std::size_t> index;
    for (const Prefix& p : cls) {
      std::uint32_t used = 0;
      for (auto x : p) used |= 1u << x;
      for (std::uint8_t x = 0; x < n_; ++x) {
        if (used >> x & 1u) continue;
        std::string ext = extension(p, x);
        auto [slot, fresh] = index.try_emplace(ext, out.size());
        if (fresh) out.push_back(Group{std::move(ext), {}});
        Prefix q = p;
        q.push_back(x);
        out[slot->second].members.push_back(std::move(q));
      }
    }
    return groups_.emplace(record, std::move(out)).first->second;
  }

  Rational value(const std::string& record, const std::vector<Prefix>& cls,
                 std::size_t k, std::uint32_t picked) {
    if (k == n_) return Rational(std::popcount(picked));
    std::string key = record;
    key.append(reinterpret_cast<const char*>(&picked), sizeof(picked));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    // Copy: recursion may rehash groups_.
    const std::vector<Group> gs = groups(record, cls);
    const std::size_t total = cls.size() * (n_ - k);
    Rational sum = 0;
    for (const Group& g : gs) {
      const std::string next = record + g.ext;
      Rational best = value(next, g.members, k + 1, picked);
      if (g.ext[picked] == 3) {
        Rational take = value(next, g.members, k + 1, picked | 1u << k);
        if (take > best) best = take;
      }
      sum += best * Rational(g.members.size());
    }
    Rational v = sum / Rational(total);
    memo_.emplace(std::move(key), v);
    return v;
  }

  std::size_t n_;
  std::vector<std::uint8_t> indep1_, indep2_;
  std::unordered_map<std::string, std::vector<Group>> groups_;
  std::unordered_map<std::string, Rational> memo_;
};

}  // namespace

OnlineDpResult optimal_online_value(const Matroid& m1, const Matroid& m2,
                                    std::span<const Element> ground) {
  if (ground.size() > kOnlineDpLimit) {
    throw std::length_error("online DP limited to " +
                            std::to_string(kOnlineDpLimit) + " elements");
  }
  OnlineDp dp(m1, m2, sorted_ground(ground));
  OnlineDpResult r;
  r.expected_value = dp.solve();
  r.state_count = dp.state_count();
  return r;
}

}  // namespace omi
