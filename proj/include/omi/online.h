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

// Random-order online algorithms for matroid intersection and matching.
//
// Every oracle-based algorithm wraps each input matroid in an ArrivalGuard
// bound to the stream, so it can only ask about elements that have already
// arrived, and so the calls it makes are counted per run even when the
// underlying oracles are shared between threads.

#ifndef OMI_ONLINE_H_
#define OMI_ONLINE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "omi/element_set.h"
#include "omi/graph.h"
#include "omi/matroid.h"

namespace omi {

// A permutation of [0, m) revealed one element at a time.
class ArrivalStream {
 public:
  // Uniformly random order (Fisher-Yates) determined by `seed`.
  ArrivalStream(std::size_t m, std::uint64_t seed);
  // Fixed order over a universe [0, universe); `order` must be duplicate free.
  // Elements not listed never arrive.
  ArrivalStream(std::size_t universe, std::vector<Element> order);

  std::size_t size() const { return order_.size(); }
  std::size_t universe() const { return arrived_.size(); }
  std::uint64_t seed() const { return seed_; }
  const std::vector<Element>& order() const { return order_; }

  std::size_t cursor() const { return cursor_; }
  bool has_next() const { return cursor_ < order_.size(); }
  // Reveals the next element and returns it.
  Element next();
  bool arrived(Element e) const { return e < arrived_.size() && arrived_[e]; }

  // Back to the start; nothing has arrived.
  void reset();

 private:
  std::vector<Element> order_;
  std::vector<char> arrived_;
  std::size_t cursor_ = 0;
  std::uint64_t seed_ = 0;
};

// Psi: one Bernoulli(1 - p) bit per element id, a pure function of (seed, id)
// so that it does not depend on the arrival order. bit(e) == 1 means "pick",
// 0 means "mark".
class RandomnessTape {
 public:
  RandomnessTape(double p, std::uint64_t seed) : p_(p), seed_(seed) {}
  // Explicit bits indexed by element id; ids beyond the vector read as 1.
  static RandomnessTape from_bits(std::vector<std::uint8_t> bits);

  bool bit(Element e) const;
  double p() const { return p_; }
  std::uint64_t seed() const { return seed_; }

 private:
  RandomnessTape() = default;
  double p_ = 0;
  std::uint64_t seed_ = 0;
  std::optional<std::vector<std::uint8_t>> bits_;
};

// Raised by ArrivalGuard when an algorithm asks about an element that has not
// arrived yet.
class OnlineDisciplineError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ArrivalGuard final : public Matroid {
 public:
  ArrivalGuard(const Matroid& base, const ArrivalStream& stream);

  MatroidKind kind() const override { return MatroidKind::kArrivalGuard; }
  bool in_ground(Element e) const override { return base_.in_ground(e); }

 protected:
  bool test(std::span<const Element> xs) const override;
  std::unique_ptr<IndependenceState> make_state() const override;

 private:
  class State;
  void check(Element e) const;

  const Matroid& base_;
  const ArrivalStream& stream_;
};

struct AlgoParams {
  double f = 0.07;
  double p = 0.36;
  double r = 1.0;
  double epsilon = 0.001;
  double gamma = 0.05;

  // Boundary between Phase (a) and Phase (b): floor(f * m).
  std::size_t boundary(std::size_t m) const;

  static double coin_probability(double epsilon, double gamma) {
    return epsilon / (0.5 + epsilon + gamma);
  }
  static double advantage(double epsilon, double gamma) {
    return epsilon * gamma / (0.5 + epsilon + gamma);
  }
};

struct RunResult {
  // Output elements in the order they were picked.
  std::vector<Element> picked;
  // Oracle calls per input matroid (empty for graph-based algorithms).
  std::vector<std::uint64_t> oracle_calls;
  std::size_t boundary = 0;
  // Phase (a) greedy selections (T_f) and the picked part S.
  std::vector<Element> t_f;
  std::size_t s_size = 0;
  std::vector<std::size_t> n_sizes;
  // For the combined algorithm: true iff the marking branch ran.
  bool marking_branch = false;

  std::uint64_t total_calls() const;
};

// Picks every arriving element that keeps the picked set independent in all
// matroids. Queries the matroids in order and stops at the first rejection,
// so at most k calls per element. When `checkpoints` is given (ascending
// prefix lengths), `sizes_at` receives the number of picks after each.
RunResult greedy(std::span<const Matroid* const> matroids,
                 ArrivalStream& stream);
RunResult greedy(std::span<const Matroid* const> matroids,
                 ArrivalStream& stream,
                 std::span<const std::size_t> checkpoints,
                 std::vector<std::size_t>& sizes_at);

// Greedy matching on a graph of any kind: keeps every arriving edge whose
// endpoints are both free. No oracle calls.
RunResult greedy_matching(const Graph& g, ArrivalStream& stream);

// Two-phase matching algorithm for bipartite graphs, on vertex bookkeeping
// rather than oracles. std::invalid_argument for non-bipartite input.
RunResult marking_greedy_bipartite(const Graph& g, ArrivalStream& stream,
                                   const AlgoParams& params,
                                   const RandomnessTape& tape);

// Two-phase algorithm for two matroids on a shared ground set.
RunResult marking_greedy_omi(const Matroid& m1, const Matroid& m2,
                             ArrivalStream& stream, const AlgoParams& params,
                             const RandomnessTape& tape);

// Phase (b) side condition of the k-matroid algorithm when e joins N_i.
// kLiteral: T_f + N_i + e independent in every M_j, j != i, one i at a time.
// For k >= 3 the output can then be dependent: two elements placed in
// different N's may both sit outside span_j(T_f) yet clash in M_j.
// kJoint: T_f + (union of N_l over l != j) + e independent in M_j for every
// j != i, which is the condition the exchange argument for the output
// needs. The two rules coincide for k = 2.
enum class KRule { kJoint, kLiteral };

// Two-phase algorithm for k >= 2 matroids (std::invalid_argument otherwise).
RunResult marking_greedy_k(std::span<const Matroid* const> matroids,
                           ArrivalStream& stream, const AlgoParams& params,
                           const RandomnessTape& tape,
                           KRule rule = KRule::kJoint);

// Two-phase matching algorithm for general graphs. Phase (b) only considers
// edges with exactly one endpoint matched in T_f.
RunResult marking_greedy_general(const Graph& g, ArrivalStream& stream,
                                 const AlgoParams& params,
                                 const RandomnessTape& tape);

// Runs marking_greedy_omi with probability params.r, greedy otherwise; the
// coin is drawn from `coin_seed`.
RunResult combined_algorithm(const Matroid& m1, const Matroid& m2,
                             ArrivalStream& stream, const AlgoParams& params,
                             const RandomnessTape& tape,
                             std::uint64_t coin_seed);

// Offline single pass: greedy over all of `order`, then the Phase (b) rule
// over the elements greedy skipped. Oracle calls are linear in |order|.
RunResult offline_half_plus_delta(const Matroid& m1, const Matroid& m2,
                                  std::span<const Element> order,
                                  const AlgoParams& params,
                                  const RandomnessTape& tape);

}  // namespace omi

#endif  // OMI_ONLINE_H_
