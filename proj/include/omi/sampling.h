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

// The deferred-decision view of contracted greedy, and exact / Monte-Carlo
// checks of the bound E[|Greedy(M_i / S, M_j / T, E~)|] >= p |I~| / (1 + p)
// and its k-matroid form p |I~| / (1 + p (k - 1)).
//
// Throughout, `side` is the index i of the matroid contracted by the sampled
// set S; every other matroid is contracted by all of T. S is the set of
// elements of T whose tape bit is 1, so each element of T is dropped with
// probability p.

#ifndef OMI_SAMPLING_H_
#define OMI_SAMPLING_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "omi/graph.h"
#include "omi/matroid.h"
#include "omi/online.h"
#include "omi/rational.h"

namespace omi {

enum class ScanOrder { kAscending, kDescending };

// One iteration of the outer loop.
struct SampStep {
  Element e = 0;
  // T + N' + e independent in every matroid other than `side`.
  bool gate = false;
  // Unread members of the circuit, in scan order.
  std::vector<Element> circuit;
  // Bits read during the scan, in order.
  std::vector<std::pair<Element, bool>> reads;
  bool added = false;
};

struct SampResult {
  std::vector<Element> n_prime;
  // Filled only when requested.
  std::vector<SampStep> trace;
};

// Runs the deferred-decision algorithm over `e_tilde` in the given order.
// Preconditions (std::invalid_argument): side < k, T common independent,
// E~ duplicate free, disjoint from T and inside span_side(T). Throws
// std::logic_error if a circuit that must exist is missing.
SampResult samp_alg(std::span<const MatroidPtr> matroids, std::size_t side,
                    std::span<const Element> t,
                    std::span<const Element> e_tilde,
                    const RandomnessTape& tape,
                    ScanOrder scan = ScanOrder::kAscending,
                    bool record_trace = false);

// Greedy(M_side / S, M_j / T for j != side) over `e_tilde` in order, where S
// is the part of T with tape bit 1.
std::vector<Element> contracted_greedy(std::span<const MatroidPtr> matroids,
                                       std::size_t side,
                                       std::span<const Element> t,
                                       std::span<const Element> e_tilde,
                                       const RandomnessTape& tape);

enum class LemmaMethod { kExact, kMonteCarlo };

struct LemmaReport {
  LemmaMethod method = LemmaMethod::kExact;
  Rational p;
  std::size_t i_size = 0;
  std::size_t k = 2;
  // Exact expectation (kExact only).
  Rational lhs_exact;
  // Expectation as a double; for kMonteCarlo the sample mean and its
  // standard error.
  double lhs = 0;
  double lhs_stderr = 0;
  // p |I~| / (1 + p (k - 1)).
  Rational rhs;
  // kExact: lhs_exact >= rhs. kMonteCarlo: lhs + 3 stderr >= rhs.
  bool holds = false;
  std::uint64_t tapes = 0;
};

std::string to_string(LemmaMethod m);

Rational sampling_bound(const Rational& p, std::size_t i_size, std::size_t k);

inline constexpr std::size_t kExactTapeLimit = 20;

// Exact expectation over all 2^|T| tapes, one report per entry of `ps`. The
// greedy outputs do not depend on p, so they are computed once per tape and
// grouped by the number of ones. Checks |T| <= kExactTapeLimit,
// I~ subset of E~ subset of span_side(T), E~ disjoint from T and
// I~ independent in M_side and in M_j / T for j != side.
std::vector<LemmaReport> verify_sampling_lemma_exact(
    std::span<const MatroidPtr> matroids, std::size_t side,
    std::span<const Element> t, std::span<const Element> e_tilde_order,
    std::span<const Element> i_tilde, std::span<const Rational> ps);

// Monte-Carlo version for larger T: `trials` tapes drawn from `seed`.
LemmaReport verify_sampling_lemma_mc(std::span<const MatroidPtr> matroids,
                                     std::size_t side,
                                     std::span<const Element> t,
                                     std::span<const Element> e_tilde_order,
                                     std::span<const Element> i_tilde,
                                     const Rational& p, std::size_t trials,
                                     std::uint64_t seed);

// Graph form. X is the left side of `h` (vertices [0, left_count)); each
// vertex of X survives with probability p and greedy matches the surviving
// edges in `order`. Exact when |X| <= kExactTapeLimit, Monte-Carlo with
// `trials` samples otherwise. std::invalid_argument if `i_tilde` is not a
// matching of h or `order` is not a permutation of h's edges.
std::vector<LemmaReport> verify_sampling_lemma_bipartite(
    const Graph& h, std::span<const Element> i_tilde,
    std::span<const Element> order, std::span<const Rational> ps,
    std::size_t trials = 20000, std::uint64_t seed = 0);

// A sampling-lemma instance: matroids, the sampled side, T, E~ with one or
// more arrival orders, and I~.
struct LemmaInstance {
  std::string family;
  std::uint64_t seed = 0;
  std::vector<MatroidPtr> matroids;
  std::size_t side = 0;
  std::vector<Element> t;
  std::vector<Element> e_tilde;
  std::vector<Element> i_tilde;
  std::vector<std::vector<Element>> orders;
};

// Random instance with 1 <= |T| <= max_t and |E~| <= 16. Families rotate
// with the seed. Seven are planted: T, I~ and noise roles are fixed first,
// then each matroid is built so that E~ lies in span_side(T) and T + I~ is
// independent in the other matroids (bipartite matchings, partition and
// graphic pairs, both mixes, three partitions, a mixed triple). The eighth
// takes two random partition matroids and a greedy T. For k = 2, I~ is then
// replaced by a largest valid set. Orders: ascending, descending, E~ minus
// I~ before I~, and one random order.
LemmaInstance random_lemma_instance(std::uint64_t seed, std::size_t max_t = 12);

// Matroid document with sets T, Etilde, Itilde, order0, order1, ... and
// attrs family, seed, side.
void write_lemma_instance(std::ostream& out, const LemmaInstance& inst);
LemmaInstance read_lemma_instance_file(const std::string& path);

// Replays a trace while maintaining the analysis set I' (initially I~),
// removing elements to break circuits whenever a bit is read. After every
// step checks that S' + N' + I' is independent in M_side, T + N' + I' is
// independent in the other matroids, I' holds only elements still to come,
// S subset of S' + T' subset of T, S' + N' + T' independent in M_side with
// size |T|, and that the step removed at most j + k elements when the j-th
// read bit was the first 0, at most |C| when every read bit was 1.
struct InvariantReport {
  bool ok = true;
  std::size_t failed_step = 0;
  std::string message;
  std::vector<std::size_t> removals;
  std::size_t final_i_size = 0;
};

InvariantReport track_invariant_sets(std::span<const MatroidPtr> matroids,
                                     std::size_t side,
                                     std::span<const Element> t,
                                     std::span<const Element> i_tilde,
                                     const RandomnessTape& tape,
                                     const SampResult& run);

}  // namespace omi

#endif  // OMI_SAMPLING_H_
