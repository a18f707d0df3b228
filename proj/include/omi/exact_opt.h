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

// Offline optima and tiny-instance ground truth.

#ifndef OMI_EXACT_OPT_H_
#define OMI_EXACT_OPT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "omi/element_set.h"
#include "omi/graph.h"
#include "omi/matroid.h"
#include "omi/rational.h"

namespace omi {

struct OptResult {
  ElementSet opt_set;
  std::size_t opt_size = 0;
  std::uint64_t oracle_calls = 0;
};

struct OnlineDpResult {
  Rational expected_value;
  std::size_t state_count = 0;
};

// Maximum common independent set of M1 and M2 restricted to `ground`, by
// shortest augmenting paths in the exchange graph. Sources, sinks and
// neighbours are scanned in ascending id order, so the result is a
// deterministic function of the input.
OptResult exact_intersection(const Matroid& m1, const Matroid& m2,
                             std::span<const Element> ground);

inline constexpr std::size_t kBruteForceLimit = 20;

// Exhaustive search over all subsets of `ground`; std::length_error when
// |ground| > kBruteForceLimit.
OptResult brute_force_intersection(const Matroid& m1, const Matroid& m2,
                                   std::span<const Element> ground);

// Hopcroft-Karp. std::invalid_argument on non-bipartite input.
OptResult max_bipartite_matching(const Graph& g);

// Max-flow optimum for two partition matroids over the whole ground set
// (capacities may exceed one). Used by the harness on large instances.
OptResult partition_pair_optimum(const PartitionMatroid& m1,
                                 const PartitionMatroid& m2);

inline constexpr std::size_t kOnlineDpLimit = 10;

// Best expected value achievable by any online algorithm when the elements of
// `ground` arrive in uniformly random order and the algorithm observes only
// the independence structure (in both matroids) of the elements that have
// arrived so far, indexed by arrival position. Exact backward induction over
// observation classes; std::length_error when |ground| > kOnlineDpLimit.
OnlineDpResult optimal_online_value(const Matroid& m1, const Matroid& m2,
                                    std::span<const Element> ground);

}  // namespace omi

#endif  // OMI_EXACT_OPT_H_
