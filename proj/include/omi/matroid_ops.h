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

#ifndef OMI_MATROID_OPS_H_
#define OMI_MATROID_OPS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "omi/element_set.h"
#include "omi/matroid.h"

namespace omi {

// Size of a maximum independent subset of `xs`; one greedy sweep, |xs| calls.
std::size_t rank(const Matroid& m, const ElementSet& xs);

// e in span(T), i.e. rank(T + e) == rank(T). When `t_independent` is set the
// caller vouches that T is independent and a single call decides the answer.
bool in_span(const Matroid& m, const ElementSet& t, Element e,
             bool t_independent = false);

// The unique circuit of A + e, for independent A with e in span(A). The
// returned elements are in ascending id order and include e. Uses |A| + 2
// calls. Throws PreconditionError if A is dependent or e is not spanned.
std::vector<Element> find_circuit(const Matroid& m, const ElementSet& a,
                                  Element e);

// M / T for independent T (PreconditionError otherwise).
MatroidPtr contract(MatroidPtr m, const ElementSet& t);

// M | F (std::out_of_range if F leaves the ground set).
MatroidPtr restrict_to(MatroidPtr m, const ElementSet& f);

// True iff `xs` is independent in every matroid.
bool is_common_independent(std::span<const MatroidPtr> matroids,
                           const ElementSet& xs);
bool is_common_independent(std::span<const Matroid* const> matroids,
                           const ElementSet& xs);

}  // namespace omi

#endif  // OMI_MATROID_OPS_H_
