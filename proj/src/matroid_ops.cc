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

#include "omi/matroid_ops.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace omi {

std::size_t rank(const Matroid& m, const ElementSet& xs) {
  std::vector<Element> basis;
  basis.reserve(xs.size());
  for (Element e : xs) {
    basis.push_back(e);
    if (!m.is_independent(basis)) basis.pop_back();
  }
  return basis.size();
}

bool in_span(const Matroid& m, const ElementSet& t, Element e,
             bool t_independent) {
  if (!m.in_ground(e)) {
    throw std::out_of_range("in_span: element " + std::to_string(e) +
                            " is not in the ground set");
  }
  if (t.contains(e)) return true;
  if (t_independent) {
    std::vector<Element> joined(t.begin(), t.end());
    joined.push_back(e);
    return !m.is_independent(joined);
  }
  ElementSet with_e(std::max(t.universe(), m.id_bound()), t.elements());
  with_e.insert(e);
  return rank(m, with_e) == rank(m, t);
}

std::vector<Element> find_circuit(const Matroid& m, const ElementSet& a,
                                  Element e) {
  if (!m.is_independent(a)) {
    throw PreconditionError("find_circuit: base set is dependent");
  }
  if (a.contains(e)) {
    throw PreconditionError("find_circuit: element already in the base set");
  }
  std::vector<Element> probe(a.begin(), a.end());
  probe.push_back(e);
  if (m.is_independent(probe)) {
    throw PreconditionError("find_circuit: element " + std::to_string(e) +
                            " is not spanned (no circuit)");
  }
  // x is on the circuit iff (A - x) + e is independent.
  std::vector<Element> circuit{e};
  const std::vector<Element> members(a.begin(), a.end());
  for (std::size_t i = 0; i < members.size(); ++i) {
    probe.clear();
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (j != i) probe.push_back(members[j]);
    }
    probe.push_back(e);
    if (m.is_independent(probe)) circuit.push_back(members[i]);
  }
  std::sort(circuit.begin(), circuit.end());
  return circuit;
}

MatroidPtr contract(MatroidPtr m, const ElementSet& t) {
  return std::make_shared<ContractedMatroid>(std::move(m), t);
}

MatroidPtr restrict_to(MatroidPtr m, const ElementSet& f) {
  return std::make_shared<RestrictedMatroid>(std::move(m), f);
}

bool is_common_independent(std::span<const MatroidPtr> matroids,
                           const ElementSet& xs) {
  return std::all_of(matroids.begin(), matroids.end(),
                     [&](const MatroidPtr& m) { return m->is_independent(xs); });
}

bool is_common_independent(std::span<const Matroid* const> matroids,
                           const ElementSet& xs) {
  return std::all_of(matroids.begin(), matroids.end(),
                     [&](const Matroid* m) { return m->is_independent(xs); });
}

}  // namespace omi
