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

#ifndef OMI_ELEMENT_SET_H_
#define OMI_ELEMENT_SET_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace omi {

// Dense ground-set index. Ids of a ground set of size m are exactly [0, m).
using Element = std::uint32_t;

// Subset of a dense universe [0, universe) with O(1) membership, insertion and
// removal. Iteration follows insertion order, except that erase() moves the
// last member into the erased slot.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe);
  ElementSet(std::size_t universe, std::span<const Element> members);
  ElementSet(std::size_t universe, std::initializer_list<Element> members);

  std::size_t universe() const { return slot_.size(); }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  bool contains(Element e) const {
    return e < slot_.size() && slot_[e] != kAbsent;
  }

  // Returns false if `e` was already present. Throws std::out_of_range if `e`
  // is outside the universe.
  bool insert(Element e);
  bool erase(Element e);
  void clear();

  std::span<const Element> elements() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  std::vector<Element> sorted() const;

  // Set equality, independent of iteration order.
  friend bool operator==(const ElementSet& a, const ElementSet& b);

 private:
  static constexpr std::uint32_t kAbsent = 0xffffffffu;

  std::vector<Element> members_;
  std::vector<std::uint32_t> slot_;
};

ElementSet set_union(const ElementSet& a, const ElementSet& b);

// Members of `a` that are not in `b`, in `a`'s iteration order.
ElementSet set_difference(const ElementSet& a, const ElementSet& b);

bool is_subset(const ElementSet& a, const ElementSet& b);

}  // namespace omi

#endif  // OMI_ELEMENT_SET_H_
