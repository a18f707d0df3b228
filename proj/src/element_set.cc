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

#include "omi/element_set.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace omi {

ElementSet::ElementSet(std::size_t universe) : slot_(universe, kAbsent) {}

ElementSet::ElementSet(std::size_t universe, std::span<const Element> members)
    : ElementSet(universe) {
  for (Element e : members) insert(e);
}

ElementSet::ElementSet(std::size_t universe,
                       std::initializer_list<Element> members)
    : ElementSet(universe, std::span<const Element>(members.begin(),
                                                    members.size())) {}

bool ElementSet::insert(Element e) {
  if (e >= slot_.size()) {
    throw std::out_of_range("element " + std::to_string(e) +
                            " outside universe of size " +
                            std::to_string(slot_.size()));
  }
  if (slot_[e] != kAbsent) return false;
  slot_[e] = static_cast<std::uint32_t>(members_.size());
  members_.push_back(e);
  return true;
}

bool ElementSet::erase(Element e) {
  if (!contains(e)) return false;
  const std::uint32_t at = slot_[e];
  const Element last = members_.back();
  members_[at] = last;
  slot_[last] = at;
  members_.pop_back();
  slot_[e] = kAbsent;
  return true;
}

void ElementSet::clear() {
  for (Element e : members_) slot_[e] = kAbsent;
  members_.clear();
}

std::vector<Element> ElementSet::sorted() const {
  std::vector<Element> out(members_);
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const ElementSet& a, const ElementSet& b) {
  if (a.size() != b.size()) return false;
  return std::all_of(a.begin(), a.end(),
                     [&](Element e) { return b.contains(e); });
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out(std::max(a.universe(), b.universe()), a.elements());
  for (Element e : b) out.insert(e);
  return out;
}

ElementSet set_difference(const ElementSet& a, const ElementSet& b) {
  ElementSet out(a.universe());
  for (Element e : a) {
    if (!b.contains(e)) out.insert(e);
  }
  return out;
}

bool is_subset(const ElementSet& a, const ElementSet& b) {
  return std::all_of(a.begin(), a.end(),
                     [&](Element e) { return b.contains(e); });
}

}  // namespace omi
