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

#include "omi/matroid.h"

#include <algorithm>
#include <numeric>

namespace omi {

std::string_view to_string(MatroidKind kind) {
  switch (kind) {
    case MatroidKind::kPartition:
      return "partition";
    case MatroidKind::kUniform:
      return "uniform";
    case MatroidKind::kGraphic:
      return "graphic";
    case MatroidKind::kContracted:
      return "contracted";
    case MatroidKind::kRestricted:
      return "restricted";
    case MatroidKind::kCounting:
      return "counting-wrapper";
    case MatroidKind::kArrivalGuard:
      return "arrival-guard";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// IndependenceState

IndependenceState::IndependenceState(const Matroid& owner)
    : owner_(&owner), members_(owner.id_bound()) {}

bool IndependenceState::can_add(Element e) {
  owner_->check_element(e);
  if (members_.contains(e)) {
    throw std::invalid_argument("element " + std::to_string(e) +
                                " is already in the state");
  }
  owner_->count_call();
  return can_add_impl(e);
}

void IndependenceState::add(Element e) {
  if (!members_.insert(e)) {
    throw std::invalid_argument("element " + std::to_string(e) +
                                " added twice");
  }
  add_impl(e);
}

// ---------------------------------------------------------------------------
// Matroid

class Matroid::GenericState final : public IndependenceState {
 public:
  explicit GenericState(const Matroid& owner) : IndependenceState(owner) {}

 protected:
  bool can_add_impl(Element e) override {
    buffer_.assign(members().begin(), members().end());
    buffer_.push_back(e);
    return owner().test(buffer_);
  }
  void add_impl(Element) override {}

 private:
  std::vector<Element> buffer_;
};

std::size_t Matroid::ground_size() const {
  std::size_t n = 0;
  for (Element e = 0; e < id_bound_; ++e) n += in_ground(e) ? 1 : 0;
  return n;
}

void Matroid::check_element(Element e) const {
  if (!in_ground(e)) {
    throw std::out_of_range("element " + std::to_string(e) +
                            " is not in the ground set of this " +
                            std::string(to_string(kind())) + " matroid");
  }
}

bool Matroid::is_independent(std::span<const Element> xs) const {
  for (Element e : xs) check_element(e);
  if (xs.size() > 1) {
    std::vector<Element> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("independence query with duplicate element");
    }
  }
  count_call();
  return test(xs);
}

std::unique_ptr<IndependenceState> Matroid::new_state() const {
  return make_state();
}

std::unique_ptr<IndependenceState> Matroid::make_state() const {
  return std::make_unique<GenericState>(*this);
}

// ---------------------------------------------------------------------------
// PartitionMatroid

class PartitionMatroid::State final : public IndependenceState {
 public:
  explicit State(const PartitionMatroid& m)
      : IndependenceState(m), m_(m), load_(m.capacity_.size(), 0) {}

 protected:
  bool can_add_impl(Element e) override {
    const std::uint32_t c = m_.class_of_[e];
    return load_[c] < m_.capacity_[c];
  }
  void add_impl(Element e) override { ++load_[m_.class_of_[e]]; }

 private:
  const PartitionMatroid& m_;
  std::vector<std::uint32_t> load_;
};

PartitionMatroid::PartitionMatroid(std::vector<std::uint32_t> class_of,
                                   std::vector<std::uint32_t> capacity)
    : Matroid(class_of.size()),
      class_of_(std::move(class_of)),
      capacity_(std::move(capacity)) {
  for (std::uint32_t c : class_of_) {
    if (c >= capacity_.size()) {
      throw std::invalid_argument("partition class id without a capacity");
    }
  }
}

bool PartitionMatroid::test(std::span<const Element> xs) const {
  if (xs.empty()) return true;
  // Small queries dominate; a sorted scratch of class ids avoids an O(#classes)
  // allocation per call.
  std::vector<std::uint32_t> cls;
  cls.reserve(xs.size());
  for (Element e : xs) cls.push_back(class_of_[e]);
  std::sort(cls.begin(), cls.end());
  std::size_t run = 0;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    run = (i > 0 && cls[i] == cls[i - 1]) ? run + 1 : 1;
    if (run > capacity_[cls[i]]) return false;
  }
  return true;
}

std::unique_ptr<IndependenceState> PartitionMatroid::make_state() const {
  return std::make_unique<State>(*this);
}

// ---------------------------------------------------------------------------
// UniformMatroid

class UniformMatroid::State final : public IndependenceState {
 public:
  explicit State(const UniformMatroid& m) : IndependenceState(m), m_(m) {}

 protected:
  bool can_add_impl(Element) override {
    return members().size() + 1 <= m_.rank_bound_;
  }
  void add_impl(Element) override {}

 private:
  const UniformMatroid& m_;
};

std::unique_ptr<IndependenceState> UniformMatroid::make_state() const {
  return std::make_unique<State>(*this);
}

// ---------------------------------------------------------------------------
// GraphicMatroid

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // False if x and y were already connected.
  bool unite(std::uint32_t x, std::uint32_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    parent_[x] = y;
    return true;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace

class GraphicMatroid::State final : public IndependenceState {
 public:
  explicit State(const GraphicMatroid& m)
      : IndependenceState(m), m_(m), forest_(m.vertex_count_) {}

 protected:
  bool can_add_impl(Element e) override {
    const Edge& ed = m_.edges_[e];
    return forest_.find(ed.u) != forest_.find(ed.v);
  }
  void add_impl(Element e) override {
    const Edge& ed = m_.edges_[e];
    forest_.unite(ed.u, ed.v);
  }

 private:
  const GraphicMatroid& m_;
  DisjointSets forest_;
};

GraphicMatroid::GraphicMatroid(std::size_t vertex_count,
                               std::vector<Edge> edges)
    : Matroid(edges.size()), vertex_count_(vertex_count),
      edges_(std::move(edges)) {
  for (const Edge& e : edges_) {
    if (e.u >= vertex_count_ || e.v >= vertex_count_) {
      throw std::invalid_argument("edge endpoint outside vertex range");
    }
  }
}

bool GraphicMatroid::test(std::span<const Element> xs) const {
  DisjointSets forest(vertex_count_);
  for (Element e : xs) {
    if (!forest.unite(edges_[e].u, edges_[e].v)) return false;
  }
  return true;
}

std::unique_ptr<IndependenceState> GraphicMatroid::make_state() const {
  return std::make_unique<State>(*this);
}

// ---------------------------------------------------------------------------
// ContractedMatroid

class ContractedMatroid::State final : public IndependenceState {
 public:
  explicit State(const ContractedMatroid& m)
      : IndependenceState(m), inner_(m.base_->new_state()) {
    for (Element t : m.contracted_) inner_->add(t);
  }

 protected:
  bool can_add_impl(Element e) override { return inner_->can_add(e); }
  void add_impl(Element e) override { inner_->add(e); }

 private:
  std::unique_ptr<IndependenceState> inner_;
};

ContractedMatroid::ContractedMatroid(MatroidPtr base, ElementSet contracted)
    : Matroid(base->id_bound()), base_(std::move(base)),
      contracted_(std::move(contracted)) {
  if (contracted_.universe() != base_->id_bound()) {
    ElementSet resized(base_->id_bound());
    for (Element e : contracted_) resized.insert(e);
    contracted_ = std::move(resized);
  }
  if (!base_->is_independent(contracted_)) {
    throw PreconditionError("cannot contract a dependent set");
  }
}

bool ContractedMatroid::test(std::span<const Element> xs) const {
  std::vector<Element> joined(xs.begin(), xs.end());
  joined.insert(joined.end(), contracted_.begin(), contracted_.end());
  return base_->is_independent(joined);
}

std::unique_ptr<IndependenceState> ContractedMatroid::make_state() const {
  return std::make_unique<State>(*this);
}

// ---------------------------------------------------------------------------
// RestrictedMatroid

RestrictedMatroid::RestrictedMatroid(MatroidPtr base, ElementSet kept)
    : Matroid(base->id_bound()), base_(std::move(base)), kept_(base_->id_bound()) {
  for (Element e : kept) {
    if (!base_->in_ground(e)) {
      throw std::out_of_range("restriction set leaves the ground set");
    }
    kept_.insert(e);
  }
}

bool RestrictedMatroid::test(std::span<const Element> xs) const {
  return base_->is_independent(xs);
}

std::unique_ptr<IndependenceState> RestrictedMatroid::make_state() const {
  return std::make_unique<ForwardingState>(*this, base_->new_state());
}

// ---------------------------------------------------------------------------
// CountingMatroid

CountingMatroid::CountingMatroid(const Matroid& base)
    : Matroid(base.id_bound()), base_(base) {}

bool CountingMatroid::test(std::span<const Element> xs) const {
  return base_.is_independent(xs);
}

std::unique_ptr<IndependenceState> CountingMatroid::make_state() const {
  return std::make_unique<ForwardingState>(*this, base_.new_state());
}

}  // namespace omi
