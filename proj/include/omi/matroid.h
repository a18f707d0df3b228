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

// Independence oracles. Every algorithm in the library talks to matroids only
// through `Matroid::is_independent` or an `IndependenceState` obtained from
// `Matroid::new_state`; both count as one oracle call per query.

#ifndef OMI_MATROID_H_
#define OMI_MATROID_H_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "omi/element_set.h"
#include "omi/graph.h"

namespace omi {

// Raised when an operation's documented precondition does not hold (e.g.
// contracting a dependent set, asking for the circuit of a non-spanned
// element).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class MatroidKind {
  kPartition,
  kUniform,
  kGraphic,
  kContracted,
  kRestricted,
  kCounting,
  kArrivalGuard,
};

std::string_view to_string(MatroidKind kind);

class Matroid;

// An independent set of one matroid that grows one element at a time.
// can_add(e) answers "is members() + e independent?" and costs one oracle
// call on the owning matroid; add(e) does not query.
class IndependenceState {
 public:
  explicit IndependenceState(const Matroid& owner);
  virtual ~IndependenceState() = default;

  IndependenceState(const IndependenceState&) = delete;
  IndependenceState& operator=(const IndependenceState&) = delete;

  bool can_add(Element e);
  // Precondition: can_add(e) would return true. Not re-checked.
  void add(Element e);
  bool try_add(Element e) {
    if (!can_add(e)) return false;
    add(e);
    return true;
  }

  const ElementSet& members() const { return members_; }
  const Matroid& owner() const { return *owner_; }

 protected:
  virtual bool can_add_impl(Element e) = 0;
  virtual void add_impl(Element e) = 0;

 private:
  const Matroid* owner_;
  ElementSet members_;
};

class Matroid {
 public:
  // Element ids of this matroid are drawn from [0, id_bound).
  explicit Matroid(std::size_t id_bound) : id_bound_(id_bound) {}
  virtual ~Matroid() = default;

  Matroid(const Matroid&) = delete;
  Matroid& operator=(const Matroid&) = delete;

  virtual MatroidKind kind() const = 0;

  std::size_t id_bound() const { return id_bound_; }
  virtual bool in_ground(Element e) const { return e < id_bound_; }
  // Number of ids e < id_bound() with in_ground(e).
  std::size_t ground_size() const;

  // Throws std::out_of_range if some member is outside the ground set and
  // std::invalid_argument on duplicates. Counts one call.
  bool is_independent(std::span<const Element> xs) const;
  bool is_independent(const ElementSet& xs) const {
    return is_independent(xs.elements());
  }
  bool is_independent(std::initializer_list<Element> xs) const {
    return is_independent(std::span<const Element>(xs.begin(), xs.size()));
  }

  // Fresh empty incremental state. Families override this with fast paths
  // that must agree with is_independent on every query.
  std::unique_ptr<IndependenceState> new_state() const;

  std::uint64_t calls() const {
    return calls_.load(std::memory_order_relaxed);
  }

 protected:
  friend class IndependenceState;

  // `xs` is validated: in ground and duplicate free.
  virtual bool test(std::span<const Element> xs) const = 0;
  virtual std::unique_ptr<IndependenceState> make_state() const;

  void count_call() const { calls_.fetch_add(1, std::memory_order_relaxed); }
  void check_element(Element e) const;

 private:
  class GenericState;

  std::size_t id_bound_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

using MatroidPtr = std::shared_ptr<const Matroid>;

// X independent iff every class holds at most capacity(class) members of X.
class PartitionMatroid final : public Matroid {
 public:
  PartitionMatroid(std::vector<std::uint32_t> class_of,
                   std::vector<std::uint32_t> capacity);

  MatroidKind kind() const override { return MatroidKind::kPartition; }
  std::uint32_t class_of(Element e) const { return class_of_.at(e); }
  std::uint32_t capacity(std::uint32_t cls) const { return capacity_.at(cls); }
  std::size_t class_count() const { return capacity_.size(); }

 protected:
  bool test(std::span<const Element> xs) const override;
  std::unique_ptr<IndependenceState> make_state() const override;

 private:
  class State;
  std::vector<std::uint32_t> class_of_;
  std::vector<std::uint32_t> capacity_;
};

// X independent iff |X| <= rank_bound.
class UniformMatroid final : public Matroid {
 public:
  UniformMatroid(std::size_t ground_size, std::size_t rank_bound)
      : Matroid(ground_size), rank_bound_(rank_bound) {}

  MatroidKind kind() const override { return MatroidKind::kUniform; }
  std::size_t rank_bound() const { return rank_bound_; }

 protected:
  bool test(std::span<const Element> xs) const override {
    return xs.size() <= rank_bound_;
  }
  std::unique_ptr<IndependenceState> make_state() const override;

 private:
  class State;
  std::size_t rank_bound_;
};

// Cycle matroid of a multigraph: X independent iff the edges of X form a
// forest. Element i is edge i of the graph; self-loops are dependent.
class GraphicMatroid final : public Matroid {
 public:
  GraphicMatroid(std::size_t vertex_count, std::vector<Edge> edges);

  MatroidKind kind() const override { return MatroidKind::kGraphic; }
  std::size_t vertex_count() const { return vertex_count_; }
  const Edge& edge(Element e) const { return edges_.at(e); }

 protected:
  bool test(std::span<const Element> xs) const override;
  std::unique_ptr<IndependenceState> make_state() const override;

 private:
  class State;
  std::size_t vertex_count_;
  std::vector<Edge> edges_;
};

// M / T for an independent T: ground set E \ T, X independent iff X u T is
// independent in M. Queries are forwarded, so they count on M as well.
class ContractedMatroid final : public Matroid {
 public:
  ContractedMatroid(MatroidPtr base, ElementSet contracted);

  MatroidKind kind() const override { return MatroidKind::kContracted; }
  bool in_ground(Element e) const override {
    return base_->in_ground(e) && !contracted_.contains(e);
  }
  const Matroid& base() const { return *base_; }
  const ElementSet& contracted() const { return contracted_; }

 protected:
  bool test(std::span<const Element> xs) const override;
  std::unique_ptr<IndependenceState> make_state() const override;

 private:
  class State;
  MatroidPtr base_;
  ElementSet contracted_;
};

// M | F: ground set F, independence unchanged.
class RestrictedMatroid final : public Matroid {
 public:
  RestrictedMatroid(MatroidPtr base, ElementSet kept);

  MatroidKind kind() const override { return MatroidKind::kRestricted; }
  bool in_ground(Element e) const override {
    return kept_.contains(e) && base_->in_ground(e);
  }
  const Matroid& base() const { return *base_; }

 protected:
  bool test(std::span<const Element> xs) const override;
  std::unique_ptr<IndependenceState> make_state() const override;

 private:
  MatroidPtr base_;
  ElementSet kept_;
};

// Transparent view with its own call counter. Used to attribute calls to a
// single run when the underlying oracle is shared between threads.
class CountingMatroid final : public Matroid {
 public:
  explicit CountingMatroid(const Matroid& base);

  MatroidKind kind() const override { return MatroidKind::kCounting; }
  bool in_ground(Element e) const override { return base_.in_ground(e); }

 protected:
  bool test(std::span<const Element> xs) const override;
  std::unique_ptr<IndependenceState> make_state() const override;

 private:
  const Matroid& base_;
};

// Incremental state that forwards to another state, counting on `owner`.
// Building block for wrappers whose states add a check in front of the
// wrapped matroid's fast path.
class ForwardingState : public IndependenceState {
 public:
  ForwardingState(const Matroid& owner, std::unique_ptr<IndependenceState> inner)
      : IndependenceState(owner), inner_(std::move(inner)) {}

 protected:
  bool can_add_impl(Element e) override { return inner_->can_add(e); }
  void add_impl(Element e) override { inner_->add(e); }

 private:
  std::unique_ptr<IndependenceState> inner_;
};

}  // namespace omi

#endif  // OMI_MATROID_H_
