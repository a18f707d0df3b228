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

#include "omi/online.h"

#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>

#include "omi/random.h"

namespace omi {

// ---------------------------------------------------------------------------
// ArrivalStream, RandomnessTape

ArrivalStream::ArrivalStream(std::size_t m, std::uint64_t seed)
    : order_(random_permutation(m, seed)), arrived_(m, 0), seed_(seed) {}

ArrivalStream::ArrivalStream(std::size_t universe, std::vector<Element> order)
    : order_(std::move(order)), arrived_(universe, 0) {
  std::vector<char> seen(universe, 0);
  for (Element e : order_) {
    if (e >= universe) throw std::out_of_range("stream element outside universe");
    if (seen[e]) throw std::invalid_argument("stream repeats an element");
    seen[e] = 1;
  }
}

Element ArrivalStream::next() {
  if (!has_next()) throw std::out_of_range("stream exhausted");
  const Element e = order_[cursor_++];
  arrived_[e] = 1;
  return e;
}

void ArrivalStream::reset() {
  cursor_ = 0;
  std::fill(arrived_.begin(), arrived_.end(), 0);
}

RandomnessTape RandomnessTape::from_bits(std::vector<std::uint8_t> bits) {
  RandomnessTape t;
  t.bits_ = std::move(bits);
  return t;
}

bool RandomnessTape::bit(Element e) const {
  if (bits_) return e >= bits_->size() || (*bits_)[e] != 0;
  return unit_real(splitmix64(seed_ ^ splitmix64(e))) >= p_;
}

// ---------------------------------------------------------------------------
// ArrivalGuard

class ArrivalGuard::State final : public IndependenceState {
 public:
  explicit State(const ArrivalGuard& owner)
      : IndependenceState(owner), guard_(owner),
        inner_(owner.base_.new_state()) {}

 protected:
  bool can_add_impl(Element e) override {
    guard_.check(e);
    return inner_->can_add(e);
  }
  void add_impl(Element e) override {
    guard_.check(e);
    inner_->add(e);
  }

 private:
  const ArrivalGuard& guard_;
  std::unique_ptr<IndependenceState> inner_;
};

ArrivalGuard::ArrivalGuard(const Matroid& base, const ArrivalStream& stream)
    : Matroid(base.id_bound()), base_(base), stream_(stream) {}

void ArrivalGuard::check(Element e) const {
  if (!stream_.arrived(e)) {
    throw OnlineDisciplineError("query mentions element " + std::to_string(e) +
                                " before its arrival");
  }
}

bool ArrivalGuard::test(std::span<const Element> xs) const {
  for (Element e : xs) check(e);
  return base_.is_independent(xs);
}

std::unique_ptr<IndependenceState> ArrivalGuard::make_state() const {
  return std::make_unique<State>(*this);
}

// ---------------------------------------------------------------------------
// Parameters and results

std::size_t AlgoParams::boundary(std::size_t m) const {
  if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("f outside [0, 1]");
  return std::min(m, static_cast<std::size_t>(std::floor(f * m)));
}

std::uint64_t RunResult::total_calls() const {
  return std::accumulate(oracle_calls.begin(), oracle_calls.end(),
                         std::uint64_t{0});
}

namespace {

using StatePtr = std::unique_ptr<IndependenceState>;

std::vector<std::unique_ptr<ArrivalGuard>> guard_all(
    std::span<const Matroid* const> matroids, const ArrivalStream& stream) {
  std::vector<std::unique_ptr<ArrivalGuard>> out;
  for (const Matroid* m : matroids) {
    out.push_back(std::make_unique<ArrivalGuard>(*m, stream));
  }
  return out;
}

template <typename Ms>
std::vector<std::uint64_t> calls_of(const Ms& ms) {
  std::vector<std::uint64_t> out;
  for (const auto& m : ms) out.push_back(m->calls());
  return out;
}

// Greedy over states, short-circuiting at the first rejection.
bool try_add_all(std::vector<StatePtr>& states, Element e) {
  for (auto& s : states) {
    if (!s->can_add(e)) return false;
  }
  for (auto& s : states) s->add(e);
  return true;
}

// Phase (a): greedy on the first `boundary` arrivals, keeping the selections
// with a 1 bit.
struct PhaseA {
  std::vector<StatePtr> t_states;
  std::vector<Element> t_f;
  std::vector<Element> s;
};

template <typename Ms>
PhaseA run_phase_a(const Ms& ms, ArrivalStream& stream, std::size_t boundary,
                   const RandomnessTape& tape) {
  PhaseA a;
  for (const auto& m : ms) a.t_states.push_back(m->new_state());
  while (stream.cursor() < boundary) {
    const Element e = stream.next();
    if (!try_add_all(a.t_states, e)) continue;
    a.t_f.push_back(e);
    if (tape.bit(e)) a.s.push_back(e);
  }
  return a;
}

StatePtr state_with(const Matroid& m, std::span<const Element> members) {
  StatePtr s = m.new_state();
  for (Element e : members) s->add(e);
  return s;
}

// Phase (b) of the two-matroid algorithm, shared by the online and offline
// variants. span_i(T_f) is tested with the frozen T_f states: e is spanned
// iff T_f + e is dependent.
class TwoMatroidPhaseB {
 public:
  TwoMatroidPhaseB(const Matroid& m1, const Matroid& m2, PhaseA& a)
      : t1_(*a.t_states[0]), t2_(*a.t_states[1]) {
    // sn[i]: S + N_i in M_i.  tn[i]: T_f + N_i in the other matroid.
    sn_[0] = state_with(m1, a.s);
    sn_[1] = state_with(m2, a.s);
    tn_[0] = state_with(m2, a.t_f);
    tn_[1] = state_with(m1, a.t_f);
  }

  // Returns 0 if e was not picked, else the index i in {1, 2} of N_i.
  int offer(Element e) {
    const bool in1 = !t1_.can_add(e);
    const bool in2 = !t2_.can_add(e);
    int chosen = 0;
    for (int i = 1; i <= 2; ++i) {
      const bool in_i = i == 1 ? in1 : in2;
      const bool in_other = i == 1 ? in2 : in1;
      if (!in_i || in_other) continue;
      auto& sn = *sn_[i - 1];
      auto& tn = *tn_[i - 1];
      if (sn.can_add(e) && tn.can_add(e)) {
        if (chosen != 0) {
          throw std::logic_error("element picked into both N_1 and N_2");
        }
        sn.add(e);
        tn.add(e);
        ++n_[i - 1];
        chosen = i;
      }
    }
    return chosen;
  }

  std::vector<std::size_t> sizes() const { return {n_[0], n_[1]}; }

 private:
  IndependenceState& t1_;
  IndependenceState& t2_;
  StatePtr sn_[2];
  StatePtr tn_[2];
  std::size_t n_[2] = {0, 0};
};

const Graph& oriented(const Graph& g, std::optional<Graph>& storage) {
  bool ok = g.left_count.has_value();
  if (ok) {
    for (const Edge& e : g.edges) {
      if (!(e.u < *g.left_count && e.v >= *g.left_count &&
            e.v < g.vertex_count)) {
        ok = false;
        break;
      }
    }
  }
  if (ok) return g;
  storage = as_bipartite(g);
  return *storage;
}

}  // namespace

// ---------------------------------------------------------------------------
// Greedy

RunResult greedy(std::span<const Matroid* const> matroids,
                 ArrivalStream& stream) {
  std::vector<std::size_t> unused;
  return greedy(matroids, stream, {}, unused);
}

RunResult greedy(std::span<const Matroid* const> matroids,
                 ArrivalStream& stream,
                 std::span<const std::size_t> checkpoints,
                 std::vector<std::size_t>& sizes_at) {
  if (matroids.empty()) throw std::invalid_argument("greedy needs a matroid");
  auto guards = guard_all(matroids, stream);
  std::vector<StatePtr> states;
  for (const auto& g : guards) states.push_back(g->new_state());
  RunResult r;
  sizes_at.clear();
  std::size_t next_checkpoint = 0;
  auto record = [&] {
    while (next_checkpoint < checkpoints.size() &&
           checkpoints[next_checkpoint] <= stream.cursor()) {
      sizes_at.push_back(r.picked.size());
      ++next_checkpoint;
    }
  };
  record();
  while (stream.has_next()) {
    const Element e = stream.next();
    if (try_add_all(states, e)) r.picked.push_back(e);
    record();
  }
  r.boundary = stream.size();
  r.t_f = r.picked;
  r.s_size = r.picked.size();
  r.oracle_calls = calls_of(guards);
  return r;
}

// ---------------------------------------------------------------------------
// Matroid variants

RunResult marking_greedy_omi(const Matroid& m1, const Matroid& m2,
                             ArrivalStream& stream, const AlgoParams& params,
                             const RandomnessTape& tape) {
  ArrivalGuard g1(m1, stream), g2(m2, stream);
  const ArrivalGuard* gs[] = {&g1, &g2};
  RunResult r;
  r.boundary = params.boundary(stream.size());
  PhaseA a = run_phase_a(gs, stream, r.boundary, tape);
  r.picked = a.s;
  TwoMatroidPhaseB b(g1, g2, a);
  while (stream.has_next()) {
    const Element e = stream.next();
    if (b.offer(e) != 0) r.picked.push_back(e);
  }
  r.t_f = std::move(a.t_f);
  r.s_size = a.s.size();
  r.n_sizes = b.sizes();
  r.oracle_calls = {g1.calls(), g2.calls()};
  return r;
}

RunResult marking_greedy_k(std::span<const Matroid* const> matroids,
                           ArrivalStream& stream, const AlgoParams& params,
                           const RandomnessTape& tape, KRule rule) {
  const std::size_t k = matroids.size();
  if (k < 2) throw std::invalid_argument("marking_greedy_k needs k >= 2");
  auto guards = guard_all(matroids, stream);
  RunResult r;
  r.boundary = params.boundary(stream.size());
  PhaseA a = run_phase_a(guards, stream, r.boundary, tape);
  r.picked = a.s;

  // own[i]: S + N_i in M_i.
  // kLiteral, cross[i][j]: T_f + N_i in M_j for j != i.
  // kJoint, cross[0][j]: T_f + (union of N_l, l != j) in M_j.
  std::vector<StatePtr> own;
  const std::size_t rows = rule == KRule::kJoint ? 1 : k;
  std::vector<std::vector<StatePtr>> cross(rows);
  for (std::size_t i = 0; i < k; ++i) own.push_back(state_with(*guards[i], a.s));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      cross[i].push_back(rows > 1 && j == i ? nullptr : state_with(*guards[j], a.t_f));
    }
  }
  std::vector<std::size_t> n(k, 0);
  while (stream.has_next()) {
    const Element e = stream.next();
    // The unique i with e in span_i(T_f) and in no other span, if any.
    std::size_t spanned_by = k;
    std::size_t spans = 0;
    for (std::size_t j = 0; j < k && spans < 2; ++j) {
      if (!a.t_states[j]->can_add(e)) {
        ++spans;
        spanned_by = j;
      }
    }
    if (spans != 1) continue;
    const std::size_t i = spanned_by;
    if (!own[i]->can_add(e)) continue;
    auto& row = cross[rows > 1 ? i : 0];
    bool ok = true;
    for (std::size_t j = 0; j < k && ok; ++j) {
      if (j != i) ok = row[j]->can_add(e);
    }
    if (!ok) continue;
    own[i]->add(e);
    for (std::size_t j = 0; j < k; ++j) {
      if (j != i) row[j]->add(e);
    }
    ++n[i];
    r.picked.push_back(e);
  }
  r.t_f = std::move(a.t_f);
  r.s_size = a.s.size();
  r.n_sizes = std::move(n);
  r.oracle_calls = calls_of(guards);
  return r;
}

RunResult combined_algorithm(const Matroid& m1, const Matroid& m2,
                             ArrivalStream& stream, const AlgoParams& params,
                             const RandomnessTape& tape,
                             std::uint64_t coin_seed) {
  Engine coin(coin_seed);
  if (unit_real(coin) < params.r) {
    RunResult r = marking_greedy_omi(m1, m2, stream, params, tape);
    r.marking_branch = true;
    return r;
  }
  const Matroid* ms[] = {&m1, &m2};
  return greedy(ms, stream);
}

RunResult offline_half_plus_delta(const Matroid& m1, const Matroid& m2,
                                  std::span<const Element> order,
                                  const AlgoParams& /*params*/,
                                  const RandomnessTape& tape) {
  CountingMatroid c1(m1), c2(m2);
  const CountingMatroid* cs[] = {&c1, &c2};
  PhaseA a;
  for (const auto* c : cs) a.t_states.push_back(c->new_state());
  for (Element e : order) {
    if (!try_add_all(a.t_states, e)) continue;
    a.t_f.push_back(e);
    if (tape.bit(e)) a.s.push_back(e);
  }
  RunResult r;
  r.boundary = order.size();
  r.picked = a.s;
  ElementSet selected(std::max(m1.id_bound(), m2.id_bound()), a.t_f);
  TwoMatroidPhaseB b(c1, c2, a);
  for (Element e : order) {
    if (selected.contains(e)) continue;
    if (b.offer(e) != 0) r.picked.push_back(e);
  }
  r.t_f = std::move(a.t_f);
  r.s_size = a.s.size();
  r.n_sizes = b.sizes();
  r.oracle_calls = {c1.calls(), c2.calls()};
  return r;
}

// ---------------------------------------------------------------------------
// Graph variants

RunResult greedy_matching(const Graph& g, ArrivalStream& stream) {
  if (stream.universe() != g.edges.size()) {
    throw std::invalid_argument("stream does not cover the edge set");
  }
  std::vector<char> matched(g.vertex_count, 0);
  RunResult r;
  while (stream.has_next()) {
    const Element e = stream.next();
    const Edge& ed = g.edges[e];
    if (ed.u == ed.v || matched[ed.u] || matched[ed.v]) continue;
    matched[ed.u] = matched[ed.v] = 1;
    r.picked.push_back(e);
  }
  r.boundary = stream.size();
  r.t_f = r.picked;
  r.s_size = r.picked.size();
  return r;
}

RunResult marking_greedy_bipartite(const Graph& input, ArrivalStream& stream,
                                   const AlgoParams& params,
                                   const RandomnessTape& tape) {
  std::optional<Graph> storage;
  const Graph& g = oriented(input, storage);
  if (stream.universe() != g.edges.size()) {
    throw std::invalid_argument("stream does not cover the edge set");
  }
  const std::size_t n = g.vertex_count;
  RunResult r;
  r.boundary = params.boundary(stream.size());

  // Phase (a).
  std::vector<char> in_t(n, 0), in_s(n, 0);
  std::size_t s_size = 0;
  while (stream.cursor() < r.boundary) {
    const Element e = stream.next();
    const Edge& ed = g.edges[e];
    if (in_t[ed.u] || in_t[ed.v]) continue;
    in_t[ed.u] = in_t[ed.v] = 1;
    r.t_f.push_back(e);
    if (tape.bit(e)) {
      in_s[ed.u] = in_s[ed.v] = 1;
      r.picked.push_back(e);
      ++s_size;
    }
  }

  // Phase (b). X1 / X2 are the left / right vertices matched in T_f. G1 has
  // the edges from X1 to unmatched right vertices, G2 the edges from
  // unmatched left vertices to X2.
  std::vector<char> in_n[2] = {std::vector<char>(n, 0),
                               std::vector<char>(n, 0)};
  std::size_t n_sizes[2] = {0, 0};
  while (stream.has_next()) {
    const Element e = stream.next();
    const Edge& ed = g.edges[e];
    const bool x1 = in_t[ed.u], x2 = in_t[ed.v];
    int chosen = 0;
    for (int i = 1; i <= 2; ++i) {
      const bool in_gi = i == 1 ? (x1 && !x2) : (!x1 && x2);
      if (!in_gi) continue;
      auto& nm = in_n[i - 1];
      if (in_s[ed.u] || in_s[ed.v] || nm[ed.u] || nm[ed.v]) continue;
      if (chosen != 0) {
        throw std::logic_error("edge picked into both N_1 and N_2");
      }
      nm[ed.u] = nm[ed.v] = 1;
      ++n_sizes[i - 1];
      chosen = i;
      r.picked.push_back(e);
    }
  }
  r.s_size = s_size;
  r.n_sizes = {n_sizes[0], n_sizes[1]};
  return r;
}

RunResult marking_greedy_general(const Graph& g, ArrivalStream& stream,
                                 const AlgoParams& params,
                                 const RandomnessTape& tape) {
  if (stream.universe() != g.edges.size()) {
    throw std::invalid_argument("stream does not cover the edge set");
  }
  const std::size_t n = g.vertex_count;
  RunResult r;
  r.boundary = params.boundary(stream.size());

  std::vector<char> in_t(n, 0), in_s(n, 0), in_n(n, 0);
  std::size_t s_size = 0;
  while (stream.cursor() < r.boundary) {
    const Element e = stream.next();
    const Edge& ed = g.edges[e];
    if (ed.u == ed.v || in_t[ed.u] || in_t[ed.v]) continue;
    in_t[ed.u] = in_t[ed.v] = 1;
    r.t_f.push_back(e);
    if (tape.bit(e)) {
      in_s[ed.u] = in_s[ed.v] = 1;
      r.picked.push_back(e);
      ++s_size;
    }
  }
  // U = vertices matched in T_f. Only (U, V) edges are eligible; since the
  // picked part covers its own vertices, the survivors hang off marked edges.
  std::size_t n_size = 0;
  while (stream.has_next()) {
    const Element e = stream.next();
    const Edge& ed = g.edges[e];
    if (in_t[ed.u] == in_t[ed.v]) continue;
    if (in_s[ed.u] || in_s[ed.v] || in_n[ed.u] || in_n[ed.v]) continue;
    in_n[ed.u] = in_n[ed.v] = 1;
    ++n_size;
    r.picked.push_back(e);
  }
  r.s_size = s_size;
  r.n_sizes = {n_size};
  return r;
}

}  // namespace omi
