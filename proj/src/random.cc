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

#include "omi/random.h"

#include <numeric>
#include <utility>

namespace omi {

std::uint64_t uniform_below(Engine& rng, std::uint64_t bound) {
  // Reject the top partial bucket so every residue is equally likely.
  const std::uint64_t limit = -bound % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= limit) return x % bound;
  }
}

void shuffle(std::span<Element> xs, Engine& rng) {
  for (std::size_t i = xs.size(); i > 1; --i) {
    std::swap(xs[i - 1], xs[uniform_below(rng, i)]);
  }
}

std::vector<Element> random_permutation(std::size_t m, std::uint64_t seed) {
  std::vector<Element> out(m);
  std::iota(out.begin(), out.end(), 0);
  Engine rng(seed);
  shuffle(out, rng);
  return out;
}

}  // namespace omi
