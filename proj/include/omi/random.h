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

// Seeding helpers. The engine is std::mt19937_64, whose output sequence is
// fixed by the standard; the integer and real mappings below are spelled out
// here instead of using the std distributions, whose algorithms vary between
// standard libraries.

#ifndef OMI_RANDOM_H_
#define OMI_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "omi/element_set.h"

namespace omi {

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent-looking child seed for stream `index` of `base`.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(splitmix64(base) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

// Uniform on [0, bound) by rejection; bound > 0.
std::uint64_t uniform_below(Engine& rng, std::uint64_t bound);

// Uniform double in [0, 1) with 53 random bits.
inline double unit_real(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}
inline double unit_real(Engine& rng) { return unit_real(rng()); }

// Fisher-Yates.
void shuffle(std::span<Element> xs, Engine& rng);
std::vector<Element> random_permutation(std::size_t m, std::uint64_t seed);

}  // namespace omi

#endif  // OMI_RANDOM_H_
