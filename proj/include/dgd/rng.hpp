// Copyright 2026 The dgd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace dgd {

/// Engine used by every stochastic operation. Callers own it and pass it by
/// reference, so a run is fully determined by the seed it was built from.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr uint64_t mix64(uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derives an independent stream seed from a master seed and a path of
/// indices (e.g. {experiment, ell, sample}).
constexpr uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> path) noexcept {
    uint64_t h = mix64(master);
    for (uint64_t k : path) {
        h = mix64(h ^ mix64(k + 0x632BE59BD9B4E019ULL));
    }
    return h;
}

inline Rng make_rng(uint64_t master, std::initializer_list<uint64_t> path = {}) {
    return Rng(derive_seed(master, path));
}

}  // namespace dgd
