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

#include <bit>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>

#include "dgd/format.hpp"
#include "dgd/optimizer/descent.hpp"

namespace dgd::optimizer {

/// FNV-1a over the IEEE-754 bit patterns of the samples.
inline uint64_t sample_digest(std::span<const double> samples) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (double v : samples) {
        const auto bits = std::bit_cast<uint64_t>(v);
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (bits >> (8 * byte)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

/// One row per step:
///   t,theta_0..theta_{m-1},grad_0..grad_{m-1},alpha_t,raw_digest
/// theta columns hold theta_t, grad columns the gradient that produced it.
inline void write_trace_csv(std::ostream &out, const RunTrace &trace) {
    const std::size_t m = trace.thetas.empty() ? 0 : trace.thetas.front().size();
    out << "t";
    for (std::size_t j = 0; j < m; ++j) {
        out << ",theta_" << j;
    }
    for (std::size_t j = 0; j < m; ++j) {
        out << ",grad_" << j;
    }
    out << ",alpha_t,raw_digest\n";
    for (std::size_t t = 1; t <= trace.steps(); ++t) {
        out << t;
        for (double x : trace.thetas[t]) {
            out << ',' << format_double(x);
        }
        for (double g : trace.gradients[t - 1]) {
            out << ',' << format_double(g);
        }
        char digest[17];
        std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(sample_digest(trace.raw_samples[t - 1])));
        out << ',' << format_double(trace.step_lengths[t - 1]) << ',' << digest << '\n';
    }
}

}  // namespace dgd::optimizer
