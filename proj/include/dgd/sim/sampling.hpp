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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "dgd/rng.hpp"
#include "dgd/sim/state_vector.hpp"

namespace dgd::sim {

/// Measurement and hardware-noise settings for one objective evaluation.
struct NoiseModel {
    int64_t shots = 1;
    /// Probability of a uniformly random non-identity two-qubit Pauli error
    /// after each two-qubit gate. Zero leaves only shot noise.
    double pauli_error_prob = 0.0;
    uint64_t seed = 0;

    void validate() const {
        if (shots < 1) {
            throw std::invalid_argument("NoiseModel: shots must be >= 1");
        }
        if (!(pauli_error_prob >= 0.0 && pauli_error_prob <= 1.0)) {
            throw std::invalid_argument("NoiseModel: pauli_error_prob must lie in [0, 1]");
        }
    }
};

/// Probability that a single measurement of a +-1 observable with the given
/// expectation yields +1.
inline double plus_probability(double expectation_value) {
    return std::clamp(0.5 * (1.0 + expectation_value), 0.0, 1.0);
}

/// Mean of `shots` outcomes drawn from the two-point distribution with the
/// given expectation.
inline double sample_mean_outcome(double expectation_value, int64_t shots, Rng &rng) {
    std::binomial_distribution<int64_t> plus(shots, plus_probability(expectation_value));
    const int64_t k = plus(rng);
    return static_cast<double>(2 * k - shots) / static_cast<double>(shots);
}

/// Shot-sampled estimate of <state|observable|state>.
///
/// Every Pauli observable has outcomes +-1, so the number of +1 outcomes over
/// independent shots is Binomial(shots, (1 + <P>) / 2). Drawing that count
/// directly is distributionally identical to measuring each shot separately
/// (see measure_once) and costs O(2^n) for the expectation instead of
/// O(shots * 2^n).
inline double sample_expectation(const StateVector &state, const PauliString &observable, const NoiseModel &noise, Rng &rng) {
    noise.validate();
    return sample_mean_outcome(expectation(state, observable), noise.shots, rng);
}

/// One projective measurement of `observable`: rotates every X/Y letter into
/// the Z basis, samples a basis index from |amp|^2 and returns the parity of
/// the support bits.
inline int measure_once(const StateVector &state, const PauliString &observable, Rng &rng) {
    if (observable.size() != state.num_qubits()) {
        throw std::invalid_argument("measure_once: length mismatch");
    }
    StateVector rotated = state;
    const double h = 1.0 / std::sqrt(2.0);
    auto amps = rotated.amplitudes();
    for (std::size_t q = 0; q < observable.size(); ++q) {
        const Pauli p = observable[q];
        if (p != Pauli::X && p != Pauli::Y) {
            continue;
        }
        // X -> Z via H; Y -> Z via H S^dagger.
        const std::size_t bit = std::size_t{1} << q;
        for (std::size_t b = 0; b < amps.size(); ++b) {
            if (b & bit) {
                continue;
            }
            Complex a0 = amps[b];
            Complex a1 = amps[b | bit];
            if (p == Pauli::Y) {
                a1 *= Complex{0.0, -1.0};
            }
            amps[b] = h * (a0 + a1);
            amps[b | bit] = h * (a0 - a1);
        }
    }
    const auto probs = rotated.probabilities();
    std::discrete_distribution<std::size_t> pick(probs.begin(), probs.end());
    const std::size_t outcome = pick(rng);
    uint64_t support = 0;
    for (std::size_t q = 0; q < observable.size(); ++q) {
        if (observable[q] != Pauli::I) {
            support |= uint64_t{1} << q;
        }
    }
    return (std::popcount(outcome & support) & 1) ? -1 : 1;
}

}  // namespace dgd::sim
