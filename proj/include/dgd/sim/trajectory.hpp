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

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "dgd/circuits/random_circuit.hpp"
#include "dgd/rng.hpp"
#include "dgd/sim/sampling.hpp"
#include "dgd/sim/state_vector.hpp"

namespace dgd::sim {

/// The two-qubit Pauli with code in [1, 15] on (first, second): the letter on
/// `first` is code / 4 and the letter on `second` is code % 4.
inline PauliString two_qubit_pauli(std::size_t n, std::size_t first, std::size_t second, unsigned code) {
    std::vector<Pauli> letters(n, Pauli::I);
    letters[first] = static_cast<Pauli>((code >> 2) & 3);
    letters[second] = static_cast<Pauli>(code & 3);
    return PauliString(std::move(letters));
}

/// Monte-Carlo estimate of the observable under stochastic two-qubit Pauli
/// noise: one trajectory per shot, one +-1 outcome per trajectory.
///
/// Shots whose trajectory draws no error share the noiseless final state, so
/// their outcomes are pooled into a single binomial draw.
inline double run_noisy_trajectory(const circuits::RandomCircuit &circuit, std::span<const double> theta, const NoiseModel &noise,
                                   Rng &rng) {
    noise.validate();
    if (noise.pauli_error_prob == 0.0) {
        return sample_expectation(circuits::prepare_state(circuit, theta), circuit.observable, noise, rng);
    }

    const std::size_t num_gates = circuit.num_two_qubit_gates();
    std::bernoulli_distribution error(noise.pauli_error_prob);
    std::uniform_int_distribution<unsigned> which_pauli(1, 15);

    int64_t clean_shots = 0;
    int64_t plus_total = 0;
    std::vector<std::pair<std::size_t, unsigned>> faults;
    for (int64_t shot = 0; shot < noise.shots; ++shot) {
        faults.clear();
        for (std::size_t g = 0; g < num_gates; ++g) {
            if (error(rng)) {
                faults.emplace_back(g, which_pauli(rng));
            }
        }
        if (faults.empty()) {
            ++clean_shots;
            continue;
        }
        StateVector state(circuit.num_qubits);
        std::size_t gate_index = 0;
        std::size_t next_fault = 0;
        circuits::execute(circuit, theta, state, [&](StateVector &s, const TwoQubitGate &gate) {
            if (next_fault < faults.size() && faults[next_fault].first == gate_index) {
                const auto [a, b] = gate.targets();
                apply_pauli(s, two_qubit_pauli(s.num_qubits(), a, b, faults[next_fault].second));
                ++next_fault;
            }
            ++gate_index;
        });
        std::bernoulli_distribution plus(plus_probability(expectation(state, circuit.observable)));
        plus_total += plus(rng) ? 1 : 0;
    }
    if (clean_shots > 0) {
        const double clean_value = expectation(circuits::prepare_state(circuit, theta), circuit.observable);
        std::binomial_distribution<int64_t> plus(clean_shots, plus_probability(clean_value));
        plus_total += plus(rng);
    }
    return static_cast<double>(2 * plus_total - noise.shots) / static_cast<double>(noise.shots);
}

}  // namespace dgd::sim
