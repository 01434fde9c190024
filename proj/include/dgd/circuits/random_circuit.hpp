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
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/QR>

#include "dgd/rng.hpp"
#include "dgd/sim/state_vector.hpp"

namespace dgd::circuits {

using sim::Complex;
using sim::Matrix4;

/// Point in circuit parameter space, in radians.
using ParameterVector = std::vector<double>;

/// One quantum-volume style layer: a qubit permutation and SU(4) blocks on
/// consecutive pairs of it. An odd leftover qubit idles.
struct EntanglingLayer {
    std::vector<std::size_t> permutation;
    std::vector<sim::TwoQubitGate> gates;
};

/// U(theta) = C_{m+1} R_m(theta_m) C_m ... R_1(theta_1) C_1 applied to |0...0>,
/// measured against `observable`.
struct RandomCircuit {
    std::size_t num_qubits = 0;
    std::vector<EntanglingLayer> layers;
    std::vector<sim::PauliString> generators;
    sim::PauliString observable;

    std::size_t num_parameters() const noexcept { return generators.size(); }

    std::size_t num_two_qubit_gates() const noexcept {
        std::size_t count = 0;
        for (const auto &layer : layers) {
            count += layer.gates.size();
        }
        return count;
    }

    void validate() const {
        if (num_qubits == 0 || num_qubits > sim::kMaxQubits) {
            throw std::invalid_argument("RandomCircuit: bad qubit count");
        }
        if (layers.size() != generators.size() + 1) {
            throw std::invalid_argument("RandomCircuit: need exactly m+1 layers for m generators");
        }
        for (const auto &g : generators) {
            if (g.size() != num_qubits || g.is_identity()) {
                throw std::invalid_argument("RandomCircuit: generators must be non-identity strings of length n");
            }
        }
        if (observable.size() != num_qubits) {
            throw std::invalid_argument("RandomCircuit: observable length must be n");
        }
        for (const auto &layer : layers) {
            std::vector<bool> used(num_qubits, false);
            for (const auto &gate : layer.gates) {
                for (std::size_t q : gate.targets()) {
                    if (q >= num_qubits || used[q]) {
                        throw std::invalid_argument("RandomCircuit: layer targets must be disjoint and in range");
                    }
                    used[q] = true;
                }
            }
        }
    }
};

/// Haar-random element of SU(4): QR of a complex Ginibre matrix with the
/// phases of diag(R) moved into Q, then scaled by a fourth root of det.
inline Matrix4 sample_haar_su4(Rng &rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    for (;;) {
        Matrix4 z;
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                const double re = normal(rng);
                const double im = normal(rng);
                z(r, c) = Complex{re, im};
            }
        }
        Eigen::HouseholderQR<Matrix4> qr(z);
        const Matrix4 r = qr.matrixQR().triangularView<Eigen::Upper>();
        Matrix4 q = qr.householderQ();
        bool singular = false;
        for (int i = 0; i < 4; ++i) {
            const double mag = std::abs(r(i, i));
            if (mag < 1e-12) {
                singular = true;
                break;
            }
            q.col(i) *= r(i, i) / mag;
        }
        if (singular) {
            continue;
        }
        const Complex det = q.determinant();
        q *= std::pow(det, -0.25);
        return q;
    }
}

inline sim::PauliString sample_generator(Rng &rng, std::size_t n) {
    if (n == 0 || n > sim::kMaxQubits) {
        throw std::invalid_argument("sample_generator: bad qubit count");
    }
    // Uniform code in [1, 4^n - 1]; base-4 digits are the letters.
    const uint64_t count = uint64_t{1} << (2 * n);
    std::uniform_int_distribution<uint64_t> pick(1, count - 1);
    uint64_t code = pick(rng);
    std::vector<sim::Pauli> letters(n);
    for (std::size_t q = 0; q < n; ++q) {
        letters[q] = static_cast<sim::Pauli>(code & 3);
        code >>= 2;
    }
    return sim::PauliString(std::move(letters));
}

inline EntanglingLayer sample_layer(Rng &rng, std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("sample_layer: need at least 2 qubits");
    }
    EntanglingLayer layer;
    layer.permutation.resize(n);
    std::iota(layer.permutation.begin(), layer.permutation.end(), std::size_t{0});
    std::shuffle(layer.permutation.begin(), layer.permutation.end(), rng);
    layer.gates.reserve(n / 2);
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        layer.gates.emplace_back(sample_haar_su4(rng), layer.permutation[k], layer.permutation[k + 1]);
    }
    return layer;
}

/// Layers first (C_1 ... C_{m+1}), then generators, observable Z^n.
inline RandomCircuit sample_circuit(Rng &rng, std::size_t n, std::size_t m) {
    if (n < 2) {
        throw std::invalid_argument("sample_circuit: need at least 2 qubits");
    }
    if (m < 1) {
        throw std::invalid_argument("sample_circuit: need at least 1 parameter");
    }
    RandomCircuit circuit;
    circuit.num_qubits = n;
    circuit.layers.reserve(m + 1);
    for (std::size_t j = 0; j <= m; ++j) {
        circuit.layers.push_back(sample_layer(rng, n));
    }
    circuit.generators.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        circuit.generators.push_back(sample_generator(rng, n));
    }
    circuit.observable = sim::PauliString::all_z(n);
    return circuit;
}

inline ParameterVector sample_parameters(Rng &rng, std::size_t m) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    ParameterVector theta(m);
    for (auto &x : theta) {
        x = angle(rng);
    }
    return theta;
}

/// Runs U(theta) on `state`, invoking after_gate(state, gate) after every
/// two-qubit gate.
template <class AfterGate>
void execute(const RandomCircuit &circuit, std::span<const double> theta, sim::StateVector &state, AfterGate &&after_gate) {
    if (theta.size() != circuit.num_parameters()) {
        throw std::invalid_argument("execute: parameter count does not match circuit");
    }
    if (state.num_qubits() != circuit.num_qubits) {
        throw std::invalid_argument("execute: state size does not match circuit");
    }
    for (std::size_t j = 0; j < circuit.layers.size(); ++j) {
        for (const auto &gate : circuit.layers[j].gates) {
            sim::apply_two_qubit_gate(state, gate);
            after_gate(state, gate);
        }
        if (j < circuit.generators.size()) {
            sim::apply_pauli_rotation(state, circuit.generators[j], theta[j]);
        }
    }
}

/// |psi(theta)> = U(theta)|0...0>.
inline sim::StateVector prepare_state(const RandomCircuit &circuit, std::span<const double> theta) {
    sim::StateVector state(circuit.num_qubits);
    execute(circuit, theta, state, [](const sim::StateVector &, const sim::TwoQubitGate &) {});
    return state;
}

}  // namespace dgd::circuits
