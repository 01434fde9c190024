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

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "dgd/circuits/random_circuit.hpp"
#include "dgd/rng.hpp"
#include "dgd/sim/sampling.hpp"
#include "dgd/sim/trajectory.hpp"

namespace dgd::circuits {

inline constexpr double kHalfPi = 0.5 * std::numbers::pi;

/// f(theta) = <psi(theta)| M |psi(theta)> by statevector simulation.
inline double evaluate_exact(const RandomCircuit &circuit, std::span<const double> theta) {
    return sim::expectation(prepare_state(circuit, theta), circuit.observable);
}

/// Noisy estimate of f(theta): shot noise only when pauli_error_prob is zero,
/// otherwise one noisy trajectory per shot.
inline double evaluate_noisy(const RandomCircuit &circuit, std::span<const double> theta, const sim::NoiseModel &noise, Rng &rng) {
    if (noise.pauli_error_prob > 0.0) {
        return sim::run_noisy_trajectory(circuit, theta, noise, rng);
    }
    return sim::sample_expectation(prepare_state(circuit, theta), circuit.observable, noise, rng);
}

/// The 2m evaluations behind one parameter-shift gradient. Samples are
/// ordered (j, +), (j, -) for j = 0..m-1.
struct ShiftSamples {
    std::vector<double> gradient;
    std::vector<ParameterVector> points;
    std::vector<double> values;
};

/// theta +- pi/2 e_j in the order used by ShiftSamples.
inline std::vector<ParameterVector> shift_points(std::span<const double> theta) {
    std::vector<ParameterVector> points;
    points.reserve(2 * theta.size());
    for (std::size_t j = 0; j < theta.size(); ++j) {
        for (double sign : {1.0, -1.0}) {
            ParameterVector p(theta.begin(), theta.end());
            p[j] += sign * kHalfPi;
            points.push_back(std::move(p));
        }
    }
    return points;
}

/// Half the difference of each (+, -) pair.
inline std::vector<double> shift_gradient(std::span<const double> values) {
    if (values.size() % 2 != 0) {
        throw std::invalid_argument("shift_gradient: need an even number of samples");
    }
    std::vector<double> g(values.size() / 2);
    for (std::size_t j = 0; j < g.size(); ++j) {
        g[j] = 0.5 * (values[2 * j] - values[2 * j + 1]);
    }
    return g;
}

/// Parameter-shift gradient of `oracle` at theta; the oracle is called
/// exactly 2m times.
template <class Oracle>
ShiftSamples parameter_shift_gradient(Oracle &&oracle, std::span<const double> theta) {
    ShiftSamples out;
    out.points = shift_points(theta);
    out.values.reserve(out.points.size());
    for (const auto &p : out.points) {
        out.values.push_back(oracle(std::span<const double>(p)));
    }
    out.gradient = shift_gradient(out.values);
    return out;
}

}  // namespace dgd::circuits
