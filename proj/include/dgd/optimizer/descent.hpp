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
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dgd/circuits/objective.hpp"
#include "dgd/circuits/random_circuit.hpp"
#include "dgd/errors.hpp"
#include "dgd/kernel/kernel.hpp"
#include "dgd/optimizer/window.hpp"
#include "dgd/rng.hpp"
#include "dgd/sim/sampling.hpp"

namespace dgd::optimizer {

/// Step size used when rescaling is switched on without an explicit guard.
inline constexpr double kDefaultRescaleEpsilon = 1e-8;

struct OptimizerConfig {
    double learning_rate = 0.1;
    double regularization = 0.1;
    /// Iterations kept in the sample window; empty keeps every iteration.
    std::optional<std::size_t> window;
    std::size_t steps = 1;
    /// Enables step rescaling to the noisy gradient length when present.
    std::optional<double> rescale_epsilon;
    uint64_t seed = 0;
    /// Optional per-step ridge: lambda_t = schedule(t, regularization).
    std::function<double(std::size_t, double)> lambda_schedule;

    void validate() const {
        if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
            throw ConfigError("OptimizerConfig: learning_rate must be > 0");
        }
        if (!(regularization > 0.0) || !std::isfinite(regularization)) {
            throw ConfigError("OptimizerConfig: regularization must be > 0");
        }
        if (steps < 1) {
            throw ConfigError("OptimizerConfig: steps must be >= 1");
        }
        if (window && *window < 1) {
            throw ConfigError("OptimizerConfig: window must be >= 1");
        }
        if (rescale_epsilon && !(*rescale_epsilon > 0.0)) {
            throw ConfigError("OptimizerConfig: rescale_epsilon must be > 0");
        }
    }

    double regularization_at(std::size_t t) const {
        return lambda_schedule ? lambda_schedule(t, regularization) : regularization;
    }
};

/// Everything a run produced. Entry t-1 of the per-step vectors belongs to
/// step t, which moves thetas[t-1] to thetas[t].
struct RunTrace {
    std::vector<ParameterVector> thetas;
    /// Gradient actually used for the step.
    std::vector<std::vector<double>> gradients;
    /// The 2m oracle values at thetas[t-1] +- pi/2 e_j, ordered (j,+), (j,-).
    std::vector<std::vector<double>> raw_samples;
    std::vector<double> step_lengths;
    /// Rows in the sample window when the surrogate was fitted (denoised only).
    std::vector<std::size_t> window_sizes;

    std::size_t steps() const noexcept { return gradients.size(); }
};

inline double euclidean_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    return std::sqrt(s);
}

/// alpha_t = alpha (||noisy parameter-shift gradient|| + eps) / (||denoised|| + eps),
/// with the noisy gradient rebuilt from the 2m raw samples.
inline double rescale_step(std::span<const double> noisy_samples, std::span<const double> denoised_grad, double alpha,
                           double epsilon) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("rescale_step: epsilon must be > 0");
    }
    const auto noisy = circuits::shift_gradient(noisy_samples);
    return (euclidean_norm(noisy) + epsilon) / (euclidean_norm(denoised_grad) + epsilon) * alpha;
}

/// Denoised gradient descent on an arbitrary noisy oracle
/// double(std::span<const double>). Each step calls the oracle 2m times.
///
/// Step t samples the shift points around theta_{t-1}, adds them to the
/// window, drops rows from iterations older than t - window, fits the kernel
/// ridge surrogate and descends along its analytic gradient.
template <class Oracle>
RunTrace denoised_gd(Oracle &&oracle, ParameterVector theta0, const OptimizerConfig &config) {
    config.validate();
    RunTrace trace;
    trace.thetas.reserve(config.steps + 1);
    trace.thetas.push_back(std::move(theta0));
    SampleWindow window(config.window);

    for (std::size_t t = 1; t <= config.steps; ++t) {
        const ParameterVector &theta = trace.thetas.back();
        circuits::ShiftSamples samples = circuits::parameter_shift_gradient(oracle, theta);
        window.append(t - 1, samples.points, samples.values);
        window.evict_for_step(t);

        kernel::Surrogate surrogate;
        try {
            const auto points = window.points();
            surrogate = kernel::Surrogate::fit(std::vector<ParameterVector>(points.begin(), points.end()), window.values(),
                                               config.regularization_at(t));
        } catch (const NumericalError &e) {
            throw IterationError(t, e.what());
        }
        std::vector<double> grad = surrogate.gradient(theta);

        const double alpha_t = config.rescale_epsilon
                                   ? rescale_step(samples.values, grad, config.learning_rate, *config.rescale_epsilon)
                                   : config.learning_rate;
        ParameterVector next = theta;
        for (std::size_t j = 0; j < next.size(); ++j) {
            next[j] -= alpha_t * grad[j];
        }
        trace.window_sizes.push_back(window.size());
        trace.gradients.push_back(std::move(grad));
        trace.raw_samples.push_back(std::move(samples.values));
        trace.step_lengths.push_back(alpha_t);
        trace.thetas.push_back(std::move(next));
    }
    return trace;
}

/// Plain parameter-shift gradient descent on an oracle; alpha_t = alpha.
template <class Oracle>
RunTrace shift_gd(Oracle &&oracle, ParameterVector theta0, const OptimizerConfig &config) {
    config.validate();
    RunTrace trace;
    trace.thetas.reserve(config.steps + 1);
    trace.thetas.push_back(std::move(theta0));
    for (std::size_t t = 1; t <= config.steps; ++t) {
        const ParameterVector &theta = trace.thetas.back();
        circuits::ShiftSamples samples = circuits::parameter_shift_gradient(oracle, theta);
        ParameterVector next = theta;
        for (std::size_t j = 0; j < next.size(); ++j) {
            next[j] -= config.learning_rate * samples.gradient[j];
        }
        trace.gradients.push_back(std::move(samples.gradient));
        trace.raw_samples.push_back(std::move(samples.values));
        trace.step_lengths.push_back(config.learning_rate);
        trace.thetas.push_back(std::move(next));
    }
    return trace;
}

inline auto noisy_oracle(const circuits::RandomCircuit &circuit, const sim::NoiseModel &noise, Rng &rng) {
    return [&circuit, &noise, &rng](std::span<const double> theta) { return circuits::evaluate_noisy(circuit, theta, noise, rng); };
}

inline auto exact_oracle(const circuits::RandomCircuit &circuit) {
    return [&circuit](std::span<const double> theta) { return circuits::evaluate_exact(circuit, theta); };
}

inline RunTrace denoised_gd(const circuits::RandomCircuit &circuit, ParameterVector theta0, const OptimizerConfig &config,
                            const sim::NoiseModel &noise, Rng &rng) {
    noise.validate();
    return denoised_gd(noisy_oracle(circuit, noise, rng), std::move(theta0), config);
}

inline RunTrace noisy_gd(const circuits::RandomCircuit &circuit, ParameterVector theta0, const OptimizerConfig &config,
                         const sim::NoiseModel &noise, Rng &rng) {
    noise.validate();
    return shift_gd(noisy_oracle(circuit, noise, rng), std::move(theta0), config);
}

inline RunTrace exact_gd(const circuits::RandomCircuit &circuit, ParameterVector theta0, const OptimizerConfig &config) {
    return shift_gd(exact_oracle(circuit), std::move(theta0), config);
}

}  // namespace dgd::optimizer
