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
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dgd/circuits/objective.hpp"
#include "dgd/circuits/random_circuit.hpp"
#include "dgd/errors.hpp"
#include "dgd/harness/config.hpp"
#include "dgd/harness/parallel.hpp"
#include "dgd/optimizer/descent.hpp"
#include "dgd/rng.hpp"
#include "dgd/sim/sampling.hpp"

namespace dgd::harness {

/// a.b / max(|a| |b|, floor).
inline double cosine_similarity(std::span<const double> a, std::span<const double> b, double floor) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("cosine_similarity: length mismatch");
    }
    if (!(floor > 0.0)) {
        throw std::invalid_argument("cosine_similarity: floor must be > 0");
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
    }
    const double denom = optimizer::euclidean_norm(a) * optimizer::euclidean_norm(b);
    return dot / std::max(denom, floor);
}

struct AlignmentConfig {
    std::size_t samples = 500;
    std::size_t qubits = 8;
    std::size_t parameters = 8;
    int64_t shots = 200;
    double lambda = 0.28;
    double alpha = 0.1;
    std::vector<std::size_t> ells{1, 2, 3, 4, 5, 6};
    double pauli_error_prob = 0.0;
    double cosine_floor = 1e-12;
    double epsilon = optimizer::kDefaultRescaleEpsilon;
    /// Build w2 from the last window samples instead of fresh draws.
    bool reuse_final_samples = false;
    uint64_t seed = 0;
    std::size_t threads = 1;
    bool svg = true;

    void validate() const {
        if (samples < 1) throw ConfigError("alignment: samples must be >= 1");
        if (qubits < 2 || qubits > 16) throw ConfigError("alignment: qubits must lie in [2, 16]");
        if (parameters < 1) throw ConfigError("alignment: parameters must be >= 1");
        if (shots < 1) throw ConfigError("alignment: shots must be >= 1");
        if (!(lambda > 0.0)) throw ConfigError("alignment: lambda must be > 0");
        if (!(alpha > 0.0)) throw ConfigError("alignment: alpha must be > 0");
        if (ells.empty()) throw ConfigError("alignment: ell list must be non-empty");
        for (auto ell : ells) {
            if (ell < 1) throw ConfigError("alignment: every ell must be >= 1");
        }
        if (!(pauli_error_prob >= 0.0 && pauli_error_prob <= 1.0)) throw ConfigError("alignment: pauli_error_prob must lie in [0, 1]");
        if (!(cosine_floor > 0.0)) throw ConfigError("alignment: cosine_floor must be > 0");
        if (!(epsilon > 0.0)) throw ConfigError("alignment: epsilon must be > 0");
    }

    static AlignmentConfig from(const KeyValueConfig &kv) {
        kv.require_known({"samples", "qubits", "parameters", "shots", "lambda", "alpha", "ell", "pauli_error_prob", "cosine_floor",
                          "epsilon", "reuse_final_samples", "seed", "threads", "svg"});
        AlignmentConfig c;
        c.samples = static_cast<std::size_t>(non_negative(kv.get_int("samples", 500), "samples"));
        c.qubits = static_cast<std::size_t>(non_negative(kv.get_int("qubits", 8), "qubits"));
        c.parameters = static_cast<std::size_t>(non_negative(kv.get_int("parameters", 8), "parameters"));
        c.shots = kv.get_int("shots", 200);
        c.lambda = kv.get_double("lambda", 0.28);
        c.alpha = kv.get_double("alpha", 0.1);
        if (kv.has("ell")) {
            c.ells.clear();
            for (auto v : kv.get_int_list("ell")) {
                c.ells.push_back(static_cast<std::size_t>(non_negative(v, "ell")));
            }
        }
        c.pauli_error_prob = kv.get_double("pauli_error_prob", 0.0);
        c.cosine_floor = kv.get_double("cosine_floor", 1e-12);
        c.epsilon = kv.get_double("epsilon", optimizer::kDefaultRescaleEpsilon);
        c.reuse_final_samples = kv.get_bool("reuse_final_samples", false);
        c.seed = kv.get_seed("seed", 0);
        c.threads = static_cast<std::size_t>(non_negative(kv.get_int("threads", 1), "threads"));
        c.svg = kv.get_bool("svg", true);
        c.validate();
        return c;
    }

 private:
    static int64_t non_negative(int64_t v, const char *key) {
        if (v < 0) throw ConfigError(std::string("alignment: ") + key + " must be non-negative");
        return v;
    }
};

struct AlignmentRow {
    std::size_t sample_index = 0;
    std::size_t ell = 0;
    double x_denoised = 0.0;
    double x_noisy = 0.0;
};

struct AlignmentSummary {
    std::size_t ell = 0;
    std::size_t samples = 0;
    std::size_t wins = 0;

    double win_fraction() const { return samples == 0 ? 0.0 : static_cast<double>(wins) / static_cast<double>(samples); }
};

struct AlignmentTable {
    /// Sorted by ell (config order), then sample index.
    std::vector<AlignmentRow> rows;
    std::vector<AlignmentSummary> summary;
};

/// Noisy objective used during an alignment sample.
using NoisyEvaluator = std::function<double(const circuits::RandomCircuit &, std::span<const double>, Rng &)>;

/// For every ell and sample: draw a circuit and theta_0, run denoised GD for
/// ell steps with rescaling, and compare its last gradient w1 and a noisy
/// parameter-shift gradient w2 at theta_{ell-1} against the exact gradient.
inline AlignmentTable run_alignment(const AlignmentConfig &config, NoisyEvaluator evaluator = {}) {
    config.validate();
    const sim::NoiseModel noise{config.shots, config.pauli_error_prob, config.seed};
    if (!evaluator) {
        evaluator = [noise](const circuits::RandomCircuit &c, std::span<const double> theta, Rng &rng) {
            return circuits::evaluate_noisy(c, theta, noise, rng);
        };
    }

    AlignmentTable table;
    table.rows.resize(config.ells.size() * config.samples);
    parallel_for(table.rows.size(), config.threads, [&](std::size_t flat) {
        const std::size_t ell = config.ells[flat / config.samples];
        const std::size_t index = flat % config.samples;
        Rng rng = make_rng(config.seed, {0xA11, ell, index});
        const auto circuit = circuits::sample_circuit(rng, config.qubits, config.parameters);
        auto theta0 = circuits::sample_parameters(rng, config.parameters);
        auto oracle = [&](std::span<const double> theta) { return evaluator(circuit, theta, rng); };

        optimizer::OptimizerConfig opt;
        opt.learning_rate = config.alpha;
        opt.regularization = config.lambda;
        opt.window = ell;
        opt.steps = ell;
        opt.rescale_epsilon = config.epsilon;
        const auto trace = optimizer::denoised_gd(oracle, std::move(theta0), opt);

        const auto &theta = trace.thetas[ell - 1];
        const auto &w1 = trace.gradients.back();
        const auto w2 = config.reuse_final_samples ? circuits::shift_gradient(trace.raw_samples.back())
                                                   : circuits::parameter_shift_gradient(oracle, theta).gradient;
        const auto w = circuits::parameter_shift_gradient(optimizer::exact_oracle(circuit), theta).gradient;
        table.rows[flat] = AlignmentRow{index, ell, cosine_similarity(w, w1, config.cosine_floor),
                                        cosine_similarity(w, w2, config.cosine_floor)};
    });

    for (std::size_t e = 0; e < config.ells.size(); ++e) {
        AlignmentSummary s{config.ells[e], config.samples, 0};
        for (std::size_t i = 0; i < config.samples; ++i) {
            const auto &row = table.rows[e * config.samples + i];
            if (row.x_denoised > row.x_noisy) {
                ++s.wins;
            }
        }
        table.summary.push_back(s);
    }
    return table;
}

}  // namespace dgd::harness
