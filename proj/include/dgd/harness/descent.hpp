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
#include <optional>
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

struct DescentConfig {
    std::size_t repetitions = 100;
    std::size_t qubits = 4;
    std::size_t parameters = 4;
    std::size_t ell = 5;
    double alpha = 0.4;
    std::size_t steps = 60;
    int64_t shots = 50;
    std::vector<double> lambdas{0.01 / std::sqrt(50.0)};
    double pauli_error_prob = 0.0;
    double epsilon = optimizer::kDefaultRescaleEpsilon;
    uint64_t seed = 0;
    std::size_t threads = 1;
    bool svg = true;

    void validate() const {
        if (repetitions < 1) throw ConfigError("descent: repetitions must be >= 1");
        if (qubits < 2 || qubits > 16) throw ConfigError("descent: qubits must lie in [2, 16]");
        if (parameters < 1) throw ConfigError("descent: parameters must be >= 1");
        if (ell < 1) throw ConfigError("descent: ell must be >= 1");
        if (!(alpha > 0.0)) throw ConfigError("descent: alpha must be > 0");
        if (steps < 1) throw ConfigError("descent: steps must be >= 1");
        if (shots < 1) throw ConfigError("descent: shots must be >= 1");
        if (lambdas.empty()) throw ConfigError("descent: lambda list must be non-empty");
        for (double l : lambdas) {
            if (!(l > 0.0)) throw ConfigError("descent: every lambda must be > 0");
        }
        if (!(pauli_error_prob >= 0.0 && pauli_error_prob <= 1.0)) throw ConfigError("descent: pauli_error_prob must lie in [0, 1]");
        if (!(epsilon > 0.0)) throw ConfigError("descent: epsilon must be > 0");
    }

    static DescentConfig from(const KeyValueConfig &kv) {
        kv.require_known({"repetitions", "qubits", "parameters", "ell", "alpha", "steps", "shots", "lambda", "pauli_error_prob",
                          "epsilon", "seed", "threads", "svg"});
        DescentConfig c;
        c.repetitions = count(kv.get_int("repetitions", 100), "repetitions");
        c.qubits = count(kv.get_int("qubits", 4), "qubits");
        c.parameters = count(kv.get_int("parameters", 4), "parameters");
        c.ell = count(kv.get_int("ell", 5), "ell");
        c.alpha = kv.get_double("alpha", 0.4);
        c.steps = count(kv.get_int("steps", 60), "steps");
        c.shots = kv.get_int("shots", 50);
        if (kv.has("lambda")) {
            c.lambdas = kv.get_double_list("lambda");
        }
        c.pauli_error_prob = kv.get_double("pauli_error_prob", 0.0);
        c.epsilon = kv.get_double("epsilon", optimizer::kDefaultRescaleEpsilon);
        c.seed = kv.get_seed("seed", 0);
        c.threads = count(kv.get_int("threads", 1), "threads");
        c.svg = kv.get_bool("svg", true);
        c.validate();
        return c;
    }

 private:
    static std::size_t count(int64_t v, const char *key) {
        if (v < 0) throw ConfigError(std::string("descent: ") + key + " must be non-negative");
        return static_cast<std::size_t>(v);
    }
};

/// Per-step mean and standard deviation of the exact objective along one
/// method's trajectories.
struct Curve {
    std::string method;
    /// Set for the denoised method only.
    std::optional<double> lambda;
    std::vector<double> mean;
    std::vector<double> stddev;
};

struct DescentTable {
    /// exact, noisy, then one denoised curve per lambda in config order.
    std::vector<Curve> curves;

    const Curve &find(const std::string &method, std::optional<double> lambda = std::nullopt) const {
        for (const auto &c : curves) {
            if (c.method == method && c.lambda == lambda) {
                return c;
            }
        }
        throw std::out_of_range("DescentTable: no curve for method '" + method + "'");
    }
};

/// Mean and sample standard deviation across runs, per step.
inline Curve summarize(std::string method, std::optional<double> lambda, const std::vector<std::vector<double>> &runs) {
    Curve c{std::move(method), lambda, {}, {}};
    if (runs.empty()) {
        return c;
    }
    const std::size_t len = runs.front().size();
    c.mean.assign(len, 0.0);
    c.stddev.assign(len, 0.0);
    for (std::size_t t = 0; t < len; ++t) {
        double sum = 0.0;
        for (const auto &r : runs) {
            sum += r[t];
        }
        const double mean = sum / static_cast<double>(runs.size());
        double ss = 0.0;
        for (const auto &r : runs) {
            ss += (r[t] - mean) * (r[t] - mean);
        }
        c.mean[t] = mean;
        c.stddev[t] = runs.size() > 1 ? std::sqrt(ss / static_cast<double>(runs.size() - 1)) : 0.0;
    }
    return c;
}

inline std::vector<double> exact_values(const circuits::RandomCircuit &circuit, const optimizer::RunTrace &trace) {
    std::vector<double> f;
    f.reserve(trace.thetas.size());
    for (const auto &theta : trace.thetas) {
        f.push_back(circuits::evaluate_exact(circuit, theta));
    }
    return f;
}

/// One circuit and theta_0 from the seed; `repetitions` runs of noisy GD and
/// of denoised GD (with rescaling) per lambda, all re-evaluated exactly at
/// every visited point afterwards, plus one exact-GD reference curve.
inline DescentTable run_descent(const DescentConfig &config) {
    config.validate();
    Rng setup = make_rng(config.seed, {0xDE5, 0});
    const auto circuit = circuits::sample_circuit(setup, config.qubits, config.parameters);
    const auto theta0 = circuits::sample_parameters(setup, config.parameters);
    const sim::NoiseModel noise{config.shots, config.pauli_error_prob, config.seed};

    optimizer::OptimizerConfig plain;
    plain.learning_rate = config.alpha;
    plain.steps = config.steps;

    DescentTable table;
    table.curves.push_back(summarize("exact", std::nullopt, {exact_values(circuit, optimizer::exact_gd(circuit, theta0, plain))}));

    const std::size_t methods = 1 + config.lambdas.size();
    std::vector<std::vector<std::vector<double>>> runs(methods, std::vector<std::vector<double>>(config.repetitions));
    parallel_for(methods * config.repetitions, config.threads, [&](std::size_t flat) {
        const std::size_t method = flat / config.repetitions;
        const std::size_t rep = flat % config.repetitions;
        Rng rng = make_rng(config.seed, {0xDE5, 1 + method, rep});
        optimizer::RunTrace trace;
        if (method == 0) {
            trace = optimizer::noisy_gd(circuit, theta0, plain, noise, rng);
        } else {
            optimizer::OptimizerConfig opt = plain;
            opt.regularization = config.lambdas[method - 1];
            opt.window = config.ell;
            opt.rescale_epsilon = config.epsilon;
            trace = optimizer::denoised_gd(circuit, theta0, opt, noise, rng);
        }
        runs[method][rep] = exact_values(circuit, trace);
    });

    table.curves.push_back(summarize("noisy", std::nullopt, runs[0]));
    for (std::size_t i = 0; i < config.lambdas.size(); ++i) {
        table.curves.push_back(summarize("denoised", config.lambdas[i], runs[1 + i]));
    }
    return table;
}

}  // namespace dgd::harness
