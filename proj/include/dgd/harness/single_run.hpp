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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dgd/circuits/random_circuit.hpp"
#include "dgd/circuits/serialize.hpp"
#include "dgd/errors.hpp"
#include "dgd/harness/config.hpp"
#include "dgd/harness/output.hpp"
#include "dgd/optimizer/descent.hpp"
#include "dgd/optimizer/trace_csv.hpp"
#include "dgd/rng.hpp"

namespace dgd::harness {

/// One optimizer run on one sampled circuit, for inspection.
struct TraceConfig {
    std::string method = "denoised";  // denoised | noisy | exact
    std::size_t qubits = 4;
    std::size_t parameters = 4;
    double alpha = 0.1;
    double lambda = 0.1;
    /// 0 keeps every iteration.
    std::size_t ell = 0;
    std::size_t steps = 10;
    int64_t shots = 100;
    double pauli_error_prob = 0.0;
    /// Rescaling guard; empty disables rescaling.
    std::optional<double> epsilon;
    uint64_t seed = 0;

    static TraceConfig from(const KeyValueConfig &kv) {
        kv.require_known({"method", "qubits", "parameters", "alpha", "lambda", "ell", "steps", "shots", "pauli_error_prob", "epsilon",
                          "seed", "threads", "svg"});
        const auto count = [&](const char *key, int64_t fallback) {
            const int64_t v = kv.get_int(key, fallback);
            if (v < 0) throw ConfigError(std::string("trace: ") + key + " must be non-negative");
            return static_cast<std::size_t>(v);
        };
        TraceConfig c;
        c.method = kv.get_string("method", "denoised");
        c.qubits = count("qubits", 4);
        c.parameters = count("parameters", 4);
        c.alpha = kv.get_double("alpha", 0.1);
        c.lambda = kv.get_double("lambda", 0.1);
        c.ell = count("ell", 0);
        c.steps = count("steps", 10);
        c.shots = kv.get_int("shots", 100);
        c.pauli_error_prob = kv.get_double("pauli_error_prob", 0.0);
        if (kv.has("epsilon")) {
            c.epsilon = kv.get_double("epsilon");
        }
        c.seed = kv.get_seed("seed", 0);
        c.validate();
        return c;
    }

    void validate() const {
        if (method != "denoised" && method != "noisy" && method != "exact") {
            throw ConfigError("trace: method must be denoised, noisy or exact");
        }
        if (qubits < 2 || qubits > 16) throw ConfigError("trace: qubits must lie in [2, 16]");
        if (parameters < 1) throw ConfigError("trace: parameters must be >= 1");
        if (shots < 1) throw ConfigError("trace: shots must be >= 1");
        if (!(pauli_error_prob >= 0.0 && pauli_error_prob <= 1.0)) throw ConfigError("trace: pauli_error_prob must lie in [0, 1]");
        optimizer_config().validate();
    }

    optimizer::OptimizerConfig optimizer_config() const {
        optimizer::OptimizerConfig o;
        o.learning_rate = alpha;
        o.regularization = lambda;
        if (ell > 0) {
            o.window = ell;
        }
        o.steps = steps;
        o.rescale_epsilon = epsilon;
        o.seed = seed;
        return o;
    }
};

struct TraceResult {
    circuits::RandomCircuit circuit;
    optimizer::RunTrace trace;
};

inline TraceResult run_trace(const TraceConfig &config) {
    config.validate();
    Rng setup = make_rng(config.seed, {0x7ACE, 0});
    TraceResult r{circuits::sample_circuit(setup, config.qubits, config.parameters), {}};
    const auto theta0 = circuits::sample_parameters(setup, config.parameters);
    const sim::NoiseModel noise{config.shots, config.pauli_error_prob, config.seed};
    Rng rng = make_rng(config.seed, {0x7ACE, 1});
    const auto opt = config.optimizer_config();
    if (config.method == "denoised") {
        r.trace = optimizer::denoised_gd(r.circuit, theta0, opt, noise, rng);
    } else if (config.method == "noisy") {
        r.trace = optimizer::noisy_gd(r.circuit, theta0, opt, noise, rng);
    } else {
        r.trace = optimizer::exact_gd(r.circuit, theta0, opt);
    }
    return r;
}

/// circuit.json and trace.csv.
inline std::vector<std::filesystem::path> emit_outputs(const TraceResult &result, const std::filesystem::path &dir) {
    detail::ensure_dir(dir);
    return {detail::write_file(dir, "circuit.json", [&](std::ostream &o) { o << circuits::serialize_circuit(result.circuit) << '\n'; }),
            detail::write_file(dir, "trace.csv", [&](std::ostream &o) { optimizer::write_trace_csv(o, result.trace); })};
}

}  // namespace dgd::harness
