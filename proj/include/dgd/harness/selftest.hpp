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
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "dgd/circuits/objective.hpp"
#include "dgd/circuits/random_circuit.hpp"
#include "dgd/kernel/kernel.hpp"
#include "dgd/optimizer/descent.hpp"
#include "dgd/rng.hpp"

namespace dgd::harness {

struct CheckResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;
    double tolerance = 0.0;
};

/// Noiseless samples with a negligible ridge and a one-iteration window must
/// reproduce the exact parameter-shift gradient.
inline CheckResult check_exact_recovery(uint64_t seed, int circuits_to_try = 20) {
    CheckResult r{"exact gradient recovery (noiseless, lambda=1e-12, ell=1)", true, 0.0, 1e-6};
    for (int c = 0; c < circuits_to_try; ++c) {
        Rng rng = make_rng(seed, {0x5E1F, 0, static_cast<uint64_t>(c)});
        const std::size_t n = 2 + static_cast<std::size_t>(c % 4);
        const std::size_t m = 1 + static_cast<std::size_t>(c % 6);
        const auto circuit = circuits::sample_circuit(rng, n, m);
        const auto theta = circuits::sample_parameters(rng, m);
        optimizer::OptimizerConfig cfg;
        cfg.regularization = 1e-12;
        cfg.window = 1;
        cfg.steps = 1;
        const auto trace = optimizer::denoised_gd(optimizer::exact_oracle(circuit), theta, cfg);
        const auto exact = circuits::parameter_shift_gradient(optimizer::exact_oracle(circuit), theta).gradient;
        double diff = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            diff += std::pow(trace.gradients[0][j] - exact[j], 2);
        }
        const double rel = std::sqrt(diff) / std::max(optimizer::euclidean_norm(exact), 1e-300);
        r.worst = std::max(r.worst, rel);
    }
    r.passed = r.worst <= r.tolerance;
    return r;
}

/// Analytic surrogate gradient against the parameter-shift route.
inline CheckResult check_surrogate_gradient(uint64_t seed, int instances = 100) {
    CheckResult r{"surrogate gradient: analytic vs parameter shift", true, 0.0, 1e-10};
    for (int i = 0; i < instances; ++i) {
        Rng rng = make_rng(seed, {0x5E1F, 1, static_cast<uint64_t>(i)});
        std::uniform_int_distribution<std::size_t> dim(1, 8), count(1, 24);
        std::normal_distribution<double> normal;
        const std::size_t m = dim(rng);
        const std::size_t d = count(rng);
        std::vector<kernel::Point> centers;
        std::vector<double> eta;
        for (std::size_t k = 0; k < d; ++k) {
            centers.push_back(circuits::sample_parameters(rng, m));
            eta.push_back(normal(rng));
        }
        const kernel::Surrogate s(centers, eta);
        const auto theta = circuits::sample_parameters(rng, m);
        const auto a = s.gradient(theta);
        const auto b = s.shift_gradient(theta);
        for (std::size_t j = 0; j < m; ++j) {
            r.worst = std::max(r.worst, std::abs(a[j] - b[j]));
        }
    }
    r.passed = r.worst <= r.tolerance;
    return r;
}

/// Smallest Gram eigenvalue over random point sets; reported as -min(0, lambda_min).
inline CheckResult check_gram_psd(uint64_t seed, int instances = 100) {
    CheckResult r{"Gram matrix positive semidefinite (floor -1e-10)", true, 0.0, 1e-10};
    for (int i = 0; i < instances; ++i) {
        Rng rng = make_rng(seed, {0x5E1F, 2, static_cast<uint64_t>(i)});
        std::uniform_int_distribution<std::size_t> dim(1, 6), count(1, 64);
        const std::size_t m = dim(rng);
        const std::size_t d = count(rng);
        std::vector<kernel::Point> pts;
        for (std::size_t k = 0; k < d; ++k) {
            pts.push_back(circuits::sample_parameters(rng, m));
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kernel::build_gram(pts), Eigen::EigenvaluesOnly);
        r.worst = std::max(r.worst, -std::min(0.0, es.eigenvalues().minCoeff()));
    }
    r.passed = r.worst <= r.tolerance;
    return r;
}

inline std::vector<CheckResult> run_selftest(uint64_t seed = 0) {
    return {check_exact_recovery(seed), check_surrogate_gradient(seed), check_gram_psd(seed)};
}

}  // namespace dgd::harness
