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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dgd/circuits/random_circuit.hpp"
#include "dgd/rng.hpp"
#include "dgd/sim/sampling.hpp"
#include "dgd/sim/state_vector.hpp"
#include "test_util.hpp"

using namespace dgd;
using namespace dgd::sim;
using dgd::ref::to_dense;

namespace {

constexpr double kPi = std::numbers::pi;

double max_diff(const StateVector &a, const StateVector &b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

Matrix4 swap_matrix() {
    Matrix4 m = Matrix4::Zero();
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
    return m;
}

}  // namespace

TEST(StateVector, starts_in_all_zero_state) {
    StateVector s(3);
    EXPECT_EQ(s.size(), 8u);
    EXPECT_EQ(s[0], Complex(1.0, 0.0));
    EXPECT_DOUBLE_EQ(s.norm(), 1.0);
    EXPECT_THROW(StateVector(0), std::invalid_argument);
    EXPECT_THROW(StateVector(2, std::vector<Complex>(3)), std::invalid_argument);
}

TEST(PauliString, parse_and_masks) {
    const auto p = PauliString::parse("XIZY");
    EXPECT_EQ(p.str(), "XIZY");
    EXPECT_EQ(p.x_mask(), 0b1001u);
    EXPECT_EQ(p.z_mask(), 0b1100u);
    EXPECT_FALSE(p.is_identity());
    EXPECT_TRUE(PauliString::identity(3).is_identity());
    EXPECT_THROW(PauliString::parse("XQ"), std::invalid_argument);
    EXPECT_THROW(PauliString::parse(""), std::invalid_argument);
}

TEST(PauliString, action_matches_dense_matrix) {
    Rng rng = make_rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const auto p = ref::random_pauli(n, rng, true);
        auto s = ref::random_state(n, rng);
        const ref::DenseVector expected = ref::dense_pauli(p) * to_dense(s);
        apply_pauli(s, p);
        EXPECT_LE((to_dense(s) - expected).cwiseAbs().maxCoeff(), 1e-14) << p.str();
    }
}

TEST(TwoQubitGate, identity_gate_leaves_state_unchanged) {
    Rng rng = make_rng(1);
    auto s = ref::random_state(3, rng);
    const auto before = s;
    apply_two_qubit_gate(s, TwoQubitGate(Matrix4::Identity(), 2, 0));
    EXPECT_EQ(max_diff(s, before), 0.0);
}

TEST(TwoQubitGate, swap_permutes_basis_states) {
    // |q0=0, q1=1> is index 2; after SWAP it is |q0=1, q1=0>, index 1.
    StateVector s(2, {0.0, 0.0, 1.0, 0.0});
    apply_two_qubit_gate(s, TwoQubitGate(swap_matrix(), 0, 1));
    EXPECT_EQ(s[1], Complex(1.0, 0.0));
    EXPECT_EQ(s[2], Complex(0.0, 0.0));
}

TEST(TwoQubitGate, embedding_matches_dense_matrix) {
    Rng rng = make_rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + trial % 3;
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        std::size_t a = pick(rng), b = pick(rng);
        while (b == a) b = pick(rng);
        const Matrix4 u = circuits::sample_haar_su4(rng);
        auto s = ref::random_state(n, rng);
        const ref::DenseVector expected = ref::dense_two_qubit(u, a, b, n) * to_dense(s);
        apply_two_qubit_gate(s, TwoQubitGate(u, a, b));
        EXPECT_LE((to_dense(s) - expected).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(TwoQubitGate, haar_gate_preserves_norm_and_inverts) {
    Rng rng = make_rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const Matrix4 u = circuits::sample_haar_su4(rng);
        auto s = ref::random_state(4, rng);
        const auto before = s;
        apply_two_qubit_gate(s, u, 3, 1);
        EXPECT_NEAR(s.norm(), 1.0, 1e-12);
        apply_two_qubit_gate(s, Matrix4(u.adjoint()), 3, 1);
        EXPECT_LE(max_diff(s, before), 1e-10);
    }
}

TEST(TwoQubitGate, rejects_bad_targets) {
    StateVector s(2);
    EXPECT_THROW(apply_two_qubit_gate(s, Matrix4::Identity(), 0, 2), std::out_of_range);
    EXPECT_THROW(apply_two_qubit_gate(s, Matrix4::Identity(), 1, 1), std::invalid_argument);
    EXPECT_THROW(TwoQubitGate(Matrix4::Identity(), 1, 1), std::invalid_argument);
    EXPECT_THROW(TwoQubitGate(Matrix4::Identity() * 2.0, 0, 1), std::invalid_argument);
}

TEST(PauliRotation, z_on_zero_is_a_global_phase) {
    const double theta = 0.7;
    StateVector s(1);
    apply_pauli_rotation(s, PauliString::parse("Z"), theta);
    EXPECT_NEAR(std::abs(s[0] - std::polar(1.0, -theta / 2)), 0.0, 1e-15);
    EXPECT_NEAR(expectation(s, PauliString::parse("Z")), 1.0, 1e-15);
}

TEST(PauliRotation, x_by_pi_flips_the_qubit) {
    StateVector s(1);
    apply_pauli_rotation(s, PauliString::parse("X"), kPi);
    EXPECT_NEAR(std::abs(s[1] - Complex(0.0, -1.0)), 0.0, 1e-15);
    EXPECT_NEAR(expectation(s, PauliString::parse("Z")), -1.0, 1e-15);
}

TEST(PauliRotation, zero_angle_is_identity) {
    Rng rng = make_rng(4);
    auto s = ref::random_state(3, rng);
    const auto before = s;
    apply_pauli_rotation(s, PauliString::parse("XYZ"), 0.0);
    EXPECT_EQ(max_diff(s, before), 0.0);
}

TEST(PauliRotation, rejects_identity_generator) {
    StateVector s(2);
    EXPECT_THROW(apply_pauli_rotation(s, PauliString::identity(2), 0.3), std::invalid_argument);
    EXPECT_THROW(apply_pauli_rotation(s, PauliString::parse("X"), 0.3), std::invalid_argument);
}

TEST(PauliRotation, matches_dense_exponential) {
    Rng rng = make_rng(5);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const auto g = ref::random_pauli(n, rng);
        const double theta = angle(rng);
        auto s = ref::random_state(n, rng);
        const auto dense_g = ref::dense_pauli(g);
        const ref::DenseMatrix r =
            std::cos(theta / 2) * ref::DenseMatrix::Identity(dense_g.rows(), dense_g.cols()) - Complex(0, std::sin(theta / 2)) * dense_g;
        const ref::DenseVector expected = r * to_dense(s);
        apply_pauli_rotation(s, g, theta);
        EXPECT_LE((to_dense(s) - expected).cwiseAbs().maxCoeff(), 1e-13) << g.str();
    }
}

TEST(PauliRotation, operator_is_4pi_periodic) {
    Rng rng = make_rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = ref::random_pauli(3, rng);
        auto a = ref::random_state(3, rng);
        auto b = a;
        apply_pauli_rotation(a, g, 1.3);
        apply_pauli_rotation(b, g, 1.3 + 4 * kPi);
        EXPECT_LE(max_diff(a, b), 1e-12);
    }
}

TEST(Expectation, closed_forms) {
    EXPECT_DOUBLE_EQ(expectation(StateVector(4), PauliString::all_z(4)), 1.0);
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(expectation(StateVector(1, {h, h}), PauliString::parse("Z")), 0.0, 1e-15);
    // R_X(theta)|0> measured in Z gives cos(theta).
    for (double theta : {0.0, kPi / 2, kPi}) {
        StateVector s(1);
        apply_pauli_rotation(s, PauliString::parse("X"), theta);
        EXPECT_NEAR(expectation(s, PauliString::parse("Z")), std::cos(theta), 1e-15) << theta;
    }
}

TEST(Expectation, matches_dense_quadratic_form) {
    Rng rng = make_rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const auto p = ref::random_pauli(n, rng, true);
        const auto s = ref::random_state(n, rng);
        const auto v = to_dense(s);
        const double expected = (v.adjoint() * ref::dense_pauli(p) * v)(0, 0).real();
        EXPECT_NEAR(expectation(s, p), expected, 1e-14) << p.str();
        EXPECT_LE(std::abs(expectation(s, p)), 1.0 + 1e-14);
    }
    EXPECT_THROW(expectation(StateVector(2), PauliString::parse("Z")), std::invalid_argument);
}

TEST(Norm, preserved_by_random_gate_sequences) {
    Rng rng = make_rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        StateVector s(5);
        for (int step = 0; step < 40; ++step) {
            if (step % 2 == 0) {
                const auto layer = circuits::sample_layer(rng, 5);
                for (const auto &gate : layer.gates) {
                    apply_two_qubit_gate(s, gate);
                    ASSERT_NEAR(s.norm(), 1.0, 1e-10);
                }
            } else {
                apply_pauli_rotation(s, circuits::sample_generator(rng, 5), 2.0 * step);
                ASSERT_NEAR(s.norm(), 1.0, 1e-10);
            }
        }
    }
}

TEST(NoiseModel, validation) {
    EXPECT_NO_THROW((NoiseModel{1, 0.0, 0}.validate()));
    EXPECT_THROW((NoiseModel{0, 0.0, 0}.validate()), std::invalid_argument);
    EXPECT_THROW((NoiseModel{10, -0.1, 0}.validate()), std::invalid_argument);
    EXPECT_THROW((NoiseModel{10, 1.5, 0}.validate()), std::invalid_argument);
}

TEST(SampleExpectation, deterministic_outcome_on_ground_state) {
    Rng rng = make_rng(9);
    for (int64_t shots : {1, 7, 200}) {
        EXPECT_EQ(sample_expectation(StateVector(3), PauliString::all_z(3), NoiseModel{shots, 0.0, 0}, rng), 1.0);
    }
}

TEST(SampleExpectation, binomial_spread_on_uniform_superposition) {
    // Outcomes are +-1 with probability 1/2, so the mean of S shots has
    // standard deviation 1/sqrt(S).
    const double h = 1.0 / std::sqrt(2.0);
    const StateVector s(1, {h, h});
    Rng rng = make_rng(10);
    const int64_t shots = 100;
    const int reps = 20000;
    double sum = 0.0, sum_sq = 0.0;
    for (int r = 0; r < reps; ++r) {
        const double v = sample_expectation(s, PauliString::parse("Z"), NoiseModel{shots, 0.0, 0}, rng);
        EXPECT_NEAR(std::remainder(v * shots, 2.0), 0.0, 1e-9);  // granularity 2/shots
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / reps;
    const double sd = std::sqrt(sum_sq / reps - mean * mean);
    EXPECT_NEAR(mean, 0.0, 3.0 * 0.1 / std::sqrt(reps));
    // The sample sd of 2e4 draws has relative error about 0.5%.
    EXPECT_NEAR(sd, 0.1, 0.1 * 0.025);
}

TEST(SampleExpectation, unbiased_within_three_sigma) {
    Rng rng = make_rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        const auto s = ref::random_state(3, rng);
        const auto p = ref::random_pauli(3, rng);
        const double f = expectation(s, p);
        const int64_t shots = 50;
        const int reps = 10000;
        double sum = 0.0;
        for (int r = 0; r < reps; ++r) {
            sum += sample_expectation(s, p, NoiseModel{shots, 0.0, 0}, rng);
        }
        EXPECT_LE(std::abs(sum / reps - f), 3.0 * std::sqrt((1 - f * f) / (shots * reps)));
    }
}

TEST(MeasureOnce, basis_rotation_route_agrees_with_expectation) {
    Rng rng = make_rng(12);
    for (const char *letters : {"XYZ", "YIX", "ZZI"}) {
        const auto p = PauliString::parse(letters);
        const auto s = ref::random_state(3, rng);
        const double f = expectation(s, p);
        const int reps = 20000;
        double sum = 0.0;
        for (int r = 0; r < reps; ++r) {
            const int outcome = measure_once(s, p, rng);
            ASSERT_TRUE(outcome == 1 || outcome == -1);
            sum += outcome;
        }
        EXPECT_LE(std::abs(sum / reps - f), 3.5 * std::sqrt((1 - f * f) / reps)) << letters;
    }
}
