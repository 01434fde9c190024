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

#include <Eigen/Dense>

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dgd::sim {

using Complex = std::complex<double>;
using Matrix4 = Eigen::Matrix4cd;

/// Largest register the index arithmetic supports. Dense simulation is only
/// practical far below this.
inline constexpr std::size_t kMaxQubits = 30;

/// Dense amplitude vector of an n-qubit register. Qubit q is bit q of the
/// basis index.
class StateVector {
 public:
    /// |0...0>.
    explicit StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
        if (num_qubits == 0 || num_qubits > kMaxQubits) {
            throw std::invalid_argument("StateVector: qubit count must be in [1, 30]");
        }
        amplitudes_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
        amplitudes_[0] = 1.0;
    }

    StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes)
        : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
        if (num_qubits == 0 || num_qubits > kMaxQubits || amplitudes_.size() != (std::size_t{1} << num_qubits)) {
            throw std::invalid_argument("StateVector: amplitude count must be 2^n");
        }
    }

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    std::size_t size() const noexcept { return amplitudes_.size(); }

    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    std::span<Complex> amplitudes() noexcept { return amplitudes_; }

    const Complex &operator[](std::size_t i) const { return amplitudes_[i]; }
    Complex &operator[](std::size_t i) { return amplitudes_[i]; }

    double norm() const {
        double s = 0.0;
        for (const auto &a : amplitudes_) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }

    /// Per-index probabilities |amp_b|^2.
    std::vector<double> probabilities() const {
        std::vector<double> p(amplitudes_.size());
        for (std::size_t b = 0; b < p.size(); ++b) {
            p[b] = std::norm(amplitudes_[b]);
        }
        return p;
    }

 private:
    std::size_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_char(Pauli p) {
    constexpr std::array<char, 4> chars{'I', 'X', 'Y', 'Z'};
    return chars[static_cast<std::size_t>(p)];
}

/// Tensor product of single-qubit Paulis. Letter q acts on qubit q.
///
/// The action on a basis state is P|b> = i^{#Y} (-1)^{popcount(b & z)} |b ^ x>,
/// where x marks X/Y letters and z marks Y/Z letters (Y = iXZ).
class PauliString {
 public:
    PauliString() = default;

    explicit PauliString(std::vector<Pauli> letters) : letters_(std::move(letters)) {
        if (letters_.empty() || letters_.size() > kMaxQubits) {
            throw std::invalid_argument("PauliString: length must be in [1, 30]");
        }
        for (std::size_t q = 0; q < letters_.size(); ++q) {
            const uint64_t bit = uint64_t{1} << q;
            switch (letters_[q]) {
                case Pauli::I:
                    break;
                case Pauli::X:
                    x_mask_ |= bit;
                    break;
                case Pauli::Y:
                    x_mask_ |= bit;
                    z_mask_ |= bit;
                    ++num_y_;
                    break;
                case Pauli::Z:
                    z_mask_ |= bit;
                    break;
            }
        }
        constexpr std::array<Complex, 4> powers_of_i{Complex{1, 0}, Complex{0, 1}, Complex{-1, 0}, Complex{0, -1}};
        y_phase_ = powers_of_i[num_y_ % 4];
    }

    /// Parses letters such as "XIZY"; character q is qubit q.
    static PauliString parse(std::string_view text) {
        std::vector<Pauli> letters;
        letters.reserve(text.size());
        for (char c : text) {
            switch (c) {
                case 'I': letters.push_back(Pauli::I); break;
                case 'X': letters.push_back(Pauli::X); break;
                case 'Y': letters.push_back(Pauli::Y); break;
                case 'Z': letters.push_back(Pauli::Z); break;
                default:
                    throw std::invalid_argument(std::string("PauliString: bad letter '") + c + "'");
            }
        }
        return PauliString(std::move(letters));
    }

    static PauliString all_z(std::size_t n) { return PauliString(std::vector<Pauli>(n, Pauli::Z)); }
    static PauliString identity(std::size_t n) { return PauliString(std::vector<Pauli>(n, Pauli::I)); }

    std::size_t size() const noexcept { return letters_.size(); }
    std::span<const Pauli> letters() const noexcept { return letters_; }
    Pauli operator[](std::size_t q) const { return letters_[q]; }
    uint64_t x_mask() const noexcept { return x_mask_; }
    uint64_t z_mask() const noexcept { return z_mask_; }
    bool is_identity() const noexcept { return x_mask_ == 0 && z_mask_ == 0; }
    bool is_diagonal() const noexcept { return x_mask_ == 0; }

    /// Phase picked up by |b> under this string; the image is |b ^ x_mask()>.
    Complex phase(uint64_t b) const noexcept {
        return (std::popcount(b & z_mask_) & 1) ? -y_phase_ : y_phase_;
    }

    /// Real sign for diagonal strings.
    double sign(uint64_t b) const noexcept { return (std::popcount(b & z_mask_) & 1) ? -1.0 : 1.0; }

    std::string str() const {
        std::string s;
        s.reserve(letters_.size());
        for (Pauli p : letters_) {
            s.push_back(pauli_char(p));
        }
        return s;
    }

    friend bool operator==(const PauliString &a, const PauliString &b) { return a.letters_ == b.letters_; }

 private:
    std::vector<Pauli> letters_;
    uint64_t x_mask_ = 0;
    uint64_t z_mask_ = 0;
    int num_y_ = 0;
    Complex y_phase_{1.0, 0.0};
};

/// Max absolute entry of M M^dagger - I.
inline double unitarity_defect(const Matrix4 &m) {
    return (m * m.adjoint() - Matrix4::Identity()).cwiseAbs().maxCoeff();
}

/// A 4x4 unitary acting on an ordered qubit pair. The local basis index is
/// 2 * bit(first) + bit(second).
class TwoQubitGate {
 public:
    TwoQubitGate(Matrix4 matrix, std::size_t first, std::size_t second) : matrix_(std::move(matrix)), targets_{first, second} {
        if (first == second) {
            throw std::invalid_argument("TwoQubitGate: targets must be distinct");
        }
        if (unitarity_defect(matrix_) > 1e-12) {
            throw std::invalid_argument("TwoQubitGate: matrix is not unitary within 1e-12");
        }
    }

    const Matrix4 &matrix() const noexcept { return matrix_; }
    std::array<std::size_t, 2> targets() const noexcept { return targets_; }

 private:
    Matrix4 matrix_;
    std::array<std::size_t, 2> targets_;
};

inline void apply_two_qubit_gate(StateVector &state, const Matrix4 &u, std::size_t first, std::size_t second) {
    const std::size_t n = state.num_qubits();
    if (first >= n || second >= n) {
        throw std::out_of_range("apply_two_qubit_gate: target qubit out of range");
    }
    if (first == second) {
        throw std::invalid_argument("apply_two_qubit_gate: targets must be distinct");
    }
    const std::size_t ma = std::size_t{1} << first;
    const std::size_t mb = std::size_t{1} << second;
    auto amps = state.amplitudes();
    for (std::size_t base = 0; base < amps.size(); ++base) {
        if (base & (ma | mb)) {
            continue;
        }
        const std::array<std::size_t, 4> idx{base, base | mb, base | ma, base | ma | mb};
        const std::array<Complex, 4> in{amps[idx[0]], amps[idx[1]], amps[idx[2]], amps[idx[3]]};
        for (int r = 0; r < 4; ++r) {
            amps[idx[r]] = u(r, 0) * in[0] + u(r, 1) * in[1] + u(r, 2) * in[2] + u(r, 3) * in[3];
        }
    }
}

inline void apply_two_qubit_gate(StateVector &state, const TwoQubitGate &gate) {
    apply_two_qubit_gate(state, gate.matrix(), gate.targets()[0], gate.targets()[1]);
}

/// state <- P state.
inline void apply_pauli(StateVector &state, const PauliString &p) {
    if (p.size() != state.num_qubits()) {
        throw std::invalid_argument("apply_pauli: length mismatch");
    }
    auto amps = state.amplitudes();
    const uint64_t x = p.x_mask();
    if (x == 0) {
        for (uint64_t b = 0; b < amps.size(); ++b) {
            amps[b] *= p.sign(b);
        }
        return;
    }
    for (uint64_t b = 0; b < amps.size(); ++b) {
        const uint64_t c = b ^ x;
        if (b < c) {
            const Complex ab = amps[b];
            amps[b] = p.phase(c) * amps[c];
            amps[c] = p.phase(b) * ab;
        }
    }
}

/// state <- exp(-i angle/2 G) state = cos(angle/2) state - i sin(angle/2) G state.
inline void apply_pauli_rotation(StateVector &state, const PauliString &generator, double angle) {
    if (generator.size() != state.num_qubits()) {
        throw std::invalid_argument("apply_pauli_rotation: length mismatch");
    }
    if (generator.is_identity()) {
        throw std::invalid_argument("apply_pauli_rotation: generator must not be the identity");
    }
    const double c = std::cos(0.5 * angle);
    const Complex minus_i_s{0.0, -std::sin(0.5 * angle)};
    auto amps = state.amplitudes();
    const uint64_t x = generator.x_mask();
    if (x == 0) {
        for (uint64_t b = 0; b < amps.size(); ++b) {
            amps[b] *= c + minus_i_s * generator.sign(b);
        }
        return;
    }
    for (uint64_t b = 0; b < amps.size(); ++b) {
        const uint64_t d = b ^ x;
        if (b < d) {
            const Complex ab = amps[b];
            const Complex ad = amps[d];
            amps[b] = c * ab + minus_i_s * generator.phase(d) * ad;
            amps[d] = c * ad + minus_i_s * generator.phase(b) * ab;
        }
    }
}

/// <state| P |state>.
inline double expectation(const StateVector &state, const PauliString &observable) {
    if (observable.size() != state.num_qubits()) {
        throw std::invalid_argument("expectation: length mismatch");
    }
    const auto amps = state.amplitudes();
    const uint64_t x = observable.x_mask();
    double acc = 0.0;
    if (x == 0) {
        for (uint64_t b = 0; b < amps.size(); ++b) {
            acc += observable.sign(b) * std::norm(amps[b]);
        }
        return acc;
    }
    for (uint64_t b = 0; b < amps.size(); ++b) {
        acc += (std::conj(amps[b ^ x]) * observable.phase(b) * amps[b]).real();
    }
    return acc;
}

}  // namespace dgd::sim
