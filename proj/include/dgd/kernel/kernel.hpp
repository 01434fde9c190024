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
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "dgd/errors.hpp"

namespace dgd::kernel {

using Point = std::vector<double>;

namespace detail {

inline void check_lengths(std::span<const double> x, std::span<const double> z, const char *who) {
    if (x.size() != z.size()) {
        throw std::invalid_argument(std::string(who) + ": length mismatch");
    }
}

/// (1 + 2 cos d) / 3, the one-dimensional factor of the normalized kernel.
inline double factor(double d) { return (1.0 + 2.0 * std::cos(d)) / 3.0; }

}  // namespace detail

/// Normalized trigonometric product kernel
///   K~(x, z) = prod_j (1 + 2 cos(x_j - z_j)) / 3,
/// spanning the frequencies {-1, 0, 1} per coordinate. K~(x, x) = 1.
inline double ktilde(std::span<const double> x, std::span<const double> z) {
    detail::check_lengths(x, z, "ktilde");
    double k = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        k *= detail::factor(x[j] - z[j]);
    }
    return k;
}

/// Reproducing kernel with respect to the L2 inner product on [-pi, pi]^m:
/// K = (3 / (2 pi))^m K~.
inline double kernel_full(std::span<const double> x, std::span<const double> z) {
    detail::check_lengths(x, z, "kernel_full");
    double k = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        k *= (1.0 + 2.0 * std::cos(x[j] - z[j])) / (2.0 * std::numbers::pi);
    }
    return k;
}

/// Gradient of K~(x, z) with respect to its second argument:
///   (2/3) sin(x_j - z_j) prod_{i != j} (1 + 2 cos(x_i - z_i)) / 3.
/// Uses prefix/suffix products so vanishing factors need no division.
inline std::vector<double> ktilde_grad_second(std::span<const double> x, std::span<const double> z) {
    detail::check_lengths(x, z, "ktilde_grad_second");
    const std::size_t m = x.size();
    std::vector<double> factors(m);
    for (std::size_t j = 0; j < m; ++j) {
        factors[j] = detail::factor(x[j] - z[j]);
    }
    std::vector<double> grad(m);
    double prefix = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
        grad[j] = prefix;
        prefix *= factors[j];
    }
    double suffix = 1.0;
    for (std::size_t j = m; j-- > 0;) {
        grad[j] *= suffix * (2.0 / 3.0) * std::sin(x[j] - z[j]);
        suffix *= factors[j];
    }
    return grad;
}

/// Gram matrix (K~(p_k, p_l))_{k,l}.
inline Eigen::MatrixXd build_gram(std::span<const Point> points) {
    const auto d = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd gram(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        gram(k, k) = 1.0;
        for (Eigen::Index l = 0; l < k; ++l) {
            const double v = ktilde(points[k], points[l]);
            gram(k, l) = v;
            gram(l, k) = v;
        }
    }
    return gram;
}

struct RidgeSolution {
    Eigen::VectorXd coefficients;
    /// Ridge actually applied; 10x the request when the first factorization failed.
    double regularization = 0.0;
    /// ||(G + lambda I) eta - v|| / ||v|| for the applied ridge.
    double relative_residual = 0.0;
};

/// Solves (G + lambda I) eta = v by Cholesky with iterative refinement.
/// Retries once with 10 lambda when the factorization breaks down.
inline RidgeSolution solve_regularized(const Eigen::MatrixXd &gram, double lambda, const Eigen::VectorXd &values) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("solve_regularized: lambda must be positive and finite");
    }
    if (gram.rows() != gram.cols() || gram.rows() != values.size()) {
        throw std::invalid_argument("solve_regularized: dimension mismatch");
    }
    if (gram.rows() == 0) {
        throw std::invalid_argument("solve_regularized: empty system");
    }

    const Eigen::Index d = gram.rows();
    for (double ridge : {lambda, 10.0 * lambda}) {
        Eigen::MatrixXd a = gram;
        a.diagonal().array() += ridge;
        Eigen::LLT<Eigen::MatrixXd> llt(a);
        if (llt.info() != Eigen::Success) {
            continue;
        }
        Eigen::VectorXd eta = llt.solve(values);
        const double vnorm = values.norm();
        const double scale = vnorm > 0.0 ? vnorm : 1.0;
        double residual = (values - a * eta).norm() / scale;
        for (int refine = 0; refine < 3 && residual > 1e-14; ++refine) {
            const Eigen::VectorXd correction = llt.solve(values - a * eta);
            const Eigen::VectorXd candidate = eta + correction;
            const double next = (values - a * candidate).norm() / scale;
            if (!(next < residual)) {
                break;
            }
            eta = candidate;
            residual = next;
        }
        if (!eta.allFinite()) {
            continue;
        }
        return RidgeSolution{std::move(eta), ridge, residual};
    }
    throw NumericalError("solve_regularized: Cholesky factorization failed for D=" + std::to_string(d) +
                         " at lambda=" + std::to_string(lambda) + " and 10*lambda");
}

/// Kernel expansion f~(theta) = sum_k eta_k K~(p_k, theta).
class Surrogate {
 public:
    Surrogate() = default;

    Surrogate(std::vector<Point> centers, std::vector<double> coefficients, double regularization = 0.0)
        : centers_(std::move(centers)), coefficients_(std::move(coefficients)), regularization_(regularization) {
        if (centers_.size() != coefficients_.size()) {
            throw std::invalid_argument("Surrogate: one coefficient per center");
        }
        for (const auto &c : centers_) {
            if (c.size() != centers_.front().size()) {
                throw std::invalid_argument("Surrogate: centers must share a dimension");
            }
        }
    }

    /// Kernel ridge regression of `values` at `centers`.
    static Surrogate fit(std::vector<Point> centers, std::span<const double> values, double lambda) {
        if (centers.size() != values.size()) {
            throw std::invalid_argument("Surrogate::fit: one value per center");
        }
        const Eigen::MatrixXd gram = build_gram(centers);
        const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
        RidgeSolution sol = solve_regularized(gram, lambda, v);
        std::vector<double> eta(sol.coefficients.data(), sol.coefficients.data() + sol.coefficients.size());
        Surrogate s(std::move(centers), std::move(eta), sol.regularization);
        s.residual_ = sol.relative_residual;
        return s;
    }

    std::span<const Point> centers() const noexcept { return centers_; }
    std::span<const double> coefficients() const noexcept { return coefficients_; }
    double regularization() const noexcept { return regularization_; }
    double relative_residual() const noexcept { return residual_; }
    std::size_t size() const noexcept { return centers_.size(); }

    double value(std::span<const double> theta) const {
        double f = 0.0;
        for (std::size_t k = 0; k < centers_.size(); ++k) {
            f += coefficients_[k] * ktilde(centers_[k], theta);
        }
        return f;
    }

    /// Analytic gradient sum_k eta_k grad_z K~(p_k, theta).
    std::vector<double> gradient(std::span<const double> theta) const {
        std::vector<double> g(theta.size(), 0.0);
        for (std::size_t k = 0; k < centers_.size(); ++k) {
            const auto gk = ktilde_grad_second(centers_[k], theta);
            for (std::size_t j = 0; j < g.size(); ++j) {
                g[j] += coefficients_[k] * gk[j];
            }
        }
        return g;
    }

    /// Parameter-shift gradient of value(); equals gradient() exactly in
    /// exact arithmetic since every K~(p, .) is a degree-1 trigonometric
    /// polynomial per coordinate.
    std::vector<double> shift_gradient(std::span<const double> theta) const {
        std::vector<double> g(theta.size());
        std::vector<double> shifted(theta.begin(), theta.end());
        for (std::size_t j = 0; j < theta.size(); ++j) {
            shifted[j] = theta[j] + 0.5 * std::numbers::pi;
            const double plus = value(shifted);
            shifted[j] = theta[j] - 0.5 * std::numbers::pi;
            const double minus = value(shifted);
            shifted[j] = theta[j];
            g[j] = 0.5 * (plus - minus);
        }
        return g;
    }

 private:
    std::vector<Point> centers_;
    std::vector<double> coefficients_;
    double regularization_ = 0.0;
    double residual_ = 0.0;
};

}  // namespace dgd::kernel
