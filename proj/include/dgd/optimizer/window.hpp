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
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "dgd/circuits/random_circuit.hpp"

namespace dgd::optimizer {

using circuits::ParameterVector;

/// Maps each coordinate into [0, 2 pi). Kernel values are unchanged.
inline ParameterVector canonicalize_angles(std::span<const double> theta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    ParameterVector out(theta.begin(), theta.end());
    for (double &x : out) {
        double r = std::fmod(x, two_pi);
        if (r < 0.0) {
            r += two_pi;
        }
        if (r >= two_pi) {
            r = 0.0;
        }
        x = r;
    }
    return out;
}

/// Shift points and their noisy values from the most recent iterations.
/// Rows keep insertion order; each row is tagged with the iteration index s
/// of the point theta_s it was sampled around.
class SampleWindow {
 public:
    /// `bound` is the number of iterations retained; empty keeps everything.
    explicit SampleWindow(std::optional<std::size_t> bound = std::nullopt) : bound_(bound) {
        if (bound_ && *bound_ == 0) {
            throw std::invalid_argument("SampleWindow: bound must be >= 1");
        }
    }

    void append(std::size_t tag, std::span<const ParameterVector> points, std::span<const double> values) {
        if (points.size() != values.size()) {
            throw std::invalid_argument("SampleWindow::append: one value per point");
        }
        for (std::size_t k = 0; k < points.size(); ++k) {
            points_.push_back(canonicalize_angles(points[k]));
            values_.push_back(values[k]);
            tags_.push_back(tag);
        }
    }

    /// Keeps rows with tag >= max(0, t - bound) for step t.
    void evict_for_step(std::size_t t) {
        if (!bound_ || t <= *bound_) {
            return;
        }
        const std::size_t oldest = t - *bound_;
        std::size_t keep = 0;
        for (std::size_t k = 0; k < tags_.size(); ++k) {
            if (tags_[k] >= oldest) {
                if (keep != k) {
                    points_[keep] = std::move(points_[k]);
                    values_[keep] = values_[k];
                    tags_[keep] = tags_[k];
                }
                ++keep;
            }
        }
        points_.resize(keep);
        values_.resize(keep);
        tags_.resize(keep);
    }

    std::size_t size() const noexcept { return points_.size(); }
    std::optional<std::size_t> bound() const noexcept { return bound_; }
    std::span<const ParameterVector> points() const noexcept { return points_; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<const std::size_t> tags() const noexcept { return tags_; }

 private:
    std::optional<std::size_t> bound_;
    std::vector<ParameterVector> points_;
    std::vector<double> values_;
    std::vector<std::size_t> tags_;
};

}  // namespace dgd::optimizer
