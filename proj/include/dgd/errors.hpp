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
#include <stdexcept>
#include <string>

namespace dgd {

/// Raised when a linear solve cannot be completed at the requested accuracy.
class NumericalError : public std::runtime_error {
 public:
    explicit NumericalError(const std::string &what) : std::runtime_error(what) {}
};

/// A NumericalError that happened inside an optimizer iteration.
class IterationError : public NumericalError {
 public:
    IterationError(std::size_t iteration, const std::string &what)
        : NumericalError("iteration " + std::to_string(iteration) + ": " + what), iteration_(iteration) {}

    std::size_t iteration() const noexcept { return iteration_; }

 private:
    std::size_t iteration_;
};

/// Invalid experiment or optimizer configuration.
class ConfigError : public std::invalid_argument {
 public:
    explicit ConfigError(const std::string &what) : std::invalid_argument(what) {}
};

}  // namespace dgd
