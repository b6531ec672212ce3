// Copyright 2026 The robust-pulse Authors
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

#ifndef RPULSE_ERRORS_HPP
#define RPULSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rpulse {

/// Bad argument to a library call (out-of-range index, wrong pulse count, ...).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Input that fails a structural check, e.g. a matrix that is not unitary.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A CORPSE segment angle came out negative for the requested winding numbers.
struct WindingError : ArgumentError {
    WindingError(int index, double angle)
        : ArgumentError("winding numbers give negative angle theta_" + std::to_string(index) + " = " +
                        std::to_string(angle)),
          segment(index) {}
    int segment;  // 1-based
};

/// Numerical synthesis (root solve) did not converge.
struct SynthesisError : std::runtime_error {
    SynthesisError(const std::string &msg, double residual_norm, int attempts)
        : std::runtime_error(msg), residual(residual_norm), starts(attempts) {}
    double residual;
    int starts;
};

}  // namespace rpulse

#endif
