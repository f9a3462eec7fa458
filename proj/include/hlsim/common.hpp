// Copyright 2026 The hlsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace hlsim {

inline constexpr const char* kVersion = "0.1.0";

/// Execution policy for the data-parallel kernels (sweeps, spectrum grids,
/// series sampling). Serial is the reference path; Parallel distributes
/// independent points over OpenMP threads. Both produce bitwise-identical
/// results because every point is computed in isolation.
enum class Exec { Serial, Parallel };

/// Worker count used by Exec::Parallel. `requested` <= 0 means "use the
/// hardware default". The HLSIM_WORKERS environment variable overrides both.
int resolve_workers(int requested);

/// Invalid user input (bad dimension, parameter out of range, malformed grid).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A factorization hit a pivot that is zero to working precision.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, double pivot, int index)
      : std::runtime_error(what), pivot_magnitude(pivot), pivot_index(index) {}
  double pivot_magnitude;
  int pivot_index;
};

/// An iteration failed to reach its residual target within the cap.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), last_residual(residual), iterations(iterations) {}
  double last_residual;
  int iterations;
};

/// A caller violated an operation precondition (e.g. non-traceless RHS).
class ContractViolationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hlsim
