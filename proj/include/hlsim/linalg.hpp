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

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "hlsim/sector.hpp"

namespace hlsim {

/// Regularizing diagonal shift for the singular sector-0 solves, as a
/// fraction of the generator's diagonal scale. Must sit far below the
/// sector-0 spectral gap (~1e-5 of the rate scale at D = 1000) or inverse
/// iteration locks onto a bulk mode instead of the kernel.
inline constexpr double kNullShiftFactor = 1e-11;

inline constexpr int kIterationCap = 200;

/// Solve A x = b for a nonsingular sector with `refine` rounds of residual
/// polishing. Writes the final relative residual through `residual` if given.
std::vector<double> banded_solve(const SectorOperator& a, std::span<const double> b,
                                 int refine = 2, double* residual = nullptr);

/// Stationary vector of a sector-0 generator by inverse iteration with a tiny
/// diagonal shift, seeded with the sin^4 ansatz. Normalized to sum 1;
/// satisfies ||A v||_inf <= 1e-10 ||A||_inf ||v||_inf.
std::vector<double> null_vector(const SectorOperator& a,
                                double shift_factor = kNullShiftFactor,
                                int max_iter = kIterationCap, double* residual = nullptr);

/// Solve A z = b on the traceless subspace of a singular sector-0 generator:
/// b must sum to 0, `kernel` is the stationary vector, and the returned z has
/// sum 0 (the gauge that makes counting-statistics functionals well defined).
std::vector<double> deflated_solve(const SectorOperator& a, std::span<const double> b,
                                   std::span<const double> kernel, int refine = 2,
                                   double* residual = nullptr);

/// Eigenvalue of a stable sector (k >= 1) with the largest real part, by
/// shift-inverted Arnoldi iteration around 0.
std::complex<double> slowest_eigenvalue(const SectorOperator& a, int max_iter = kIterationCap);

/// 1-norm condition estimate of the sector matrix.
double condition_estimate(const SectorOperator& a);

/// Solve (A + i omega I) z = rhs with a complex banded factorization plus
/// refinement. rhs is real (the sector seed vectors always are).
std::vector<std::complex<double>> resolvent_solve(const SectorOperator& a, double omega,
                                                  std::span<const double> rhs, int refine = 2);

/// Correlation series w^T exp(A tau) b expressed over the eigenmodes of the
/// sector matrix: value(tau) = Re sum_j c_j exp(lambda_j tau).
struct ModeSeries {
  std::vector<std::complex<double>> rates;
  std::vector<std::complex<double>> weights;

  static ModeSeries from_sector(const SectorOperator& a, std::span<const double> w,
                                std::span<const double> b);

  double value(double tau) const;
  std::vector<double> sample(std::span<const double> taus, Exec exec = Exec::Serial,
                             int workers = 0) const;

  /// Smallest nonzero decay rate -Re(lambda) present in the series; the zero
  /// mode of a sector-0 generator is skipped. Used to pick horizons.
  double slowest_decay_rate() const;
};

/// 2 dt (sum_i v_i cos(omega tau_i) - v_0 / 2): the trapezoid estimate of
/// 2 Re integral_0^T C(tau) e^{-i omega tau} dtau for an even correlation
/// sampled at tau_i = i dt. Equals the coherence at omega up to truncation.
double dft_coherence(std::span<const double> values, double dt, double omega);

/// Recursive adaptive Simpson quadrature with an absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol_abs, int max_depth = 30);

}  // namespace hlsim
