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
#include <memory>
#include <span>
#include <vector>

#include "hlsim/common.hpp"

namespace hlsim {

/// Real banded matrix in LAPACK band storage: entry (i, j) lives at
/// data[(ku + i - j) + j * (kl + ku + 1)] for j - ku <= i <= j + kl,
/// column-major. Everything outside the band is identically zero.
class BandedMatrix {
 public:
  BandedMatrix() = default;
  BandedMatrix(int n, int kl, int ku);

  int size() const { return n_; }
  int lower() const { return kl_; }
  int upper() const { return ku_; }

  bool in_band(int i, int j) const {
    return i >= 0 && i < n_ && j >= 0 && j < n_ && i - j <= kl_ && j - i <= ku_;
  }

  double at(int i, int j) const {
    return in_band(i, j) ? data_[index(i, j)] : 0.0;
  }

  /// In-band write access. Throws ContractViolationError outside the band.
  double& ref(int i, int j);

  void add_at(int i, int j, double v) { ref(i, j) += v; }

  std::vector<double> apply(std::span<const double> x) const;
  std::vector<std::complex<double>> apply(std::span<const std::complex<double>> x) const;

  /// y = alpha * A x + beta * y, the building block of the power iterations.
  void apply_to(std::span<const double> x, std::span<double> y, double alpha = 1.0,
                double beta = 0.0) const;

  std::vector<double> column_sums() const;
  double one_norm() const;
  double inf_norm() const;
  double max_abs_diagonal() const;

  std::span<const double> storage() const { return data_; }

 private:
  int index(int i, int j) const { return (ku_ + i - j) + j * (kl_ + ku_ + 1); }

  int n_ = 0;
  int kl_ = 0;
  int ku_ = 0;
  std::vector<double> data_;
};

/// C = A * B with bands kl_A + kl_B, ku_A + ku_B.
BandedMatrix banded_multiply(const BandedMatrix& a, const BandedMatrix& b);

/// C = A + alpha * B with the union of the two bands.
BandedMatrix banded_add(const BandedMatrix& a, double alpha, const BandedMatrix& b);

/// C = alpha * I + beta * A, used to assemble implicit time-step matrices.
BandedMatrix banded_affine(double alpha, double beta, const BandedMatrix& a);

/// Pivoted LU of (A + diag_shift * I). The shift is how the near-singular
/// sector generators are regularized before factoring; pass 0 for a plain
/// factorization. Throws SingularMatrixError on an exactly zero pivot.
class BandedLU {
 public:
  BandedLU(const BandedMatrix& a, double diag_shift = 0.0);
  ~BandedLU();
  BandedLU(BandedLU&&) noexcept;
  BandedLU& operator=(BandedLU&&) noexcept;

  std::vector<double> solve(std::span<const double> b) const;
  void solve_in_place(std::span<double> x) const;

  /// Solve (A + shift I) x = b, then polish x with `rounds` residual
  /// corrections computed against the unshifted matrix `a_true`. This is what
  /// keeps the tiny regularizing shifts from contaminating the solution.
  std::vector<double> solve_refined(const BandedMatrix& a_true, std::span<const double> b,
                                    int rounds) const;

  double min_pivot() const;

  /// Reciprocal condition estimate in the 1-norm; `one_norm` must be the
  /// 1-norm of the matrix that was factored.
  double rcond(double one_norm) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Pivoted LU of (A + shift * I) for complex shifts, used by the resolvent
/// solves (L_1 + i omega I) z = -v.
class ComplexBandedLU {
 public:
  ComplexBandedLU(const BandedMatrix& a, std::complex<double> shift);
  ~ComplexBandedLU();
  ComplexBandedLU(ComplexBandedLU&&) noexcept;
  ComplexBandedLU& operator=(ComplexBandedLU&&) noexcept;

  std::vector<std::complex<double>> solve(std::span<const std::complex<double>> b) const;

  /// Refined against (A + shift I) applied exactly in complex arithmetic.
  std::vector<std::complex<double>> solve_refined(const BandedMatrix& a_true,
                                                  std::complex<double> shift,
                                                  std::span<const std::complex<double>> b,
                                                  int rounds) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace hlsim
