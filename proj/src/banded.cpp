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

#include "hlsim/banded.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

// The system lapack.h ignores LAPACK_COMPLEX_CPP, so spell the custom
// complex typedefs out before pulling in LAPACKE.
#include <complex>
#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace hlsim {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), data_(static_cast<size_t>(n) * (kl + ku + 1), 0.0) {
  if (n < 1 || kl < 0 || ku < 0) {
    throw ValidationError("banded matrix needs n >= 1 and nonnegative bandwidths");
  }
}

double& BandedMatrix::ref(int i, int j) {
  if (!in_band(i, j)) {
    throw ContractViolationError("write outside the band at (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")");
  }
  return data_[index(i, j)];
}

std::vector<double> BandedMatrix::apply(std::span<const double> x) const {
  std::vector<double> y(n_, 0.0);
  apply_to(x, y);
  return y;
}

void BandedMatrix::apply_to(std::span<const double> x, std::span<double> y, double alpha,
                            double beta) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_) {
    throw ContractViolationError("apply size mismatch");
  }
  for (int i = 0; i < n_; ++i) {
    double acc = 0.0;
    const int jlo = std::max(0, i - kl_);
    const int jhi = std::min(n_ - 1, i + ku_);
    for (int j = jlo; j <= jhi; ++j) acc += data_[index(i, j)] * x[j];
    y[i] = alpha * acc + beta * y[i];
  }
}

std::vector<std::complex<double>> BandedMatrix::apply(
    std::span<const std::complex<double>> x) const {
  if (static_cast<int>(x.size()) != n_) {
    throw ContractViolationError("apply size mismatch");
  }
  std::vector<std::complex<double>> y(n_);
  for (int i = 0; i < n_; ++i) {
    std::complex<double> acc = 0.0;
    const int jlo = std::max(0, i - kl_);
    const int jhi = std::min(n_ - 1, i + ku_);
    for (int j = jlo; j <= jhi; ++j) acc += data_[index(i, j)] * x[j];
    y[i] = acc;
  }
  return y;
}

std::vector<double> BandedMatrix::column_sums() const {
  std::vector<double> sums(n_, 0.0);
  for (int j = 0; j < n_; ++j) {
    const int ilo = std::max(0, j - ku_);
    const int ihi = std::min(n_ - 1, j + kl_);
    double acc = 0.0;
    for (int i = ilo; i <= ihi; ++i) acc += data_[index(i, j)];
    sums[j] = acc;
  }
  return sums;
}

double BandedMatrix::one_norm() const {
  double best = 0.0;
  for (int j = 0; j < n_; ++j) {
    const int ilo = std::max(0, j - ku_);
    const int ihi = std::min(n_ - 1, j + kl_);
    double acc = 0.0;
    for (int i = ilo; i <= ihi; ++i) acc += std::abs(data_[index(i, j)]);
    best = std::max(best, acc);
  }
  return best;
}

double BandedMatrix::inf_norm() const {
  double best = 0.0;
  for (int i = 0; i < n_; ++i) {
    const int jlo = std::max(0, i - kl_);
    const int jhi = std::min(n_ - 1, i + ku_);
    double acc = 0.0;
    for (int j = jlo; j <= jhi; ++j) acc += std::abs(data_[index(i, j)]);
    best = std::max(best, acc);
  }
  return best;
}

double BandedMatrix::max_abs_diagonal() const {
  double best = 0.0;
  for (int i = 0; i < n_; ++i) best = std::max(best, std::abs(data_[index(i, i)]));
  return best;
}

BandedMatrix banded_multiply(const BandedMatrix& a, const BandedMatrix& b) {
  if (a.size() != b.size()) {
    throw ContractViolationError("banded multiply size mismatch");
  }
  const int n = a.size();
  BandedMatrix c(n, a.lower() + b.lower(), a.upper() + b.upper());
  for (int i = 0; i < n; ++i) {
    const int jlo = std::max(0, i - c.lower());
    const int jhi = std::min(n - 1, i + c.upper());
    for (int j = jlo; j <= jhi; ++j) {
      const int mlo = std::max({0, i - a.lower(), j - b.upper()});
      const int mhi = std::min({n - 1, i + a.upper(), j + b.lower()});
      double acc = 0.0;
      for (int m = mlo; m <= mhi; ++m) acc += a.at(i, m) * b.at(m, j);
      if (mlo <= mhi) c.ref(i, j) = acc;
    }
  }
  return c;
}

BandedMatrix banded_add(const BandedMatrix& a, double alpha, const BandedMatrix& b) {
  if (a.size() != b.size()) {
    throw ContractViolationError("banded add size mismatch");
  }
  const int n = a.size();
  BandedMatrix c(n, std::max(a.lower(), b.lower()), std::max(a.upper(), b.upper()));
  for (int i = 0; i < n; ++i) {
    const int jlo = std::max(0, i - c.lower());
    const int jhi = std::min(n - 1, i + c.upper());
    for (int j = jlo; j <= jhi; ++j) c.ref(i, j) = a.at(i, j) + alpha * b.at(i, j);
  }
  return c;
}

BandedMatrix banded_affine(double alpha, double beta, const BandedMatrix& a) {
  const int n = a.size();
  BandedMatrix c(n, a.lower(), a.upper());
  for (int i = 0; i < n; ++i) {
    const int jlo = std::max(0, i - c.lower());
    const int jhi = std::min(n - 1, i + c.upper());
    for (int j = jlo; j <= jhi; ++j) {
      c.ref(i, j) = beta * a.at(i, j) + (i == j ? alpha : 0.0);
    }
  }
  return c;
}

namespace {

// dgbtrf wants the band parked below kl rows of fill-in headroom:
// AB[kl + ku + i - j + j * ldab] = A(i, j), ldab = 2 kl + ku + 1.
std::vector<double> lu_workspace(const BandedMatrix& a, double diag_shift) {
  const int n = a.size();
  const int kl = a.lower();
  const int ku = a.upper();
  const int ldab = 2 * kl + ku + 1;
  std::vector<double> ab(static_cast<size_t>(ldab) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    const int ilo = std::max(0, j - ku);
    const int ihi = std::min(n - 1, j + kl);
    for (int i = ilo; i <= ihi; ++i) {
      ab[kl + ku + i - j + static_cast<size_t>(j) * ldab] = a.at(i, j);
    }
    ab[kl + ku + static_cast<size_t>(j) * ldab] += diag_shift;
  }
  return ab;
}

}  // namespace

struct BandedLU::Impl {
  int n = 0;
  int kl = 0;
  int ku = 0;
  int ldab = 0;
  std::vector<double> ab;
  std::vector<lapack_int> ipiv;
};

BandedLU::BandedLU(const BandedMatrix& a, double diag_shift) : impl_(std::make_unique<Impl>()) {
  impl_->n = a.size();
  impl_->kl = a.lower();
  impl_->ku = a.upper();
  impl_->ldab = 2 * a.lower() + a.upper() + 1;
  impl_->ab = lu_workspace(a, diag_shift);
  impl_->ipiv.resize(impl_->n);
  const lapack_int info =
      LAPACKE_dgbtrf(LAPACK_COL_MAJOR, impl_->n, impl_->n, impl_->kl, impl_->ku,
                     impl_->ab.data(), impl_->ldab, impl_->ipiv.data());
  if (info > 0) {
    throw SingularMatrixError("banded LU hit an exactly zero pivot", 0.0,
                              static_cast<int>(info) - 1);
  }
  if (info < 0) {
    throw ContractViolationError("dgbtrf rejected argument " + std::to_string(-info));
  }
}

BandedLU::~BandedLU() = default;
BandedLU::BandedLU(BandedLU&&) noexcept = default;
BandedLU& BandedLU::operator=(BandedLU&&) noexcept = default;

void BandedLU::solve_in_place(std::span<double> x) const {
  if (static_cast<int>(x.size()) != impl_->n) {
    throw ContractViolationError("solve size mismatch");
  }
  const lapack_int info =
      LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', impl_->n, impl_->kl, impl_->ku, 1, impl_->ab.data(),
                     impl_->ldab, impl_->ipiv.data(), x.data(), impl_->n);
  if (info != 0) {
    throw ContractViolationError("dgbtrs failed with info " + std::to_string(info));
  }
}

std::vector<double> BandedLU::solve(std::span<const double> b) const {
  std::vector<double> x(b.begin(), b.end());
  solve_in_place(x);
  return x;
}

std::vector<double> BandedLU::solve_refined(const BandedMatrix& a_true, std::span<const double> b,
                                            int rounds) const {
  std::vector<double> x = solve(b);
  std::vector<double> r(b.size());
  for (int round = 0; round < rounds; ++round) {
    std::copy(b.begin(), b.end(), r.begin());
    a_true.apply_to(x, r, -1.0, 1.0);
    solve_in_place(r);
    for (size_t i = 0; i < x.size(); ++i) x[i] += r[i];
  }
  return x;
}

double BandedLU::min_pivot() const {
  double best = std::abs(impl_->ab[impl_->kl + impl_->ku]);
  for (int j = 1; j < impl_->n; ++j) {
    best = std::min(best,
                    std::abs(impl_->ab[impl_->kl + impl_->ku + static_cast<size_t>(j) * impl_->ldab]));
  }
  return best;
}

double BandedLU::rcond(double one_norm) const {
  double rc = 0.0;
  const lapack_int info =
      LAPACKE_dgbcon(LAPACK_COL_MAJOR, '1', impl_->n, impl_->kl, impl_->ku, impl_->ab.data(),
                     impl_->ldab, impl_->ipiv.data(), one_norm, &rc);
  if (info != 0) {
    throw ContractViolationError("dgbcon failed with info " + std::to_string(info));
  }
  return rc;
}

struct ComplexBandedLU::Impl {
  int n = 0;
  int kl = 0;
  int ku = 0;
  int ldab = 0;
  std::vector<std::complex<double>> ab;
  std::vector<lapack_int> ipiv;
};

ComplexBandedLU::ComplexBandedLU(const BandedMatrix& a, std::complex<double> shift)
    : impl_(std::make_unique<Impl>()) {
  const int n = a.size();
  const int kl = a.lower();
  const int ku = a.upper();
  impl_->n = n;
  impl_->kl = kl;
  impl_->ku = ku;
  impl_->ldab = 2 * kl + ku + 1;
  impl_->ab.assign(static_cast<size_t>(impl_->ldab) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    const int ilo = std::max(0, j - ku);
    const int ihi = std::min(n - 1, j + kl);
    for (int i = ilo; i <= ihi; ++i) {
      impl_->ab[kl + ku + i - j + static_cast<size_t>(j) * impl_->ldab] = a.at(i, j);
    }
    impl_->ab[kl + ku + static_cast<size_t>(j) * impl_->ldab] += shift;
  }
  impl_->ipiv.resize(n);
  const lapack_int info = LAPACKE_zgbtrf(LAPACK_COL_MAJOR, n, n, kl, ku, impl_->ab.data(),
                                         impl_->ldab, impl_->ipiv.data());
  if (info > 0) {
    throw SingularMatrixError("complex banded LU hit an exactly zero pivot", 0.0,
                              static_cast<int>(info) - 1);
  }
  if (info < 0) {
    throw ContractViolationError("zgbtrf rejected argument " + std::to_string(-info));
  }
}

ComplexBandedLU::~ComplexBandedLU() = default;
ComplexBandedLU::ComplexBandedLU(ComplexBandedLU&&) noexcept = default;
ComplexBandedLU& ComplexBandedLU::operator=(ComplexBandedLU&&) noexcept = default;

std::vector<std::complex<double>> ComplexBandedLU::solve(
    std::span<const std::complex<double>> b) const {
  if (static_cast<int>(b.size()) != impl_->n) {
    throw ContractViolationError("solve size mismatch");
  }
  std::vector<std::complex<double>> x(b.begin(), b.end());
  const lapack_int info =
      LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', impl_->n, impl_->kl, impl_->ku, 1, impl_->ab.data(),
                     impl_->ldab, impl_->ipiv.data(), x.data(), impl_->n);
  if (info != 0) {
    throw ContractViolationError("zgbtrs failed with info " + std::to_string(info));
  }
  return x;
}

std::vector<std::complex<double>> ComplexBandedLU::solve_refined(
    const BandedMatrix& a_true, std::complex<double> shift,
    std::span<const std::complex<double>> b, int rounds) const {
  std::vector<std::complex<double>> x = solve(b);
  for (int round = 0; round < rounds; ++round) {
    std::vector<std::complex<double>> ax = a_true.apply(std::span<const std::complex<double>>(x));
    std::vector<std::complex<double>> r(b.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = b[i] - (ax[i] + shift * x[i]);
    std::vector<std::complex<double>> dx = solve(r);
    for (size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
  }
  return x;
}

}  // namespace hlsim
