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

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "hlsim/model.hpp"

namespace hlsim {

// Brute-force reference computations on the full D^2-dimensional
// density-matrix space, with no sector decomposition anywhere. Slow on
// purpose; guarded to D <= 32 and used to validate the banded machinery.

/// Full superoperator acting on column-stacked density matrices.
Eigen::MatrixXd dense_liouvillian(const ModelSpec& model);

/// Beam jump superoperator J(X) = L X L^T as a matrix on vec(X).
Eigen::MatrixXd dense_jump_superoperator(const ModelSpec& model);

/// Stationary density matrix from the full-space eigenvector at the largest
/// real eigenvalue, trace-normalized.
Eigen::MatrixXd dense_steady_state(const ModelSpec& model);

std::vector<double> dense_steady_populations(const ModelSpec& model);

double dense_flux(const ModelSpec& model);

/// 2 Re[w^T z] with (L_full + i omega) z = -v over the full space, solved by
/// a rank-revealing decomposition so the stationary kernel cannot pollute it.
double dense_coherence_at(const ModelSpec& model, double omega);

/// Mandel-Q by counting statistics on the full space, with the same
/// trace-zero gauge as the sector route.
double dense_mandel_q(const ModelSpec& model);

/// Normalized first- and second-order correlation series from the full-space
/// eigendecomposition.
std::vector<double> dense_g1(const ModelSpec& model, std::span<const double> taus);
std::vector<double> dense_g2(const ModelSpec& model, std::span<const double> taus);

/// Restriction of the full superoperator to one off-diagonal: rows/columns at
/// vec positions (n+k, n), or (n, n+k) when `upper` is set. Used to check the
/// sector decomposition against the raw matrix.
Eigen::MatrixXd dense_sector_block(const Eigen::MatrixXd& liou, int dim, int k,
                                   bool upper = false);

}  // namespace hlsim
