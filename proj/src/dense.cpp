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

#include "hlsim/dense.hpp"

#include <complex>
#include <string>
#include <unsupported/Eigen/KroneckerProduct>

namespace hlsim {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cd = std::complex<double>;

void guard_dim(const ModelSpec& model) {
  model.validate();
  if (model.dim > 32) {
    throw ValidationError("dense oracle is guarded to D <= 32, got " +
                          std::to_string(model.dim));
  }
}

MatrixXd gain_matrix(const LadderAmplitudes& amps) {
  const int dim = amps.dim();
  MatrixXd g = MatrixXd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) g(n, n - 1) = amps.gain[n - 1];
  return g;
}

MatrixXd loss_matrix(const LadderAmplitudes& amps) {
  const int dim = amps.dim();
  MatrixXd l = MatrixXd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) l(n - 1, n) = amps.loss[n - 1];
  return l;
}

// vec(c X c^T) - (1/2) vec(c^T c X + X c^T c) in column-stacking convention:
// vec(A X B) = (B^T kron A) vec(X).
MatrixXd dense_dissipator(const MatrixXd& c) {
  const auto n = c.rows();
  const MatrixXd m = c.transpose() * c;
  const MatrixXd id = MatrixXd::Identity(n, n);
  return Eigen::kroneckerProduct(c, c) -
         0.5 * (Eigen::kroneckerProduct(id, m) + Eigen::kroneckerProduct(m.transpose(), id));
}

VectorXd vec_of(const MatrixXd& x) {
  return Eigen::Map<const VectorXd>(x.data(), x.size());
}

}  // namespace

Eigen::MatrixXd dense_liouvillian(const ModelSpec& model) {
  guard_dim(model);
  const LadderAmplitudes amps = model_amplitudes(model);
  const MatrixXd dg = dense_dissipator(gain_matrix(amps));
  const MatrixXd dl = dense_dissipator(loss_matrix(amps));
  if (model.family == Family::Lambda) return dg + dl;
  return dg + 0.5 * model.param * (dg * dg) + dl;
}

Eigen::MatrixXd dense_jump_superoperator(const ModelSpec& model) {
  guard_dim(model);
  const MatrixXd l = loss_matrix(model_amplitudes(model));
  return Eigen::kroneckerProduct(l, l);
}

Eigen::MatrixXd dense_steady_state(const ModelSpec& model) {
  guard_dim(model);
  const int dim = model.dim;
  const MatrixXd liou = dense_liouvillian(model);
  const Eigen::EigenSolver<MatrixXd> es(liou);
  int best = 0;
  for (int j = 1; j < liou.rows(); ++j) {
    if (es.eigenvalues()[j].real() > es.eigenvalues()[best].real()) best = j;
  }
  VectorXcd v = es.eigenvectors().col(best);
  cd trace = 0.0;
  for (int n = 0; n < dim; ++n) trace += v[n * dim + n];
  v /= trace;
  MatrixXd rho = Eigen::Map<const MatrixXcd>(v.data(), dim, dim).real();
  rho = 0.5 * (rho + rho.transpose()).eval();
  return rho;
}

std::vector<double> dense_steady_populations(const ModelSpec& model) {
  const MatrixXd rho = dense_steady_state(model);
  std::vector<double> probs(model.dim);
  for (int n = 0; n < model.dim; ++n) probs[n] = rho(n, n);
  return probs;
}

double dense_flux(const ModelSpec& model) {
  const MatrixXd rho = dense_steady_state(model);
  const MatrixXd l = loss_matrix(model_amplitudes(model));
  return (l.transpose() * l * rho).trace();
}

double dense_coherence_at(const ModelSpec& model, double omega) {
  guard_dim(model);
  const MatrixXd liou = dense_liouvillian(model);
  const MatrixXd rho = dense_steady_state(model);
  const MatrixXd l = loss_matrix(model_amplitudes(model));
  const VectorXd v = vec_of(l * rho);
  const VectorXd w = vec_of(l);
  MatrixXcd shifted = liou.cast<cd>();
  shifted.diagonal().array() += cd(0.0, omega);
  // Rank-revealing solve: at omega = 0 the full operator is singular along
  // the stationary direction, but v lives in the invertible sector and w is
  // blind to the kernel, so the least-squares solution is exact here.
  const VectorXcd z = shifted.completeOrthogonalDecomposition().solve(VectorXcd(-v.cast<cd>()));
  return 2.0 * (w.cast<cd>().dot(z)).real();
}

double dense_mandel_q(const ModelSpec& model) {
  guard_dim(model);
  const int dim = model.dim;
  const MatrixXd liou = dense_liouvillian(model);
  const MatrixXd rho = dense_steady_state(model);
  const MatrixXd jump = dense_jump_superoperator(model);
  const VectorXd rho_vec = vec_of(rho);
  const VectorXd jump_rho = jump * rho_vec;
  double flux = 0.0;
  for (int n = 0; n < dim; ++n) flux += jump_rho[n * dim + n];
  const VectorXd rhs = -(jump_rho - flux * rho_vec);
  VectorXd z = liou.completeOrthogonalDecomposition().solve(rhs);
  double z_trace = 0.0;
  for (int n = 0; n < dim; ++n) z_trace += z[n * dim + n];
  z -= z_trace * rho_vec;
  const VectorXd jz = jump * z;
  double tr_jz = 0.0;
  for (int n = 0; n < dim; ++n) tr_jz += jz[n * dim + n];
  return 2.0 * tr_jz / flux;
}

namespace {

// Series value(tau) = Re sum_j c_j exp(lambda_j tau) from the full-space
// eigendecomposition, with c_j = (w^T r_j)(V^{-1} b)_j.
std::vector<double> dense_series(const MatrixXd& liou, const VectorXd& w, const VectorXd& b,
                                 std::span<const double> taus) {
  const Eigen::EigenSolver<MatrixXd> es(liou);
  const MatrixXcd vecs = es.eigenvectors();
  const VectorXcd vals = es.eigenvalues();
  const VectorXcd a = vecs.partialPivLu().solve(VectorXcd(b.cast<cd>()));
  const VectorXcd wv = vecs.transpose() * w.cast<cd>();
  std::vector<double> out(taus.size());
  for (size_t i = 0; i < taus.size(); ++i) {
    cd acc = 0.0;
    for (int j = 0; j < vals.size(); ++j) {
      acc += wv[j] * a[j] * std::exp(vals[j] * taus[i]);
    }
    out[i] = acc.real();
  }
  return out;
}

}  // namespace

std::vector<double> dense_g1(const ModelSpec& model, std::span<const double> taus) {
  guard_dim(model);
  const MatrixXd liou = dense_liouvillian(model);
  const MatrixXd rho = dense_steady_state(model);
  const MatrixXd l = loss_matrix(model_amplitudes(model));
  const double flux = (l.transpose() * l * rho).trace();
  std::vector<double> series = dense_series(liou, vec_of(l), vec_of(l * rho), taus);
  for (double& v : series) v /= flux;
  return series;
}

std::vector<double> dense_g2(const ModelSpec& model, std::span<const double> taus) {
  guard_dim(model);
  const MatrixXd liou = dense_liouvillian(model);
  const MatrixXd rho = dense_steady_state(model);
  const MatrixXd l = loss_matrix(model_amplitudes(model));
  const MatrixXd jump = dense_jump_superoperator(model);
  const double flux = (l.transpose() * l * rho).trace();
  const VectorXd u = vec_of(MatrixXd(l.transpose() * l));
  const VectorXd p = jump * vec_of(rho);
  std::vector<double> series = dense_series(liou, u, p, taus);
  for (double& v : series) v /= flux * flux;
  return series;
}

Eigen::MatrixXd dense_sector_block(const Eigen::MatrixXd& liou, int dim, int k, bool upper) {
  if (k < 0 || k > dim - 1 || liou.rows() != dim * dim) {
    throw ValidationError("bad sector extraction request");
  }
  const int m = dim - k;
  MatrixXd block(m, m);
  for (int col = 0; col < m; ++col) {
    for (int row = 0; row < m; ++row) {
      const int to = upper ? (row + k) * dim + row : row * dim + row + k;
      const int from = upper ? (col + k) * dim + col : col * dim + col + k;
      block(row, col) = liou(to, from);
    }
  }
  return block;
}

}  // namespace hlsim
