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

#include "hlsim/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hlsim {

namespace {

using cd = std::complex<double>;

double vec_inf_norm(std::span<const double> v) {
  double best = 0.0;
  for (double x : v) best = std::max(best, std::abs(x));
  return best;
}

double vec_one_norm(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += std::abs(x);
  return acc;
}

double diag_scale(const BandedMatrix& m) {
  const double d = m.max_abs_diagonal();
  if (d > 0.0) return d;
  const double n1 = m.one_norm();
  if (n1 > 0.0) return n1;
  throw ValidationError("sector matrix is identically zero");
}

}  // namespace

std::vector<double> banded_solve(const SectorOperator& a, std::span<const double> b, int refine,
                                 double* residual) {
  if (static_cast<int>(b.size()) != a.size()) {
    throw ContractViolationError("banded_solve size mismatch");
  }
  const BandedLU lu(a.mat, 0.0);
  const double pivot = lu.min_pivot();
  if (pivot < 1e-300) {
    throw SingularMatrixError("sector matrix is singular to working precision", pivot, -1);
  }
  std::vector<double> x = lu.solve_refined(a.mat, b, std::max(refine, 0));
  if (residual) {
    // Normwise backward error; stays near machine precision even when the
    // condition number grows with the coherence.
    std::vector<double> r(b.begin(), b.end());
    a.mat.apply_to(x, r, -1.0, 1.0);
    const double scale = vec_inf_norm(b) + a.mat.inf_norm() * vec_inf_norm(x);
    *residual = scale > 0.0 ? vec_inf_norm(r) / scale : vec_inf_norm(r);
  }
  return x;
}

std::vector<double> null_vector(const SectorOperator& a, double shift_factor, int max_iter,
                                double* residual) {
  if (a.k != 0) {
    throw ContractViolationError("null_vector expects a sector-0 generator");
  }
  const int n = a.size();
  {
    const std::vector<double> sums = a.mat.column_sums();
    const double tol = 1e-6 * std::max(1.0, a.mat.one_norm());
    for (double s : sums) {
      if (std::abs(s) > tol) {
        throw ContractViolationError("null_vector input is not trace preserving");
      }
    }
  }
  const double sigma = shift_factor * diag_scale(a.mat);
  const BandedLU lu(a.mat, -sigma);
  std::vector<double> x = steady_distribution(n).probs;
  const double a_inf = a.mat.inf_norm();
  double last_res = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < max_iter; ++iter) {
    std::vector<double> y = lu.solve(x);
    double sum = 0.0;
    for (double v : y) sum += v;
    if (sum == 0.0) {
      throw ConvergenceError("inverse iteration produced a zero-sum vector", last_res, iter);
    }
    for (double& v : y) v /= sum;
    const std::vector<double> r = a.mat.apply(y);
    last_res = vec_inf_norm(r);
    if (last_res <= 1e-10 * a_inf * vec_inf_norm(y)) {
      if (residual) *residual = last_res;
      return y;
    }
    x = std::move(y);
  }
  throw ConvergenceError("inverse iteration did not reach the residual target", last_res,
                         max_iter);
}

std::vector<double> deflated_solve(const SectorOperator& a, std::span<const double> b,
                                   std::span<const double> kernel, int refine,
                                   double* residual) {
  const int n = a.size();
  if (static_cast<int>(b.size()) != n || static_cast<int>(kernel.size()) != n) {
    throw ContractViolationError("deflated_solve size mismatch");
  }
  double b_sum = 0.0;
  for (double v : b) b_sum += v;
  if (std::abs(b_sum) > 1e-10 * std::max(1.0, vec_one_norm(b))) {
    throw ContractViolationError("deflated_solve needs a traceless right-hand side");
  }
  // The left kernel of a sector-0 generator is the uniform row vector, so a
  // roundoff-level nonzero sum in b is an inconsistent component no solution
  // can cancel. Removing the mean restores consistency with a perturbation of
  // the same size as the rounding already present in each entry of b.
  std::vector<double> bb(b.begin(), b.end());
  for (double& v : bb) v -= b_sum / static_cast<double>(n);
  const double b_inf = vec_inf_norm(bb);
  if (b_inf == 0.0) {
    if (residual) *residual = 0.0;
    return std::vector<double>(n, 0.0);
  }
  double k_sum = 0.0;
  for (double v : kernel) k_sum += v;
  if (std::abs(k_sum) < 1e-6) {
    throw ContractViolationError("deflated_solve kernel has (near-)zero sum");
  }
  std::vector<double> ker(kernel.begin(), kernel.end());
  for (double& v : ker) v /= k_sum;

  const double sigma = kNullShiftFactor * diag_scale(a.mat);
  const BandedLU lu(a.mat, -sigma);
  const auto project = [&](std::vector<double>& z) {
    double s = 0.0;
    for (double v : z) s += v;
    for (int i = 0; i < n; ++i) z[i] -= s * ker[i];
  };

  std::vector<double> z = lu.solve(bb);
  project(z);
  // Backward-error criterion: the right-hand side can be a near-cancellation
  // whose norm sits far below ||A|| ||z||, so a target relative to ||b|| alone
  // is unreachable in double precision. res / (||b|| + ||A|| ||z||) <= 1e-9 is
  // the attainable statement of the same accuracy.
  const double a_inf = a.mat.inf_norm();
  const int rounds = std::max(refine, 2) + 4;
  double res = std::numeric_limits<double>::infinity();
  double scale = b_inf;
  std::vector<double> r(n);
  for (int round = 0; round <= rounds; ++round) {
    std::copy(bb.begin(), bb.end(), r.begin());
    a.mat.apply_to(z, r, -1.0, 1.0);
    res = vec_inf_norm(r);
    scale = b_inf + a_inf * vec_inf_norm(z);
    if (res <= 1e-9 * scale) break;
    if (round == rounds) break;
    std::vector<double> dz = lu.solve(r);
    for (int i = 0; i < n; ++i) z[i] += dz[i];
    project(z);
  }
  if (res > 1e-9 * scale) {
    throw ConvergenceError("deflated solve residual above target", res / scale, rounds);
  }
  if (residual) *residual = res / scale;
  return z;
}

std::complex<double> slowest_eigenvalue(const SectorOperator& a, int max_iter) {
  const int n = a.size();
  if (n == 1) return a.mat.at(0, 0);
  const BandedLU lu(a.mat, 0.0);

  std::vector<int> ladder;
  for (int m = 40; m < std::min(n, max_iter); m *= 2) ladder.push_back(m);
  ladder.push_back(std::min(n, max_iter));

  double last_gap = std::numeric_limits<double>::infinity();
  for (int m : ladder) {
    Eigen::MatrixXd basis(n, m + 1);
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(m + 1, m);
    basis.col(0).setOnes();
    basis.col(0) /= basis.col(0).norm();
    int steps = m;
    bool breakdown = false;
    double h_scale = 0.0;
    for (int j = 0; j < m; ++j) {
      std::vector<double> wv(basis.col(j).data(), basis.col(j).data() + n);
      const std::vector<double> sol = lu.solve(wv);
      Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(sol.data(), n);
      // two Gram-Schmidt passes keep the basis orthogonal at these scales
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= j; ++i) {
          const double h = basis.col(i).dot(w);
          hess(i, j) += h;
          w -= h * basis.col(i);
        }
      }
      const double hn = w.norm();
      hess(j + 1, j) = hn;
      h_scale = std::max(h_scale, hess.col(j).cwiseAbs().maxCoeff());
      if (hn <= 1e-13 * h_scale) {
        steps = j + 1;
        breakdown = true;
        break;
      }
      basis.col(j + 1) = w / hn;
    }
    const Eigen::MatrixXd hm = hess.topLeftCorner(steps, steps);
    const Eigen::EigenSolver<Eigen::MatrixXd> es(hm);
    const double h_last = breakdown ? 0.0 : hess(steps, steps - 1);

    // Accept once the dominant Ritz value (the eigenvalue of A nearest zero)
    // is converged, then return the max-real-part eigenvalue among all
    // converged Ritz values.
    int dominant = 0;
    for (int j = 1; j < steps; ++j) {
      if (std::abs(es.eigenvalues()[j]) > std::abs(es.eigenvalues()[dominant])) dominant = j;
    }
    bool dominant_ok = false;
    bool have = false;
    cd best = 0.0;
    for (int j = 0; j < steps; ++j) {
      const cd theta = es.eigenvalues()[j];
      if (std::abs(theta) == 0.0) continue;
      const double res = std::abs(h_last * es.eigenvectors()(steps - 1, j));
      if (res > 1e-9 * std::abs(theta)) continue;
      if (j == dominant) dominant_ok = true;
      const cd lam = 1.0 / theta;
      if (!have || lam.real() > best.real()) {
        best = lam;
        have = true;
      }
    }
    if (have && dominant_ok) return best;
    last_gap = have ? 0.0 : last_gap;
  }
  throw ConvergenceError("Arnoldi iteration did not converge", last_gap, max_iter);
}

double condition_estimate(const SectorOperator& a) {
  const BandedLU lu(a.mat, 0.0);
  const double rc = lu.rcond(a.mat.one_norm());
  return 1.0 / std::max(rc, std::numeric_limits<double>::min());
}

std::vector<std::complex<double>> resolvent_solve(const SectorOperator& a, double omega,
                                                  std::span<const double> rhs, int refine) {
  if (static_cast<int>(rhs.size()) != a.size()) {
    throw ContractViolationError("resolvent_solve size mismatch");
  }
  const cd shift(0.0, omega);
  const ComplexBandedLU lu(a.mat, shift);
  std::vector<cd> b(rhs.size());
  for (size_t i = 0; i < rhs.size(); ++i) b[i] = rhs[i];
  return lu.solve_refined(a.mat, shift, b, std::max(refine, 0));
}

ModeSeries ModeSeries::from_sector(const SectorOperator& a, std::span<const double> w,
                                   std::span<const double> b) {
  const int n = a.size();
  if (static_cast<int>(w.size()) != n || static_cast<int>(b.size()) != n) {
    throw ContractViolationError("mode series size mismatch");
  }
  Eigen::MatrixXd dm = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int jlo = std::max(0, i - a.mat.lower());
    const int jhi = std::min(n - 1, i + a.mat.upper());
    for (int j = jlo; j <= jhi; ++j) dm(i, j) = a.mat.at(i, j);
  }
  const Eigen::EigenSolver<Eigen::MatrixXd> es(dm);
  const Eigen::VectorXcd bc = Eigen::Map<const Eigen::VectorXd>(b.data(), n).cast<cd>();
  const Eigen::VectorXcd wc = Eigen::Map<const Eigen::VectorXd>(w.data(), n).cast<cd>();
  const Eigen::VectorXcd amp = es.eigenvectors().partialPivLu().solve(bc);
  const Eigen::VectorXcd wv = es.eigenvectors().transpose() * wc;
  ModeSeries series;
  series.rates.resize(n);
  series.weights.resize(n);
  for (int j = 0; j < n; ++j) {
    series.rates[j] = es.eigenvalues()[j];
    series.weights[j] = wv[j] * amp[j];
  }
  return series;
}

double ModeSeries::value(double tau) const {
  cd acc = 0.0;
  for (size_t j = 0; j < rates.size(); ++j) {
    acc += weights[j] * std::exp(rates[j] * tau);
  }
  return acc.real();
}

std::vector<double> ModeSeries::sample(std::span<const double> taus, Exec exec,
                                       int workers) const {
  std::vector<double> out(taus.size());
  if (exec == Exec::Parallel) {
    const int threads = resolve_workers(workers);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(taus.size()); ++i) {
      out[i] = value(taus[i]);
    }
    (void)threads;
  } else {
    for (size_t i = 0; i < taus.size(); ++i) out[i] = value(taus[i]);
  }
  return out;
}

double ModeSeries::slowest_decay_rate() const {
  double max_abs = 0.0;
  for (const cd& r : rates) max_abs = std::max(max_abs, std::abs(r.real()));
  const double thresh = 1e-12 * max_abs;
  double best = std::numeric_limits<double>::infinity();
  for (const cd& r : rates) {
    const double decay = -r.real();
    if (decay > thresh && decay < best) best = decay;
  }
  return std::isfinite(best) ? best : 0.0;
}

double dft_coherence(std::span<const double> values, double dt, double omega) {
  if (values.empty()) return 0.0;
  double acc = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    acc += values[i] * std::cos(omega * dt * static_cast<double>(i));
  }
  return 2.0 * dt * (acc - 0.5 * values[0]);
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = left + right - whole;
  if (depth <= 0 || std::abs(err) <= 15.0 * tol) {
    return left + right + err / 15.0;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol_abs, int max_depth) {
  if (!(b > a)) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol_abs, max_depth);
}

}  // namespace hlsim
