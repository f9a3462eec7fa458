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

#include <cmath>
#include <vector>

#include <doctest.h>

#include "hlsim/dense.hpp"
#include "hlsim/sector.hpp"

using namespace hlsim;

namespace {

double apply_inf_norm(const BandedMatrix& m, const std::vector<double>& x) {
  auto y = m.apply(x);
  double best = 0.0;
  for (double v : y) best = std::max(best, std::fabs(v));
  return best;
}

}  // namespace

TEST_SUITE("sector") {

TEST_CASE("gain stencil hand rows, lambda=0 D=3 sector 0") {
  auto amps = lambda_amplitudes(steady_distribution(3), 0.0);
  auto op = dissipator_sector(JumpKind::Gain, amps, 0);
  REQUIRE(op.size() == 3);
  // action on x: (-x0, x0 - x1, x1)
  auto y = op.mat.apply(std::vector<double>{1.0, 2.0, 4.0});
  CHECK(y[0] == -1.0);
  CHECK(y[1] == -1.0);
  CHECK(y[2] == 2.0);
}

TEST_CASE("loss stencil hand rows, lambda=0 D=3 sector 0") {
  auto amps = lambda_amplitudes(steady_distribution(3), 0.0);
  auto op = dissipator_sector(JumpKind::Loss, amps, 0);
  // l_n^2 = {1/4, 4}; action on x: (x1/4, 4 x2 - x1/4, -4 x2)
  auto y = op.mat.apply(std::vector<double>{1.0, 2.0, 4.0});
  CHECK(y[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(y[1] == doctest::Approx(15.5).epsilon(1e-14));
  CHECK(y[2] == doctest::Approx(-16.0).epsilon(1e-14));
}

TEST_CASE("sector-1 generator hand matrix, lambda=0 D=3") {
  auto op = sector_generator(ModelSpec::lambda(0.0, 3), 1);
  REQUIRE(op.size() == 2);
  CHECK(op.mat.at(0, 0) == doctest::Approx(-9.0 / 8.0).epsilon(1e-14));
  CHECK(op.mat.at(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(op.mat.at(1, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(op.mat.at(1, 1) == doctest::Approx(-21.0 / 8.0).epsilon(1e-14));
}

TEST_CASE("sector-0 columns sum to zero") {
  for (int dim : {3, 10, 64}) {
    for (double lam : {0.0, 0.25, 0.5, 1.0}) {
      CAPTURE(dim);
      CAPTURE(lam);
      auto op = sector_generator(ModelSpec::lambda(lam, dim), 0);
      // the diagonal is one fused sum, so cancellation leaves rounding dust
      const double tol = 1e-14 * op.mat.one_norm();
      for (double s : op.mat.column_sums()) CHECK(std::fabs(s) <= tol);
    }
    for (double q : {-0.9, -0.5, 0.5}) {
      CAPTURE(dim);
      CAPTURE(q);
      auto op = sector_generator(ModelSpec::regular_pump(q, dim), 0);
      const double tol = 1e-12 * op.mat.one_norm();
      for (double s : op.mat.column_sums()) CHECK(std::fabs(s) <= tol);
    }
  }
}

TEST_CASE("sin4 vector is stationary for the lambda family") {
  for (int dim : {10, 100}) {
    for (double lam : {0.0, 0.25, 0.5, 1.0}) {
      CAPTURE(dim);
      CAPTURE(lam);
      auto op = sector_generator(ModelSpec::lambda(lam, dim), 0);
      auto probs = steady_distribution(dim).probs;
      CHECK(apply_inf_norm(op.mat, probs) <= 1e-14);
    }
  }
}

TEST_CASE("q=0 generator equals lambda=0 generator entrywise") {
  const int dim = 24;
  auto a = sector_generator(ModelSpec::lambda(0.0, dim), 0);
  auto b = sector_generator(ModelSpec::regular_pump(0.0, dim), 0);
  CHECK(a.mat.lower() == 1);
  CHECK(b.mat.lower() == 2);  // widened by the exactly-zero q/2 square term
  for (int i = 0; i < dim; ++i) {
    for (int j = std::max(0, i - 2); j <= std::min(dim - 1, i + 2); ++j) {
      CHECK(a.mat.at(i, j) == b.mat.at(i, j));
    }
  }
  CHECK_FALSE(b.approximate_generator);
  CHECK(sector_generator(ModelSpec::regular_pump(-0.5, dim), 0).approximate_generator);
}

TEST_CASE("sector blocks match the dense superoperator restriction") {
  for (auto model : {ModelSpec::lambda(0.25, 8), ModelSpec::lambda(1.0, 8),
                     ModelSpec::regular_pump(-0.5, 8), ModelSpec::regular_pump(0.5, 8)}) {
    CAPTURE(model.label());
    const Eigen::MatrixXd liou = dense_liouvillian(model);
    for (int k : {0, 1, 2, 7}) {
      CAPTURE(k);
      auto op = sector_generator(model, k);
      const Eigen::MatrixXd lower = dense_sector_block(liou, model.dim, k, false);
      const Eigen::MatrixXd upper = dense_sector_block(liou, model.dim, k, true);
      REQUIRE(lower.rows() == op.size());
      double dev_lower = 0.0, dev_upper = 0.0;
      for (int i = 0; i < op.size(); ++i) {
        for (int j = 0; j < op.size(); ++j) {
          dev_lower = std::max(dev_lower, std::fabs(lower(i, j) - op.mat.at(i, j)));
          dev_upper = std::max(dev_upper, std::fabs(upper(i, j) - op.mat.at(i, j)));
        }
      }
      CHECK(dev_lower <= 1e-13);
      // the upper and lower off-diagonals evolve identically (real generator)
      CHECK(dev_upper <= 1e-13);
    }
  }
}

TEST_CASE("dense superoperator never mixes sectors") {
  for (auto model : {ModelSpec::lambda(0.5, 6), ModelSpec::regular_pump(-0.9, 6)}) {
    CAPTURE(model.label());
    const int dim = model.dim;
    const Eigen::MatrixXd liou = dense_liouvillian(model);
    // column (col_n + k, col_n) only feeds rows on the same off-diagonal
    for (int k = 0; k < dim; ++k) {
      for (int n = 0; n + k < dim; ++n) {
        const int col = n * dim + (n + k);
        for (int ri = 0; ri < dim; ++ri) {
          for (int rj = 0; rj < dim; ++rj) {
            if (ri - rj == k) continue;
            CHECK(std::fabs(liou(rj * dim + ri, col)) == 0.0);
          }
        }
      }
    }
  }
}

TEST_CASE("bandwidths") {
  CHECK(sector_generator(ModelSpec::lambda(0.5, 16), 1).bandwidth() == 1);
  CHECK(sector_generator(ModelSpec::regular_pump(-0.5, 16), 1).bandwidth() == 2);
  auto op = sector_generator(ModelSpec::regular_pump(-0.5, 16), 0);
  CHECK(op.mat.lower() == 2);
  CHECK(op.mat.upper() == 1);
}

TEST_CASE("q-family stationarity residual shrinks with D") {
  double last = std::numeric_limits<double>::infinity();
  for (int dim : {50, 100, 200, 400}) {
    CAPTURE(dim);
    auto op = sector_generator(ModelSpec::regular_pump(-0.5, dim), 0);
    auto probs = steady_distribution(dim).probs;
    // normalize by the largest single term so the decrease is about structure,
    // not about the populations themselves shrinking with D
    auto y = op.mat.apply(probs);
    double num = 0.0;
    for (double v : y) num = std::max(num, std::fabs(v));
    double den = 0.0;
    for (int n = 0; n < dim; ++n) {
      den = std::max(den, std::fabs(op.mat.at(n, n)) * probs[n]);
    }
    const double res = num / den;
    CHECK(res < last);
    last = res;
  }
}

TEST_CASE("invalid sector index") {
  auto amps = lambda_amplitudes(steady_distribution(4), 0.5);
  CHECK_THROWS_AS(dissipator_sector(JumpKind::Gain, amps, -1), ValidationError);
  CHECK_THROWS_AS(dissipator_sector(JumpKind::Loss, amps, 4), ValidationError);
  CHECK_NOTHROW(dissipator_sector(JumpKind::Loss, amps, 3));  // size-1 corner sector
}

}  // TEST_SUITE
