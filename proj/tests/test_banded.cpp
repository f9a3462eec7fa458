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
#include <complex>
#include <vector>

#include <doctest.h>

#include "hlsim/banded.hpp"

using namespace hlsim;

namespace {

// [[2,1,0],[1,3,1],[0,1,2]], symmetric tridiagonal
BandedMatrix tri3() {
  BandedMatrix m(3, 1, 1);
  m.ref(0, 0) = 2.0;
  m.ref(1, 1) = 3.0;
  m.ref(2, 2) = 2.0;
  m.ref(0, 1) = 1.0;
  m.ref(1, 0) = 1.0;
  m.ref(1, 2) = 1.0;
  m.ref(2, 1) = 1.0;
  return m;
}

}  // namespace

TEST_SUITE("banded") {

TEST_CASE("storage and access") {
  BandedMatrix m(4, 1, 0);  // lower bidiagonal
  m.ref(0, 0) = 1.0;
  m.ref(1, 0) = 2.0;
  CHECK(m.at(0, 0) == 1.0);
  CHECK(m.at(1, 0) == 2.0);
  CHECK(m.at(0, 1) == 0.0);       // outside band reads as zero
  CHECK(m.at(3, 1) == 0.0);
  CHECK_FALSE(m.in_band(0, 1));
  CHECK(m.in_band(1, 0));
  CHECK_THROWS_AS(m.ref(0, 1), ContractViolationError);
  m.add_at(1, 0, 0.5);
  CHECK(m.at(1, 0) == 2.5);
}

TEST_CASE("apply and norms") {
  BandedMatrix m = tri3();
  std::vector<double> x{1.0, 1.0, 1.0};
  auto y = m.apply(x);
  CHECK(y[0] == 3.0);
  CHECK(y[1] == 5.0);
  CHECK(y[2] == 3.0);

  std::vector<double> z{1.0, 0.0, -1.0};
  m.apply_to(x, z, 2.0, -1.0);  // z = 2*A*x - z
  CHECK(z[0] == 5.0);
  CHECK(z[1] == 10.0);
  CHECK(z[2] == 7.0);

  CHECK(m.one_norm() == 5.0);
  CHECK(m.inf_norm() == 5.0);
  CHECK(m.max_abs_diagonal() == 3.0);
  auto sums = m.column_sums();
  CHECK(sums[0] == 3.0);
  CHECK(sums[1] == 5.0);
  CHECK(sums[2] == 3.0);
}

TEST_CASE("lu solve hand case") {
  BandedMatrix m = tri3();
  BandedLU lu(m);
  auto x = lu.solve(std::vector<double>{3.0, 5.0, 3.0});
  for (double v : x) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lu.min_pivot() > 0.5);
  // well conditioned: rcond not far below 1
  CHECK(lu.rcond(m.one_norm()) > 0.1);
}

TEST_CASE("solve_in_place matches solve") {
  BandedMatrix m = tri3();
  BandedLU lu(m);
  std::vector<double> b{1.0, -2.0, 0.5};
  auto x = lu.solve(b);
  std::vector<double> y = b;
  lu.solve_in_place(y);
  for (int i = 0; i < 3; ++i) CHECK(x[i] == y[i]);
}

TEST_CASE("diagonal shift is applied") {
  BandedMatrix m = tri3();
  BandedLU lu(m, 1.0);  // factors A + I
  auto x = lu.solve(std::vector<double>{4.0, 6.0, 4.0});
  for (double v : x) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("refined solve removes the shift") {
  BandedMatrix m = tri3();
  const double shift = 1e-7;
  BandedLU lu(m, shift);
  std::vector<double> b{3.0, 5.0, 3.0};
  auto x = lu.solve_refined(m, b, 2);
  std::vector<double> r = b;
  m.apply_to(x, r, -1.0, 1.0);
  for (double v : r) CHECK(std::fabs(v) <= 1e-13);
}

TEST_CASE("singular matrix is detected") {
  BandedMatrix m(2, 1, 1);
  m.ref(0, 0) = 1.0;
  m.ref(0, 1) = 1.0;
  m.ref(1, 0) = 1.0;
  m.ref(1, 1) = 1.0;
  CHECK_THROWS_AS(BandedLU{m}, SingularMatrixError);
}

TEST_CASE("banded multiply against dense product") {
  BandedMatrix a(4, 1, 0);
  BandedMatrix b(4, 0, 1);
  for (int i = 0; i < 4; ++i) {
    a.ref(i, i) = 1.0 + i;
    b.ref(i, i) = 2.0 - 0.25 * i;
    if (i > 0) a.ref(i, i - 1) = 0.5 * i;
    if (i + 1 < 4) b.ref(i, i + 1) = -1.0 + 0.5 * i;
  }
  BandedMatrix c = banded_multiply(a, b);
  CHECK(c.lower() == 1);
  CHECK(c.upper() == 1);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double want = 0.0;
      for (int k = 0; k < 4; ++k) want += a.at(i, k) * b.at(k, j);
      CHECK(c.at(i, j) == doctest::Approx(want).epsilon(1e-15));
    }
  }
}

TEST_CASE("banded add and affine") {
  BandedMatrix a(3, 1, 0);
  a.ref(0, 0) = 1.0;
  a.ref(1, 0) = 2.0;
  BandedMatrix b(3, 0, 1);
  b.ref(0, 0) = 3.0;
  b.ref(0, 1) = 4.0;
  BandedMatrix c = banded_add(a, 2.0, b);
  CHECK(c.at(0, 0) == 7.0);
  CHECK(c.at(1, 0) == 2.0);
  CHECK(c.at(0, 1) == 8.0);

  BandedMatrix f = banded_affine(1.0, -0.5, a);
  CHECK(f.at(0, 0) == 0.5);
  CHECK(f.at(1, 1) == 1.0);
  CHECK(f.at(1, 0) == -1.0);
}

TEST_CASE("complex shifted solve") {
  using cd = std::complex<double>;
  BandedMatrix m = tri3();
  const cd shift(0.0, 0.7);
  ComplexBandedLU lu(m, shift);
  std::vector<cd> b{cd(1.0, 0.2), cd(-0.5, 1.0), cd(0.0, -0.3)};
  auto z = lu.solve_refined(m, shift, b, 2);
  // residual of (A + i 0.7 I) z - b
  auto az = m.apply(std::span<const cd>(z));
  for (int i = 0; i < 3; ++i) {
    const cd r = az[i] + shift * z[i] - b[i];
    CHECK(std::abs(r) <= 1e-13);
  }
}

TEST_CASE("complex apply matches real apply on real input") {
  using cd = std::complex<double>;
  BandedMatrix m = tri3();
  std::vector<cd> x{cd(1.0), cd(1.0), cd(1.0)};
  auto y = m.apply(std::span<const cd>(x));
  CHECK(y[0] == cd(3.0));
  CHECK(y[1] == cd(5.0));
  CHECK(y[2] == cd(3.0));
}

}  // TEST_SUITE
