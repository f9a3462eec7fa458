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

#include "hlsim/sector.hpp"

#include <string>

namespace hlsim {

SectorOperator dissipator_sector(JumpKind kind, const LadderAmplitudes& amps, int k) {
  const int dim = amps.dim();
  if (k < 0 || k > dim - 1) {
    throw ValidationError("sector index k must lie in [0, D-1], got " + std::to_string(k));
  }
  const int m = dim - k;
  SectorOperator op;
  op.k = k;
  if (kind == JumpKind::Gain) {
    // (Lx)_n = g_{n+k} g_n x_{n-1} - (1/2)(gamma_{n+k} + gamma_n) x_n with
    // gamma_j = g_{j+1}^2; the accessor returns 0 at the top of the ladder.
    BandedMatrix mat(m, 1, 0);
    for (int n = 0; n < m; ++n) {
      const double up_bra = amps.gain_at(n + k + 1);
      const double up_ket = amps.gain_at(n + 1);
      mat.ref(n, n) = -0.5 * (up_bra * up_bra + up_ket * up_ket);
      if (n >= 1) mat.ref(n, n - 1) = amps.gain_at(n + k) * amps.gain_at(n);
    }
    op.mat = std::move(mat);
  } else {
    // (Lx)_n = l_{n+k+1} l_{n+1} x_{n+1} - (1/2)(l_{n+k}^2 + l_n^2) x_n.
    BandedMatrix mat(m, 0, 1);
    for (int n = 0; n < m; ++n) {
      const double down_bra = amps.loss_at(n + k);
      const double down_ket = amps.loss_at(n);
      mat.ref(n, n) = -0.5 * (down_bra * down_bra + down_ket * down_ket);
      if (n + 1 < m) mat.ref(n, n + 1) = amps.loss_at(n + k + 1) * amps.loss_at(n + 1);
    }
    op.mat = std::move(mat);
  }
  return op;
}

SectorOperator sector_generator(const LadderAmplitudes& amps, Family family, double param,
                                int k) {
  SectorOperator gain = dissipator_sector(JumpKind::Gain, amps, k);
  const SectorOperator loss = dissipator_sector(JumpKind::Loss, amps, k);
  SectorOperator op;
  op.k = k;
  if (family == Family::Lambda) {
    op.mat = banded_add(gain.mat, 1.0, loss.mat);
  } else {
    const BandedMatrix gain_sq = banded_multiply(gain.mat, gain.mat);
    op.mat = banded_add(banded_add(gain.mat, 0.5 * param, gain_sq), 1.0, loss.mat);
    op.approximate_generator = param < 0.0;
  }
  return op;
}

SectorOperator sector_generator(const ModelSpec& model, int k) {
  model.validate();
  return sector_generator(model_amplitudes(model), model.family, model.param, k);
}

}  // namespace hlsim
