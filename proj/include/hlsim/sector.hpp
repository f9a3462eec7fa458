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

#include "hlsim/banded.hpp"
#include "hlsim/model.hpp"

namespace hlsim {

enum class JumpKind { Gain, Loss };

/// The cavity Liouvillian restricted to the off-diagonal sector k: the vector
/// entry n stands for the density matrix element rho_{n+k,n}. Every jump
/// operator shifts the number index by one, so the generator never mixes
/// sectors and each block is a small banded matrix (size D - k).
struct SectorOperator {
  int k = 0;
  BandedMatrix mat;
  /// Set for the regular-pump family at q < 0, where the q/2 rate is negative
  /// and the generator is not completely positive. Carried into output flags.
  bool approximate_generator = false;

  int size() const { return mat.size(); }
  int bandwidth() const { return std::max(mat.lower(), mat.upper()); }
};

/// Sector-k block of the single dissipator D[c] for the gain (raising) or
/// loss (lowering) jump built from the given amplitudes.
SectorOperator dissipator_sector(JumpKind kind, const LadderAmplitudes& amps, int k);

/// Full sector-k generator. Lambda family: gain + loss dissipators
/// (bandwidth 1). Regular-pump family: gain + (q/2) gain^2 + loss, where the
/// square is an exact banded matrix square because sectors are preserved
/// (bandwidth 2).
SectorOperator sector_generator(const LadderAmplitudes& amps, Family family, double param, int k);
SectorOperator sector_generator(const ModelSpec& model, int k);

}  // namespace hlsim
