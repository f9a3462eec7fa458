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

#include <span>
#include <string>
#include <vector>

#include "hlsim/common.hpp"

namespace hlsim {

/// The two laser model families. Lambda is the randomly pumped family with
/// gain/loss exponents controlled by lambda; RegularPump is the regularly
/// pumped family whose parameter q is the Mandel-Q of the pump statistics.
enum class Family { Lambda, RegularPump };

std::string family_name(Family family);

struct ModelSpec {
  Family family = Family::Lambda;
  double param = 0.0;  // lambda in R, or q in [-1, inf)
  int dim = 2;         // cavity dimension D >= 2

  static ModelSpec lambda(double lam, int dim) { return {Family::Lambda, lam, dim}; }
  static ModelSpec regular_pump(double q, int dim) { return {Family::RegularPump, q, dim}; }

  /// Throws ValidationError on dim < 2 or q < -1. q = -1 is the admitted
  /// closed endpoint of the regular-pump family.
  void validate() const;

  std::string label() const;
};

/// Normalized cavity populations with their mean excitation number.
struct CavityDistribution {
  std::vector<double> probs;
  double mu = 0.0;

  int dim() const { return static_cast<int>(probs.size()); }
};

/// The sin^4 cavity steady state for a D-level cavity. Populations are built
/// mirror-symmetrically so probs[n] == probs[D-1-n] holds exactly, and
/// mu = (D-1)/2 up to summation roundoff.
CavityDistribution steady_distribution(int dim);

/// Wraps externally computed populations (e.g. the numerically obtained
/// stationary vector of the regular-pump family). Normalizes and recomputes mu.
CavityDistribution distribution_from(std::vector<double> probs);

/// Gain/loss transition amplitudes on the cavity ladder. gain[n-1] is the
/// amplitude for |n-1> -> |n| and loss[n-1] for |n> -> |n-1>, n = 1..D-1.
/// Accessors return 0 outside that range; there are no transitions out of
/// [0, D-1].
struct LadderAmplitudes {
  std::vector<double> gain;
  std::vector<double> loss;

  int dim() const { return static_cast<int>(gain.size()) + 1; }

  double gain_at(int n) const {
    return (n >= 1 && n <= static_cast<int>(gain.size())) ? gain[n - 1] : 0.0;
  }
  double loss_at(int n) const {
    return (n >= 1 && n <= static_cast<int>(loss.size())) ? loss[n - 1] : 0.0;
  }
};

/// Amplitudes of the lambda family: g_n = (p_n/p_{n-1})^(lambda/2),
/// l_n = (p_{n-1}/p_n)^((1-lambda)/2), unit rate constants. Computed in the
/// log domain so extreme population ratios at the ladder edges stay finite.
LadderAmplitudes lambda_amplitudes(const CavityDistribution& dist, double lambda);

/// Amplitudes of the regular-pump family: quasi-isometric gain (g_n = 1) and
/// loss l_n = (p_{n-1}/p_n)^((1+q/2)/2). q = 0 reproduces lambda_amplitudes
/// at lambda = 0 exactly.
LadderAmplitudes q_amplitudes(const CavityDistribution& dist, double q);

/// Family dispatch using the sin^4 distribution of model.dim.
LadderAmplitudes model_amplitudes(const ModelSpec& model);

/// Steady-state photon flux of the beam: N = sum_n l_n^2 p_n. `probs` must be
/// the stationary populations of the model that produced `amps`.
double photon_flux(const LadderAmplitudes& amps, std::span<const double> probs);
double photon_flux(const LadderAmplitudes& amps, const CavityDistribution& dist);

}  // namespace hlsim
