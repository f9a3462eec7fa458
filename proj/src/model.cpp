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

#include "hlsim/model.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hlsim {

int resolve_workers(int requested) {
  if (const char* env = std::getenv("HLSIM_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  if (requested > 0) return requested;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::string family_name(Family family) {
  return family == Family::Lambda ? "lambda" : "q";
}

void ModelSpec::validate() const {
  if (dim < 2) {
    throw ValidationError("cavity dimension must be >= 2, got " + std::to_string(dim));
  }
  if (family == Family::RegularPump && param < -1.0) {
    throw ValidationError("pump parameter q must be >= -1, got " + std::to_string(param));
  }
}

std::string ModelSpec::label() const {
  std::ostringstream os;
  os << family_name(family) << "=" << param << ",D=" << dim;
  return os.str();
}

CavityDistribution steady_distribution(int dim) {
  if (dim < 2) {
    throw ValidationError("cavity dimension must be >= 2, got " + std::to_string(dim));
  }
  std::vector<double> probs(dim);
  const double step = std::numbers::pi / (dim + 1);
  // Fill the lower half and mirror it, so the sin^4 symmetry p_n = p_{D-1-n}
  // holds exactly in floating point.
  for (int n = 0; n <= (dim - 1) / 2; ++n) {
    const double s = std::sin(step * (n + 1));
    const double v = (s * s) * (s * s);
    probs[n] = v;
    probs[dim - 1 - n] = v;
  }
  double sum = 0.0;
  for (double v : probs) sum += v;
  for (double& v : probs) v /= sum;
  double mu = 0.0;
  for (int n = 0; n < dim; ++n) mu += n * probs[n];
  return {std::move(probs), mu};
}

CavityDistribution distribution_from(std::vector<double> probs) {
  if (probs.size() < 2) {
    throw ValidationError("distribution needs at least 2 levels");
  }
  double sum = 0.0;
  for (double v : probs) sum += v;
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw ValidationError("distribution is not normalizable");
  }
  for (double& v : probs) v /= sum;
  double mu = 0.0;
  for (size_t n = 0; n < probs.size(); ++n) mu += static_cast<double>(n) * probs[n];
  return {std::move(probs), mu};
}

namespace {

std::vector<double> log_probs(const CavityDistribution& dist) {
  std::vector<double> lp(dist.probs.size());
  for (size_t n = 0; n < dist.probs.size(); ++n) {
    if (!(dist.probs[n] > 0.0)) {
      throw ValidationError("amplitude construction requires strictly positive populations");
    }
    lp[n] = std::log(dist.probs[n]);
  }
  return lp;
}

}  // namespace

LadderAmplitudes lambda_amplitudes(const CavityDistribution& dist, double lambda) {
  const int dim = dist.dim();
  if (dim < 2) throw ValidationError("distribution needs at least 2 levels");
  const std::vector<double> lp = log_probs(dist);
  LadderAmplitudes amps;
  amps.gain.resize(dim - 1);
  amps.loss.resize(dim - 1);
  for (int n = 1; n < dim; ++n) {
    const double dlog = lp[n] - lp[n - 1];
    amps.gain[n - 1] = std::exp(0.5 * lambda * dlog);
    amps.loss[n - 1] = std::exp(-0.5 * (1.0 - lambda) * dlog);
  }
  return amps;
}

LadderAmplitudes q_amplitudes(const CavityDistribution& dist, double q) {
  if (q < -1.0) {
    throw ValidationError("pump parameter q must be >= -1, got " + std::to_string(q));
  }
  const int dim = dist.dim();
  if (dim < 2) throw ValidationError("distribution needs at least 2 levels");
  const std::vector<double> lp = log_probs(dist);
  LadderAmplitudes amps;
  amps.gain.assign(dim - 1, 1.0);
  amps.loss.resize(dim - 1);
  // Loss exponent (1 + q/2)/2; q = 0 reduces to the lambda = 0 expression.
  for (int n = 1; n < dim; ++n) {
    const double dlog = lp[n] - lp[n - 1];
    amps.loss[n - 1] = std::exp(-0.5 * (1.0 + 0.5 * q) * dlog);
  }
  return amps;
}

LadderAmplitudes model_amplitudes(const ModelSpec& model) {
  model.validate();
  const CavityDistribution dist = steady_distribution(model.dim);
  return model.family == Family::Lambda ? lambda_amplitudes(dist, model.param)
                                        : q_amplitudes(dist, model.param);
}

double photon_flux(const LadderAmplitudes& amps, std::span<const double> probs) {
  const int dim = amps.dim();
  if (static_cast<int>(probs.size()) != dim) {
    throw ValidationError("population vector length does not match amplitude ladder");
  }
  double flux = 0.0;
  for (int n = 1; n < dim; ++n) {
    const double l = amps.loss[n - 1];
    flux += l * l * probs[n];
  }
  return flux;
}

double photon_flux(const LadderAmplitudes& amps, const CavityDistribution& dist) {
  return photon_flux(amps, std::span<const double>(dist.probs));
}

}  // namespace hlsim
