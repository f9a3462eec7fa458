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

#include <string>
#include <utility>
#include <vector>

#include "hlsim/linalg.hpp"
#include "hlsim/model.hpp"

namespace hlsim {

struct ComputeOptions {
  int refine = 2;                 // residual-polish rounds for banded solves
  double null_shift_factor = kNullShiftFactor;
  double window_factor = 1.0;     // Glauber-delta window = factor * sqrt(c)/N
  double horizon_factor = 40.0;   // series horizon in units of 1/(slowest rate)
  int series_max_dim = 512;       // eigen-series cap; propagation route above
  Exec exec = Exec::Serial;
  int workers = 0;                // 0 = hardware default; HLSIM_WORKERS wins
};

struct QualityFlags {
  bool approximate_generator = false;
  bool horizon_warning = false;
  double max_residual = 0.0;

  std::string to_string() const;
};

struct BeamObservables {
  double flux = 0.0;
  double coherence = 0.0;
  double peak_omega = 0.0;
  double linewidth_gap = 0.0;   // -2 Re(slowest sector-1 eigenvalue)
  double linewidth_flux = 0.0;  // 4 flux / coherence
  double mandel_q = 0.0;
  double mu = 0.0;
  QualityFlags flags;
};

enum class SeriesKind { g1, g2 };

struct CorrelationSeries {
  std::vector<double> taus;
  std::vector<double> values;
  SeriesKind kind = SeriesKind::g1;
  std::string method;  // "eigen-series" or "resolvent-propagation"
};

struct IntegralQ {
  double q = 0.0;
  double horizon = 0.0;
  double tail_estimate = 0.0;
  bool horizon_warning = false;
};

struct Condition4 {
  double window = 0.0;
  double delta_g1 = 0.0;
  double delta_g2 = 0.0;
  double coherence = 0.0;
  double flux = 0.0;
};

struct IdealRefs {
  double g1 = 0.0;
  double g2 = 0.0;
  double power = 0.0;
};

/// Stationary sector-0 populations: the sin^4 distribution for the lambda
/// family (exact by detailed balance), the numerically extracted null vector
/// for the regular-pump family.
std::vector<double> stationary_populations(const ModelSpec& model,
                                           const ComputeOptions& opts = {});

/// All scalar beam quantities in one pass over shared sector factorizations.
BeamObservables compute_observables(const ModelSpec& model, const ComputeOptions& opts = {});

/// Coherence at a single frequency: 2 Re[w^T z], (L_1 + i omega) z = -v.
double coherence_at(const ModelSpec& model, double omega, const ComputeOptions& opts = {});

/// Peak coherence and its frequency via golden-section search on
/// [-2 l_gap, 2 l_gap], double-checked against omega = 0.
std::pair<double, double> coherence_peak(const ModelSpec& model,
                                         const ComputeOptions& opts = {});

/// Coherence on a frequency grid; points are independent and parallelizable.
std::vector<double> spectrum(const ModelSpec& model, std::span<const double> omegas,
                             const ComputeOptions& opts = {});

/// Long-interval Mandel-Q by counting statistics on the loss channel.
double mandel_q(const ModelSpec& model, const ComputeOptions& opts = {});

/// Cross-check route: 2 integral_0^h (G2(tau) - N^2) dtau / N from the
/// sector-0 eigen-series. horizon <= 0 picks it from the slowest decay rate.
IntegralQ mandel_q_by_integral(const ModelSpec& model, double horizon = 0.0,
                               const ComputeOptions& opts = {});

CorrelationSeries g1_correlation(const ModelSpec& model, std::span<const double> taus,
                                 const ComputeOptions& opts = {});

CorrelationSeries g2_correlation(const ModelSpec& model, std::span<const double> taus,
                                 const ComputeOptions& opts = {});

/// Phase-diffusing-beam references: g1 = exp(-ell |tau| / 2), g2 = 1, and the
/// Lorentzian power spectrum with peak 4 N / (2 pi ell).
IdealRefs ideal_references(double flux, double ell, double tau, double omega);

/// Sup distances of g1/g2 from the ideal references over [0, window] with
/// window = window_factor * sqrt(coherence) / flux and ell = linewidth_flux.
Condition4 condition4_deltas(const ModelSpec& model, const ComputeOptions& opts = {});

/// Independent spectrum-peak estimate: discrete Fourier transform of the
/// eigen-series correlation, maximized over a probe frequency grid.
double coherence_series_peak(const ModelSpec& model, const ComputeOptions& opts = {});

}  // namespace hlsim
