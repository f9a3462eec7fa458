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
#include <vector>

#include "hlsim/observables.hpp"

namespace hlsim {

struct SweepRecord {
  ModelSpec model;
  double mu = 0.0;
  BeamObservables obs;
  long long runtime_ms = 0;  // for logs only; data emitters skip it
  bool failed = false;
  std::string error;
};

struct FitResult {
  double exponent = 0.0;
  double log_prefactor = 0.0;  // natural log
  double r_squared = 0.0;
  int point_count = 0;
};

/// One record per dimension; per-point failures are embedded in the record,
/// never dropped silently.
std::vector<SweepRecord> sweep_dimension(Family family, double param,
                                         std::span<const int> dims,
                                         const ComputeOptions& opts = {});

/// Least squares of ln(coherence) on ln(mu) over the non-failed records.
FitResult fit_power_law(std::span<const SweepRecord> records);

struct ParamRow {
  double param = 0.0;
  double coh_ratio = 0.0;
  double mandel_q = 0.0;
  double coh = 0.0;
  double flux = 0.0;
  std::string flags;
  bool failed = false;
};

/// Parameter sweep at fixed D with coherence ratios normalized by the
/// param = 0 member (which must be present; its ratio is exactly 1).
std::vector<ParamRow> sweep_parameter(Family family, int dim, std::span<const double> params,
                                      const ComputeOptions& opts = {});

struct AnalyticReference {
  double coh_ratio = 0.0;
  double q_value = 0.0;
};

/// Closed-form large-D curves: lambda family
/// (1/[2(l-1/2)^2+1/2], 2l(l-1)), regular-pump family (1/(1+q/2)^2, q).
AnalyticReference analytic_reference(Family family, double param);

struct OracleRow {
  ModelSpec model;
  double dev_rho = 0.0;  // max population deviation over max population
  double dev_coh = 0.0;  // relative, coherence at omega = 0
  double dev_q = 0.0;    // relative with a 1e-6 absolute floor
  bool failed = false;
  std::string error;
};

struct OracleReport {
  std::vector<OracleRow> rows;
  double max_deviation = 0.0;
};

/// Sector-vs-dense equivalence over the fixed model panel
/// lambda in {0, 0.25, 0.5, 1}, q in {-0.9, -0.5, 0.5} at the given small D.
OracleReport oracle_suite(int dim, const ComputeOptions& opts = {});

}  // namespace hlsim
