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

#include "hlsim/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "hlsim/dense.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hlsim {

namespace {

SweepRecord run_point(const ModelSpec& model, const ComputeOptions& opts) {
  SweepRecord rec;
  rec.model = model;
  const auto start = std::chrono::steady_clock::now();
  try {
    rec.obs = compute_observables(model, opts);
    rec.mu = rec.obs.mu;
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.error = e.what();
  }
  const auto stop = std::chrono::steady_clock::now();
  rec.runtime_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
  return rec;
}

}  // namespace

std::vector<SweepRecord> sweep_dimension(Family family, double param,
                                         std::span<const int> dims,
                                         const ComputeOptions& opts) {
  if (dims.empty()) throw ValidationError("dimension list is empty");
  for (size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 8) throw ValidationError("dimension sweep requires D >= 8");
    if (i > 0 && dims[i] <= dims[i - 1]) {
      throw ValidationError("dimension list must be strictly ascending");
    }
  }
  std::vector<SweepRecord> records(dims.size());
  if (opts.exec == Exec::Parallel) {
    const int threads = resolve_workers(opts.workers);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(dims.size()); ++i) {
      ModelSpec model{family, param, dims[i]};
      records[i] = run_point(model, opts);
    }
    (void)threads;
  } else {
    for (size_t i = 0; i < dims.size(); ++i) {
      ModelSpec model{family, param, dims[i]};
      records[i] = run_point(model, opts);
    }
  }
  return records;
}

FitResult fit_power_law(std::span<const SweepRecord> records) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const SweepRecord& rec : records) {
    if (rec.failed) continue;
    if (!(rec.mu > 0.0) || !(rec.obs.coherence > 0.0)) continue;
    xs.push_back(std::log(rec.mu));
    ys.push_back(std::log(rec.obs.coherence));
  }
  const int n = static_cast<int>(xs.size());
  if (n < 4) {
    throw ValidationError("power-law fit needs at least 4 valid records, got " +
                          std::to_string(n));
  }
  double mx = 0.0;
  double my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  FitResult fit;
  fit.exponent = sxy / sxx;
  fit.log_prefactor = my - fit.exponent * mx;
  double ss_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double pred = fit.log_prefactor + fit.exponent * xs[i];
    ss_res += (ys[i] - pred) * (ys[i] - pred);
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.point_count = n;
  return fit;
}

std::vector<ParamRow> sweep_parameter(Family family, int dim, std::span<const double> params,
                                      const ComputeOptions& opts) {
  if (params.empty()) throw ValidationError("parameter grid is empty");
  int zero_idx = -1;
  for (size_t i = 0; i < params.size(); ++i) {
    if (std::abs(params[i]) <= 1e-9) {
      zero_idx = static_cast<int>(i);
      break;
    }
  }
  if (zero_idx < 0) {
    throw ValidationError("parameter grid must include 0 to define the ratio baseline");
  }
  std::vector<SweepRecord> records(params.size());
  if (opts.exec == Exec::Parallel) {
    const int threads = resolve_workers(opts.workers);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(params.size()); ++i) {
      ModelSpec model{family, params[i], dim};
      records[i] = run_point(model, opts);
    }
    (void)threads;
  } else {
    for (size_t i = 0; i < params.size(); ++i) {
      ModelSpec model{family, params[i], dim};
      records[i] = run_point(model, opts);
    }
  }
  if (records[zero_idx].failed) {
    throw ConvergenceError("baseline param = 0 point failed: " + records[zero_idx].error, 0.0,
                           0);
  }
  const double coh0 = records[zero_idx].obs.coherence;
  std::vector<ParamRow> rows(params.size());
  for (size_t i = 0; i < params.size(); ++i) {
    ParamRow& row = rows[i];
    row.param = params[i];
    if (records[i].failed) {
      row.failed = true;
      row.flags = "failed";
      continue;
    }
    const BeamObservables& obs = records[i].obs;
    row.coh = obs.coherence;
    row.coh_ratio = static_cast<int>(i) == zero_idx ? 1.0 : obs.coherence / coh0;
    row.mandel_q = obs.mandel_q;
    row.flux = obs.flux;
    row.flags = obs.flags.to_string();
  }
  return rows;
}

AnalyticReference analytic_reference(Family family, double param) {
  AnalyticReference ref;
  if (family == Family::Lambda) {
    const double c = param - 0.5;
    ref.coh_ratio = 1.0 / (2.0 * c * c + 0.5);
    ref.q_value = 2.0 * param * (param - 1.0);
  } else {
    const double denom = 1.0 + 0.5 * param;
    if (denom == 0.0) throw ValidationError("analytic reference has a pole at q = -2");
    ref.coh_ratio = 1.0 / (denom * denom);
    ref.q_value = param;
  }
  return ref;
}

OracleReport oracle_suite(int dim, const ComputeOptions& opts) {
  if (dim < 3 || dim > 12) {
    throw ValidationError("oracle suite runs at 3 <= D <= 12, got " + std::to_string(dim));
  }
  std::vector<ModelSpec> panel;
  for (double lam : {0.0, 0.25, 0.5, 1.0}) panel.push_back(ModelSpec::lambda(lam, dim));
  for (double q : {-0.9, -0.5, 0.5}) panel.push_back(ModelSpec::regular_pump(q, dim));

  OracleReport report;
  for (const ModelSpec& model : panel) {
    OracleRow row;
    row.model = model;
    try {
      const std::vector<double> sector_rho = stationary_populations(model, opts);
      const std::vector<double> dense_rho = dense_steady_populations(model);
      double max_pop = 0.0;
      double dev = 0.0;
      for (int n = 0; n < dim; ++n) {
        max_pop = std::max(max_pop, std::abs(dense_rho[n]));
        dev = std::max(dev, std::abs(sector_rho[n] - dense_rho[n]));
      }
      row.dev_rho = dev / max_pop;

      const double coh_sector = coherence_at(model, 0.0, opts);
      const double coh_dense = dense_coherence_at(model, 0.0);
      row.dev_coh = std::abs(coh_sector - coh_dense) / std::abs(coh_dense);

      const double q_sector = mandel_q(model, opts);
      const double q_dense = dense_mandel_q(model);
      row.dev_q = std::abs(q_sector - q_dense) / std::max(std::abs(q_dense), 1e-6);
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
    if (!row.failed) {
      report.max_deviation =
          std::max({report.max_deviation, row.dev_rho, row.dev_coh, row.dev_q});
    } else {
      report.max_deviation = std::numeric_limits<double>::infinity();
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace hlsim
