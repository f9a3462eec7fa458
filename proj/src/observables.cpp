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

#include "hlsim/observables.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hlsim {

std::string QualityFlags::to_string() const {
  std::string s;
  const auto add = [&s](const char* tag) {
    if (!s.empty()) s += '|';
    s += tag;
  };
  if (approximate_generator) add("approx_generator");
  if (horizon_warning) add("horizon");
  return s.empty() ? "ok" : s;
}

namespace {

using cd = std::complex<double>;

void check_tau_grid(std::span<const double> taus) {
  if (taus.empty()) throw ValidationError("tau grid is empty");
  if (taus[0] < 0.0) throw ValidationError("tau grid must be non-negative");
  for (size_t i = 1; i < taus.size(); ++i) {
    if (taus[i] < taus[i - 1]) throw ValidationError("tau grid must be ascending");
  }
}

/// Shared per-model state: amplitudes, the two sectors that every observable
/// touches, and the stationary vector. Immutable once built, so const
/// references can be shared across worker threads.
class Session {
 public:
  Session(const ModelSpec& model, const ComputeOptions& opts) : model_(model), opts_(opts) {
    model.validate();
    amps_ = model_amplitudes(model);
    sec0_ = sector_generator(amps_, model.family, model.param, 0);
    sec1_ = sector_generator(amps_, model.family, model.param, 1);
    if (model.family == Family::Lambda) {
      stat_ = steady_distribution(model.dim).probs;
    } else {
      double res_abs = 0.0;
      stat_ = null_vector(sec0_, opts.null_shift_factor, kIterationCap, &res_abs);
      const double scale = sec0_.mat.inf_norm() * stat_inf(stat_);
      stat_residual_ = scale > 0.0 ? res_abs / scale : res_abs;
    }
    flux_ = photon_flux(amps_, std::span<const double>(stat_));
    for (int n = 0; n < model.dim; ++n) mu_ += n * stat_[n];
  }

  const ModelSpec& model() const { return model_; }
  const ComputeOptions& opts() const { return opts_; }
  const SectorOperator& sec0() const { return sec0_; }
  const SectorOperator& sec1() const { return sec1_; }
  const std::vector<double>& stationary() const { return stat_; }
  double flux() const { return flux_; }
  double mu() const { return mu_; }
  double stationary_residual() const { return stat_residual_; }
  bool approximate() const { return sec0_.approximate_generator; }

  std::vector<double> seed_v() const {
    std::vector<double> v(model_.dim - 1);
    for (int n = 0; n + 1 < model_.dim; ++n) v[n] = amps_.loss_at(n + 1) * stat_[n + 1];
    return v;
  }

  std::vector<double> weight_w() const {
    std::vector<double> w(model_.dim - 1);
    for (int n = 0; n + 1 < model_.dim; ++n) w[n] = amps_.loss_at(n + 1);
    return w;
  }

  /// u^T x = Tr[J x] for sector-0 vectors x.
  std::vector<double> jump_weight() const {
    std::vector<double> u(model_.dim, 0.0);
    for (int m = 1; m < model_.dim; ++m) u[m] = amps_.loss_at(m) * amps_.loss_at(m);
    return u;
  }

  /// (J rho_ss)_n = l_{n+1}^2 rho_{n+1}.
  std::vector<double> jump_on_stationary() const {
    std::vector<double> p(model_.dim, 0.0);
    for (int n = 0; n + 1 < model_.dim; ++n) {
      const double l = amps_.loss_at(n + 1);
      p[n] = l * l * stat_[n + 1];
    }
    return p;
  }

  double ell_gap() const {
    if (ell_gap_ < 0.0) {
      const cd lam = slowest_eigenvalue(sec1_);
      ell_gap_ = -2.0 * lam.real();
      if (!(ell_gap_ > 0.0)) {
        throw ContractViolationError("sector-1 generator is not stable");
      }
    }
    return ell_gap_;
  }

  double coherence_at(double omega) const {
    const std::vector<double> v = seed_v();
    std::vector<double> rhs(v.size());
    for (size_t i = 0; i < v.size(); ++i) rhs[i] = -v[i];
    const std::vector<cd> z = resolvent_solve(sec1_, omega, rhs, opts_.refine);
    const std::vector<double> w = weight_w();
    cd acc = 0.0;
    for (size_t i = 0; i < w.size(); ++i) acc += w[i] * z[i];
    return 2.0 * acc.real();
  }

  std::pair<double, double> coherence_peak() const {
    const double ell = ell_gap();
    const double f_zero = coherence_at(0.0);
    double a = -2.0 * ell;
    double b = 2.0 * ell;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = coherence_at(x1);
    double f2 = coherence_at(x2);
    const double tol = 1e-4 * ell;
    while (b - a > tol) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + phi * (b - a);
        f2 = coherence_at(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - phi * (b - a);
        f1 = coherence_at(x1);
      }
    }
    const double xm = 0.5 * (a + b);
    const double fm = coherence_at(xm);
    if (f_zero >= fm) return {f_zero, 0.0};
    return {fm, xm};
  }

  double mandel_q(double* residual = nullptr) const {
    const std::vector<double> p = jump_on_stationary();
    std::vector<double> rhs(model_.dim);
    for (int n = 0; n < model_.dim; ++n) rhs[n] = -(p[n] - flux_ * stat_[n]);
    const std::vector<double> z =
        deflated_solve(sec0_, rhs, stat_, opts_.refine, residual);
    double tr_jz = 0.0;
    for (int m = 1; m < model_.dim; ++m) {
      const double l = amps_.loss_at(m);
      tr_jz += l * l * z[m];
    }
    return 2.0 * tr_jz / flux_;
  }

  void require_series_dim() const {
    if (model_.dim > opts_.series_max_dim) {
      throw ValidationError("eigen-series route is capped at D <= " +
                            std::to_string(opts_.series_max_dim));
    }
  }

 private:
  static double stat_inf(const std::vector<double>& v) {
    double best = 0.0;
    for (double x : v) best = std::max(best, std::abs(x));
    return best;
  }

  ModelSpec model_;
  ComputeOptions opts_;
  LadderAmplitudes amps_;
  SectorOperator sec0_;
  SectorOperator sec1_;
  std::vector<double> stat_;
  double stat_residual_ = 0.0;
  double flux_ = 0.0;
  double mu_ = 0.0;
  mutable double ell_gap_ = -1.0;
};

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  }
  return out;
}

// Crank-Nicolson stepping between grid points for dimensions past the
// eigen-series cap. The stiff edge modes carry ~1e-11 of the seed weight, so
// plain trapezoidal stepping at the slow scale is accurate here.
std::vector<double> propagate_g1(const Session& s, std::span<const double> taus) {
  const std::vector<double> v = s.seed_v();
  const std::vector<double> w = s.weight_w();
  const double ell = s.ell_gap();
  const double h_max = 0.02 / ell;
  std::vector<double> y = v;
  std::vector<double> out(taus.size());
  double t_cur = 0.0;
  double h_cached = -1.0;
  std::unique_ptr<BandedLU> lu;
  BandedMatrix forward;
  for (size_t i = 0; i < taus.size(); ++i) {
    const double d = taus[i] - t_cur;
    if (d > 0.0) {
      const int nsub = static_cast<int>(std::ceil(d / h_max));
      const double h = d / nsub;
      if (h != h_cached) {
        lu = std::make_unique<BandedLU>(banded_affine(1.0, -0.5 * h, s.sec1().mat), 0.0);
        forward = banded_affine(1.0, 0.5 * h, s.sec1().mat);
        h_cached = h;
      }
      for (int step = 0; step < nsub; ++step) {
        std::vector<double> rhs = forward.apply(y);
        lu->solve_in_place(rhs);
        y = std::move(rhs);
      }
      t_cur = taus[i];
    }
    double acc = 0.0;
    for (size_t n = 0; n < w.size(); ++n) acc += w[n] * y[n];
    out[i] = acc / s.flux();
  }
  return out;
}

}  // namespace

std::vector<double> stationary_populations(const ModelSpec& model, const ComputeOptions& opts) {
  return Session(model, opts).stationary();
}

BeamObservables compute_observables(const ModelSpec& model, const ComputeOptions& opts) {
  const Session s(model, opts);
  BeamObservables out;
  out.flux = s.flux();
  out.mu = s.mu();
  const auto [coh, peak_w] = s.coherence_peak();
  out.coherence = coh;
  out.peak_omega = peak_w;
  out.linewidth_gap = s.ell_gap();
  out.linewidth_flux = 4.0 * s.flux() / coh;
  double q_res = 0.0;
  out.mandel_q = s.mandel_q(&q_res);
  out.flags.approximate_generator = s.approximate();
  out.flags.max_residual = std::max(s.stationary_residual(), q_res);
  return out;
}

double coherence_at(const ModelSpec& model, double omega, const ComputeOptions& opts) {
  return Session(model, opts).coherence_at(omega);
}

std::pair<double, double> coherence_peak(const ModelSpec& model, const ComputeOptions& opts) {
  return Session(model, opts).coherence_peak();
}

std::vector<double> spectrum(const ModelSpec& model, std::span<const double> omegas,
                             const ComputeOptions& opts) {
  if (omegas.empty()) throw ValidationError("frequency grid is empty");
  const Session s(model, opts);
  std::vector<double> out(omegas.size());
  if (opts.exec == Exec::Parallel) {
    const int threads = resolve_workers(opts.workers);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(omegas.size()); ++i) {
      out[i] = s.coherence_at(omegas[i]);
    }
    (void)threads;
  } else {
    for (size_t i = 0; i < omegas.size(); ++i) out[i] = s.coherence_at(omegas[i]);
  }
  return out;
}

double mandel_q(const ModelSpec& model, const ComputeOptions& opts) {
  return Session(model, opts).mandel_q();
}

IntegralQ mandel_q_by_integral(const ModelSpec& model, double horizon,
                               const ComputeOptions& opts) {
  const Session s(model, opts);
  s.require_series_dim();
  const ModeSeries series =
      ModeSeries::from_sector(s.sec0(), s.jump_weight(), s.jump_on_stationary());
  const double rate = series.slowest_decay_rate();
  if (!(rate > 0.0)) {
    throw ContractViolationError("sector-0 series has no decaying mode");
  }
  IntegralQ out;
  out.horizon = horizon > 0.0 ? horizon : opts.horizon_factor / rate;
  const double flux2 = s.flux() * s.flux();
  const auto f = [&](double t) { return series.value(t) - flux2; };
  const double tol = 1e-6 * std::max(s.flux(), 1e-12);
  const double integral = adaptive_simpson(f, 0.0, out.horizon, tol);
  out.q = 2.0 * integral / s.flux();
  out.tail_estimate = 2.0 * std::abs(f(out.horizon)) / (rate * s.flux());
  out.horizon_warning = out.tail_estimate > 0.01 * std::max(std::abs(out.q), 1e-3);
  return out;
}

CorrelationSeries g1_correlation(const ModelSpec& model, std::span<const double> taus,
                                 const ComputeOptions& opts) {
  check_tau_grid(taus);
  const Session s(model, opts);
  CorrelationSeries out;
  out.taus.assign(taus.begin(), taus.end());
  out.kind = SeriesKind::g1;
  if (model.dim <= opts.series_max_dim) {
    const ModeSeries series = ModeSeries::from_sector(s.sec1(), s.weight_w(), s.seed_v());
    out.values = series.sample(taus, opts.exec, opts.workers);
    for (double& v : out.values) v /= s.flux();
    out.method = "eigen-series";
  } else {
    out.values = propagate_g1(s, taus);
    out.method = "resolvent-propagation";
  }
  return out;
}

CorrelationSeries g2_correlation(const ModelSpec& model, std::span<const double> taus,
                                 const ComputeOptions& opts) {
  check_tau_grid(taus);
  const Session s(model, opts);
  s.require_series_dim();
  const ModeSeries series =
      ModeSeries::from_sector(s.sec0(), s.jump_weight(), s.jump_on_stationary());
  CorrelationSeries out;
  out.taus.assign(taus.begin(), taus.end());
  out.kind = SeriesKind::g2;
  out.values = series.sample(taus, opts.exec, opts.workers);
  const double flux2 = s.flux() * s.flux();
  for (double& v : out.values) v /= flux2;
  out.method = "eigen-series";
  return out;
}

IdealRefs ideal_references(double flux, double ell, double tau, double omega) {
  if (!(ell > 0.0)) throw ValidationError("ideal references need ell > 0");
  IdealRefs out;
  out.g1 = std::exp(-0.5 * ell * std::abs(tau));
  out.g2 = 1.0;
  const double half = 0.5 * ell;
  out.power = flux / std::numbers::pi * half / (half * half + omega * omega);
  return out;
}

Condition4 condition4_deltas(const ModelSpec& model, const ComputeOptions& opts) {
  const Session s(model, opts);
  s.require_series_dim();
  Condition4 out;
  const auto [coh, peak_w] = s.coherence_peak();
  (void)peak_w;
  out.coherence = coh;
  out.flux = s.flux();
  out.window = opts.window_factor * std::sqrt(coh) / s.flux();
  const double ell_flux = 4.0 * s.flux() / coh;
  const std::vector<double> taus = linspace(0.0, out.window, 257);

  const ModeSeries g1_series = ModeSeries::from_sector(s.sec1(), s.weight_w(), s.seed_v());
  const std::vector<double> g1 = g1_series.sample(taus, opts.exec, opts.workers);
  const ModeSeries g2_series =
      ModeSeries::from_sector(s.sec0(), s.jump_weight(), s.jump_on_stationary());
  const std::vector<double> g2 = g2_series.sample(taus, opts.exec, opts.workers);

  const double flux2 = s.flux() * s.flux();
  for (size_t i = 0; i < taus.size(); ++i) {
    const double ideal = std::exp(-0.5 * ell_flux * taus[i]);
    out.delta_g1 = std::max(out.delta_g1, std::abs(g1[i] / s.flux() - ideal));
    out.delta_g2 = std::max(out.delta_g2, std::abs(g2[i] / flux2 - 1.0));
  }
  return out;
}

double coherence_series_peak(const ModelSpec& model, const ComputeOptions& opts) {
  const Session s(model, opts);
  s.require_series_dim();
  const ModeSeries series = ModeSeries::from_sector(s.sec1(), s.weight_w(), s.seed_v());
  const double ell = s.ell_gap();
  const double dt = 0.1 / ell;
  const int count = 401;  // reaches tau = 40 / ell, beyond e^-20 decay
  std::vector<double> taus(count);
  for (int i = 0; i < count; ++i) taus[i] = dt * i;
  const std::vector<double> values = series.sample(taus, opts.exec, opts.workers);
  double best = -std::numeric_limits<double>::infinity();
  const std::vector<double> probes = linspace(-ell, ell, 161);
  for (double omega : probes) {
    best = std::max(best, dft_coherence(values, dt, omega));
  }
  return best;
}

}  // namespace hlsim
