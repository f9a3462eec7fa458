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
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hlsim/io.hpp"
#include "hlsim/linalg.hpp"
#include "hlsim/observables.hpp"
#include "hlsim/sector.hpp"
#include "hlsim/sweep.hpp"

namespace hlsim {
namespace {

struct CliState {
  std::string command;
  std::string family;
  double param = 0.0;
  bool param_given = false;
  int dim = 0;
  std::string dims;
  std::string grid;
  std::string kind = "both";
  std::string format = "csv";
  std::string out = "-";
  std::string config_path;
  int workers = 0;
  bool serial = false;
  int refine = 2;
  double window_factor = 1.0;
  double horizon_factor = 40.0;
  int series_cap = 512;
  double null_shift = kNullShiftFactor;
};

ComputeOptions make_options(const CliState& s) {
  ComputeOptions opts;
  opts.refine = s.refine;
  opts.window_factor = s.window_factor;
  opts.horizon_factor = s.horizon_factor;
  opts.series_max_dim = s.series_cap;
  opts.null_shift_factor = s.null_shift;
  opts.exec = s.serial ? Exec::Serial : Exec::Parallel;
  opts.workers = s.workers;
  return opts;
}

Family make_family(const CliState& s) {
  if (s.family == "lambda") return Family::Lambda;
  if (s.family == "q") return Family::RegularPump;
  throw ValidationError("--family must be 'lambda' or 'q'");
}

ModelSpec make_model(const CliState& s) {
  if (s.family.empty()) throw ValidationError("--family is required");
  if (!s.param_given) throw ValidationError("--param is required");
  if (s.dim == 0) throw ValidationError("--dim is required");
  ModelSpec model{make_family(s), s.param, s.dim};
  model.validate();
  return model;
}

std::string canonical_config(const CliState& s) {
  std::ostringstream os;
  os << "command=" << s.command << '\n'
     << "family=" << s.family << '\n'
     << "param=" << (s.param_given ? format_double(s.param) : std::string()) << '\n'
     << "dim=" << s.dim << '\n'
     << "dims=" << s.dims << '\n'
     << "grid=" << s.grid << '\n'
     << "kind=" << s.kind << '\n'
     << "format=" << s.format << '\n'
     << "refine=" << s.refine << '\n'
     << "workers=" << s.workers << '\n'
     << "serial=" << (s.serial ? 1 : 0) << '\n'
     << "window-factor=" << format_double(s.window_factor) << '\n'
     << "horizon-factor=" << format_double(s.horizon_factor) << '\n'
     << "series-cap=" << s.series_cap << '\n'
     << "null-shift=" << format_double(s.null_shift) << '\n';
  return os.str();
}

/// Gap-based linewidth without the full observable pass; used to build the
/// default frequency and delay grids.
double gap_linewidth(const ModelSpec& model) {
  SectorOperator sec1 = sector_generator(model, 1);
  return -2.0 * slowest_eigenvalue(sec1).real();
}

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> xs(count);
  for (int i = 0; i < count; ++i) {
    xs[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return xs;
}

void emit(const Table& table, const CliState& s) {
  Meta meta{kVersion, hash_hex(canonical_config(s)), iso_timestamp_utc()};
  std::ostringstream body;
  if (s.format == "csv") {
    write_csv(table, body);
  } else if (s.format == "json") {
    write_json(table, meta, body);
  } else {
    throw ValidationError("--format must be 'csv' or 'json'");
  }
  if (s.out == "-") {
    std::cout << body.str();
    return;
  }
  std::ofstream file(s.out, std::ios::binary);
  if (!file) throw std::ios_base::failure("cannot open output file: " + s.out);
  file << body.str();
  file.flush();
  if (!file) throw std::ios_base::failure("write failed: " + s.out);
}

int cmd_steady(const CliState& s) {
  ModelSpec model = make_model(s);
  auto probs = stationary_populations(model, make_options(s));
  Table t;
  t.columns = {"n", "prob"};
  for (std::size_t n = 0; n < probs.size(); ++n) {
    t.rows.push_back({static_cast<double>(n), probs[n]});
  }
  emit(t, s);
  return 0;
}

int cmd_observables(const CliState& s) {
  ModelSpec model = make_model(s);
  BeamObservables obs = compute_observables(model, make_options(s));
  if (s.format == "json") {
    // Flat object so the observable names are top-level keys.
    nlohmann::ordered_json doc;
    doc["meta"] = {{"version", kVersion},
                   {"config_hash", hash_hex(canonical_config(s))},
                   {"timestamp", iso_timestamp_utc()}};
    doc["flux"] = obs.flux;
    doc["coherence"] = obs.coherence;
    doc["peak_omega"] = obs.peak_omega;
    doc["linewidth_gap"] = obs.linewidth_gap;
    doc["linewidth_flux"] = obs.linewidth_flux;
    doc["mandel_q"] = obs.mandel_q;
    doc["mu"] = obs.mu;
    doc["flags"] = obs.flags.to_string();
    std::ostringstream body;
    body << doc.dump(2) << '\n';
    if (s.out == "-") {
      std::cout << body.str();
    } else {
      std::ofstream file(s.out, std::ios::binary);
      if (!file) throw std::ios_base::failure("cannot open output file: " + s.out);
      file << body.str();
      file.flush();
      if (!file) throw std::ios_base::failure("write failed: " + s.out);
    }
    return 0;
  }
  Table t;
  t.columns = {"flux", "coherence", "peak_omega", "linewidth_gap",
               "linewidth_flux", "mandel_q", "mu", "flags"};
  t.rows.push_back({obs.flux, obs.coherence, obs.peak_omega, obs.linewidth_gap,
                    obs.linewidth_flux, obs.mandel_q, obs.mu, obs.flags.to_string()});
  emit(t, s);
  return 0;
}

int cmd_spectrum(const CliState& s) {
  ModelSpec model = make_model(s);
  std::vector<double> omegas;
  if (s.grid.empty()) {
    double ell = gap_linewidth(model);
    omegas = linspace(-2.0 * ell, 2.0 * ell, 201);
  } else {
    omegas = parse_grid(s.grid);
  }
  auto values = spectrum(model, omegas, make_options(s));
  Table t;
  t.columns = {"omega", "coh"};
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    t.rows.push_back({omegas[i], values[i]});
  }
  emit(t, s);
  return 0;
}

int cmd_correlations(const CliState& s) {
  ModelSpec model = make_model(s);
  if (s.kind != "g1" && s.kind != "g2" && s.kind != "both") {
    throw ValidationError("--kind must be 'g1', 'g2', or 'both'");
  }
  std::vector<double> taus;
  if (s.grid.empty()) {
    double ell = gap_linewidth(model);
    if (!(ell > 0.0)) throw ConvergenceError("flat correlation horizon", ell, 0);
    taus = linspace(0.0, 10.0 / ell, 201);
  } else {
    taus = parse_grid(s.grid);
  }
  ComputeOptions opts = make_options(s);
  bool want_g1 = s.kind != "g2";
  bool want_g2 = s.kind != "g1";
  if (want_g2 && s.kind == "both" && model.dim > opts.series_max_dim) {
    want_g2 = false;  // keep "both" usable at propagation-only sizes
  }
  CorrelationSeries g1, g2;
  if (want_g1) g1 = g1_correlation(model, taus, opts);
  if (want_g2) g2 = g2_correlation(model, taus, opts);
  Table t;
  t.columns = {"tau"};
  if (want_g1) t.columns.push_back("g1");
  if (want_g2) t.columns.push_back("g2");
  for (std::size_t i = 0; i < taus.size(); ++i) {
    std::vector<Cell> row{taus[i]};
    if (want_g1) row.push_back(g1.values[i]);
    if (want_g2) row.push_back(g2.values[i]);
    t.rows.push_back(std::move(row));
  }
  emit(t, s);
  return 0;
}

int cmd_sweep_dim(const CliState& s) {
  if (s.family.empty()) throw ValidationError("--family is required");
  if (!s.param_given) throw ValidationError("--param is required");
  if (s.dims.empty()) throw ValidationError("--dims is required");
  auto dims = parse_dims(s.dims);
  auto records = sweep_dimension(make_family(s), s.param, dims, make_options(s));
  Table t;
  t.columns = {"family", "param", "dim", "mu", "coh", "mandel_q",
               "flux", "linewidth_gap", "linewidth_flux", "flags"};
  for (const auto& r : records) {
    std::string flags = r.failed ? ("failed:" + r.error) : r.obs.flags.to_string();
    t.rows.push_back({family_name(r.model.family), r.model.param,
                      static_cast<double>(r.model.dim), r.mu, r.obs.coherence,
                      r.obs.mandel_q, r.obs.flux, r.obs.linewidth_gap,
                      r.obs.linewidth_flux, flags});
  }
  emit(t, s);
  return 0;
}

int cmd_sweep_param(const CliState& s) {
  if (s.family.empty()) throw ValidationError("--family is required");
  if (s.dim == 0) throw ValidationError("--dim is required");
  if (s.grid.empty()) throw ValidationError("--grid is required");
  auto params = parse_grid(s.grid);
  auto rows = sweep_parameter(make_family(s), s.dim, params, make_options(s));
  Table t;
  t.columns = {"param", "coh_ratio", "mandel_q", "coh", "flux", "flags"};
  for (const auto& r : rows) {
    t.rows.push_back({r.param, r.coh_ratio, r.mandel_q, r.coh, r.flux, r.flags});
  }
  emit(t, s);
  return 0;
}

int cmd_fit(const CliState& s) {
  if (s.family.empty()) throw ValidationError("--family is required");
  if (!s.param_given) throw ValidationError("--param is required");
  std::string dims_text = s.dims.empty() ? std::string("50,100,200,400,800") : s.dims;
  auto dims = parse_dims(dims_text);
  auto records = sweep_dimension(make_family(s), s.param, dims, make_options(s));
  FitResult fit = fit_power_law(records);
  Table t;
  t.columns = {"exponent", "log_prefactor", "r_squared", "point_count"};
  t.rows.push_back({fit.exponent, fit.log_prefactor, fit.r_squared,
                    static_cast<double>(fit.point_count)});
  emit(t, s);
  return 0;
}

int cmd_oracle(const CliState& s) {
  int dim = s.dim == 0 ? 8 : s.dim;
  OracleReport report = oracle_suite(dim, make_options(s));
  Table t;
  t.columns = {"model", "dev_rho", "dev_coh", "dev_q", "status"};
  for (const auto& r : report.rows) {
    t.rows.push_back({r.model.label(), r.dev_rho, r.dev_coh, r.dev_q,
                      r.failed ? ("failed:" + r.error) : std::string("ok")});
  }
  emit(t, s);
  return 0;
}

int cmd_condition4(const CliState& s) {
  if (s.family.empty()) throw ValidationError("--family is required");
  if (!s.param_given) throw ValidationError("--param is required");
  std::string dims_text = s.dims.empty() ? std::string("32,64,128,256") : s.dims;
  auto dims = parse_dims(dims_text);
  ComputeOptions opts = make_options(s);
  Family family = make_family(s);
  Table t;
  t.columns = {"dim", "coh", "delta_g1", "delta_g2", "delta_g2_scaled", "window"};
  for (int d : dims) {
    ModelSpec model{family, s.param, d};
    model.validate();
    Condition4 c4 = condition4_deltas(model, opts);
    t.rows.push_back({static_cast<double>(d), c4.coherence, c4.delta_g1, c4.delta_g2,
                      c4.delta_g2 * std::sqrt(c4.coherence), c4.window});
  }
  emit(t, s);
  return 0;
}

void apply_config_file(CliState& s, const std::vector<std::string>& given) {
  if (s.config_path.empty()) return;
  std::ifstream file(s.config_path);
  if (!file) throw ValidationError("cannot read config file: " + s.config_path);
  nlohmann::json doc;
  try {
    file >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config file must hold a flat JSON object");
  auto on_cli = [&given](const std::string& name) {
    for (const auto& g : given) {
      if (g == name) return true;
    }
    return false;
  };
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    if (on_cli(key)) continue;  // CLI flags override file values
    const auto& v = it.value();
    auto want = [&](bool ok, const char* type) {
      if (!ok) throw ValidationError("config key '" + key + "' must be " + type);
    };
    if (key == "family") { want(v.is_string(), "a string"); s.family = v.get<std::string>(); }
    else if (key == "param") { want(v.is_number(), "a number"); s.param = v.get<double>(); s.param_given = true; }
    else if (key == "dim") { want(v.is_number_integer(), "an integer"); s.dim = v.get<int>(); }
    else if (key == "dims") { want(v.is_string(), "a string"); s.dims = v.get<std::string>(); }
    else if (key == "grid") { want(v.is_string(), "a string"); s.grid = v.get<std::string>(); }
    else if (key == "kind") { want(v.is_string(), "a string"); s.kind = v.get<std::string>(); }
    else if (key == "format") { want(v.is_string(), "a string"); s.format = v.get<std::string>(); }
    else if (key == "out") { want(v.is_string(), "a string"); s.out = v.get<std::string>(); }
    else if (key == "workers") { want(v.is_number_integer(), "an integer"); s.workers = v.get<int>(); }
    else if (key == "serial") { want(v.is_boolean(), "a boolean"); s.serial = v.get<bool>(); }
    else if (key == "refine") { want(v.is_number_integer(), "an integer"); s.refine = v.get<int>(); }
    else if (key == "window-factor") { want(v.is_number(), "a number"); s.window_factor = v.get<double>(); }
    else if (key == "horizon-factor") { want(v.is_number(), "a number"); s.horizon_factor = v.get<double>(); }
    else if (key == "series-cap") { want(v.is_number_integer(), "an integer"); s.series_cap = v.get<int>(); }
    else if (key == "null-shift") { want(v.is_number(), "a number"); s.null_shift = v.get<double>(); }
    else throw ValidationError("unknown config key: '" + key + "'");
  }
}

void add_common(CLI::App* sub, CliState& s) {
  sub->add_option("--format", s.format, "output format: csv or json");
  sub->add_option("--out", s.out, "output path, '-' for stdout");
  sub->add_option("--config", s.config_path, "flat JSON config file; CLI flags win");
  sub->add_option("--workers", s.workers, "worker count (0 = hardware default)");
  sub->add_flag("--serial", s.serial, "force the serial reference kernels");
  sub->add_option("--refine", s.refine, "residual-polish rounds for banded solves");
  sub->add_option("--window-factor", s.window_factor, "Glauber window scale");
  sub->add_option("--horizon-factor", s.horizon_factor, "series horizon scale");
  sub->add_option("--series-cap", s.series_cap, "largest D for eigen-series routes");
  sub->add_option("--null-shift", s.null_shift, "inverse-iteration shift factor");
}

}  // namespace

int run_cli(int argc, char** argv) {
  CliState s;
  CLI::App app{"hlsim: Heisenberg-limited laser model simulator"};
  app.require_subcommand(0, 1);

  struct SubDef {
    const char* name;
    const char* desc;
    int (*run)(const CliState&);
    bool has_dim, has_dims, has_grid, has_kind;
  };
  const SubDef defs[] = {
      {"steady", "stationary cavity populations", cmd_steady, true, false, false, false},
      {"observables", "all scalar beam observables", cmd_observables, true, false, false, false},
      {"spectrum", "coherence over a frequency grid", cmd_spectrum, true, false, true, false},
      {"correlations", "Glauber correlation functions on a delay grid", cmd_correlations,
       true, false, true, true},
      {"sweep-dim", "observables across cavity dimensions", cmd_sweep_dim,
       false, true, false, false},
      {"sweep-param", "observables across the family parameter", cmd_sweep_param,
       true, false, true, false},
      {"fit", "power-law fit of coherence against mu", cmd_fit, false, true, false, false},
      {"oracle", "sector-vs-dense equivalence panel", cmd_oracle, true, false, false, false},
      {"condition4", "ideal-beam deviation trends across dimensions", cmd_condition4,
       false, true, false, false},
  };

  std::vector<std::pair<CLI::App*, const SubDef*>> subs;
  for (const auto& def : defs) {
    CLI::App* sub = app.add_subcommand(def.name, def.desc);
    sub->add_option("--family", s.family, "model family: lambda or q");
    auto* p = sub->add_option("--param", s.param, "family parameter (lambda or q)");
    p->each([&s](const std::string&) { s.param_given = true; });
    if (def.has_dim) sub->add_option("--dim", s.dim, "cavity dimension D");
    if (def.has_dims) sub->add_option("--dims", s.dims, "comma-separated dimensions");
    if (def.has_grid) sub->add_option("--grid", s.grid, "start:stop:step or comma list");
    if (def.has_kind) sub->add_option("--kind", s.kind, "g1, g2, or both");
    add_common(sub, s);
    subs.emplace_back(sub, &def);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cout, std::cerr);
    return 2;
  }

  CLI::App* chosen = nullptr;
  const SubDef* def = nullptr;
  for (auto& [sub, d] : subs) {
    if (sub->parsed()) {
      chosen = sub;
      def = d;
      break;
    }
  }
  if (chosen == nullptr) {
    std::cerr << app.help() << std::flush;
    return 2;
  }
  s.command = def->name;

  try {
    std::vector<std::string> given;
    for (const auto* opt : chosen->get_options()) {
      if (opt->count() > 0 && !opt->get_lnames().empty()) {
        given.push_back(opt->get_lnames().front());
      }
    }
    apply_config_file(s, given);
    return def->run(s);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace hlsim
