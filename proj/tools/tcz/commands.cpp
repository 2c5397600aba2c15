// Copyright 2026 The tcz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <cmath>
#include <iostream>

#include "output.hpp"
#include "tcz/calibration.hpp"
#include "tcz/error_budget.hpp"
#include "tcz/errors.hpp"
#include "tcz/gate_channels.hpp"
#include "tcz/rb.hpp"
#include "tcz/spectrum.hpp"

namespace tcz::cli {

namespace {

template <typename T>
T field(const nlohmann::json& j, const char* key, T fallback) {
  try {
    return j.value(key, fallback);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
}

/// Coupler grid from either "grid_ghz" or start/stop/step keys.
std::vector<double> coupler_grid(const nlohmann::json& s, double start, double stop, double step) {
  if (s.contains("grid_ghz")) {
    const auto g = field(s, "grid_ghz", std::vector<double>{});
    if (g.empty()) throw ConfigError("grid_ghz is empty");
    return g;
  }
  start = field(s, "start_ghz", start);
  stop = field(s, "stop_ghz", stop);
  step = field(s, "step_ghz", step);
  if (!(step > 0.0) || stop < start) throw ConfigError("coupler grid is empty");
  std::vector<double> out;
  const int n = static_cast<int>(std::floor((stop - start) / step + 1e-9));
  for (int i = 0; i <= n; ++i) out.push_back(start + step * i);
  return out;
}

CalibrationResult calibrate(const RunConfig& rc) {
  const nlohmann::json s = rc.section("calibration");
  CalibrationOptions opts;
  opts.tolerance_rad = field(s, "tolerance_rad", opts.tolerance_rad);
  opts.space = pulse_space_from_string(field(s, "pulse_space", to_string(opts.space)));
  opts.propagator.threads = rc.threads;
  return calibrate_cz(rc.device, field(s, "duration_ns", 30.0), opts);
}

double single_qubit_error(const RunConfig& rc) {
  const double r = field(rc.section("calibration"), "single_qubit_error", 0.0013);
  if (!(r >= 0.0 && r < 0.75)) throw ConfigError("single_qubit_error must lie in [0, 0.75)");
  return r;
}

NoiseModel noise_for(const RunConfig& rc, const PulseShape& pulse) {
  if (!rc.noise_is_tuned()) return rc.explicit_noise();
  NoiseModel n = paper_tuned_noise(rc.device, pulse);
  n.seed = rc.seed;
  return n;
}

}  // namespace

void cmd_spectrum(const RunConfig& rc) {
  const Output out(rc);
  const std::vector<double> grid = coupler_grid(rc.section("spectrum"), 4.9, rc.device.idle_frequency(), 0.01);
  const BranchTracker tracker(rc.device);
  std::vector<BareLabel> labels;
  for (const auto* l : tracker.idle().manifold(2)) labels.push_back(l->label);

  std::vector<std::string> header{"coupler_frequency_GHz"};
  for (const auto& l : labels) {
    header.push_back("E_" + std::to_string(l.q1) + std::to_string(l.c) + std::to_string(l.q2) + "_GHz");
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : tracker.along(grid)) {
    std::vector<std::string> row{num(s.coupler_frequency_ghz)};
    for (const auto& l : labels) row.push_back(num(s.energy(l)));
    rows.push_back(std::move(row));
  }
  out.csv("spectrum.csv", header, rows);

  const GapResult g = min_gap(rc.device, grid);
  out.json("spectrum_gap.json", {{"min_gap_GHz", g.gap_ghz},
                                 {"coupler_frequency_GHz", g.coupler_frequency_ghz},
                                 {"nearest_label", g.nearest.str()},
                                 {"grid_points", grid.size()}});
  std::cout << "minimum gap " << g.gap_ghz * 1e3 << " MHz at " << g.coupler_frequency_ghz << " GHz\n";
}

void cmd_chi_sweep(const RunConfig& rc) {
  const Output out(rc);
  const nlohmann::json s = rc.section("chi_sweep");
  const std::vector<double> grid = coupler_grid(s, 4.9, rc.device.idle_frequency(), 0.01);
  const ChiCurve c = sweep_chi(rc.device, grid, rc.threads);
  std::vector<std::vector<std::string>> rows;
  for (const auto& p : c.points) {
    rows.push_back({num(p.coupler_frequency_ghz), num(p.chi12_ghz), num(p.label_overlap), p.flags});
  }
  out.csv("chi_sweep.csv", {"coupler_frequency_GHz", "chi12_GHz", "label_overlap", "flags"}, rows);

  nlohmann::json summary{{"chi12_idle_GHz", chi12_spectral(rc.device, rc.device.idle_frequency())},
                         {"min_abs_chi12_GHz", c.min_abs_ghz()},
                         {"max_abs_chi12_GHz", c.max_abs_ghz()},
                         {"dynamic_range", c.dynamic_range()}};
  const auto checks = field(s, "ramsey_check_ghz", std::vector<double>{});
  if (!checks.empty()) {
    const double tau = field(s, "ramsey_duration_ns", 200.0);
    std::vector<std::vector<std::string>> rr;
    for (double w : checks) {
      rr.push_back({num(w), num(chi12_spectral(rc.device, w)), num(chi12_from_ramsey(rc.device, w, tau))});
    }
    out.csv("chi_ramsey_check.csv", {"coupler_frequency_GHz", "chi12_spectral_GHz", "chi12_ramsey_GHz"}, rr);
  }
  out.json("chi_sweep_summary.json", summary);
  std::cout << "dynamic range " << c.dynamic_range() << "\n";
}

void cmd_calibrate(const RunConfig& rc) {
  const Output out(rc);
  const double r1q = single_qubit_error(rc);
  const CalibrationResult cal = calibrate(rc);
  nlohmann::json j = calibration_report(cal);
  j["single_qubit_error"] = r1q;
  j["iterations"] = cal.iterations;
  out.json("calibration.json", j);
  std::vector<std::vector<std::string>> rows;
  for (const auto& w : sample_waveform(cal.pulse)) rows.push_back({num(w.t_ns), num(w.frequency_ghz), num(w.flux)});
  out.csv("waveform.csv", {"t_ns", "coupler_frequency_GHz", "flux_Phi0"}, rows);
  std::cout << "conditional phase " << cal.metrics.conditional_phase << " rad, leakage "
            << cal.metrics.leakage << ", coherent infidelity " << cal.metrics.infidelity() << "\n";
}

void cmd_rb(const RunConfig& rc) {
  const Output out(rc);
  const nlohmann::json s = rc.section("rb");
  RBConfig cfg;
  cfg.sequence_lengths = field(s, "sequence_lengths", cfg.sequence_lengths);
  cfg.sequences_per_length = field(s, "sequences_per_length", cfg.sequences_per_length);
  cfg.shots = field(s, "shots", cfg.shots);
  cfg.readout_error = field(s, "readout_error", cfg.readout_error);
  cfg.seed = rc.seed;
  try {
    cfg.validate();
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
  const int resamples = field(s, "bootstrap_resamples", 200);
  if (resamples < 200) throw ConfigError("bootstrap_resamples must be at least 200");

  const CalibrationResult cal = calibrate(rc);
  const NoiseModel noise = noise_for(rc, cal.pulse);
  const GateChannels gates = build_gate_channels(rc.device, cal.pulse, noise,
                                                 field(s, "tau_spacing_ns", kDefaultSpacingNs),
                                                 rc.propagator());
  const InterleavedResult r =
      run_interleaved_rb(rb_channels(gates, single_qubit_error(rc)), cfg, resamples, rc.threads);

  std::vector<std::vector<std::string>> rows;
  for (const auto* arm : {&r.reference, &r.interleaved}) {
    const char* name = arm == &r.reference ? "reference" : "interleaved";
    for (const auto& x : arm->samples) {
      rows.push_back({name, std::to_string(x.length), std::to_string(x.sequence),
                      num(x.ground_population), num(x.leakage_population)});
    }
  }
  out.csv("rb_samples.csv", {"arm", "length", "sequence", "ground_population", "leakage_population"}, rows);
  nlohmann::json j = to_json(r);
  j["noise"] = rc.noise_is_tuned() ? "paper_tuned" : "configured";
  out.json("rb_summary.json", j);
  std::cout << "F_CZ " << r.rates.f_cz << " +- " << r.sigma_f_cz << "\n";
}

void cmd_error_budget(const RunConfig& rc) {
  const Output out(rc);
  const nlohmann::json s = rc.section("error_budget");
  const double spacing = field(s, "tau_spacing_ns", kDefaultSpacingNs);
  const CalibrationResult cal = calibrate(rc);
  const NoiseModel noise = noise_for(rc, cal.pulse);
  const DecoherenceProfile prof = derive_profile(rc.device, noise, profile_grid(rc.device, cal.pulse));
  const EffectiveTimes eff = effective_rates(prof, cal.pulse);
  const std::array<double, 2> idle{prof.qubits[0].t1_idle_us, prof.qubits[1].t1_idle_us};
  const double tau = cal.pulse.duration_ns;

  BudgetInputs in;
  in.dephasing_q1 = dephasing_error(tau, eff.tphi_us[0]);
  in.dephasing_q2 = dephasing_error(tau, eff.tphi_us[1]);
  in.relaxation = relaxation_error(tau, spacing, eff.t1_us, idle);
  in.reconstructed_profile = rc.noise_is_tuned();
  if (s.contains("rb_r_cz")) in.rb_r_cz = field(s, "rb_r_cz", 0.0);
  if (s.contains("nonadiabatic_error")) in.nonadiabatic = field(s, "nonadiabatic_error", 0.0);
  in.formula_inputs = {{"tau_gate_ns", tau},
                       {"tau_spacing_ns", spacing},
                       {"t1_eff_us", eff.t1_us},
                       {"tphi_eff_us", eff.tphi_us},
                       {"t1_idle_us", idle}};

  if (field(s, "transitional", false)) {
    TransitionalOptions topts;
    topts.tau_spacing_ns = spacing;
    topts.propagator = rc.propagator();
    const auto tr = transitional_error_all(rc.device, noise, cal.pulse, topts, rc.threads);
    nlohmann::json states = nlohmann::json::array();
    double mean = 0.0;
    for (const auto& t : tr) {
      states.push_back(to_json(t));
      mean += t.non_t1_error / tr.size();
    }
    out.json("transitional.json", {{"states", states}, {"mean_non_t1_error", mean}});
  }
  const BudgetReport b = budget_report(in);
  out.json("error_budget.json", to_json(b));
  std::cout << "decoherence fraction " << b.decoherence_fraction() << "\n";
}

void cmd_crosstalk(const RunConfig& rc) {
  const Output out(rc);
  const nlohmann::json s = rc.section("crosstalk");
  const auto fractions = field(s, "fractions", std::vector<double>{0.0, 0.02, 0.05, 0.1, 0.2});
  if (fractions.empty()) throw ConfigError("fractions is empty");
  const double victim = field(s, "victim_idle_flux", 0.0);
  double amp = 0.0;
  if (s.contains("aggressor_amplitude_flux")) {
    amp = field(s, "aggressor_amplitude_flux", 0.0);
  } else {
    amp = std::abs(calibrate(rc).pulse.flux_amplitude());
  }
  std::vector<std::vector<std::string>> rows;
  for (double f : fractions) {
    rows.push_back({num(f), num(f * amp), num(crosstalk_sensitivity(rc.device, victim, amp, f))});
  }
  out.csv("crosstalk.csv", {"fraction", "flux_shift_Phi0", "chi12_shift_GHz"}, rows);
  std::cout << "aggressor amplitude " << amp << " Phi0\n";
}

}  // namespace tcz::cli
