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

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tcz/channel.hpp"
#include "tcz/device.hpp"
#include "tcz/noise.hpp"
#include "tcz/pulse.hpp"
#include "tcz/rb.hpp"

namespace tcz {

/// Dressed-qubit characteristic times against coupler frequency (µs).
struct QubitProfile {
  RateTable t1;
  RateTable tphi;
  double t1_idle_us = kForever;
  double tphi_idle_us = kForever;
};

struct DecoherenceProfile {
  std::array<QubitProfile, 2> qubits;  // Q1, Q2
  /// True when the profile is synthetic rather than measured.
  bool reconstructed = false;

  void validate() const;
};

/// Profile of the dressed |100> and |001> states: relaxation rates add with
/// the mode participations, Gaussian dephasing rates add in quadrature with
/// squared participations.
DecoherenceProfile derive_profile(const DeviceParams& params, const NoiseModel& noise,
                                  const std::vector<double>& coupler_frequencies_ghz);

struct EffectiveTimes {
  std::array<double, 2> t1_us{};
  std::array<double, 2> tphi_us{};
};

/// Pulse-weighted average of 1/T1 and of 1/Tphi^2.
EffectiveTimes effective_rates(const DecoherenceProfile& profile, const PulseShape& pulse,
                               int samples = 3000);

double dephasing_error(double tau_gate_ns, double tphi_eff_us);

double relaxation_error(double tau_gate_ns, double tau_spacing_ns,
                        const std::array<double, 2>& t1_eff_us,
                        const std::array<double, 2>& t1_idle_us);

inline constexpr double kDefaultSpacingNs = 4.0;

struct TuningTargets {
  double tphi_q1_eff_us = 0.5;
  double relaxation_error = 0.0028;
  double tau_spacing_ns = kDefaultSpacingNs;
};

/// Synthetic noise model: fixed qubit times plus a coupler with constant T1
/// and flux-noise-limited Tphi(omega_c) = 1/(G0 + kappa |d omega/d Phi|), where
/// T1 and kappa are solved so the dressed profile meets `targets`.
NoiseModel paper_tuned_noise(const DeviceParams& params, const PulseShape& pulse,
                             const TuningTargets& targets = {});

/// Coupler frequency grid spanning [min over pulse, idle] with margins.
std::vector<double> profile_grid(const DeviceParams& params, const PulseShape& pulse,
                                 double step_ghz = 0.01);

struct TransitionalOptions {
  int m_max = 600;
  int m_step = 20;
  double tau_spacing_ns = kDefaultSpacingNs;
  PropagatorOptions propagator{0.01, false, 1e-8, 0.1, 1};
};

struct TransitionalArm {
  std::vector<int> m;
  std::vector<double> population;
  FitResult fit;
  double error_per_gate = 0.0;  // A (1 - p)
};

struct TransitionalResult {
  BareLabel joint_state;
  TransitionalArm cz;
  TransitionalArm identity;
  double additional_error = 0.0;
  double t1_contribution = 0.0;
  double non_t1_error = 0.0;
};

/// Repeated-gate retention of one joint eigenstate (q1, q2 occupations) for
/// the pulse and for an idle of equal length.
TransitionalResult transitional_error_experiment(const DeviceParams& params,
                                                 const NoiseModel& noise, int q1, int q2,
                                                 const PulseShape& pulse,
                                                 const TransitionalOptions& options = {});

/// All four joint states, evaluated in parallel.
std::vector<TransitionalResult> transitional_error_all(const DeviceParams& params,
                                                       const NoiseModel& noise,
                                                       const PulseShape& pulse,
                                                       const TransitionalOptions& options = {},
                                                       int threads = 1);

struct BudgetInputs {
  double dephasing_q1 = 0.0;
  double dephasing_q2 = 0.0;
  double relaxation = 0.0;
  /// Explicit nonadiabatic error; when absent it is the remainder of rb_r_cz.
  std::optional<double> nonadiabatic;
  std::optional<double> rb_r_cz;
  bool reconstructed_profile = false;
  /// Free-form record of the formula inputs, copied into the report.
  nlohmann::json formula_inputs = nlohmann::json::object();
};

struct BudgetReport {
  double dephasing_error_q1 = 0.0;
  double dephasing_error_q2 = 0.0;
  double relaxation_error = 0.0;
  double nonadiabatic_error = 0.0;
  double total = 0.0;
  double fraction_dephasing_q1 = 0.0;
  double fraction_dephasing_q2 = 0.0;
  double fraction_relaxation = 0.0;
  double fraction_nonadiabatic = 0.0;
  std::optional<double> rb_r_cz;
  std::optional<double> rb_discrepancy;  // |total - r_cz|
  bool reconstructed_profile = false;
  nlohmann::json formula_inputs = nlohmann::json::object();

  double decoherence_error() const { return dephasing_error_q1 + dephasing_error_q2 + relaxation_error; }
  double decoherence_fraction() const {
    return fraction_dephasing_q1 + fraction_dephasing_q2 + fraction_relaxation;
  }
};

BudgetReport budget_report(const BudgetInputs& inputs);

nlohmann::json to_json(const BudgetReport& r);
nlohmann::json to_json(const TransitionalResult& r);

}  // namespace tcz
