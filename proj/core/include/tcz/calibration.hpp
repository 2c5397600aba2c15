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

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tcz/channel.hpp"
#include "tcz/device.hpp"
#include "tcz/propagator.hpp"
#include "tcz/pulse.hpp"

namespace tcz {

enum class ControlState { Ground, Excited };

struct RamseyResult {
  ControlState control_state = ControlState::Ground;
  std::vector<double> phases;
  std::vector<double> populations;
  /// Phase acquired by Q2 relative to its idle frame, arg(U_{c1,c1}/U_{c0,c0}).
  double fitted_phase = 0.0;
  double fit_residual = 0.0;
};

std::vector<double> default_phase_grid(int points = 16);

/// pi/2 on Q2, flux pulse, pi/2 about an axis at angle phi, then Q2
/// excited-state population, with Q1 held in `control`.
RamseyResult conditional_ramsey(const DeviceParams& params, const PulseShape& pulse,
                                ControlState control, const std::vector<double>& phase_grid,
                                const PropagatorOptions& options = {});

/// Excited minus ground fitted phase.
double ramsey_phase_difference(const DeviceParams& params, const PulseShape& pulse,
                               const std::vector<double>& phase_grid,
                               const PropagatorOptions& options = {});

/// chi12 recovered from a square pulse of the given duration; the dynamic
/// phase of |11> runs as exp(-i 2 pi chi t), so chi = -dphi / (2 pi tau).
double chi12_from_ramsey(const DeviceParams& params, double coupler_frequency_ghz,
                         double duration_ns, const PropagatorOptions& options = {});

CMatrix cz_matrix();

/// Z phase diag(1, e^{i b}, e^{i a}, e^{i(a+b)}) for Z1(a) Z2(b).
CMatrix z_rotations(double a, double b);

/// phi11 - phi10 - phi01 + phi00 of the computational block.
double conditional_phase(const CMatrix& u);

struct PhaseCompensation {
  double phi1 = 0.0;
  double phi2 = 0.0;
  CMatrix compensated;  // same dimension as the input
};

PhaseCompensation single_qubit_phases(const CMatrix& u);

/// Dressed-space unitary undoing the single-qubit phases.
CMatrix compensation_unitary(double phi1, double phi2, int dimension);

struct GateMetrics {
  double conditional_phase = 0.0;  // [0, 2 pi)
  double phi1 = 0.0;
  double phi2 = 0.0;
  double leakage = 0.0;
  double avg_fidelity_coherent = 0.0;
  double infidelity() const { return 1.0 - avg_fidelity_coherent; }
};

GateMetrics gate_metrics(const CMatrix& u);
GateMetrics gate_metrics(const CMatrix& u, const CMatrix& target);

struct CalibrationOptions {
  double tolerance_rad = 1e-4;
  PulseSpace space = PulseSpace::Frequency;
  /// Coarse scan: step of the peak excursion, GHz (frequency) or Phi0 (flux).
  std::optional<double> scan_step;
  double scan_dt_ns = 0.02;
  /// Step for the root refinement; the final unitary is Richardson-checked.
  PropagatorOptions propagator{0.005, true, 1e-8, 0.1, 1};
  int max_iterations = 100;
  /// Skip the scan and refine from this peak frequency.
  std::optional<double> start_peak_ghz;
};

struct CalibrationResult {
  PulseShape pulse;
  GateMetrics metrics;
  CMatrix unitary;  // dressed, rotating frame
  int iterations = 0;
  std::string diagnostics;
};

CalibrationResult calibrate_cz(const DeviceParams& params, double duration_ns,
                               const CalibrationOptions& options = {});

nlohmann::json calibration_report(const CalibrationResult& result);

}  // namespace tcz
