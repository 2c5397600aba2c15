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

#include "tcz/device.hpp"
#include "tcz/errors.hpp"
#include "tcz/types.hpp"

namespace tcz {

struct Eigensystem {
  RVector energies;  // ascending
  CMatrix vectors;   // columns
};

/// Dense Hermitian eigensolve. Throws ValidationError for non-Hermitian input.
Eigensystem eigensolve(const CMatrix& h);

/// max_k |H v_k - E_k v_k| / max|H|.
double eigen_residual(const CMatrix& h, const Eigensystem& es);

class DegenerateLabelError : public Error {
 public:
  DegenerateLabelError(const std::string& what, BareLabel first, BareLabel second)
      : Error(what), first_(first), second_(second) {}
  BareLabel first() const { return first_; }
  BareLabel second() const { return second_; }

 private:
  BareLabel first_;
  BareLabel second_;
};

struct LabeledLevel {
  BareLabel label;
  double energy_ghz = 0.0;
  CVector state;         // coefficients in the StateSpace basis
  double overlap = 0.0;  // |<label|state>|^2 against the bare state
};

struct LabeledSpectrum {
  double coupler_frequency_ghz = 0.0;
  std::vector<LabeledLevel> levels;  // grouped by manifold, ascending energy inside each

  const LabeledLevel& at(const BareLabel& label) const;
  double energy(const BareLabel& label) const { return at(label).energy_ghz; }
  std::vector<const LabeledLevel*> manifold(int excitations) const;
};

inline constexpr double kLabelTieTolerance = 1e-6;

/// Diagonalizes H(coupler_frequency) block by block over the manifolds of
/// `space`. Each block's eigenvalues come out ascending.
std::vector<Eigensystem> block_eigensystems(const DeviceParams& params, double coupler_frequency_ghz,
                                            const StateSpace& space);

/// Greedy descending-overlap labeling. With no reference the bare basis is
/// used; otherwise overlaps are taken against the reference's labeled states.
LabeledSpectrum label_states(const std::vector<Eigensystem>& blocks, const StateSpace& space,
                             double coupler_frequency_ghz,
                             const LabeledSpectrum* reference = nullptr);

/// Follows dressed levels from the idle point (bare-labeled) to a target
/// coupler frequency in steps no larger than max_step_ghz.
class BranchTracker {
 public:
  BranchTracker(DeviceParams params, StateSpace space, double max_step_ghz = 0.002);
  explicit BranchTracker(const DeviceParams& params, double max_step_ghz = 0.002);

  const DeviceParams& params() const { return params_; }
  const StateSpace& space() const { return space_; }
  const LabeledSpectrum& idle() const { return idle_; }

  LabeledSpectrum at(double coupler_frequency_ghz) const;
  LabeledSpectrum step(const LabeledSpectrum& from, double coupler_frequency_ghz) const;
  /// Labeled spectra along an ordered list of frequencies, starting from idle.
  std::vector<LabeledSpectrum> along(const std::vector<double>& frequencies_ghz) const;

 private:
  DeviceParams params_;
  StateSpace space_;
  double max_step_ghz_;
  LabeledSpectrum idle_;
};

double chi12_from(const LabeledSpectrum& spectrum);

/// E(101) + E(000) - E(100) - E(001), labels followed from idle.
double chi12_spectral(const DeviceParams& params, double coupler_frequency_ghz);

struct ChiPoint {
  double coupler_frequency_ghz = 0.0;
  double evaluated_frequency_ghz = 0.0;  // differs by 1 kHz when perturbed off a degeneracy
  double chi12_ghz = 0.0;
  double label_overlap = 0.0;
  std::string flags = "ok";
  bool valid() const { return flags == "ok" || flags == "perturbed"; }
};

struct ChiCurve {
  std::vector<ChiPoint> points;
  double min_abs_ghz() const;
  double max_abs_ghz() const;
  double dynamic_range() const { return max_abs_ghz() / min_abs_ghz(); }
};

inline constexpr double kDegeneracyShiftGhz = 1e-6;

/// Points are diagonalized concurrently and labeled in a sequential
/// continuity pass outward from the point closest to idle.
ChiCurve sweep_chi(const DeviceParams& params, const std::vector<double>& coupler_frequencies_ghz,
                   int threads = 1);

struct GapResult {
  double gap_ghz = 0.0;
  double coupler_frequency_ghz = 0.0;
  BareLabel nearest{};
  int evaluations = 0;
};

/// Smallest |E(101) - E(other)| inside the two-excitation manifold over the
/// frequency span of `trajectory`: 2 MHz grid, then golden-section refinement.
GapResult min_gap(const DeviceParams& params, const std::vector<double>& trajectory_ghz,
                  double grid_step_ghz = 0.002);

double chi12_at_flux(const DeviceParams& params, double flux);

double crosstalk_sensitivity(const DeviceParams& params, double victim_idle_flux,
                             double aggressor_amplitude_flux, double fraction);

}  // namespace tcz
