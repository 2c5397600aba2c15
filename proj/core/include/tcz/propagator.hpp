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
#include <vector>

#include "tcz/device.hpp"
#include "tcz/noise.hpp"
#include "tcz/pulse.hpp"
#include "tcz/types.hpp"

namespace tcz {

struct PropagatorOptions {
  double dt_ns = 0.002;
  /// Repeat at dt/2 and require every entry to agree within the tolerance.
  bool richardson = true;
  double richardson_tolerance = 1e-8;
  /// Coarse step for the dissipative half-steps of the Strang splitting.
  double dissipation_step_ns = 0.1;
  int threads = 1;
};

/// Static per-mode frequency offsets in units of standard normal deviates;
/// scaled by sqrt(2)/(2 pi Tphi) at each instant.
using QuasiStaticDraw = std::array<double, 3>;

/// Time-ordered propagator restricted to `space`, fourth-order
/// commutator-free Magnus steps with per-manifold exponentials.
CMatrix propagate_unitary_fixed_step(const DeviceParams& params, const PulseShape& pulse,
                                     const StateSpace& space, double dt_ns,
                                     const NoiseModel* noise = nullptr,
                                     const QuasiStaticDraw* draw = nullptr);

CMatrix propagate_unitary(const DeviceParams& params, const PulseShape& pulse,
                          const StateSpace& space, const PropagatorOptions& options = {});

/// Same on the two-excitation space, which is exact for the dynamics of the
/// computational states.
CMatrix propagate_unitary(const DeviceParams& params, const PulseShape& pulse,
                          const PropagatorOptions& options = {});

/// Entrywise max |U(dt) - U(dt/2)|.
double richardson_residual(const DeviceParams& params, const PulseShape& pulse,
                           const StateSpace& space, double dt_ns);

double unitarity_defect(const CMatrix& u);

/// Stratified standard-normal draws, one row per realization, mode columns
/// independently permuted. Depends only on (seed, count).
std::vector<QuasiStaticDraw> quasi_static_draws(std::uint64_t seed, int count);

void validate_density_matrix(const CMatrix& rho, double tolerance = 1e-8);

/// Evolves every operator in `ops` (bare basis of `space`) through the
/// noisy pulse for one quasi-static realization.
void evolve_operators(const DeviceParams& params, const PulseShape& pulse,
                      const NoiseModel& noise, const StateSpace& space,
                      const QuasiStaticDraw& draw, const PropagatorOptions& options,
                      std::vector<CMatrix>& ops);

/// Lindblad evolution; quasi-static dephasing is averaged over draws.
CMatrix propagate_lindblad(const DeviceParams& params, const PulseShape& pulse,
                           const NoiseModel& noise, const CMatrix& rho0,
                           const StateSpace& space, const PropagatorOptions& options = {});

CMatrix propagate_lindblad(const DeviceParams& params, const PulseShape& pulse,
                           const NoiseModel& noise, const CMatrix& rho0,
                           const PropagatorOptions& options = {});

}  // namespace tcz
