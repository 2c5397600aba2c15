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

#include <string>
#include <vector>

#include "tcz/device.hpp"
#include "tcz/noise.hpp"
#include "tcz/propagator.hpp"
#include "tcz/pulse.hpp"
#include "tcz/types.hpp"

namespace tcz {

/// Column-stacked superoperator: vec(rho)[a + d*b] = rho(a, b).
class QuantumChannel {
 public:
  QuantumChannel() = default;
  explicit QuantumChannel(CMatrix superop);

  static QuantumChannel identity(int dimension);
  static QuantumChannel from_unitary(const CMatrix& u);
  static QuantumChannel from_kraus(const std::vector<CMatrix>& kraus);

  int dimension() const { return dimension_; }
  const CMatrix& superoperator() const { return superop_; }

  CMatrix apply(const CMatrix& rho) const;
  /// Channel that applies *this first and `next` afterwards.
  QuantumChannel then(const QuantumChannel& next) const;
  QuantumChannel operator*(const QuantumChannel& first) const;  // (*this) after first

  CMatrix choi() const;
  double trace_preservation_defect() const;
  double min_choi_eigenvalue() const;
  /// Throws AccuracyError when TP or CP is violated beyond tolerance.
  void check_cptp(double tolerance = 1e-8) const;

 private:
  int dimension_ = 0;
  CMatrix superop_;
};

CMatrix vectorize(const CMatrix& rho);
CMatrix unvectorize(const CMatrix& v, int dimension);

enum class Frame { Lab, Rotating };

inline constexpr int kComputationalDim = 4;

/// Dressed idle eigenstates of the two-excitation space: the four
/// computational states |00>,|01>,|10>,|11> first, then leakage levels.
struct DressedBasis {
  StateSpace space;
  CMatrix vectors;                // bare coefficients, one column per dressed state
  std::vector<BareLabel> labels;  // dressed ordering
  RVector energies_ghz;
  RVector frame_energies_ghz;     // single-qubit sums on computational states

  static DressedBasis at_idle(const DeviceParams& params);
  int dimension() const { return static_cast<int>(labels.size()); }
  /// Bare-space operator -> dressed-basis operator.
  CMatrix to_dressed(const CMatrix& bare_op) const;
  CMatrix to_bare(const CMatrix& dressed_op) const;
  /// diag(exp(+i 2 pi E_k t)) removing the frame evolution.
  CMatrix frame_rotation(double t_ns) const;
};

/// Coherent propagator in the dressed basis.
CMatrix dressed_unitary(const DeviceParams& params, const PulseShape& pulse, Frame frame,
                        const PropagatorOptions& options = {});
CMatrix dressed_unitary(const DressedBasis& basis, const DeviceParams& params,
                        const PulseShape& pulse, Frame frame,
                        const PropagatorOptions& options = {});

/// Noisy pulse as a channel on the dressed two-excitation space.
QuantumChannel channel_from_pulse(const DeviceParams& params, const PulseShape& pulse,
                                  const NoiseModel& noise, Frame frame = Frame::Rotating,
                                  const PropagatorOptions& options = {});
QuantumChannel channel_from_pulse(const DressedBasis& basis, const DeviceParams& params,
                                  const PulseShape& pulse, const NoiseModel& noise, Frame frame,
                                  const PropagatorOptions& options = {});

QuantumChannel idle_channel(const DressedBasis& basis, const DeviceParams& params,
                            double duration_ns, const NoiseModel& noise, Frame frame,
                            const PropagatorOptions& options = {});

/// Embeds a 4x4 computational-subspace unitary, identity on leakage levels.
CMatrix embed_computational(const CMatrix& u4, int dimension);

/// Population left in the computational block, averaged over the four
/// computational inputs.
double channel_leakage(const QuantumChannel& channel);

}  // namespace tcz
