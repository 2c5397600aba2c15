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

#include "tcz/gate_channels.hpp"

#include "tcz/calibration.hpp"

namespace tcz {

GateChannels build_gate_channels(const DeviceParams& params, const PulseShape& pulse,
                                 const NoiseModel& noise, double spacing_ns,
                                 const PropagatorOptions& options) {
  const DressedBasis basis = DressedBasis::at_idle(params);
  const CMatrix u = dressed_unitary(basis, params, pulse, Frame::Rotating, options);
  const PhaseCompensation ph = single_qubit_phases(u);
  const CMatrix comp = compensation_unitary(ph.phi1, ph.phi2, basis.dimension());
  GateChannels out;
  out.cz = channel_from_pulse(basis, params, pulse, noise, Frame::Rotating, options)
               .then(QuantumChannel::from_unitary(comp));
  out.idle = idle_channel(basis, params, spacing_ns, noise, Frame::Rotating, options);
  out.phi1 = ph.phi1;
  out.phi2 = ph.phi2;
  return out;
}

RBChannels rb_channels(const GateChannels& gates, double single_qubit_error) {
  return RBChannels{gates.cz, gates.idle, single_qubit_error, std::nullopt};
}

}  // namespace tcz
