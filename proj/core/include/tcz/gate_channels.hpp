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

#include "tcz/channel.hpp"
#include "tcz/device.hpp"
#include "tcz/noise.hpp"
#include "tcz/propagator.hpp"
#include "tcz/pulse.hpp"
#include "tcz/rb.hpp"

namespace tcz {

/// Noisy CZ channel with its single-qubit phases removed by virtual Z, plus
/// the idle channel for the spacing that follows it. Both are in the dressed
/// rotating frame.
struct GateChannels {
  QuantumChannel cz;
  QuantumChannel idle;
  double phi1 = 0.0;
  double phi2 = 0.0;
};

GateChannels build_gate_channels(const DeviceParams& params, const PulseShape& pulse,
                                 const NoiseModel& noise, double spacing_ns,
                                 const PropagatorOptions& options);

RBChannels rb_channels(const GateChannels& gates, double single_qubit_error);

}  // namespace tcz
