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

#include <nlohmann/json.hpp>

#include "tcz/flux_map.hpp"

namespace tcz {

/// Variable in which the half-period sinusoid is drawn.
enum class PulseSpace { Frequency, Flux };

enum class PulseKind { HalfSine, Square };

std::string to_string(PulseSpace s);
PulseSpace pulse_space_from_string(const std::string& s);

struct PulseShape {
  double idle_frequency_ghz = 6.74;
  double peak_frequency_ghz = 6.74;
  double duration_ns = 30.0;
  double sample_step_ns = 0.01;
  PulseSpace space = PulseSpace::Frequency;
  PulseKind kind = PulseKind::HalfSine;
  FluxMap flux_map{};

  static PulseShape idle(double idle_frequency_ghz, double duration_ns, const FluxMap& map);
  static PulseShape from_flux_amplitude(double idle_frequency_ghz, double amplitude_flux,
                                        double duration_ns, const FluxMap& map,
                                        PulseSpace space = PulseSpace::Frequency);

  void validate() const;
  double idle_flux() const { return flux_map.flux_for(idle_frequency_ghz); }
  double peak_flux() const { return flux_map.flux_for(peak_frequency_ghz); }
  double flux_amplitude() const { return peak_flux() - idle_flux(); }
  bool is_idle() const { return peak_frequency_ghz == idle_frequency_ghz; }
};

/// Coupler frequency at time t in [0, duration].
double pulse_waveform(const PulseShape& pulse, double t_ns);
double pulse_flux(const PulseShape& pulse, double t_ns);

struct WaveformSample {
  double t_ns;
  double frequency_ghz;
  double flux;
};

std::vector<WaveformSample> sample_waveform(const PulseShape& pulse);

void to_json(nlohmann::json& j, const PulseShape& p);
void from_json(const nlohmann::json& j, PulseShape& p);

}  // namespace tcz
