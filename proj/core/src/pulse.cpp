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

#include "tcz/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tcz/errors.hpp"
#include "tcz/types.hpp"

namespace tcz {

std::string to_string(PulseSpace s) { return s == PulseSpace::Flux ? "flux" : "frequency"; }

PulseSpace pulse_space_from_string(const std::string& s) {
  if (s == "flux") return PulseSpace::Flux;
  if (s == "frequency") return PulseSpace::Frequency;
  throw ConfigError("unknown pulse space '" + s + "' (expected flux or frequency)");
}

PulseShape PulseShape::idle(double idle_frequency_ghz, double duration_ns, const FluxMap& map) {
  PulseShape p;
  p.idle_frequency_ghz = p.peak_frequency_ghz = idle_frequency_ghz;
  p.duration_ns = duration_ns;
  p.sample_step_ns = std::min(p.sample_step_ns, duration_ns / 100.0);
  p.flux_map = map;
  return p;
}

PulseShape PulseShape::from_flux_amplitude(double idle_frequency_ghz, double amplitude_flux,
                                           double duration_ns, const FluxMap& map,
                                           PulseSpace space) {
  PulseShape p;
  p.idle_frequency_ghz = idle_frequency_ghz;
  p.duration_ns = duration_ns;
  p.sample_step_ns = std::min(p.sample_step_ns, duration_ns / 100.0);
  p.flux_map = map;
  p.space = space;
  p.peak_frequency_ghz = map.frequency(map.flux_for(idle_frequency_ghz) + amplitude_flux);
  return p;
}

void PulseShape::validate() const {
  if (!(duration_ns > 0.0)) throw ValidationError("pulse duration must be positive");
  if (!(sample_step_ns > 0.0) || sample_step_ns > duration_ns / 100.0 * (1.0 + 1e-12)) {
    throw ValidationError("pulse sample step must lie in (0, duration/100]");
  }
  if (!(idle_frequency_ghz > 0.0) || !(peak_frequency_ghz > 0.0)) {
    throw ValidationError("pulse frequencies must be positive");
  }
  if (space == PulseSpace::Flux) {
    flux_map.validate();
    (void)idle_flux();
    (void)peak_flux();
  }
}

namespace {

double envelope(const PulseShape& p, double t) {
  if (p.kind == PulseKind::Square) return (t > 0.0 && t < p.duration_ns) ? 1.0 : 0.0;
  return std::sin(kPi * t / p.duration_ns);
}

void check_time(const PulseShape& p, double t) {
  const double slack = 1e-12 * p.duration_ns;
  if (t < -slack || t > p.duration_ns + slack) {
    std::ostringstream os;
    os << "time " << t << " ns outside pulse [0, " << p.duration_ns << "]";
    throw RangeError(os.str());
  }
}

}  // namespace

double pulse_waveform(const PulseShape& pulse, double t_ns) {
  check_time(pulse, t_ns);
  if (pulse.is_idle()) return pulse.idle_frequency_ghz;
  const double s = envelope(pulse, t_ns);
  if (s == 0.0) return pulse.idle_frequency_ghz;
  if (pulse.space == PulseSpace::Frequency) {
    return pulse.idle_frequency_ghz + (pulse.peak_frequency_ghz - pulse.idle_frequency_ghz) * s;
  }
  const double phi0 = pulse.idle_flux();
  return pulse.flux_map.frequency(phi0 + (pulse.peak_flux() - phi0) * s);
}

double pulse_flux(const PulseShape& pulse, double t_ns) {
  check_time(pulse, t_ns);
  if (pulse.space == PulseSpace::Flux) {
    const double phi0 = pulse.idle_flux();
    return phi0 + (pulse.peak_flux() - phi0) * envelope(pulse, t_ns);
  }
  return pulse.flux_map.flux_for(pulse_waveform(pulse, t_ns));
}

std::vector<WaveformSample> sample_waveform(const PulseShape& pulse) {
  pulse.validate();
  const int n = static_cast<int>(std::ceil(pulse.duration_ns / pulse.sample_step_ns - 1e-9));
  std::vector<WaveformSample> out;
  out.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = i == n ? pulse.duration_ns : i * pulse.duration_ns / n;
    out.push_back({t, pulse_waveform(pulse, t), pulse_flux(pulse, t)});
  }
  return out;
}

void to_json(nlohmann::json& j, const PulseShape& p) {
  j = nlohmann::json{{"idle_frequency_ghz", p.idle_frequency_ghz},
                     {"peak_frequency_ghz", p.peak_frequency_ghz},
                     {"duration_ns", p.duration_ns},
                     {"sample_step_ns", p.sample_step_ns},
                     {"space", to_string(p.space)},
                     {"kind", p.kind == PulseKind::Square ? "square" : "half_sine"},
                     {"flux_map", p.flux_map}};
}

void from_json(const nlohmann::json& j, PulseShape& p) {
  p.idle_frequency_ghz = j.value("idle_frequency_ghz", p.idle_frequency_ghz);
  p.peak_frequency_ghz = j.value("peak_frequency_ghz", p.peak_frequency_ghz);
  p.duration_ns = j.value("duration_ns", p.duration_ns);
  p.sample_step_ns = j.value("sample_step_ns", p.sample_step_ns);
  if (j.contains("space")) p.space = pulse_space_from_string(j.at("space").get<std::string>());
  if (j.contains("kind")) {
    const auto k = j.at("kind").get<std::string>();
    if (k == "square") {
      p.kind = PulseKind::Square;
    } else if (k == "half_sine") {
      p.kind = PulseKind::HalfSine;
    } else {
      throw ConfigError("unknown pulse kind '" + k + "'");
    }
  }
  if (j.contains("flux_map")) p.flux_map = j.at("flux_map").get<FluxMap>();
}

}  // namespace tcz
