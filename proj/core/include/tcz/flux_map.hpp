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

#include <nlohmann/json.hpp>

namespace tcz {

// Coupler frequency versus loop flux for a SQUID-tuned transmon:
//
//   w(phi) = (w_max + |a|) * (cos^2(pi phi) + d^2 sin^2(pi phi))^(1/4) - |a|
//
// Flux is in units of the flux quantum. The map is invertible on the branch
// phi in [0, 0.5].
struct FluxMap {
  double omega_max_ghz = 6.74;
  double anharmonicity_ghz = -0.370;
  double asymmetry = 0.0;

  void validate() const;

  double frequency(double flux) const;
  /// dw/dphi in GHz per flux quantum.
  double slope(double flux) const;
  /// Inverse on [0, 0.5]; throws RangeError outside the achievable band.
  double flux_for(double frequency_ghz) const;

  double min_frequency() const;
};

double flux_to_frequency(const FluxMap& map, double flux);
double frequency_to_flux(const FluxMap& map, double frequency_ghz);

void to_json(nlohmann::json& j, const FluxMap& m);
void from_json(const nlohmann::json& j, FluxMap& m);

}  // namespace tcz
