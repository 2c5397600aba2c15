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

#include "tcz/flux_map.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tcz/errors.hpp"
#include "tcz/types.hpp"

namespace tcz {

void FluxMap::validate() const {
  if (!(omega_max_ghz > 0.0)) throw ValidationError("flux map: omega_max must be positive");
  if (!(asymmetry >= 0.0 && asymmetry < 1.0)) {
    throw ValidationError("flux map: asymmetry must lie in [0, 1)");
  }
}

double FluxMap::frequency(double flux) const {
  const double c = std::cos(kPi * flux);
  const double s = std::sin(kPi * flux);
  const double shape = std::pow(c * c + asymmetry * asymmetry * s * s, 0.25);
  const double abs_alpha = std::abs(anharmonicity_ghz);
  return (omega_max_ghz + abs_alpha) * shape - abs_alpha;
}

double FluxMap::slope(double flux) const {
  const double c = std::cos(kPi * flux);
  const double s = std::sin(kPi * flux);
  const double d2 = asymmetry * asymmetry;
  const double inner = c * c + d2 * s * s;
  const double abs_alpha = std::abs(anharmonicity_ghz);
  // d/dphi inner^(1/4) = (1/4) inner^(-3/4) * 2 pi s c (d^2 - 1)
  return (omega_max_ghz + abs_alpha) * 0.25 * std::pow(inner, -0.75) * 2.0 * kPi * s * c *
         (d2 - 1.0);
}

double FluxMap::min_frequency() const {
  const double abs_alpha = std::abs(anharmonicity_ghz);
  return (omega_max_ghz + abs_alpha) * std::sqrt(asymmetry) - abs_alpha;
}

double FluxMap::flux_for(double frequency_ghz) const {
  const double lo = std::max(min_frequency(), 0.0);
  if (!(frequency_ghz > lo && frequency_ghz <= omega_max_ghz * (1.0 + 1e-15))) {
    std::ostringstream os;
    os << "coupler frequency " << frequency_ghz << " GHz outside achievable band (" << lo
       << ", " << omega_max_ghz << "]";
    throw RangeError(os.str());
  }
  const double abs_alpha = std::abs(anharmonicity_ghz);
  const double ratio = (frequency_ghz + abs_alpha) / (omega_max_ghz + abs_alpha);
  const double s4 = ratio * ratio * ratio * ratio;
  const double d2 = asymmetry * asymmetry;
  double cos2 = (s4 - d2) / (1.0 - d2);
  cos2 = std::clamp(cos2, 0.0, 1.0);
  return std::acos(std::sqrt(cos2)) / kPi;
}

double flux_to_frequency(const FluxMap& map, double flux) { return map.frequency(flux); }

double frequency_to_flux(const FluxMap& map, double frequency_ghz) {
  return map.flux_for(frequency_ghz);
}

void to_json(nlohmann::json& j, const FluxMap& m) {
  j = nlohmann::json{{"omega_max_ghz", m.omega_max_ghz},
                     {"anharmonicity_ghz", m.anharmonicity_ghz},
                     {"asymmetry", m.asymmetry}};
}

void from_json(const nlohmann::json& j, FluxMap& m) {
  m.omega_max_ghz = j.value("omega_max_ghz", m.omega_max_ghz);
  m.anharmonicity_ghz = j.value("anharmonicity_ghz", m.anharmonicity_ghz);
  m.asymmetry = j.value("asymmetry", m.asymmetry);
}

}  // namespace tcz
