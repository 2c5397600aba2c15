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
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tcz/device.hpp"

namespace tcz {

enum class DephasingKind { Markovian, QuasiStaticGaussian };

std::string to_string(DephasingKind k);

/// Characteristic time in µs tabulated against coupler frequency, linearly
/// interpolated.
struct RateTable {
  std::vector<double> frequency_ghz;  // strictly ascending
  std::vector<double> time_us;

  void validate() const;
  double at(double coupler_frequency_ghz) const;
  double min_frequency() const { return frequency_ghz.front(); }
  double max_frequency() const { return frequency_ghz.back(); }
};

inline constexpr double kForever = std::numeric_limits<double>::infinity();

struct ModeNoise {
  double t1_us = kForever;
  double tphi_us = kForever;
  std::optional<RateTable> t1_table;
  std::optional<RateTable> tphi_table;

  void validate() const;
  double t1_at(double coupler_frequency_ghz) const;
  double tphi_at(double coupler_frequency_ghz) const;
  /// 1/T1 in 1/ns.
  double gamma1_at(double coupler_frequency_ghz) const;
  /// 1/Tphi in 1/ns.
  double gamma_phi_at(double coupler_frequency_ghz) const;
  bool silent() const;
};

struct NoiseModel {
  std::array<ModeNoise, 3> modes{};
  DephasingKind dephasing = DephasingKind::QuasiStaticGaussian;
  int quasi_static_samples = 64;
  std::uint64_t seed = 0x5eed;

  static NoiseModel none() { return {}; }

  void validate() const;
  const ModeNoise& mode(Mode m) const { return modes[static_cast<int>(m)]; }
  ModeNoise& mode(Mode m) { return modes[static_cast<int>(m)]; }
  bool noiseless() const;
  bool has_relaxation() const;
  bool has_dephasing() const;
};

void to_json(nlohmann::json& j, const NoiseModel& n);
void from_json(const nlohmann::json& j, NoiseModel& n);

}  // namespace tcz
