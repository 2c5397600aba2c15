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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "tcz/device.hpp"
#include "tcz/noise.hpp"
#include "tcz/propagator.hpp"

namespace tcz::cli {

/// Command-line overrides applied on top of the configuration document.
struct Overrides {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> levels;
  std::string out_dir = ".";
  int threads = 1;
};

/// Resolved run configuration. `doc` is the canonical document (device
/// inlined, overrides applied) and `hash` its FNV-1a digest.
struct RunConfig {
  nlohmann::json doc;
  DeviceParams device;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir;
  int threads = 1;
  std::string hash;

  /// Command block, or an empty object when absent.
  nlohmann::json section(const std::string& name) const;
  /// Top-level "noise": "paper_tuned", "none" or an explicit model.
  bool noise_is_tuned() const;
  NoiseModel explicit_noise() const;
  PropagatorOptions propagator() const;
};

std::uint64_t fnv1a64(std::string_view bytes);

/// Throws ConfigError on unreadable or invalid input.
RunConfig load_run_config(const Overrides& overrides);

}  // namespace tcz::cli
