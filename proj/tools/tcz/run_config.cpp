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

#include "run_config.hpp"

#include <cstdio>
#include <fstream>

#include "tcz/errors.hpp"

namespace tcz::cli {

namespace {

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

nlohmann::json RunConfig::section(const std::string& name) const {
  if (!doc.contains(name)) return nlohmann::json::object();
  const auto& s = doc.at(name);
  if (!s.is_object()) throw ConfigError("'" + name + "' must be a JSON object");
  return s;
}

bool RunConfig::noise_is_tuned() const {
  return !doc.contains("noise") || doc.at("noise") == "paper_tuned";
}

NoiseModel RunConfig::explicit_noise() const {
  NoiseModel n;
  const auto& j = doc.at("noise");
  if (j.is_string()) {
    if (j != "none") throw ConfigError("noise must be \"paper_tuned\", \"none\" or an object");
  } else {
    n = j.get<NoiseModel>();
  }
  n.seed = seed;
  n.validate();
  return n;
}

PropagatorOptions RunConfig::propagator() const {
  const nlohmann::json p = section("propagator");
  PropagatorOptions o{0.01, false, 1e-8, 0.1, threads};
  o.dt_ns = p.value("dt_ns", o.dt_ns);
  o.dissipation_step_ns = p.value("dissipation_step_ns", o.dissipation_step_ns);
  if (!(o.dt_ns > 0.0) || !(o.dissipation_step_ns > 0.0)) {
    throw ConfigError("propagator steps must be positive");
  }
  return o;
}

RunConfig load_run_config(const Overrides& ov) {
  RunConfig rc;
  nlohmann::json doc = nlohmann::json::object();
  std::filesystem::path base = ".";
  if (ov.config_path) {
    doc = read_json(*ov.config_path);
    if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
    base = std::filesystem::path(*ov.config_path).parent_path();
  }
  try {
    if (doc.contains("device_path")) {
      const std::filesystem::path p = base / doc.at("device_path").get<std::string>();
      if (!std::filesystem::exists(p)) throw ConfigError("device file not found: " + p.string());
      rc.device = load_device(p.string());
      doc.erase("device_path");
    } else if (doc.contains("device")) {
      rc.device = doc.at("device").get<DeviceParams>();
    }
    if (ov.levels) rc.device = rc.device.with_levels(*ov.levels);
    rc.device.validate();
    doc["device"] = rc.device;

    rc.seed = ov.seed ? *ov.seed : doc.value("seed", std::uint64_t{1});
    doc["seed"] = rc.seed;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(e.what());
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  } catch (const InvalidDimensionError& e) {
    throw ConfigError(e.what());
  }
  if (ov.threads < 1) throw ConfigError("--threads must be at least 1");
  rc.threads = ov.threads;
  rc.out_dir = ov.out_dir;
  rc.doc = std::move(doc);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(rc.doc.dump())));
  rc.hash = buf;
  return rc;
}

}  // namespace tcz::cli
