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

#include "tcz/noise.hpp"

#include <algorithm>
#include <cmath>

#include "tcz/errors.hpp"
#include "tcz/types.hpp"

namespace tcz {

std::string to_string(DephasingKind k) {
  return k == DephasingKind::Markovian ? "markovian" : "quasi_static_gaussian";
}

void RateTable::validate() const {
  if (frequency_ghz.size() < 2 || frequency_ghz.size() != time_us.size()) {
    throw ValidationError("rate table needs >= 2 points and matching columns");
  }
  for (std::size_t i = 0; i < frequency_ghz.size(); ++i) {
    if (i > 0 && !(frequency_ghz[i] > frequency_ghz[i - 1])) {
      throw ValidationError("rate table frequencies must be strictly ascending");
    }
    if (!(time_us[i] > 0.0)) throw ValidationError("rate table times must be positive");
  }
}

double RateTable::at(double w) const {
  const double slack = 1e-9;
  if (w < frequency_ghz.front() - slack || w > frequency_ghz.back() + slack) {
    throw RangeError("coupler frequency " + std::to_string(w) + " GHz outside rate table");
  }
  w = std::clamp(w, frequency_ghz.front(), frequency_ghz.back());
  auto it = std::upper_bound(frequency_ghz.begin(), frequency_ghz.end(), w);
  std::size_t hi = static_cast<std::size_t>(it - frequency_ghz.begin());
  if (hi >= frequency_ghz.size()) hi = frequency_ghz.size() - 1;
  const std::size_t lo = hi - 1;
  const double u = (w - frequency_ghz[lo]) / (frequency_ghz[hi] - frequency_ghz[lo]);
  if (std::isinf(time_us[lo]) || std::isinf(time_us[hi])) {
    // interpolate the rate so an infinite endpoint stays meaningful
    const double rate = (1.0 - u) / time_us[lo] + u / time_us[hi];
    return rate > 0.0 ? 1.0 / rate : kForever;
  }
  return time_us[lo] + u * (time_us[hi] - time_us[lo]);
}

void ModeNoise::validate() const {
  if (!(t1_us > 0.0) || !(tphi_us > 0.0)) throw ValidationError("T1 and Tphi must be positive");
  if (t1_table) t1_table->validate();
  if (tphi_table) tphi_table->validate();
}

double ModeNoise::t1_at(double w) const { return t1_table ? t1_table->at(w) : t1_us; }
double ModeNoise::tphi_at(double w) const { return tphi_table ? tphi_table->at(w) : tphi_us; }

double ModeNoise::gamma1_at(double w) const { return 1.0 / us_to_ns(t1_at(w)); }
double ModeNoise::gamma_phi_at(double w) const { return 1.0 / us_to_ns(tphi_at(w)); }

bool ModeNoise::silent() const {
  return std::isinf(t1_us) && std::isinf(tphi_us) && !t1_table && !tphi_table;
}

void NoiseModel::validate() const {
  for (const auto& m : modes) m.validate();
  if (dephasing == DephasingKind::QuasiStaticGaussian && quasi_static_samples < 1) {
    throw ValidationError("quasi-static averaging needs at least one sample");
  }
}

bool NoiseModel::noiseless() const {
  return std::all_of(modes.begin(), modes.end(), [](const ModeNoise& m) { return m.silent(); });
}

bool NoiseModel::has_relaxation() const {
  return std::any_of(modes.begin(), modes.end(), [](const ModeNoise& m) {
    return !std::isinf(m.t1_us) || m.t1_table.has_value();
  });
}

bool NoiseModel::has_dephasing() const {
  return std::any_of(modes.begin(), modes.end(), [](const ModeNoise& m) {
    return !std::isinf(m.tphi_us) || m.tphi_table.has_value();
  });
}

namespace {

const char* const kModeKeys[3] = {"q1", "coupler", "q2"};

nlohmann::json time_json(double t) { return std::isinf(t) ? nlohmann::json(nullptr) : nlohmann::json(t); }

double time_from(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (j.at(key).is_null()) return kForever;
  return j.at(key).get<double>();
}

nlohmann::json table_json(const RateTable& t) {
  return {{"frequency_ghz", t.frequency_ghz}, {"time_us", t.time_us}};
}

RateTable table_from(const nlohmann::json& j) {
  RateTable t;
  t.frequency_ghz = j.at("frequency_ghz").get<std::vector<double>>();
  t.time_us = j.at("time_us").get<std::vector<double>>();
  return t;
}

}  // namespace

void to_json(nlohmann::json& j, const NoiseModel& n) {
  j = nlohmann::json::object();
  for (int i = 0; i < 3; ++i) {
    const ModeNoise& m = n.modes[i];
    nlohmann::json mj{{"t1_us", time_json(m.t1_us)}, {"tphi_us", time_json(m.tphi_us)}};
    if (m.t1_table) mj["t1_table"] = table_json(*m.t1_table);
    if (m.tphi_table) mj["tphi_table"] = table_json(*m.tphi_table);
    j[kModeKeys[i]] = mj;
  }
  j["dephasing"] = to_string(n.dephasing);
  j["quasi_static_samples"] = n.quasi_static_samples;
  j["seed"] = n.seed;
}

void from_json(const nlohmann::json& j, NoiseModel& n) {
  if (!j.is_object()) throw ConfigError("noise description must be a JSON object");
  for (int i = 0; i < 3; ++i) {
    if (!j.contains(kModeKeys[i])) continue;
    const auto& mj = j.at(kModeKeys[i]);
    ModeNoise& m = n.modes[i];
    m.t1_us = time_from(mj, "t1_us", m.t1_us);
    m.tphi_us = time_from(mj, "tphi_us", m.tphi_us);
    if (mj.contains("t1_table")) m.t1_table = table_from(mj.at("t1_table"));
    if (mj.contains("tphi_table")) m.tphi_table = table_from(mj.at("tphi_table"));
  }
  if (j.contains("dephasing")) {
    const auto k = j.at("dephasing").get<std::string>();
    if (k == "markovian") {
      n.dephasing = DephasingKind::Markovian;
    } else if (k == "quasi_static_gaussian") {
      n.dephasing = DephasingKind::QuasiStaticGaussian;
    } else {
      throw ConfigError("unknown dephasing kind '" + k + "'");
    }
  }
  n.quasi_static_samples = j.value("quasi_static_samples", n.quasi_static_samples);
  n.seed = j.value("seed", n.seed);
}

}  // namespace tcz
