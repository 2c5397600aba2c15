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

#include "tcz/device.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "tcz/errors.hpp"

namespace tcz {

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Q1:
      return "Q1";
    case Mode::Coupler:
      return "C";
    case Mode::Q2:
      return "Q2";
  }
  return "?";
}

void ModeSpec::validate() const {
  if (levels < 3) {
    throw InvalidDimensionError(to_string(label) +
                                ": at least 3 levels are needed to keep second-excited states");
  }
  if (!(frequency_ghz > 0.0)) throw ValidationError(to_string(label) + ": frequency must be > 0");
  if (!(anharmonicity_ghz < 0.0)) {
    throw ValidationError(to_string(label) + ": anharmonicity must be negative");
  }
}

void CouplingGraph::validate() const {
  if (g12_ghz < 0.0 || g1c_ghz < 0.0 || g2c_ghz < 0.0) {
    throw ValidationError("couplings must be non-negative");
  }
}

double CouplingGraph::between(Mode a, Mode b) const {
  if (a == b) return 0.0;
  const bool has_q1 = a == Mode::Q1 || b == Mode::Q1;
  const bool has_q2 = a == Mode::Q2 || b == Mode::Q2;
  if (has_q1 && has_q2) return g12_ghz;
  return has_q1 ? g1c_ghz : g2c_ghz;
}

void DeviceParams::validate() const {
  if (q1.label != Mode::Q1 || coupler.label != Mode::Coupler || q2.label != Mode::Q2) {
    throw ValidationError("device modes must be labelled Q1, C, Q2");
  }
  q1.validate();
  coupler.validate();
  q2.validate();
  couplings.validate();
  flux_map.validate();
}

const ModeSpec& DeviceParams::mode(Mode m) const {
  switch (m) {
    case Mode::Q1:
      return q1;
    case Mode::Coupler:
      return coupler;
    case Mode::Q2:
      return q2;
  }
  return q1;
}

ModeSpec& DeviceParams::mode(Mode m) {
  return const_cast<ModeSpec&>(static_cast<const DeviceParams&>(*this).mode(m));
}

DeviceParams DeviceParams::with_levels(int levels) const {
  DeviceParams out = *this;
  out.q1.levels = out.coupler.levels = out.q2.levels = levels;
  return out;
}

namespace {

void mode_to_json(nlohmann::json& j, const ModeSpec& m) {
  j = nlohmann::json{{"frequency_ghz", m.frequency_ghz},
                     {"anharmonicity_ghz", m.anharmonicity_ghz},
                     {"levels", m.levels}};
}

void mode_from_json(const nlohmann::json& j, ModeSpec& m) {
  m.frequency_ghz = j.value("frequency_ghz", m.frequency_ghz);
  m.anharmonicity_ghz = j.value("anharmonicity_ghz", m.anharmonicity_ghz);
  m.levels = j.value("levels", m.levels);
}

}  // namespace

void to_json(nlohmann::json& j, const DeviceParams& p) {
  nlohmann::json q1, c, q2;
  mode_to_json(q1, p.q1);
  mode_to_json(c, p.coupler);
  mode_to_json(q2, p.q2);
  j = nlohmann::json{{"q1", q1},
                     {"coupler", c},
                     {"q2", q2},
                     {"couplings",
                      {{"g12_ghz", p.couplings.g12_ghz},
                       {"g1c_ghz", p.couplings.g1c_ghz},
                       {"g2c_ghz", p.couplings.g2c_ghz}}},
                     {"flux_map", p.flux_map}};
}

void from_json(const nlohmann::json& j, DeviceParams& p) {
  if (!j.is_object()) throw ConfigError("device description must be a JSON object");
  if (j.contains("q1")) mode_from_json(j.at("q1"), p.q1);
  if (j.contains("coupler")) mode_from_json(j.at("coupler"), p.coupler);
  if (j.contains("q2")) mode_from_json(j.at("q2"), p.q2);
  if (j.contains("couplings")) {
    const auto& g = j.at("couplings");
    p.couplings.g12_ghz = g.value("g12_ghz", p.couplings.g12_ghz);
    p.couplings.g1c_ghz = g.value("g1c_ghz", p.couplings.g1c_ghz);
    p.couplings.g2c_ghz = g.value("g2c_ghz", p.couplings.g2c_ghz);
  }
  if (j.contains("flux_map")) {
    p.flux_map = j.at("flux_map").get<FluxMap>();
  } else {
    // Sweet spot at the idle bias unless told otherwise.
    p.flux_map.omega_max_ghz = p.coupler.frequency_ghz;
    p.flux_map.anharmonicity_ghz = p.coupler.anharmonicity_ghz;
  }
}

DeviceParams load_device(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open device file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("device file " + path + ": " + e.what());
  }
  DeviceParams p = j.get<DeviceParams>();
  p.validate();
  return p;
}

int BareLabel::occupation(Mode m) const {
  switch (m) {
    case Mode::Q1:
      return q1;
    case Mode::Coupler:
      return c;
    case Mode::Q2:
      return q2;
  }
  return 0;
}

BareLabel BareLabel::with(Mode m, int n) const {
  BareLabel out = *this;
  switch (m) {
    case Mode::Q1:
      out.q1 = n;
      break;
    case Mode::Coupler:
      out.c = n;
      break;
    case Mode::Q2:
      out.q2 = n;
      break;
  }
  return out;
}

std::string BareLabel::str() const {
  std::ostringstream os;
  os << '|' << q1 << c << q2 << '>';
  return os.str();
}

StateSpace::StateSpace(std::array<int, 3> levels, int max_excitations)
    : levels_(levels), max_excitations_(max_excitations) {
  for (int l : levels_) {
    if (l < 2) throw InvalidDimensionError("each mode needs at least 2 levels");
  }
  const int total = levels_[0] * levels_[1] * levels_[2];
  lookup_.assign(total, -1);
  manifolds_.assign(max_excitations_ + 1, {});
  for (int n1 = 0; n1 < levels_[0]; ++n1) {
    for (int nc = 0; nc < levels_[1]; ++nc) {
      for (int n2 = 0; n2 < levels_[2]; ++n2) {
        const int n = n1 + nc + n2;
        if (n > max_excitations_) continue;
        const int tensor = (n1 * levels_[1] + nc) * levels_[2] + n2;
        lookup_[tensor] = static_cast<int>(labels_.size());
        manifolds_[n].push_back(static_cast<int>(labels_.size()));
        labels_.push_back({n1, nc, n2});
      }
    }
  }
}

StateSpace StateSpace::full(const DeviceParams& params) {
  std::array<int, 3> levels{params.q1.levels, params.coupler.levels, params.q2.levels};
  return StateSpace(levels, levels[0] + levels[1] + levels[2] - 3);
}

StateSpace StateSpace::excitation_limited(const DeviceParams& params, int max_excitations) {
  if (max_excitations < 0) throw InvalidDimensionError("max_excitations must be >= 0");
  std::array<int, 3> levels{params.q1.levels, params.coupler.levels, params.q2.levels};
  return StateSpace(levels, max_excitations);
}

std::optional<int> StateSpace::index_of(const BareLabel& l) const {
  if (l.q1 < 0 || l.c < 0 || l.q2 < 0) return std::nullopt;
  if (l.q1 >= levels_[0] || l.c >= levels_[1] || l.q2 >= levels_[2]) return std::nullopt;
  const int idx = lookup_[(l.q1 * levels_[1] + l.c) * levels_[2] + l.q2];
  if (idx < 0) return std::nullopt;
  return idx;
}

int StateSpace::require_index(const BareLabel& l) const {
  auto idx = index_of(l);
  if (!idx) throw ValidationError("state " + l.str() + " is not part of this state space");
  return *idx;
}

RVector StateSpace::number_diagonal(Mode m) const {
  RVector d(dimension());
  for (int i = 0; i < dimension(); ++i) d[i] = labels_[i].occupation(m);
  return d;
}

CMatrix annihilation_operator(int levels) {
  if (levels < 2) throw InvalidDimensionError("annihilation operator needs levels >= 2");
  CMatrix a = CMatrix::Zero(levels, levels);
  for (int n = 0; n + 1 < levels; ++n) a(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
  return a;
}

CMatrix static_hamiltonian(const DeviceParams& params, const StateSpace& space) {
  const int dim = space.dimension();
  CMatrix h = CMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const BareLabel& l = space.label(i);
    double e = 0.0;
    for (Mode m : kModes) {
      const ModeSpec& spec = params.mode(m);
      const double n = l.occupation(m);
      if (m != Mode::Coupler) e += spec.frequency_ghz * n;
      e += 0.5 * spec.anharmonicity_ghz * n * (n - 1.0);
    }
    h(i, i) = e;
  }
  // g (a_i^+ a_j + a_i a_j^+) for each unordered pair; fill the a_i^+ a_j
  // element and its mirror.
  constexpr std::array<std::pair<Mode, Mode>, 3> pairs = {
      std::pair{Mode::Q1, Mode::Q2}, std::pair{Mode::Q1, Mode::Coupler},
      std::pair{Mode::Coupler, Mode::Q2}};
  for (auto [mi, mj] : pairs) {
    const double g = params.couplings.between(mi, mj);
    if (g == 0.0) continue;
    for (int col = 0; col < dim; ++col) {
      const BareLabel& l = space.label(col);
      const int ni = l.occupation(mi);
      const int nj = l.occupation(mj);
      if (nj == 0) continue;
      auto row = space.index_of(l.with(mi, ni + 1).with(mj, nj - 1));
      if (!row) continue;
      const double v = g * std::sqrt(static_cast<double>((ni + 1) * nj));
      h(*row, col) += v;
      h(col, *row) += v;
    }
  }
  return h;
}

CMatrix build_hamiltonian(const DeviceParams& params, double coupler_frequency_ghz,
                          const StateSpace& space) {
  if (!(coupler_frequency_ghz > 0.0)) {
    throw ValidationError("coupler frequency must be positive");
  }
  CMatrix h = static_hamiltonian(params, space);
  const RVector nc = space.number_diagonal(Mode::Coupler);
  for (int i = 0; i < space.dimension(); ++i) h(i, i) += coupler_frequency_ghz * nc[i];
  return h;
}

CMatrix build_hamiltonian(const DeviceParams& params, double coupler_frequency_ghz) {
  params.validate();
  return build_hamiltonian(params, coupler_frequency_ghz, StateSpace::full(params));
}

double hermiticity_defect(const CMatrix& h) {
  const double scale = h.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff() / scale;
}

}  // namespace tcz
