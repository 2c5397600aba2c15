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
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tcz/flux_map.hpp"
#include "tcz/types.hpp"

namespace tcz {

enum class Mode : int { Q1 = 0, Coupler = 1, Q2 = 2 };

inline constexpr std::array<Mode, 3> kModes = {Mode::Q1, Mode::Coupler, Mode::Q2};

std::string to_string(Mode mode);

/// One bosonic mode truncated to `levels` Fock states. Frequencies are
/// omega/2pi in GHz; transmon anharmonicities are negative.
struct ModeSpec {
  Mode label = Mode::Q1;
  double frequency_ghz = 5.0;
  double anharmonicity_ghz = -0.2;
  int levels = 5;

  void validate() const;
};

/// Exchange couplings g_ij/2pi in GHz, one per unordered pair.
struct CouplingGraph {
  double g12_ghz = 0.0;
  double g1c_ghz = 0.0;
  double g2c_ghz = 0.0;

  void validate() const;
  double between(Mode a, Mode b) const;
};

/// Qubit-coupler-qubit circuit. The stored coupler frequency is the idle
/// bias; Hamiltonians are built for an explicit coupler frequency.
struct DeviceParams {
  ModeSpec q1{Mode::Q1, 5.27, -0.210, 5};
  ModeSpec coupler{Mode::Coupler, 6.74, -0.370, 5};
  ModeSpec q2{Mode::Q2, 4.62, -0.240, 5};
  CouplingGraph couplings{0.012, 0.122, 0.105};
  FluxMap flux_map{};

  static DeviceParams paper_defaults() { return {}; }

  void validate() const;
  const ModeSpec& mode(Mode m) const;
  ModeSpec& mode(Mode m);
  double idle_frequency() const { return coupler.frequency_ghz; }
  /// Copy with every mode truncated to `levels`.
  DeviceParams with_levels(int levels) const;
};

void to_json(nlohmann::json& j, const DeviceParams& p);
void from_json(const nlohmann::json& j, DeviceParams& p);
DeviceParams load_device(const std::string& path);

/// Fock occupation of (Q1, coupler, Q2), printed as |n1 nc n2>.
struct BareLabel {
  int q1 = 0;
  int c = 0;
  int q2 = 0;

  int excitations() const { return q1 + c + q2; }
  int occupation(Mode m) const;
  BareLabel with(Mode m, int n) const;
  std::string str() const;

  auto operator<=>(const BareLabel&) const = default;
};

/// A set of bare product states in tensor order (Q1 slowest, Q2 fastest).
/// Either the full truncated tensor space or the part of it with at most
/// `max_excitations` quanta in total. The Hamiltonian conserves excitation
/// number, so it is block diagonal over `manifold(n)`.
class StateSpace {
 public:
  static StateSpace full(const DeviceParams& params);
  static StateSpace excitation_limited(const DeviceParams& params, int max_excitations);

  int dimension() const { return static_cast<int>(labels_.size()); }
  const BareLabel& label(int index) const { return labels_[index]; }
  const std::vector<BareLabel>& labels() const { return labels_; }
  std::optional<int> index_of(const BareLabel& label) const;
  int require_index(const BareLabel& label) const;

  int levels(Mode m) const { return levels_[static_cast<int>(m)]; }
  int max_excitations() const { return max_excitations_; }
  const std::vector<std::vector<int>>& manifolds() const { return manifolds_; }
  const std::vector<int>& manifold(int n) const { return manifolds_.at(n); }

  /// Diagonal of n_m in this basis.
  RVector number_diagonal(Mode m) const;

  bool operator==(const StateSpace& other) const {
    return labels_ == other.labels_ && levels_ == other.levels_;
  }

 private:
  StateSpace(std::array<int, 3> levels, int max_excitations);

  std::array<int, 3> levels_;
  int max_excitations_;
  std::vector<BareLabel> labels_;
  std::vector<int> lookup_;  // tensor index -> position, -1 when absent
  std::vector<std::vector<int>> manifolds_;
};

/// Truncated bosonic lowering operator: a|n> = sqrt(n)|n-1>.
CMatrix annihilation_operator(int levels);

/// H/h in GHz on the full tensor space ordered (Q1, C, Q2), with the coupler
/// at `coupler_frequency_ghz`.
CMatrix build_hamiltonian(const DeviceParams& params, double coupler_frequency_ghz);

/// Same operator restricted to `space`, which is an invariant subspace when it
/// is a union of excitation manifolds.
CMatrix build_hamiltonian(const DeviceParams& params, double coupler_frequency_ghz,
                          const StateSpace& space);

/// Part of H that does not depend on the coupler frequency; the full operator
/// is static + coupler_frequency * diag(n_c).
CMatrix static_hamiltonian(const DeviceParams& params, const StateSpace& space);

/// max |H - H^dagger| relative to max |H|.
double hermiticity_defect(const CMatrix& h);

}  // namespace tcz
