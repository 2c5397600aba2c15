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
#include <string>
#include <vector>

#include "tcz/rng.hpp"
#include "tcz/types.hpp"

namespace tcz {

enum class Gate1 : std::uint8_t { X, Y, X2, Y2, mX2, mY2 };

std::string to_string(Gate1 g);
CMatrix gate_unitary(Gate1 g);
CMatrix single_qubit_unitary(const std::vector<Gate1>& time_ordered);

/// Two-qubit Pauli i^r X^x Z^z; bit q of x and z refers to qubit q (q1 = bit 0).
struct Pauli2 {
  std::uint8_t x = 0;
  std::uint8_t z = 0;
  std::uint8_t r = 0;  // mod 4

  Pauli2 operator*(const Pauli2& o) const;
  bool operator==(const Pauli2& o) const = default;
  CMatrix matrix() const;
};

/// Images of X1, Z1, X2, Z2 under conjugation.
class Tableau {
 public:
  static Tableau identity();
  static Tableau from_unitary(const CMatrix& u);

  Pauli2 apply(const Pauli2& p) const;
  /// This first, then `next`.
  Tableau then(const Tableau& next) const;
  Tableau inverse() const;
  std::uint32_t key() const;
  bool is_local() const;
  const std::array<Pauli2, 4>& images() const { return img_; }
  bool operator==(const Tableau& o) const { return img_ == o.img_; }

 private:
  std::array<Pauli2, 4> img_{};
};

struct Layer {
  bool cz = false;
  std::vector<Gate1> q1;
  std::vector<Gate1> q2;
};

enum class CliffordClass { Single, CnotLike, IswapLike, SwapLike };

struct CliffordElement {
  Tableau tableau = Tableau::identity();
  std::vector<Layer> layers;  // time order

  CMatrix unitary() const;
  int cz_count() const;
  int single_qubit_gate_count() const;
};

CliffordElement compose(const CliffordElement& first, const CliffordElement& second);
CliffordElement cz_element();

bool equal_up_to_phase(const CMatrix& a, const CMatrix& b, double tol);

class CliffordGroup {
 public:
  static constexpr std::size_t kOrder = 11520;
  static const CliffordGroup& instance();

  const std::vector<std::vector<Gate1>>& single_qubit_table() const { return table1_; }
  CliffordElement element(std::size_t index) const;
  CliffordClass class_of(std::size_t index) const;
  CliffordElement sample(CounterRng& rng) const { return element(rng.below(kOrder)); }
  /// Decomposition of the element with the given tableau (single-qubit
  /// Cliffords and CZ only).
  CliffordElement synthesize(const Tableau& t) const;
  CliffordElement inverse(const CliffordElement& e) const { return synthesize(e.tableau.inverse()); }

 private:
  CliffordGroup();
  Tableau local_tableau(int a, int b) const;

  std::vector<std::vector<Gate1>> table1_;
  std::vector<Tableau> local_q1_;  // a (x) I
  std::vector<Tableau> local_q2_;  // I (x) b
  std::vector<std::pair<std::uint32_t, std::uint32_t>> single_keys_;  // (q1 key, q2 key) -> index
  struct Core {
    std::vector<Layer> layers;
    Tableau tableau;
    Tableau inverse;
  };
  std::vector<Core> cores_;
};

}  // namespace tcz
