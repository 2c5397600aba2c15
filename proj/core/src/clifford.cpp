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

#include "tcz/clifford.hpp"

#include <bit>
#include <cmath>

#include "tcz/errors.hpp"

namespace tcz {

namespace {

CMatrix pauli1(int x, int z) {
  CMatrix p = CMatrix::Identity(2, 2);
  if (z) p(1, 1) = -1.0;
  if (x) {
    CMatrix xm = CMatrix::Zero(2, 2);
    xm(0, 1) = xm(1, 0) = 1.0;
    p = xm * p;
  }
  return p;
}

CMatrix kron2(const CMatrix& a, const CMatrix& b) {
  CMatrix out(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
  }
  return out;
}

CMatrix rotation(int axis, double theta) {
  CMatrix p = axis == 0 ? pauli1(1, 0) : Complex(0.0, 1.0) * pauli1(1, 1);  // X or Y = iXZ
  return std::cos(theta / 2) * CMatrix::Identity(2, 2) - Complex(0.0, std::sin(theta / 2)) * p;
}

const std::array<Pauli2, 4> kGenerators = {Pauli2{1, 0, 0}, Pauli2{0, 1, 0}, Pauli2{2, 0, 0},
                                           Pauli2{0, 2, 0}};

std::uint32_t pack(const Pauli2& p) { return p.x | (p.z << 2) | (p.r << 4); }

CMatrix layer_unitary(const Layer& l) {
  if (l.cz) {
    CMatrix cz = CMatrix::Identity(4, 4);
    cz(3, 3) = -1.0;
    return cz;
  }
  return kron2(single_qubit_unitary(l.q1), single_qubit_unitary(l.q2));
}

}  // namespace

std::string to_string(Gate1 g) {
  switch (g) {
    case Gate1::X:
      return "X";
    case Gate1::Y:
      return "Y";
    case Gate1::X2:
      return "X/2";
    case Gate1::Y2:
      return "Y/2";
    case Gate1::mX2:
      return "-X/2";
    case Gate1::mY2:
      return "-Y/2";
  }
  return "?";
}

CMatrix gate_unitary(Gate1 g) {
  switch (g) {
    case Gate1::X:
      return rotation(0, kPi);
    case Gate1::Y:
      return rotation(1, kPi);
    case Gate1::X2:
      return rotation(0, kPi / 2);
    case Gate1::Y2:
      return rotation(1, kPi / 2);
    case Gate1::mX2:
      return rotation(0, -kPi / 2);
    case Gate1::mY2:
      return rotation(1, -kPi / 2);
  }
  return CMatrix::Identity(2, 2);
}

CMatrix single_qubit_unitary(const std::vector<Gate1>& seq) {
  CMatrix u = CMatrix::Identity(2, 2);
  for (Gate1 g : seq) u = gate_unitary(g) * u;
  return u;
}

Pauli2 Pauli2::operator*(const Pauli2& o) const {
  const int sign = std::popcount(static_cast<unsigned>(z & o.x)) & 1;
  return Pauli2{static_cast<std::uint8_t>(x ^ o.x), static_cast<std::uint8_t>(z ^ o.z),
                static_cast<std::uint8_t>((r + o.r + 2 * sign) & 3)};
}

CMatrix Pauli2::matrix() const {
  static const Complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return ipow[r & 3] * kron2(pauli1(x & 1, z & 1), pauli1((x >> 1) & 1, (z >> 1) & 1));
}

Tableau Tableau::identity() {
  Tableau t;
  t.img_ = kGenerators;
  return t;
}

Tableau Tableau::from_unitary(const CMatrix& u) {
  if (u.rows() != 4 || u.cols() != 4) throw InvalidDimensionError("tableau needs a 4x4 unitary");
  Tableau t;
  for (int g = 0; g < 4; ++g) {
    const CMatrix m = u * kGenerators[g].matrix() * u.adjoint();
    bool found = false;
    for (std::uint8_t x = 0; x < 4 && !found; ++x) {
      for (std::uint8_t z = 0; z < 4 && !found; ++z) {
        const Complex c = (Pauli2{x, z, 0}.matrix().adjoint() * m).trace() / 4.0;
        if (std::abs(c) > 0.5) {
          if (std::abs(std::abs(c) - 1.0) > 1e-6) throw ValidationError("unitary is not Clifford");
          const long q = std::lround(std::arg(c) / (kPi / 2));
          t.img_[g] = Pauli2{x, z, static_cast<std::uint8_t>(((q % 4) + 4) % 4)};
          found = true;
        }
      }
    }
    if (!found) throw ValidationError("unitary is not Clifford");
  }
  return t;
}

Pauli2 Tableau::apply(const Pauli2& p) const {
  Pauli2 out{0, 0, p.r};
  if (p.x & 1) out = out * img_[0];
  if (p.x & 2) out = out * img_[2];
  if (p.z & 1) out = out * img_[1];
  if (p.z & 2) out = out * img_[3];
  return out;
}

Tableau Tableau::then(const Tableau& next) const {
  Tableau t;
  for (int g = 0; g < 4; ++g) t.img_[g] = next.apply(img_[g]);
  return t;
}

Tableau Tableau::inverse() const {
  Tableau inv;
  for (std::uint8_t x = 0; x < 4; ++x) {
    for (std::uint8_t z = 0; z < 4; ++z) {
      const Pauli2 q = apply(Pauli2{x, z, 0});
      for (int g = 0; g < 4; ++g) {
        if (q.x == kGenerators[g].x && q.z == kGenerators[g].z) {
          inv.img_[g] = Pauli2{x, z, static_cast<std::uint8_t>((4 - q.r) & 3)};
        }
      }
    }
  }
  return inv;
}

std::uint32_t Tableau::key() const {
  std::uint32_t k = 0;
  for (int g = 0; g < 4; ++g) k |= pack(img_[g]) << (6 * g);
  return k;
}

bool Tableau::is_local() const {
  return ((img_[0].x | img_[0].z | img_[1].x | img_[1].z) & 2) == 0 &&
         ((img_[2].x | img_[2].z | img_[3].x | img_[3].z) & 1) == 0;
}

CMatrix CliffordElement::unitary() const {
  CMatrix u = CMatrix::Identity(4, 4);
  for (const auto& l : layers) u = layer_unitary(l) * u;
  return u;
}

int CliffordElement::cz_count() const {
  int n = 0;
  for (const auto& l : layers) n += l.cz ? 1 : 0;
  return n;
}

int CliffordElement::single_qubit_gate_count() const {
  int n = 0;
  for (const auto& l : layers) n += static_cast<int>(l.q1.size() + l.q2.size());
  return n;
}

CliffordElement compose(const CliffordElement& first, const CliffordElement& second) {
  CliffordElement out;
  out.tableau = first.tableau.then(second.tableau);
  out.layers = first.layers;
  out.layers.insert(out.layers.end(), second.layers.begin(), second.layers.end());
  return out;
}

CliffordElement cz_element() {
  CliffordElement e;
  e.layers.push_back(Layer{true, {}, {}});
  e.tableau = Tableau::from_unitary(e.unitary());
  return e;
}

bool equal_up_to_phase(const CMatrix& a, const CMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(a(r, c)) < 1e-12) return false;
  const Complex phase = b(r, c) / a(r, c);
  return (a * (phase / std::abs(phase)) - b).cwiseAbs().maxCoeff() < tol;
}

const CliffordGroup& CliffordGroup::instance() {
  static const CliffordGroup group;
  return group;
}

CliffordGroup::CliffordGroup() {
  using G = Gate1;
  table1_ = {{},
             {G::X},
             {G::Y},
             {G::Y, G::X},
             {G::X2, G::Y2},
             {G::X2, G::mY2},
             {G::mX2, G::Y2},
             {G::mX2, G::mY2},
             {G::Y2, G::X2},
             {G::Y2, G::mX2},
             {G::mY2, G::X2},
             {G::mY2, G::mX2},
             {G::X2},
             {G::mX2},
             {G::Y2},
             {G::mY2},
             {G::mX2, G::Y2, G::X2},
             {G::mX2, G::mY2, G::X2},
             {G::X, G::Y2},
             {G::X, G::mY2},
             {G::Y, G::X2},
             {G::Y, G::mX2},
             {G::X2, G::Y2, G::X2},
             {G::mX2, G::Y2, G::mX2}};
  for (const auto& seq : table1_) {
    const CMatrix u = single_qubit_unitary(seq);
    local_q1_.push_back(Tableau::from_unitary(kron2(u, CMatrix::Identity(2, 2))));
    local_q2_.push_back(Tableau::from_unitary(kron2(CMatrix::Identity(2, 2), u)));
  }

  const std::vector<std::vector<G>> s1 = {{}, {G::Y2, G::X2}, {G::mX2, G::mY2}};
  auto plus = [](std::vector<G> a, G g) {
    a.push_back(g);
    return a;
  };
  auto add_core = [&](std::vector<Layer> layers) {
    CliffordElement e;
    e.layers = layers;
    const Tableau t = Tableau::from_unitary(e.unitary());
    cores_.push_back(Core{std::move(layers), t, t.inverse()});
  };
  const Layer cz{true, {}, {}};
  add_core({});
  for (const auto& s : s1) {
    for (const auto& t : s1) add_core({cz, Layer{false, s, plus(t, G::Y2)}});
  }
  for (const auto& s : s1) {
    for (const auto& t : s1) {
      add_core({cz, Layer{false, {G::Y2}, {G::mX2}}, cz, Layer{false, plus(s, G::Y2), plus(t, G::X2)}});
    }
  }
  add_core({cz, Layer{false, {G::mY2}, {G::Y2}}, cz, Layer{false, {G::Y2}, {G::mY2}}, cz,
            Layer{false, {}, {G::Y2}}});
}

Tableau CliffordGroup::local_tableau(int a, int b) const {
  return local_q1_[a].then(local_q2_[b]);
}

CliffordClass CliffordGroup::class_of(std::size_t index) const {
  if (index < 576) return CliffordClass::Single;
  if (index < 576 + 5184) return CliffordClass::CnotLike;
  if (index < 576 + 2 * 5184) return CliffordClass::IswapLike;
  return CliffordClass::SwapLike;
}

CliffordElement CliffordGroup::element(std::size_t index) const {
  if (index >= kOrder) throw RangeError("Clifford index out of range");
  std::size_t core = 0;
  std::size_t local = 0;
  switch (class_of(index)) {
    case CliffordClass::Single:
      local = index;
      core = 0;
      break;
    case CliffordClass::CnotLike: {
      const std::size_t j = index - 576;
      local = j / 9;
      core = 1 + j % 9;
      break;
    }
    case CliffordClass::IswapLike: {
      const std::size_t j = index - 576 - 5184;
      local = j / 9;
      core = 10 + j % 9;
      break;
    }
    case CliffordClass::SwapLike:
      local = index - 576 - 2 * 5184;
      core = 19;
      break;
  }
  const int a = static_cast<int>(local / 24);
  const int b = static_cast<int>(local % 24);
  CliffordElement e;
  if (a != 0 || b != 0) e.layers.push_back(Layer{false, table1_[a], table1_[b]});
  e.layers.insert(e.layers.end(), cores_[core].layers.begin(), cores_[core].layers.end());
  e.tableau = local_tableau(a, b).then(cores_[core].tableau);
  return e;
}

CliffordElement CliffordGroup::synthesize(const Tableau& t) const {
  for (const Core& core : cores_) {
    const Tableau local = t.then(core.inverse);
    if (!local.is_local()) continue;
    int a = -1, b = -1;
    for (int k = 0; k < 24; ++k) {
      if (local_q1_[k].images()[0] == local.images()[0] &&
          local_q1_[k].images()[1] == local.images()[1]) {
        a = k;
      }
      if (local_q2_[k].images()[2] == local.images()[2] &&
          local_q2_[k].images()[3] == local.images()[3]) {
        b = k;
      }
    }
    if (a < 0 || b < 0) continue;
    CliffordElement e;
    if (a != 0 || b != 0) e.layers.push_back(Layer{false, table1_[a], table1_[b]});
    e.layers.insert(e.layers.end(), core.layers.begin(), core.layers.end());
    e.tableau = t;
    return e;
  }
  throw ValidationError("tableau could not be synthesized");
}

}  // namespace tcz
