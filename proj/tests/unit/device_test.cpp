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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tcz/device.hpp"
#include "tcz/errors.hpp"
#include "tcz/flux_map.hpp"

namespace tcz {
namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

// Independent construction from Kronecker products of ladder operators.
CMatrix reference_hamiltonian(const DeviceParams& p, double wc) {
  const int l1 = p.q1.levels, lc = p.coupler.levels, l2 = p.q2.levels;
  auto lower = [](int n) {
    CMatrix a = CMatrix::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
  };
  const CMatrix i1 = CMatrix::Identity(l1, l1), ic = CMatrix::Identity(lc, lc),
                i2 = CMatrix::Identity(l2, l2);
  const CMatrix a1 = kron(kron(lower(l1), ic), i2);
  const CMatrix ac = kron(kron(i1, lower(lc)), i2);
  const CMatrix a2 = kron(kron(i1, ic), lower(l2));
  auto duffing = [](const CMatrix& a, double w, double alpha) {
    const CMatrix ad = a.adjoint();
    return CMatrix(w * ad * a + 0.5 * alpha * ad * ad * a * a);
  };
  auto exch = [](const CMatrix& a, const CMatrix& b, double g) {
    return CMatrix(g * (a.adjoint() * b + a * b.adjoint()));
  };
  return duffing(a1, p.q1.frequency_ghz, p.q1.anharmonicity_ghz) +
         duffing(ac, wc, p.coupler.anharmonicity_ghz) +
         duffing(a2, p.q2.frequency_ghz, p.q2.anharmonicity_ghz) +
         exch(a1, a2, p.couplings.g12_ghz) + exch(a1, ac, p.couplings.g1c_ghz) +
         exch(a2, ac, p.couplings.g2c_ghz);
}

TEST(Device, HamiltonianMatchesKroneckerConstruction) {
  DeviceParams p;
  p.q1.levels = 3;
  p.coupler.levels = 4;
  p.q2.levels = 3;
  for (double wc : {6.74, 5.3, 4.9}) {
    const CMatrix h = build_hamiltonian(p, wc);
    EXPECT_LT((h - reference_hamiltonian(p, wc)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Device, HermitianAndNumberConserving) {
  const DeviceParams p;
  const CMatrix h = build_hamiltonian(p, 5.5);
  EXPECT_EQ(h.rows(), 125);
  EXPECT_LT(hermiticity_defect(h), 1e-14);
  const StateSpace s = StateSpace::full(p);
  RVector n = RVector::Zero(s.dimension());
  for (Mode m : kModes) n += s.number_diagonal(m);
  const CMatrix nop = n.cast<Complex>().asDiagonal();
  EXPECT_LT((h * nop - nop * h).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Device, UncoupledLadderIsDuffing) {
  DeviceParams p;
  p.couplings = CouplingGraph{0.0, 0.0, 0.0};
  const StateSpace s = StateSpace::full(p);
  const CMatrix h = build_hamiltonian(p, 6.1);
  for (int k = 0; k < s.dimension(); ++k) {
    const BareLabel& l = s.label(k);
    auto e = [](int n, double w, double a) { return w * n + 0.5 * a * n * (n - 1); };
    const double expected = e(l.q1, 5.27, -0.210) + e(l.c, 6.1, -0.370) + e(l.q2, 4.62, -0.240);
    EXPECT_NEAR(h(k, k).real(), expected, 1e-12);
  }
}

TEST(Device, ExcitationLimitedSpaceIsInvariantBlock) {
  const DeviceParams p;
  const StateSpace small = StateSpace::excitation_limited(p, 2);
  EXPECT_EQ(small.dimension(), 10);
  EXPECT_EQ(small.manifold(0).size(), 1u);
  EXPECT_EQ(small.manifold(1).size(), 3u);
  EXPECT_EQ(small.manifold(2).size(), 6u);
  const CMatrix full = build_hamiltonian(p, 5.8);
  const CMatrix part = build_hamiltonian(p, 5.8, small);
  const StateSpace all = StateSpace::full(p);
  for (int i = 0; i < small.dimension(); ++i) {
    for (int j = 0; j < small.dimension(); ++j) {
      const int fi = all.require_index(small.label(i));
      const int fj = all.require_index(small.label(j));
      EXPECT_NEAR(std::abs(part(i, j) - full(fi, fj)), 0.0, 1e-14);
    }
  }
}

TEST(Device, StaticPlusCouplerTermRebuildsHamiltonian) {
  const DeviceParams p;
  const StateSpace s = StateSpace::excitation_limited(p, 3);
  const CMatrix h = static_hamiltonian(p, s);
  const CMatrix n = s.number_diagonal(Mode::Coupler).cast<Complex>().asDiagonal();
  EXPECT_LT((h + 5.9 * n - build_hamiltonian(p, 5.9, s)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Device, Validation) {
  DeviceParams p;
  p.q2.levels = 2;
  EXPECT_THROW(p.validate(), InvalidDimensionError);
  p = DeviceParams{};
  p.q1.frequency_ghz = -1.0;
  EXPECT_THROW(p.validate(), ValidationError);
  EXPECT_THROW(StateSpace::excitation_limited(DeviceParams{}, -1), InvalidDimensionError);
}

TEST(Device, JsonRoundTrip) {
  DeviceParams p;
  p.couplings.g12_ghz = 0.007;
  p.flux_map.asymmetry = 0.3;
  nlohmann::json j = p;
  const DeviceParams q = j.get<DeviceParams>();
  EXPECT_EQ(q.couplings.g12_ghz, 0.007);
  EXPECT_EQ(q.flux_map.asymmetry, 0.3);
  EXPECT_EQ(q.coupler.levels, 5);
  EXPECT_THROW(load_device("/nonexistent/device.json"), ConfigError);
}

TEST(FluxMap, SymmetricClosedForm) {
  const FluxMap m;
  EXPECT_NEAR(m.frequency(0.0), 6.74, 1e-12);
  for (double phi : {0.05, 0.1, 0.2, 0.3, 0.4}) {
    const double expected = (6.74 + 0.37) * std::sqrt(std::cos(kPi * phi)) - 0.37;
    EXPECT_NEAR(m.frequency(phi), expected, 1e-12);
    EXPECT_NEAR(m.frequency(-phi), expected, 1e-12);
  }
  EXPECT_NEAR(m.slope(0.0), 0.0, 1e-12);
}

TEST(FluxMap, InverseAndSlope) {
  FluxMap m;
  m.asymmetry = 0.2;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 0.49);
  for (int k = 0; k < 50; ++k) {
    const double phi = u(rng);
    EXPECT_NEAR(m.flux_for(m.frequency(phi)), phi, 1e-9);
    const double h = 1e-6;
    const double fd = (m.frequency(phi + h) - m.frequency(phi - h)) / (2 * h);
    EXPECT_NEAR(m.slope(phi), fd, 1e-5 * std::max(1.0, std::abs(fd)));
  }
  EXPECT_THROW(m.flux_for(7.0), RangeError);
  EXPECT_THROW(m.flux_for(m.min_frequency() - 0.1), RangeError);
}

}  // namespace
}  // namespace tcz
