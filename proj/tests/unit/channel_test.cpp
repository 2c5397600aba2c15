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

#include "tcz/calibration.hpp"
#include "tcz/channel.hpp"
#include "tcz/errors.hpp"

namespace tcz {
namespace {

CMatrix random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  CMatrix a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = Complex(n(rng), n(rng));
  }
  Eigen::HouseholderQR<CMatrix> qr(a);
  return qr.householderQ();
}

CMatrix random_state(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  CMatrix a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = Complex(n(rng), n(rng));
  }
  CMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

TEST(Channel, UnitaryActionAndComposition) {
  std::mt19937_64 rng(3);
  const CMatrix u = random_unitary(5, rng), v = random_unitary(5, rng);
  const CMatrix rho = random_state(5, rng);
  const auto cu = QuantumChannel::from_unitary(u), cv = QuantumChannel::from_unitary(v);
  EXPECT_LT((cu.apply(rho) - u * rho * u.adjoint()).cwiseAbs().maxCoeff(), 1e-13);
  const CMatrix expected = v * u * rho * u.adjoint() * v.adjoint();
  EXPECT_LT((cu.then(cv).apply(rho) - expected).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LT(((cv * cu).apply(rho) - expected).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LT((unvectorize(vectorize(rho), 5) - rho).cwiseAbs().maxCoeff(), 0.0 + 1e-15);
}

TEST(Channel, AmplitudeDampingIsCptp) {
  const double g = 0.3;
  CMatrix k0 = CMatrix::Zero(2, 2), k1 = CMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1 - g);
  k1(0, 1) = std::sqrt(g);
  const auto c = QuantumChannel::from_kraus({k0, k1});
  EXPECT_LT(c.trace_preservation_defect(), 1e-15);
  EXPECT_GT(c.min_choi_eigenvalue(), -1e-15);
  EXPECT_NO_THROW(c.check_cptp());
  CMatrix excited = CMatrix::Zero(2, 2);
  excited(1, 1) = 1.0;
  EXPECT_NEAR(c.apply(excited)(0, 0).real(), g, 1e-15);
}

TEST(Channel, TransposeIsNotCompletelyPositive) {
  const int d = 2;
  CMatrix s = CMatrix::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) s(b + d * a, a + d * b) = 1.0;
  }
  const QuantumChannel t(s);
  EXPECT_LT(t.trace_preservation_defect(), 1e-15);
  EXPECT_THROW(t.check_cptp(), AccuracyError);
}

TEST(Channel, NoisyPulseIsCptp) {
  const DeviceParams p;
  PulseShape pulse;
  pulse.peak_frequency_ghz = 5.6;
  pulse.duration_ns = 10.0;
  pulse.sample_step_ns = 0.1;
  NoiseModel n;
  n.quasi_static_samples = 4;
  n.mode(Mode::Q1).t1_us = 2.0;
  n.mode(Mode::Coupler).t1_us = 0.5;
  n.mode(Mode::Coupler).tphi_us = 0.3;
  n.mode(Mode::Q2).tphi_us = 1.0;
  const auto c = channel_from_pulse(p, pulse, n, Frame::Rotating,
                                    PropagatorOptions{0.05, false, 1e-8, 0.1, 1});
  EXPECT_EQ(c.dimension(), 10);
  EXPECT_NO_THROW(c.check_cptp(1e-9));
}

TEST(Channel, ConditionalPhaseIsFrameInvariant) {
  const DeviceParams p;
  PulseShape pulse;
  pulse.peak_frequency_ghz = 5.3;
  const PropagatorOptions o{0.01, false, 1e-8, 0.1, 1};
  const CMatrix lab = dressed_unitary(p, pulse, Frame::Lab, o);
  const CMatrix rot = dressed_unitary(p, pulse, Frame::Rotating, o);
  const double d = std::remainder(conditional_phase(lab) - conditional_phase(rot), kTwoPi);
  EXPECT_NEAR(d, 0.0, 1e-9);
}

TEST(Channel, DressedBasisAndIdleFrame) {
  const DeviceParams p;
  const DressedBasis b = DressedBasis::at_idle(p);
  EXPECT_EQ(b.dimension(), 10);
  EXPECT_EQ(b.labels[3], (BareLabel{1, 0, 1}));
  EXPECT_LT((b.vectors.adjoint() * b.vectors - CMatrix::Identity(10, 10)).cwiseAbs().maxCoeff(), 1e-12);
  // in the rotating frame an idle leaves the single-excitation states fixed
  const CMatrix u = dressed_unitary(b, p, PulseShape::idle(6.74, 20.0, p.flux_map), Frame::Rotating,
                                    PropagatorOptions{0.05, false, 1e-8, 0.1, 1});
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(std::abs(u(k, k) - Complex(1.0)), 0.0, 1e-9);
}

TEST(Channel, EmbeddingAndLeakage) {
  const CMatrix e = embed_computational(cz_matrix(), 10);
  EXPECT_EQ(e(3, 3), Complex(-1.0));
  EXPECT_EQ(e(7, 7), Complex(1.0));
  EXPECT_NEAR(channel_leakage(QuantumChannel::from_unitary(e)), 0.0, 1e-15);
  EXPECT_THROW(embed_computational(CMatrix::Identity(3, 3), 10), InvalidDimensionError);
}

}  // namespace
}  // namespace tcz
