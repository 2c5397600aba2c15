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

#include "tcz/errors.hpp"
#include "tcz/propagator.hpp"

namespace tcz {
namespace {

PulseShape cz_like(double tau = 30.0) {
  PulseShape p;
  p.peak_frequency_ghz = 5.1;
  p.duration_ns = tau;
  return p;
}

TEST(Propagator, UnitaryAndBlockDiagonal) {
  const DeviceParams p;
  const StateSpace s = StateSpace::excitation_limited(p, 3);
  const CMatrix u = propagate_unitary_fixed_step(p, cz_like(), s, 0.01);
  EXPECT_LT(unitarity_defect(u), 1e-9);
  for (int i = 0; i < s.dimension(); ++i) {
    for (int j = 0; j < s.dimension(); ++j) {
      if (s.label(i).excitations() != s.label(j).excitations()) EXPECT_EQ(std::abs(u(i, j)), 0.0);
    }
  }
}

TEST(Propagator, IdleEvolutionIsExact) {
  const DeviceParams p;
  const StateSpace s = StateSpace::excitation_limited(p, 2);
  const PulseShape idle = PulseShape::idle(6.74, 17.3, p.flux_map);
  const CMatrix u = propagate_unitary_fixed_step(p, idle, s, 0.1);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(build_hamiltonian(p, 6.74, s));
  const CVector ph = (es.eigenvalues() * (-kTwoPi * 17.3)).unaryExpr(
      [](double x) { return std::polar(1.0, x); });
  const CMatrix exact = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
  EXPECT_LT((u - exact).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Propagator, FourthOrderConvergence) {
  const DeviceParams p;
  const StateSpace s = StateSpace::excitation_limited(p, 2);
  PulseShape pulse = cz_like();
  pulse.sample_step_ns = 0.3;
  const double e1 = richardson_residual(p, pulse, s, 0.1);
  const double e2 = richardson_residual(p, pulse, s, 0.05);
  EXPECT_GT(e1 / e2, 12.0);
  EXPECT_LT(e1 / e2, 20.0);
}

TEST(Propagator, TruncationInvariantOnTwoExcitationBlock) {
  const DeviceParams p;
  const StateSpace s2 = StateSpace::excitation_limited(p, 2);
  const StateSpace s3 = StateSpace::excitation_limited(p, 3);
  const CMatrix u2 = propagate_unitary_fixed_step(p, cz_like(), s2, 0.02);
  const CMatrix u3 = propagate_unitary_fixed_step(p, cz_like(), s3, 0.02);
  for (int i = 0; i < s2.dimension(); ++i) {
    for (int j = 0; j < s2.dimension(); ++j) {
      const int a = s3.require_index(s2.label(i)), b = s3.require_index(s2.label(j));
      EXPECT_NEAR(std::abs(u2(i, j) - u3(a, b)), 0.0, 1e-12);
    }
  }
}

TEST(Propagator, RichardsonGuardRejectsCoarseStep) {
  PropagatorOptions o;
  o.dt_ns = 1.0;
  PulseShape pulse = cz_like();
  pulse.sample_step_ns = 0.3;
  EXPECT_THROW(propagate_unitary(DeviceParams{}, pulse, o), AccuracyError);
}

DeviceParams decoupled() {
  DeviceParams p;
  p.couplings = CouplingGraph{0.0, 0.0, 0.0};
  return p;
}

CMatrix projector(const StateSpace& s, const BareLabel& l) {
  CMatrix r = CMatrix::Zero(s.dimension(), s.dimension());
  const int k = s.require_index(l);
  r(k, k) = 1.0;
  return r;
}

TEST(Lindblad, AmplitudeDampingIsExponential) {
  const DeviceParams p = decoupled();
  const StateSpace s = StateSpace::excitation_limited(p, 2);
  NoiseModel n;
  n.mode(Mode::Q1).t1_us = 0.1;
  const PulseShape idle = PulseShape::idle(6.74, 50.0, p.flux_map);
  const CMatrix rho = propagate_lindblad(p, idle, n, projector(s, {1, 0, 0}), s,
                                         PropagatorOptions{0.05, false, 1e-8, 0.1, 1});
  EXPECT_NEAR(rho(s.require_index({1, 0, 0}), s.require_index({1, 0, 0})).real(),
              std::exp(-0.5), 1e-10);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
}

CMatrix plus_q1(const StateSpace& s) {
  CVector v = CVector::Zero(s.dimension());
  v(s.require_index({0, 0, 0})) = 1.0 / std::sqrt(2.0);
  v(s.require_index({1, 0, 0})) = 1.0 / std::sqrt(2.0);
  return v * v.adjoint();
}

TEST(Lindblad, MarkovianDephasingIsExponential) {
  const DeviceParams p = decoupled();
  const StateSpace s = StateSpace::excitation_limited(p, 2);
  NoiseModel n;
  n.dephasing = DephasingKind::Markovian;
  n.mode(Mode::Q1).tphi_us = 0.1;
  const PulseShape idle = PulseShape::idle(6.74, 40.0, p.flux_map);
  const CMatrix rho = propagate_lindblad(p, idle, n, plus_q1(s), s,
                                         PropagatorOptions{0.05, false, 1e-8, 0.1, 1});
  const double coh = std::abs(rho(s.require_index({0, 0, 0}), s.require_index({1, 0, 0})));
  EXPECT_NEAR(coh, 0.5 * std::exp(-0.4), 1e-10);
}

TEST(Lindblad, QuasiStaticDephasingIsGaussian) {
  const DeviceParams p = decoupled();
  const StateSpace s = StateSpace::excitation_limited(p, 2);
  NoiseModel n;
  n.mode(Mode::Q1).tphi_us = 0.1;
  const PulseShape idle = PulseShape::idle(6.74, 50.0, p.flux_map);
  const CMatrix rho = propagate_lindblad(p, idle, n, plus_q1(s), s,
                                         PropagatorOptions{0.05, false, 1e-8, 0.1, 1});
  const double coh = std::abs(rho(s.require_index({0, 0, 0}), s.require_index({1, 0, 0})));
  EXPECT_NEAR(coh, 0.5 * std::exp(-0.25), 5e-3);
}

TEST(Lindblad, RejectsInvalidDensityMatrix) {
  const DeviceParams p;
  CMatrix rho = CMatrix::Zero(10, 10);
  rho(0, 0) = 2.0;
  EXPECT_THROW(propagate_lindblad(p, cz_like(), NoiseModel{}, rho), ValidationError);
}

}  // namespace
}  // namespace tcz
