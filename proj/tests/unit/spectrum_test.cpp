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

#include "tcz/errors.hpp"
#include "tcz/spectrum.hpp"

namespace tcz {
namespace {

// Full-space diagonalization labelled by largest bare overlap.
double reference_energy(const DeviceParams& p, double wc, const BareLabel& label) {
  const StateSpace s = StateSpace::full(p);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(build_hamiltonian(p, wc));
  const int row = s.require_index(label);
  int best = 0;
  es.eigenvectors().row(row).cwiseAbs().maxCoeff(&best);
  return es.eigenvalues()[best];
}

TEST(Spectrum, EigensolveResidualAndOrdering) {
  const CMatrix h = build_hamiltonian(DeviceParams{}, 5.4);
  const Eigensystem es = eigensolve(h);
  EXPECT_LT(eigen_residual(h, es), 1e-12);
  for (int k = 1; k < es.energies.size(); ++k) EXPECT_LE(es.energies[k - 1], es.energies[k]);
  CMatrix bad = h;
  bad(0, 1) += 0.1;
  EXPECT_THROW(eigensolve(bad), ValidationError);
}

TEST(Spectrum, IdleChiMatchesFullSpaceOracle) {
  const DeviceParams p;
  const double w = 6.74;
  const double chi = reference_energy(p, w, {1, 0, 1}) + reference_energy(p, w, {0, 0, 0}) -
                     reference_energy(p, w, {1, 0, 0}) - reference_energy(p, w, {0, 0, 1});
  EXPECT_NEAR(chi12_spectral(p, w), chi, 1e-10);
  EXPECT_LT(std::abs(chi), 1e-3);
}

TEST(Spectrum, UncoupledChiVanishes) {
  DeviceParams p;
  p.couplings = CouplingGraph{0.0, 0.0, 0.0};
  std::vector<double> grid;
  for (double w = 5.0; w <= 7.0; w += 0.25) grid.push_back(w);
  const ChiCurve c = sweep_chi(p, grid);
  for (const auto& pt : c.points) EXPECT_NEAR(pt.chi12_ghz, 0.0, 1e-12);
}

TEST(Spectrum, LabelsFollowBranchesAcrossSweep) {
  const DeviceParams p;
  const BranchTracker tracker(p);
  std::vector<double> path;
  for (double w = 6.74; w >= 5.0; w -= 0.05) path.push_back(w);
  const auto spectra = tracker.along(path);
  ASSERT_EQ(spectra.size(), path.size());
  EXPECT_GT(spectra.front().at({1, 0, 1}).overlap, 0.99);
  for (std::size_t k = 1; k < spectra.size(); ++k) {
    EXPECT_EQ(spectra[k].levels.size(), 10u);
    // a tracked level moves no faster than a bare coupler excitation
    const double de = spectra[k].energy({1, 0, 1}) - spectra[k - 1].energy({1, 0, 1});
    EXPECT_LE(std::abs(de), 2.0 * 0.05 + 1e-9);
  }
}

TEST(Spectrum, ChiDynamicRange) {
  std::vector<double> grid;
  for (double w = 4.9; w <= 7.5 + 1e-9; w += 0.01) grid.push_back(w);
  const ChiCurve c = sweep_chi(DeviceParams{}, grid);
  EXPECT_GT(c.dynamic_range(), 1000.0);
  EXPECT_GE(c.max_abs_ghz(), 0.1);
}

TEST(Spectrum, MinimumGapNearQuotedValue) {
  std::vector<double> traj;
  for (double w = 6.74; w >= 5.0; w -= 0.01) traj.push_back(w);
  const GapResult g = min_gap(DeviceParams{}, traj);
  EXPECT_NEAR(g.gap_ghz, 0.238, 0.010);
}

TEST(Spectrum, CrosstalkEdgeCases) {
  const DeviceParams p;
  EXPECT_EQ(crosstalk_sensitivity(p, 0.0, 0.3, 0.0), 0.0);
  EXPECT_THROW(crosstalk_sensitivity(p, 0.0, 5.0, 0.1), RangeError);
  EXPECT_LT(crosstalk_sensitivity(p, 0.0, 0.3, 0.1), 1e-6);
}

TEST(Spectrum, ChiIsEvenInFlux) {
  const DeviceParams p;
  for (double f : {0.05, 0.15, 0.25}) {
    EXPECT_NEAR(chi12_at_flux(p, f), chi12_at_flux(p, -f), 1e-12);
  }
}

}  // namespace
}  // namespace tcz
