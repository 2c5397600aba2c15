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

#include "tcz/error_budget.hpp"
#include "tcz/errors.hpp"

namespace tcz {
namespace {

PulseShape cz_pulse(double tau = 30.0) {
  PulseShape p;
  p.peak_frequency_ghz = 5.098;
  p.duration_ns = tau;
  return p;
}

QubitProfile flat(double t1, double tphi) {
  return QubitProfile{RateTable{{4.0, 7.0}, {t1, t1}}, RateTable{{4.0, 7.0}, {tphi, tphi}}, t1, tphi};
}

TEST(Budget, DephasingFormula) {
  EXPECT_NEAR(dephasing_error(30.0, 0.5), 0.0012, 1e-15);
  EXPECT_EQ(dephasing_error(30.0, kForever), 0.0);
  EXPECT_LT(dephasing_error(30.0, 10.0), 1e-4);
  EXPECT_THROW(dephasing_error(-1.0, 1.0), ValidationError);
}

TEST(Budget, RelaxationFormulaIsLinearInRates) {
  const double e = relaxation_error(30.0, 4.0, {10.0, 12.0}, {20.0, 25.0});
  const double expected = (30.0 / 10000 + 30.0 / 12000 + 4.0 / 20000 + 4.0 / 25000) / 3.0;
  EXPECT_NEAR(e, expected, 1e-15);
  EXPECT_NEAR(relaxation_error(30.0, 4.0, {5.0, 6.0}, {10.0, 12.5}), 2.0 * e, 1e-15);
  EXPECT_EQ(relaxation_error(30.0, 4.0, {kForever, kForever}, {kForever, kForever}), 0.0);
}

TEST(Budget, EffectiveRatesConstantProfile) {
  const DecoherenceProfile prof{{flat(20.0, 15.0), flat(25.0, 10.0)}, true};
  const EffectiveTimes e = effective_rates(prof, cz_pulse());
  EXPECT_NEAR(e.t1_us[0], 20.0, 1e-9);
  EXPECT_NEAR(e.tphi_us[1], 10.0, 1e-9);
}

TEST(Budget, EffectiveRatesStepProfile) {
  // the pulse sits below the threshold for exactly the middle half of its duration
  const double thr = 6.74 - (6.74 - 5.098) * std::sqrt(0.5);
  QubitProfile q = flat(10.0, 4.0);
  q.t1 = RateTable{{4.0, thr - 1e-7, thr + 1e-7, 7.0}, {5.0, 5.0, 10.0, 10.0}};
  const DecoherenceProfile prof{{q, flat(1.0, 1.0)}, true};
  const EffectiveTimes e = effective_rates(prof, cz_pulse(), 200000);
  EXPECT_NEAR(1.0 / e.t1_us[0], 1.5 / 10.0, 1e-4);
}

TEST(Budget, EffectiveRatesAreMonotone) {
  QubitProfile a = flat(10.0, 3.0);
  a.tphi = RateTable{{4.0, 5.5, 7.0}, {0.5, 1.0, 3.0}};
  QubitProfile b = a;
  b.tphi.time_us = {0.4, 0.9, 3.0};
  const auto ea = effective_rates(DecoherenceProfile{{a, a}, true}, cz_pulse());
  const auto eb = effective_rates(DecoherenceProfile{{b, b}, true}, cz_pulse());
  EXPECT_LE(eb.tphi_us[0], ea.tphi_us[0]);
}

TEST(Budget, EffectiveRatesRejectShortTables) {
  QubitProfile q = flat(10.0, 3.0);
  q.t1 = RateTable{{6.0, 7.0}, {1.0, 1.0}};
  EXPECT_THROW(effective_rates(DecoherenceProfile{{q, q}, true}, cz_pulse()), RangeError);
}

TEST(Budget, ReportFractions) {
  BudgetInputs in;
  in.dephasing_q1 = 0.0012;
  in.relaxation = 0.0028;
  in.rb_r_cz = 0.0052;
  const BudgetReport r = budget_report(in);
  EXPECT_NEAR(r.decoherence_fraction(), 0.40 / 0.52, 1e-12);
  EXPECT_NEAR(r.nonadiabatic_error, 0.0012, 1e-15);
  EXPECT_NEAR(r.fraction_dephasing_q1 + r.fraction_dephasing_q2 + r.fraction_relaxation +
                  r.fraction_nonadiabatic,
              1.0, 1e-12);
  ASSERT_TRUE(r.rb_discrepancy.has_value());
  EXPECT_NEAR(*r.rb_discrepancy, 0.0, 1e-15);

  BudgetInputs scaled = in;
  scaled.dephasing_q1 *= 3.0;
  scaled.relaxation *= 3.0;
  scaled.rb_r_cz = 3.0 * *in.rb_r_cz;
  EXPECT_NEAR(budget_report(scaled).decoherence_fraction(), r.decoherence_fraction(), 1e-12);

  BudgetInputs coherent;
  coherent.nonadiabatic = 0.002;
  EXPECT_EQ(budget_report(coherent).fraction_nonadiabatic, 1.0);
  const auto j = to_json(r);
  EXPECT_EQ(j["profile_source"], "measured");
}

TEST(Budget, TunedNoiseMeetsAnchors) {
  const DeviceParams p;
  const PulseShape pulse = cz_pulse();
  const NoiseModel n = paper_tuned_noise(p, pulse);
  const DecoherenceProfile prof = derive_profile(p, n, profile_grid(p, pulse));
  const EffectiveTimes e = effective_rates(prof, pulse);
  EXPECT_NEAR(e.tphi_us[0], 0.5, 1e-6);
  EXPECT_NEAR(dephasing_error(30.0, e.tphi_us[0]), 0.0012, 1e-8);
  EXPECT_LT(dephasing_error(30.0, e.tphi_us[1]), 1e-4);
  EXPECT_NEAR(relaxation_error(30.0, 4.0, e.t1_us, {prof.qubits[0].t1_idle_us, prof.qubits[1].t1_idle_us}),
              0.0028, 1e-9);
  EXPECT_LT(e.t1_us[0], prof.qubits[0].t1_idle_us);
}

TEST(Transitional, IdlePulseCancelsAgainstReference) {
  const DeviceParams p;
  NoiseModel n;
  n.quasi_static_samples = 2;
  n.mode(Mode::Q1).t1_us = 5.0;
  n.mode(Mode::Q2).t1_us = 8.0;
  n.mode(Mode::Coupler).t1_us = 1.0;
  TransitionalOptions o;
  o.m_max = 40;
  o.m_step = 4;
  o.propagator = PropagatorOptions{0.05, false, 1e-8, 0.1, 1};
  const auto r = transitional_error_experiment(p, n, 1, 1, PulseShape::idle(6.74, 30.0, p.flux_map), o);
  EXPECT_NEAR(r.additional_error, 0.0, 1e-9);
  EXPECT_NEAR(r.t1_contribution, 0.0, 1e-12);
  EXPECT_GT(r.identity.error_per_gate, 0.0);
}

TEST(Transitional, AdiabaticLimitIsClean) {
  const DeviceParams p;
  TransitionalOptions o;
  o.m_max = 100;
  o.m_step = 5;
  o.propagator = PropagatorOptions{0.02, false, 1e-8, 0.1, 1};
  const auto all = transitional_error_all(p, NoiseModel{}, cz_pulse(120.0), o);
  ASSERT_EQ(all.size(), 4u);
  for (const auto& r : all) EXPECT_LT(std::abs(r.non_t1_error), 1e-4);
  EXPECT_THROW(transitional_error_experiment(p, NoiseModel{}, 2, 0, cz_pulse(), o), ValidationError);
}

}  // namespace
}  // namespace tcz
