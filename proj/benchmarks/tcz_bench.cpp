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

#include <benchmark/benchmark.h>

#include <vector>

#include "tcz/calibration.hpp"
#include "tcz/channel.hpp"
#include "tcz/clifford.hpp"
#include "tcz/device.hpp"
#include "tcz/propagator.hpp"
#include "tcz/rb.hpp"
#include "tcz/spectrum.hpp"

namespace {

using namespace tcz;

PulseShape cz_pulse(const DeviceParams& p) {
  PulseShape pulse;
  pulse.idle_frequency_ghz = p.idle_frequency();
  pulse.peak_frequency_ghz = 5.0983;
  pulse.duration_ns = 30.0;
  pulse.flux_map = p.flux_map;
  return pulse;
}

void BM_FullHamiltonianEigensolve(benchmark::State& state) {
  const DeviceParams p = DeviceParams{}.with_levels(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eigensolve(build_hamiltonian(p, 6.0)));
  state.SetLabel("dim " + std::to_string(StateSpace::full(p).dimension()));
}
BENCHMARK(BM_FullHamiltonianEigensolve)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_ChiSweep(benchmark::State& state) {
  const DeviceParams p;
  std::vector<double> grid;
  for (int i = 0; i < state.range(0); ++i) grid.push_back(4.9 + 1.84 * i / (state.range(0) - 1));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_chi(p, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ChiSweep)->Arg(185)->Unit(benchmark::kMillisecond);

void BM_PropagateCzPulse(benchmark::State& state) {
  const DeviceParams p;
  const PulseShape pulse = cz_pulse(p);
  const StateSpace space = StateSpace::excitation_limited(p, 2);
  const double dt = 1.0 / state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(propagate_unitary_fixed_step(p, pulse, space, dt));
  state.SetLabel("dt 1/" + std::to_string(state.range(0)) + " ns");
}
BENCHMARK(BM_PropagateCzPulse)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_MarkovianCzChannel(benchmark::State& state) {
  const DeviceParams p;
  const PulseShape pulse = cz_pulse(p);
  const DressedBasis basis = DressedBasis::at_idle(p);
  NoiseModel noise;
  noise.dephasing = DephasingKind::Markovian;
  for (auto& m : noise.modes) {
    m.t1_us = 10.0;
    m.tphi_us = 10.0;
  }
  const PropagatorOptions opts{0.01, false, 1e-8, 0.1, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(channel_from_pulse(basis, p, pulse, noise, Frame::Rotating, opts));
  }
}
BENCHMARK(BM_MarkovianCzChannel)->Unit(benchmark::kMillisecond);

void BM_CliffordSampleAndInvert(benchmark::State& state) {
  const CliffordGroup& g = CliffordGroup::instance();
  CounterRng rng(1, 0);
  for (auto _ : state) {
    const CliffordElement e = g.sample(rng);
    benchmark::DoNotOptimize(g.inverse(e));
  }
}
BENCHMARK(BM_CliffordSampleAndInvert);

void BM_SimulateRb(benchmark::State& state) {
  RBChannels ch = RBChannels::ideal(static_cast<int>(state.range(0)));
  ch.single_qubit_error = 1e-3;
  RBConfig cfg;
  cfg.sequence_lengths = {1, 8, 32, 64};
  cfg.sequences_per_length = 10;
  cfg.interleaved = true;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_rb(ch, cfg));
  state.SetItemsProcessed(state.iterations() * 40);
}
BENCHMARK(BM_SimulateRb)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
