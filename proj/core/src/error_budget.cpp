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

#include "tcz/error_budget.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/math/tools/roots.hpp>

#include "tcz/errors.hpp"
#include "tcz/parallel.hpp"
#include "tcz/spectrum.hpp"

namespace tcz {

void DecoherenceProfile::validate() const {
  for (const auto& q : qubits) {
    q.t1.validate();
    q.tphi.validate();
    if (!(q.t1_idle_us > 0.0) || !(q.tphi_idle_us > 0.0)) {
      throw ValidationError("idle characteristic times must be positive");
    }
  }
}

namespace {

// Mode participations <n_m> of the dressed |100> and |001> states.
struct Participation {
  double frequency_ghz;
  std::array<std::array<double, 3>, 2> p;  // [qubit][mode]
};

std::vector<Participation> participations(const DeviceParams& params,
                                          const std::vector<double>& grid) {
  const BranchTracker tracker(params);
  const StateSpace& space = tracker.space();
  const std::array<RVector, 3> n{space.number_diagonal(Mode::Q1),
                                 space.number_diagonal(Mode::Coupler),
                                 space.number_diagonal(Mode::Q2)};
  std::vector<double> order(grid);
  std::sort(order.begin(), order.end(), std::greater<>());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  const auto spectra = tracker.along(order);
  std::vector<Participation> out;
  for (const auto& s : spectra) {
    Participation part{s.coupler_frequency_ghz, {}};
    const std::array<BareLabel, 2> labels{BareLabel{1, 0, 0}, BareLabel{0, 0, 1}};
    for (int q = 0; q < 2; ++q) {
      const CVector& v = s.at(labels[q]).state;
      for (int m = 0; m < 3; ++m) part.p[q][m] = (v.cwiseAbs2().array() * n[m].array()).sum();
    }
    out.push_back(part);
  }
  std::sort(out.begin(), out.end(),
            [](const Participation& a, const Participation& b) { return a.frequency_ghz < b.frequency_ghz; });
  return out;
}

DecoherenceProfile profile_from(const std::vector<Participation>& parts, const NoiseModel& noise,
                                double idle_ghz, const Participation& idle) {
  DecoherenceProfile prof;
  auto rates = [&](const Participation& pt, int q) {
    double g1 = 0.0, gphi2 = 0.0;
    for (int m = 0; m < 3; ++m) {
      const ModeNoise& mn = noise.modes[m];
      const double p = pt.p[q][m];
      g1 += p * us_to_ns(1.0) * mn.gamma1_at(pt.frequency_ghz);
      const double gp = us_to_ns(1.0) * mn.gamma_phi_at(pt.frequency_ghz);
      gphi2 += p * p * gp * gp;
    }
    return std::pair{g1, std::sqrt(gphi2)};  // 1/µs
  };
  auto inv = [](double g) { return g > 0.0 ? 1.0 / g : kForever; };
  for (int q = 0; q < 2; ++q) {
    QubitProfile& qp = prof.qubits[q];
    for (const auto& pt : parts) {
      const auto [g1, gphi] = rates(pt, q);
      qp.t1.frequency_ghz.push_back(pt.frequency_ghz);
      qp.t1.time_us.push_back(inv(g1));
      qp.tphi.frequency_ghz.push_back(pt.frequency_ghz);
      qp.tphi.time_us.push_back(inv(gphi));
    }
    Participation at_idle = idle;
    at_idle.frequency_ghz = idle_ghz;
    const auto [g1, gphi] = rates(at_idle, q);
    qp.t1_idle_us = inv(g1);
    qp.tphi_idle_us = inv(gphi);
  }
  return prof;
}

const Participation& nearest(const std::vector<Participation>& parts, double w) {
  return *std::min_element(parts.begin(), parts.end(), [w](const auto& a, const auto& b) {
    return std::abs(a.frequency_ghz - w) < std::abs(b.frequency_ghz - w);
  });
}

}  // namespace

DecoherenceProfile derive_profile(const DeviceParams& params, const NoiseModel& noise,
                                  const std::vector<double>& grid) {
  noise.validate();
  if (grid.size() < 2) throw ValidationError("profile grid needs >= 2 points");
  std::vector<double> g(grid);
  const double idle = params.idle_frequency();
  if (std::find(g.begin(), g.end(), idle) == g.end()) g.push_back(idle);
  const auto parts = participations(params, g);
  std::vector<Participation> table;
  for (double w : grid) table.push_back(nearest(parts, w));
  std::sort(table.begin(), table.end(),
            [](const Participation& a, const Participation& b) { return a.frequency_ghz < b.frequency_ghz; });
  return profile_from(table, noise, idle, nearest(parts, idle));
}

EffectiveTimes effective_rates(const DecoherenceProfile& profile, const PulseShape& pulse,
                               int samples) {
  profile.validate();
  pulse.validate();
  if (samples < 1) throw ValidationError("effective-rate averaging needs samples");
  std::array<double, 2> g1{}, gphi2{};
  for (int k = 0; k < samples; ++k) {
    const double w = pulse_waveform(pulse, (k + 0.5) * pulse.duration_ns / samples);
    for (int q = 0; q < 2; ++q) {
      g1[q] += 1.0 / profile.qubits[q].t1.at(w);
      const double gp = 1.0 / profile.qubits[q].tphi.at(w);
      gphi2[q] += gp * gp;
    }
  }
  EffectiveTimes out;
  for (int q = 0; q < 2; ++q) {
    const double a1 = g1[q] / samples;
    const double a2 = gphi2[q] / samples;
    out.t1_us[q] = a1 > 0.0 ? 1.0 / a1 : kForever;
    out.tphi_us[q] = a2 > 0.0 ? 1.0 / std::sqrt(a2) : kForever;
  }
  return out;
}

double dephasing_error(double tau_gate_ns, double tphi_eff_us) {
  if (!(tau_gate_ns > 0.0) || !(tphi_eff_us > 0.0)) {
    throw ValidationError("dephasing error needs positive inputs");
  }
  const double x = tau_gate_ns / us_to_ns(tphi_eff_us);
  return x * x / 3.0;
}

double relaxation_error(double tau_gate_ns, double tau_spacing_ns,
                        const std::array<double, 2>& t1_eff_us,
                        const std::array<double, 2>& t1_idle_us) {
  if (!(tau_gate_ns > 0.0) || !(tau_spacing_ns >= 0.0)) {
    throw ValidationError("relaxation error needs positive durations");
  }
  double s = 0.0;
  for (int q = 0; q < 2; ++q) {
    if (!(t1_eff_us[q] > 0.0) || !(t1_idle_us[q] > 0.0)) {
      throw ValidationError("relaxation error needs positive T1");
    }
    s += tau_gate_ns / us_to_ns(t1_eff_us[q]) + tau_spacing_ns / us_to_ns(t1_idle_us[q]);
  }
  return s / 3.0;
}

std::vector<double> profile_grid(const DeviceParams& params, const PulseShape& pulse,
                                 double step_ghz) {
  if (!(step_ghz > 0.0)) throw ValidationError("grid step must be positive");
  double lo = std::min(pulse.peak_frequency_ghz, pulse.idle_frequency_ghz);
  double hi = std::max(pulse.peak_frequency_ghz, pulse.idle_frequency_ghz);
  lo = std::max(lo - 0.05, params.flux_map.min_frequency() + 1e-6);
  hi = std::min(hi + 0.05, params.flux_map.omega_max_ghz);
  const int n = std::max(2, static_cast<int>(std::ceil((hi - lo) / step_ghz)) + 1);
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) g[k] = lo + (hi - lo) * k / (n - 1);
  return g;
}

namespace {

constexpr double kQ1T1Us = 20.0;
constexpr double kQ1TphiUs = 15.0;
constexpr double kQ2T1Us = 25.0;
constexpr double kQ2TphiUs = 10.0;
constexpr double kCouplerSweetTphiUs = 5.0;

NoiseModel tuned_model(const std::vector<double>& grid, const FluxMap& map, double coupler_t1_us,
                       double kappa) {
  NoiseModel n;
  n.modes[0].t1_us = kQ1T1Us;
  n.modes[0].tphi_us = kQ1TphiUs;
  n.modes[2].t1_us = kQ2T1Us;
  n.modes[2].tphi_us = kQ2TphiUs;
  ModeNoise& c = n.modes[1];
  c.t1_us = coupler_t1_us;
  RateTable tphi;
  for (double w : grid) {
    const double slope = std::abs(map.slope(map.flux_for(w)));
    tphi.frequency_ghz.push_back(w);
    tphi.time_us.push_back(1.0 / (1.0 / kCouplerSweetTphiUs + kappa * slope));
  }
  c.tphi_us = kCouplerSweetTphiUs;
  c.tphi_table = tphi;
  return n;
}

}  // namespace

NoiseModel paper_tuned_noise(const DeviceParams& params, const PulseShape& pulse,
                             const TuningTargets& targets) {
  pulse.validate();
  const std::vector<double> grid = profile_grid(params, pulse);
  std::vector<double> g(grid);
  g.push_back(params.idle_frequency());
  const auto parts = participations(params, g);
  const Participation& idle = nearest(parts, params.idle_frequency());
  auto profile = [&](const NoiseModel& n) {
    return profile_from(parts, n, params.idle_frequency(), idle);
  };

  auto relax = [&](double coupler_t1_us) {
    const auto prof = profile(tuned_model(grid, params.flux_map, coupler_t1_us, 0.0));
    const auto eff = effective_rates(prof, pulse);
    return relaxation_error(pulse.duration_ns, targets.tau_spacing_ns, eff.t1_us,
                            {prof.qubits[0].t1_idle_us, prof.qubits[1].t1_idle_us});
  };
  auto excess = [&](double gamma) {
    return relax(gamma > 0.0 ? 1.0 / gamma : kForever) - targets.relaxation_error;
  };
  if (excess(0.0) >= 0.0) {
    throw ValidationError("relaxation target is below the qubit-only contribution");
  }
  double g_hi = 1.0;
  while (excess(g_hi) < 0.0) {
    g_hi *= 4.0;
    if (g_hi > 1e9) throw ValidationError("relaxation target unreachable");
  }
  std::uintmax_t g_iters = 200;
  const auto g_root = boost::math::tools::toms748_solve(
      excess, 0.0, g_hi, boost::math::tools::eps_tolerance<double>(50), g_iters);
  const double gamma_c = 0.5 * (g_root.first + g_root.second);
  const double coupler_t1 = 1.0 / gamma_c;

  auto tphi_q1 = [&](double kappa) {
    const auto prof = profile(tuned_model(grid, params.flux_map, coupler_t1, kappa));
    return effective_rates(prof, pulse).tphi_us[0] - targets.tphi_q1_eff_us;
  };
  if (tphi_q1(0.0) <= 0.0) throw ValidationError("dephasing target unreachable");
  double hi = 1.0;
  while (tphi_q1(hi) > 0.0) {
    hi *= 4.0;
    if (hi > 1e9) throw ValidationError("dephasing target unreachable");
  }
  std::uintmax_t iters = 200;
  const auto root = boost::math::tools::toms748_solve(
      tphi_q1, 0.0, hi, boost::math::tools::eps_tolerance<double>(40), iters);
  return tuned_model(grid, params.flux_map, coupler_t1, 0.5 * (root.first + root.second));
}

namespace {

struct TransitionalChannels {
  CMatrix cz;
  CMatrix identity;
  EffectiveTimes eff;
  std::array<double, 2> t1_idle_us;
};

TransitionalChannels build_channels(const DeviceParams& params, const NoiseModel& noise,
                                    const PulseShape& pulse, const TransitionalOptions& o) {
  if (o.m_max < 20 || o.m_step < 1) throw ValidationError("transitional experiment needs m_max >= 20");
  const DressedBasis basis = DressedBasis::at_idle(params);
  TransitionalChannels ch;
  const QuantumChannel spacing =
      idle_channel(basis, params, o.tau_spacing_ns, noise, Frame::Rotating, o.propagator);
  ch.cz = channel_from_pulse(basis, params, pulse, noise, Frame::Rotating, o.propagator)
              .then(spacing)
              .superoperator();
  ch.identity = idle_channel(basis, params, pulse.duration_ns + o.tau_spacing_ns, noise,
                             Frame::Rotating, o.propagator)
                    .superoperator();
  const auto prof = derive_profile(params, noise, profile_grid(params, pulse));
  ch.eff = effective_rates(prof, pulse);
  ch.t1_idle_us = {prof.qubits[0].t1_idle_us, prof.qubits[1].t1_idle_us};
  return ch;
}

TransitionalArm run_arm(const CMatrix& superop, int index, const TransitionalOptions& o) {
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(superop.rows()))));
  CVector v = CVector::Zero(d * d);
  v(index + d * index) = 1.0;
  TransitionalArm arm;
  for (int m = 0; m <= o.m_max; ++m) {
    if (m % o.m_step == 0) {
      arm.m.push_back(m);
      arm.population.push_back(v(index + d * index).real());
    }
    if (m < o.m_max) v = superop * v;
  }
  std::vector<double> mm(arm.m.begin(), arm.m.end());
  arm.fit = fit_exponential(mm, arm.population, std::vector<double>(mm.size(), 0.0), 0.0);
  arm.error_per_gate = arm.fit.A * (1.0 - arm.fit.p);
  return arm;
}

TransitionalResult run_state(const TransitionalChannels& ch, const PulseShape& pulse, int q1,
                             int q2, const TransitionalOptions& o) {
  if ((q1 != 0 && q1 != 1) || (q2 != 0 && q2 != 1)) {
    throw ValidationError("joint state must be one of 00, 01, 10, 11");
  }
  TransitionalResult r;
  r.joint_state = BareLabel{q1, 0, q2};
  const int index = 2 * q1 + q2;
  r.cz = run_arm(ch.cz, index, o);
  r.identity = run_arm(ch.identity, index, o);
  r.additional_error = r.cz.error_per_gate - r.identity.error_per_gate;
  const std::array<int, 2> excited{q1, q2};
  for (int q = 0; q < 2; ++q) {
    if (excited[q] == 0) continue;
    r.t1_contribution += pulse.duration_ns * (1.0 / us_to_ns(ch.eff.t1_us[q]) -
                                              1.0 / us_to_ns(ch.t1_idle_us[q]));
  }
  r.non_t1_error = r.additional_error - r.t1_contribution;
  return r;
}

}  // namespace

TransitionalResult transitional_error_experiment(const DeviceParams& params,
                                                 const NoiseModel& noise, int q1, int q2,
                                                 const PulseShape& pulse,
                                                 const TransitionalOptions& options) {
  return run_state(build_channels(params, noise, pulse, options), pulse, q1, q2, options);
}

std::vector<TransitionalResult> transitional_error_all(const DeviceParams& params,
                                                       const NoiseModel& noise,
                                                       const PulseShape& pulse,
                                                       const TransitionalOptions& options,
                                                       int threads) {
  const TransitionalChannels ch = build_channels(params, noise, pulse, options);
  std::vector<TransitionalResult> out(4);
  parallel_for(4, threads, [&](std::size_t k) {
    out[k] = run_state(ch, pulse, static_cast<int>(k / 2), static_cast<int>(k % 2), options);
  });
  return out;
}

BudgetReport budget_report(const BudgetInputs& in) {
  for (double x : {in.dephasing_q1, in.dephasing_q2, in.relaxation}) {
    if (!(x >= 0.0)) throw ValidationError("budget components must be non-negative");
  }
  BudgetReport r;
  r.dephasing_error_q1 = in.dephasing_q1;
  r.dephasing_error_q2 = in.dephasing_q2;
  r.relaxation_error = in.relaxation;
  r.rb_r_cz = in.rb_r_cz;
  r.reconstructed_profile = in.reconstructed_profile;
  r.formula_inputs = in.formula_inputs;
  const double decoherence = r.decoherence_error();
  if (in.nonadiabatic) {
    if (!(*in.nonadiabatic >= 0.0)) throw ValidationError("budget components must be non-negative");
    r.nonadiabatic_error = *in.nonadiabatic;
  } else if (in.rb_r_cz) {
    r.nonadiabatic_error = std::max(0.0, *in.rb_r_cz - decoherence);
  }
  r.total = decoherence + r.nonadiabatic_error;
  if (r.total > 0.0) {
    r.fraction_dephasing_q1 = r.dephasing_error_q1 / r.total;
    r.fraction_dephasing_q2 = r.dephasing_error_q2 / r.total;
    r.fraction_relaxation = r.relaxation_error / r.total;
    r.fraction_nonadiabatic = 1.0 - r.decoherence_fraction();
  } else {
    r.fraction_nonadiabatic = 1.0;
  }
  if (in.rb_r_cz) r.rb_discrepancy = std::abs(r.total - *in.rb_r_cz);
  return r;
}

nlohmann::json to_json(const BudgetReport& r) {
  nlohmann::json j;
  j["dephasing_error_q1"] = r.dephasing_error_q1;
  j["dephasing_error_q2"] = r.dephasing_error_q2;
  j["relaxation_error"] = r.relaxation_error;
  j["nonadiabatic_error"] = r.nonadiabatic_error;
  j["total"] = r.total;
  j["fractions"] = {{"dephasing_q1", r.fraction_dephasing_q1},
                    {"dephasing_q2", r.fraction_dephasing_q2},
                    {"relaxation", r.fraction_relaxation},
                    {"nonadiabatic", r.fraction_nonadiabatic},
                    {"decoherence", r.decoherence_fraction()}};
  j["rb_r_cz"] = r.rb_r_cz ? nlohmann::json(*r.rb_r_cz) : nlohmann::json(nullptr);
  j["rb_discrepancy"] = r.rb_discrepancy ? nlohmann::json(*r.rb_discrepancy) : nlohmann::json(nullptr);
  j["profile_source"] = r.reconstructed_profile ? "reconstructed" : "measured";
  j["formula_inputs"] = r.formula_inputs;
  return j;
}

nlohmann::json to_json(const TransitionalResult& r) {
  auto arm = [](const TransitionalArm& a) {
    return nlohmann::json{{"m", a.m},
                          {"population", a.population},
                          {"A", a.fit.A},
                          {"p", a.fit.p},
                          {"B", a.fit.B},
                          {"error_per_gate", a.error_per_gate}};
  };
  return {{"joint_state", std::to_string(r.joint_state.q1) + std::to_string(r.joint_state.q2)},
          {"cz", arm(r.cz)},
          {"identity", arm(r.identity)},
          {"additional_error", r.additional_error},
          {"t1_contribution", r.t1_contribution},
          {"non_t1_error", r.non_t1_error}};
}

}  // namespace tcz
