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

#include "tcz/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tcz/errors.hpp"
#include "tcz/parallel.hpp"

namespace tcz {

namespace {

double wrap(double a) { return std::arg(std::polar(1.0, a)); }

CMatrix rotation_q2(double angle, double axis) {
  // exp(-i angle/2 (cos(axis) X + sin(axis) Y)) on Q2, identity on Q1
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  CMatrix r(2, 2);
  r << c, Complex(0.0, -s) * std::polar(1.0, -axis), Complex(0.0, -s) * std::polar(1.0, axis), c;
  CMatrix out = CMatrix::Zero(4, 4);
  out.topLeftCorner(2, 2) = r;
  out.bottomRightCorner(2, 2) = r;
  return out;
}

}  // namespace

std::vector<double> default_phase_grid(int points) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = kTwoPi * i / points;
  return g;
}

RamseyResult conditional_ramsey(const DeviceParams& params, const PulseShape& pulse,
                                ControlState control, const std::vector<double>& grid,
                                const PropagatorOptions& options) {
  const std::size_t n = grid.size();
  if (n < 8) throw ValidationError("Ramsey phase grid needs at least 8 points");
  const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
  if ((*hi - *lo) * n / (n - 1.0) < kTwoPi - 1e-9) {
    throw ValidationError("Ramsey phase grid must cover a full period");
  }
  const DressedBasis basis = DressedBasis::at_idle(params);
  const int d = basis.dimension();
  const CMatrix u = dressed_unitary(basis, params, pulse, Frame::Rotating, options);

  CVector psi = CVector::Zero(d);
  psi[control == ControlState::Excited ? 2 : 0] = 1.0;
  psi = embed_computational(rotation_q2(kPi / 2, kPi / 2), d) * psi;
  psi = u * psi;

  RamseyResult result;
  result.control_state = control;
  result.phases = grid;
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CVector out = embed_computational(rotation_q2(kPi / 2, grid[i]), d) * psi;
    const double p1 = std::norm(out[1]) + std::norm(out[3]);
    result.populations.push_back(p1);
    design(i, 0) = 1.0;
    design(i, 1) = std::cos(grid[i]);
    design(i, 2) = std::sin(grid[i]);
    y[i] = p1;
  }
  const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(y);
  // P1 = 1/2 + 1/2 sin(theta - phi)
  result.fitted_phase = std::atan2(coef[1], -coef[2]);
  result.fit_residual = std::sqrt((design * coef - y).squaredNorm() / n);
  if (result.fit_residual > 0.05) {
    std::ostringstream os;
    os << "Ramsey fit residual " << result.fit_residual << " exceeds 0.05";
    throw FitError(os.str());
  }
  return result;
}

double ramsey_phase_difference(const DeviceParams& params, const PulseShape& pulse,
                               const std::vector<double>& grid, const PropagatorOptions& options) {
  const RamseyResult g = conditional_ramsey(params, pulse, ControlState::Ground, grid, options);
  const RamseyResult e = conditional_ramsey(params, pulse, ControlState::Excited, grid, options);
  return wrap(e.fitted_phase - g.fitted_phase);
}

double chi12_from_ramsey(const DeviceParams& params, double coupler_frequency_ghz,
                         double duration_ns, const PropagatorOptions& options) {
  PulseShape p = PulseShape::idle(params.idle_frequency(), duration_ns, params.flux_map);
  p.peak_frequency_ghz = coupler_frequency_ghz;
  p.kind = PulseKind::Square;
  const double dphi = ramsey_phase_difference(params, p, default_phase_grid(), options);
  return -dphi / (kTwoPi * duration_ns);
}

CMatrix cz_matrix() {
  CMatrix cz = CMatrix::Identity(4, 4);
  cz(3, 3) = -1.0;
  return cz;
}

CMatrix z_rotations(double a, double b) {
  CMatrix z = CMatrix::Zero(4, 4);
  z(0, 0) = 1.0;
  z(1, 1) = std::polar(1.0, b);
  z(2, 2) = std::polar(1.0, a);
  z(3, 3) = std::polar(1.0, a + b);
  return z;
}

double conditional_phase(const CMatrix& u) {
  if (u.rows() < 4) throw InvalidDimensionError("conditional phase needs the computational block");
  return std::arg(u(3, 3) * u(0, 0) * std::conj(u(1, 1)) * std::conj(u(2, 2)));
}

PhaseCompensation single_qubit_phases(const CMatrix& u) {
  if (u.rows() < 4 || u.rows() != u.cols()) throw InvalidDimensionError("need a square >= 4x4 unitary");
  for (int k = 0; k < 4; ++k) {
    if (std::abs(u(k, k)) < 0.1) throw PhaseUndefinedError("diagonal amplitude too small for a phase");
  }
  double kept = 0.0;
  for (int a = 0; a < 4; ++a) kept += u.block(0, a, 4, 1).squaredNorm();
  if (1.0 - kept / 4.0 >= 0.05) throw ValidationError("leakage too large to define single-qubit phases");

  PhaseCompensation pc;
  pc.phi1 = std::arg(u(2, 2) / u(0, 0));
  pc.phi2 = std::arg(u(1, 1) / u(0, 0));
  pc.compensated = compensation_unitary(pc.phi1, pc.phi2, static_cast<int>(u.rows())) * u *
                   std::polar(1.0, -std::arg(u(0, 0)));
  return pc;
}

CMatrix compensation_unitary(double phi1, double phi2, int dimension) {
  return embed_computational(z_rotations(-phi1, -phi2), dimension);
}

GateMetrics gate_metrics(const CMatrix& u) { return gate_metrics(u, cz_matrix()); }

GateMetrics gate_metrics(const CMatrix& u, const CMatrix& target) {
  GateMetrics m;
  double kept = 0.0;
  for (int a = 0; a < 4; ++a) kept += u.block(0, a, 4, 1).squaredNorm();
  m.leakage = std::clamp(1.0 - kept / 4.0, 0.0, 1.0);
  double cp = conditional_phase(u);
  if (cp < 0.0) cp += kTwoPi;
  m.conditional_phase = cp;
  const PhaseCompensation pc = single_qubit_phases(u);
  m.phi1 = pc.phi1;
  m.phi2 = pc.phi2;
  const CMatrix mm = target.adjoint() * pc.compensated.topLeftCorner(4, 4);
  m.avg_fidelity_coherent =
      ((mm.adjoint() * mm).trace().real() + std::norm(mm.trace())) / 20.0;
  return m;
}

namespace {

struct PeakParam {
  const DeviceParams& params;
  PulseSpace space;
  double idle;
  double idle_flux;

  double peak(double x) const {
    return space == PulseSpace::Frequency ? idle - x : params.flux_map.frequency(idle_flux + x);
  }
  double excursion(double peak_ghz) const {
    return space == PulseSpace::Frequency ? idle - peak_ghz
                                          : params.flux_map.flux_for(peak_ghz) - idle_flux;
  }
  double max_excursion() const {
    return space == PulseSpace::Frequency ? idle - 0.5 : 0.5 - idle_flux - 1e-3;
  }
  PulseShape pulse(double x, double duration) const {
    PulseShape p = PulseShape::idle(idle, duration, params.flux_map);
    p.space = space;
    p.peak_frequency_ghz = peak(x);
    return p;
  }
};

}  // namespace

CalibrationResult calibrate_cz(const DeviceParams& params, double duration_ns,
                               const CalibrationOptions& options) {
  params.validate();
  if (!(duration_ns >= 10.0 && duration_ns <= 200.0)) {
    std::ostringstream os;
    os << "CZ duration " << duration_ns << " ns outside the supported [10, 200] ns";
    throw RangeError(os.str());
  }
  const DressedBasis basis = DressedBasis::at_idle(params);
  const double idle = params.idle_frequency();
  const PeakParam pp{params, options.space, idle,
                     options.space == PulseSpace::Flux ? params.flux_map.flux_for(idle) : 0.0};
  std::ostringstream diag;
  int evals = 0;

  PropagatorOptions fine = options.propagator;
  fine.richardson = false;
  auto phase_at = [&](double x, double dt) {
    PropagatorOptions o = fine;
    o.dt_ns = dt;
    ++evals;
    return conditional_phase(dressed_unitary(basis, params, pp.pulse(x, duration_ns), Frame::Rotating, o));
  };
  // signed distance from the target, taken on the branch centred between
  // zero and the target so the bracket ends keep opposite signs
  double direction = 1.0;
  auto f = [&](double x) {
    const double half = 0.5 * kPi * direction;
    return wrap(phase_at(x, fine.dt_ns) - half) - half;
  };

  double lo = 0.0, hi = 0.0, flo = 0.0, fhi = 0.0;
  double x0 = 0.0, x1 = 0.0, f0 = 0.0, f1 = 0.0;
  if (options.start_peak_ghz) {
    x0 = pp.excursion(*options.start_peak_ghz);
    f0 = f(x0);
    x1 = x0 + (options.space == PulseSpace::Frequency ? 1e-6 : 1e-7);
    f1 = f(x1);
    lo = 0.0;
    hi = pp.max_excursion();
  } else {
    const double step = options.scan_step.value_or(options.space == PulseSpace::Frequency ? 0.02 : 0.005);
    double prev_x = 0.0;
    double prev_cp = 0.0;
    bool found = false;
    diag << "scan:";
    for (double x = step; x <= pp.max_excursion(); x += step) {
      const double raw = phase_at(x, options.scan_dt_ns);
      const double cp = prev_cp + wrap(raw - prev_cp);
      diag << " (" << pp.peak(x) << " GHz, " << cp << ")";
      if (std::abs(cp) >= kPi) {
        direction = cp > 0.0 ? 1.0 : -1.0;
        lo = prev_x;
        hi = x;
        found = true;
        break;
      }
      prev_x = x;
      prev_cp = cp;
    }
    if (!found) {
      throw CalibrationError("no amplitude bracket reaches a conditional phase of pi", diag.str());
    }
    flo = f(lo);
    fhi = f(hi);
    if (flo * fhi > 0.0) throw CalibrationError("fine propagator lost the pi bracket", diag.str());
    // bisection to 1e-3 rad
    double fm = flo;
    double mid = lo;
    for (int it = 0; it < options.max_iterations; ++it) {
      mid = 0.5 * (lo + hi);
      fm = f(mid);
      if (fm < std::min(flo, fhi) || fm > std::max(flo, fhi)) {
        diag << " non-monotone phase near " << pp.peak(mid) << " GHz;";
      }
      if (std::abs(fm) < 1e-3) break;
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
        fhi = fm;
      }
    }
    x1 = mid;
    f1 = fm;
    const bool other_is_lo = std::abs(mid - lo) > std::abs(mid - hi);
    x0 = other_is_lo ? lo : hi;
    f0 = other_is_lo ? flo : fhi;
    if (x0 == x1) {
      x0 = hi;
      f0 = fhi;
    }
  }

  // secant to tolerance, continued until the update is negligible
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    if (f1 == f0) break;
    double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    if (!(x2 > 0.0 && x2 < pp.max_excursion())) x2 = 0.5 * (x0 + x1);
    const double f2 = f(x2);
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = f2;
    if (std::abs(f1) < options.tolerance_rad && std::abs(x1 - x0) < 1e-9) break;
  }
  if (std::abs(f1) >= options.tolerance_rad) {
    diag << " secant stalled at |cp - pi| = " << std::abs(f1);
    throw CalibrationError("calibration did not reach the phase tolerance", diag.str());
  }

  CalibrationResult result;
  result.pulse = pp.pulse(x1, duration_ns);
  result.unitary = dressed_unitary(basis, params, result.pulse, Frame::Rotating, options.propagator);
  result.metrics = gate_metrics(result.unitary);
  result.iterations = evals;
  if (std::abs(wrap(result.metrics.conditional_phase - kPi)) >= options.tolerance_rad) {
    diag << " verified phase " << result.metrics.conditional_phase;
    throw CalibrationError("calibrated pulse misses pi after the accuracy check", diag.str());
  }
  result.diagnostics = diag.str();
  return result;
}

nlohmann::json calibration_report(const CalibrationResult& r) {
  nlohmann::json j;
  j["amplitude_flux_Phi0"] = r.pulse.flux_amplitude();
  j["peak_frequency_GHz"] = r.pulse.peak_frequency_ghz;
  j["duration_ns"] = r.pulse.duration_ns;
  j["pulse_space"] = to_string(r.pulse.space);
  j["conditional_phase_rad"] = r.metrics.conditional_phase;
  j["phi1_rad"] = r.metrics.phi1;
  j["phi2_rad"] = r.metrics.phi2;
  j["leakage"] = r.metrics.leakage;
  j["coherent_infidelity"] = r.metrics.infidelity();
  return j;
}

}  // namespace tcz
