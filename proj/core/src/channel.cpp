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

#include "tcz/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "tcz/errors.hpp"
#include "tcz/parallel.hpp"
#include "tcz/spectrum.hpp"

namespace tcz {

namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

int dimension_of(const CMatrix& superop) {
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(superop.rows()))));
  if (superop.rows() != superop.cols() || d * d != superop.rows()) {
    throw InvalidDimensionError("superoperator must be d^2 x d^2");
  }
  return d;
}

}  // namespace

CMatrix vectorize(const CMatrix& rho) {
  return Eigen::Map<const CMatrix>(rho.data(), rho.size(), 1);
}

CMatrix unvectorize(const CMatrix& v, int d) {
  if (v.size() != static_cast<Eigen::Index>(d) * d) throw InvalidDimensionError("bad vector size");
  return Eigen::Map<const CMatrix>(v.data(), d, d);
}

QuantumChannel::QuantumChannel(CMatrix superop)
    : dimension_(dimension_of(superop)), superop_(std::move(superop)) {}

QuantumChannel QuantumChannel::identity(int d) {
  return QuantumChannel(CMatrix::Identity(d * d, d * d));
}

QuantumChannel QuantumChannel::from_unitary(const CMatrix& u) {
  return QuantumChannel(kron(u.conjugate(), u));
}

QuantumChannel QuantumChannel::from_kraus(const std::vector<CMatrix>& kraus) {
  if (kraus.empty()) throw InvalidDimensionError("empty Kraus set");
  const int d = static_cast<int>(kraus.front().rows());
  CMatrix s = CMatrix::Zero(d * d, d * d);
  for (const auto& k : kraus) s += kron(k.conjugate(), k);
  return QuantumChannel(std::move(s));
}

CMatrix QuantumChannel::apply(const CMatrix& rho) const {
  if (rho.rows() != dimension_ || rho.cols() != dimension_) {
    throw InvalidDimensionError("state dimension does not match channel");
  }
  return unvectorize(superop_ * vectorize(rho), dimension_);
}

QuantumChannel QuantumChannel::then(const QuantumChannel& next) const {
  if (next.dimension_ != dimension_) throw InvalidDimensionError("channel dimensions differ");
  return QuantumChannel(next.superop_ * superop_);
}

QuantumChannel QuantumChannel::operator*(const QuantumChannel& first) const {
  return first.then(*this);
}

CMatrix QuantumChannel::choi() const {
  const int d = dimension_;
  CMatrix j(d * d, d * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) j(a * d + r, b * d + c) = superop_(r + d * c, a + d * b);
      }
    }
  }
  return j;
}

double QuantumChannel::trace_preservation_defect() const {
  const int d = dimension_;
  double worst = 0.0;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      Complex tr = 0.0;
      for (int r = 0; r < d; ++r) tr += superop_(r + d * r, a + d * b);
      worst = std::max(worst, std::abs(tr - (a == b ? Complex(1.0) : Complex(0.0))));
    }
  }
  return worst;
}

double QuantumChannel::min_choi_eigenvalue() const {
  const CMatrix j = choi();
  const CMatrix herm = 0.5 * (j + j.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void QuantumChannel::check_cptp(double tolerance) const {
  const double tp = trace_preservation_defect();
  if (tp > tolerance) {
    std::ostringstream os;
    os << "channel is not trace preserving (defect " << tp << ")";
    throw AccuracyError(os.str(), tp);
  }
  const double cp = min_choi_eigenvalue();
  if (cp < -tolerance) {
    std::ostringstream os;
    os << "channel is not completely positive (Choi eigenvalue " << cp << ")";
    throw AccuracyError(os.str(), cp);
  }
}

DressedBasis DressedBasis::at_idle(const DeviceParams& params) {
  params.validate();
  StateSpace space = StateSpace::excitation_limited(params, 2);
  const double idle = params.idle_frequency();
  const LabeledSpectrum spec = label_states(block_eigensystems(params, idle, space), space, idle);

  std::vector<BareLabel> order = {{0, 0, 0}, {0, 0, 1}, {1, 0, 0}, {1, 0, 1}};
  for (const auto& l : space.labels()) {
    if (std::find(order.begin(), order.end(), l) == order.end()) order.push_back(l);
  }
  const int d = space.dimension();
  DressedBasis basis{space, CMatrix(d, d), order, RVector(d), RVector(d)};
  for (int k = 0; k < d; ++k) {
    const LabeledLevel& lvl = spec.at(order[k]);
    basis.vectors.col(k) = lvl.state;
    basis.energies_ghz[k] = lvl.energy_ghz;
  }
  const double e00 = basis.energies_ghz[0];
  const double f2 = basis.energies_ghz[1] - e00;
  const double f1 = basis.energies_ghz[2] - e00;
  basis.frame_energies_ghz = basis.energies_ghz;
  basis.frame_energies_ghz[3] = e00 + f1 + f2;
  return basis;
}

CMatrix DressedBasis::to_dressed(const CMatrix& op) const { return vectors.adjoint() * op * vectors; }

CMatrix DressedBasis::to_bare(const CMatrix& op) const { return vectors * op * vectors.adjoint(); }

CMatrix DressedBasis::frame_rotation(double t_ns) const {
  CMatrix r = CMatrix::Zero(dimension(), dimension());
  for (int k = 0; k < dimension(); ++k) r(k, k) = std::polar(1.0, kTwoPi * frame_energies_ghz[k] * t_ns);
  return r;
}

CMatrix dressed_unitary(const DressedBasis& basis, const DeviceParams& params,
                        const PulseShape& pulse, Frame frame, const PropagatorOptions& options) {
  CMatrix u = basis.to_dressed(propagate_unitary(params, pulse, basis.space, options));
  if (frame == Frame::Rotating) u = basis.frame_rotation(pulse.duration_ns) * u;
  return u;
}

CMatrix dressed_unitary(const DeviceParams& params, const PulseShape& pulse, Frame frame,
                        const PropagatorOptions& options) {
  return dressed_unitary(DressedBasis::at_idle(params), params, pulse, frame, options);
}

QuantumChannel channel_from_pulse(const DressedBasis& basis, const DeviceParams& params,
                                  const PulseShape& pulse, const NoiseModel& noise, Frame frame,
                                  const PropagatorOptions& options) {
  noise.validate();
  if (noise.noiseless()) {
    return QuantumChannel::from_unitary(dressed_unitary(basis, params, pulse, frame, options));
  }
  const int d = basis.dimension();
  const CMatrix rot =
      frame == Frame::Rotating ? basis.frame_rotation(pulse.duration_ns) : CMatrix::Identity(d, d);
  const bool sample =
      noise.dephasing == DephasingKind::QuasiStaticGaussian && noise.has_dephasing();
  const bool dissipative = noise.has_relaxation() ||
                           (noise.dephasing == DephasingKind::Markovian && noise.has_dephasing());
  const std::vector<QuasiStaticDraw> draws =
      sample ? quasi_static_draws(noise.seed, noise.quasi_static_samples)
             : std::vector<QuasiStaticDraw>{QuasiStaticDraw{0.0, 0.0, 0.0}};

  std::vector<CMatrix> parts(draws.size());
  parallel_for(draws.size(), options.threads, [&](std::size_t k) {
    if (!dissipative) {
      const double dt = std::min(options.dt_ns, pulse.sample_step_ns);
      const CMatrix u = rot * basis.to_dressed(propagate_unitary_fixed_step(
                                  params, pulse, basis.space, dt, &noise, &draws[k]));
      parts[k] = kron(u.conjugate(), u);
      return;
    }
    std::vector<CMatrix> ops;
    ops.reserve(d * d);
    for (int b = 0; b < d; ++b) {
      for (int a = 0; a < d; ++a) ops.push_back(basis.vectors.col(a) * basis.vectors.col(b).adjoint());
    }
    evolve_operators(params, pulse, noise, basis.space, draws[k], options, ops);
    CMatrix s(d * d, d * d);
    for (int col = 0; col < d * d; ++col) {
      s.col(col) = vectorize(rot * basis.to_dressed(ops[col]) * rot.adjoint());
    }
    parts[k] = std::move(s);
  });
  CMatrix total = CMatrix::Zero(d * d, d * d);
  for (const auto& p : parts) total += p;
  return QuantumChannel(total / static_cast<double>(draws.size()));
}

QuantumChannel channel_from_pulse(const DeviceParams& params, const PulseShape& pulse,
                                  const NoiseModel& noise, Frame frame,
                                  const PropagatorOptions& options) {
  return channel_from_pulse(DressedBasis::at_idle(params), params, pulse, noise, frame, options);
}

QuantumChannel idle_channel(const DressedBasis& basis, const DeviceParams& params,
                            double duration_ns, const NoiseModel& noise, Frame frame,
                            const PropagatorOptions& options) {
  const PulseShape idle = PulseShape::idle(params.idle_frequency(), duration_ns, params.flux_map);
  return channel_from_pulse(basis, params, idle, noise, frame, options);
}

CMatrix embed_computational(const CMatrix& u4, int dimension) {
  if (u4.rows() != kComputationalDim || u4.cols() != kComputationalDim) {
    throw InvalidDimensionError("computational unitary must be 4x4");
  }
  CMatrix u = CMatrix::Identity(dimension, dimension);
  u.topLeftCorner(kComputationalDim, kComputationalDim) = u4;
  return u;
}

double channel_leakage(const QuantumChannel& channel) {
  const int d = channel.dimension();
  double kept = 0.0;
  for (int a = 0; a < kComputationalDim; ++a) {
    for (int r = 0; r < kComputationalDim; ++r) kept += channel.superoperator()(r + d * r, a + d * a).real();
  }
  return 1.0 - kept / kComputationalDim;
}

}  // namespace tcz
