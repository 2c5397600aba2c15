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

#include "tcz/propagator.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "tcz/errors.hpp"
#include "tcz/parallel.hpp"
#include "tcz/rng.hpp"

namespace tcz {

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kNode1 = 0.5 - kSqrt3 / 6.0;
const double kNode2 = 0.5 + kSqrt3 / 6.0;
const double kWeightA = 0.25 + kSqrt3 / 6.0;
const double kWeightB = 0.25 - kSqrt3 / 6.0;

// H restricted to each excitation manifold, split into the static part and
// the diagonal number operators that carry the time dependence.
struct BlockModel {
  std::vector<std::vector<int>> index;
  std::vector<CMatrix> h_static;
  std::array<std::vector<RVector>, 3> number;
  int dimension = 0;

  BlockModel(const DeviceParams& params, const StateSpace& space) : dimension(space.dimension()) {
    const CMatrix hs = static_hamiltonian(params, space);
    for (const auto& idx : space.manifolds()) {
      if (idx.empty()) continue;
      const int k = static_cast<int>(idx.size());
      index.push_back(idx);
      CMatrix b(k, k);
      for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) b(r, c) = hs(idx[r], idx[c]);
      }
      h_static.push_back(b);
      for (Mode m : kModes) {
        RVector d(k);
        for (int r = 0; r < k; ++r) d[r] = space.label(idx[r]).occupation(m);
        number[static_cast<int>(m)].push_back(d);
      }
    }
  }

  std::size_t blocks() const { return index.size(); }

  // exp(-i 2 pi tau (Hs + w Nc + sum_m delta_m N_m)) for block b
  CMatrix exponential(std::size_t b, double w, const std::array<double, 3>& delta,
                      double tau) const {
    CMatrix h = h_static[b];
    const RVector diag = w * number[1][b] + delta[0] * number[0][b] + delta[1] * number[1][b] +
                         delta[2] * number[2][b];
    h.diagonal() += diag.cast<Complex>();
    if (h.rows() == 1) return CMatrix::Constant(1, 1, std::polar(1.0, -kTwoPi * tau * h(0, 0).real()));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    const CMatrix& v = es.eigenvectors();
    CVector ph(h.rows());
    for (int k = 0; k < h.rows(); ++k) ph[k] = std::polar(1.0, -kTwoPi * tau * es.eigenvalues()[k]);
    return v * ph.asDiagonal() * v.adjoint();
  }

  CMatrix assemble(const std::vector<CMatrix>& u) const {
    CMatrix out = CMatrix::Zero(dimension, dimension);
    for (std::size_t b = 0; b < blocks(); ++b) {
      const auto& idx = index[b];
      for (std::size_t r = 0; r < idx.size(); ++r) {
        for (std::size_t c = 0; c < idx.size(); ++c) out(idx[r], idx[c]) = u[b](r, c);
      }
    }
    return out;
  }

  std::vector<CMatrix> identity() const {
    std::vector<CMatrix> u;
    for (const auto& idx : index) {
      const int k = static_cast<int>(idx.size());
      u.push_back(CMatrix::Identity(k, k));
    }
    return u;
  }
};

// Coupler frequency and quasi-static offsets as functions of time.
struct Drive {
  const PulseShape& pulse;
  const NoiseModel* noise;
  const QuasiStaticDraw* draw;

  bool has_offsets() const {
    return noise != nullptr && draw != nullptr &&
           noise->dephasing == DephasingKind::QuasiStaticGaussian;
  }

  double omega(double t) const { return pulse_waveform(pulse, std::clamp(t, 0.0, pulse.duration_ns)); }

  std::array<double, 3> delta(double w) const {
    std::array<double, 3> d{0.0, 0.0, 0.0};
    if (!has_offsets()) return d;
    for (int m = 0; m < 3; ++m) {
      const double g = noise->modes[m].gamma_phi_at(w);  // 1/ns
      d[m] = (*draw)[m] * std::sqrt(2.0) * g / kTwoPi;
    }
    return d;
  }
};

void advance(const BlockModel& model, const Drive& drive, double t0, double t1, int steps,
             std::vector<CMatrix>& u) {
  const double h = (t1 - t0) / steps;
  for (int s = 0; s < steps; ++s) {
    const double t = t0 + s * h;
    const double w1 = drive.omega(t + kNode1 * h);
    const double w2 = drive.omega(t + kNode2 * h);
    const auto d1 = drive.delta(w1);
    const auto d2 = drive.delta(w2);
    std::array<double, 3> da{}, db{};
    for (int m = 0; m < 3; ++m) {
      da[m] = 2.0 * (kWeightA * d1[m] + kWeightB * d2[m]);
      db[m] = 2.0 * (kWeightB * d1[m] + kWeightA * d2[m]);
    }
    const double wa = 2.0 * (kWeightA * w1 + kWeightB * w2);
    const double wb = 2.0 * (kWeightB * w1 + kWeightA * w2);
    for (std::size_t b = 0; b < model.blocks(); ++b) {
      const CMatrix first = model.exponential(b, wa, da, 0.5 * h);
      const CMatrix second = model.exponential(b, wb, db, 0.5 * h);
      u[b] = second * (first * u[b]);
    }
  }
}

int steps_for(double span, double dt) {
  return std::max(1, static_cast<int>(std::ceil(span / dt - 1e-9)));
}

// Exact single-mode amplitude-damping and dephasing maps on a truncated
// number basis.
struct Dissipator {
  const StateSpace& space;
  std::array<std::vector<std::vector<int>>, 3> lowered;  // [mode][k][j] -> index or -1

  explicit Dissipator(const StateSpace& s) : space(s) {
    const int d = space.dimension();
    for (Mode m : kModes) {
      auto& table = lowered[static_cast<int>(m)];
      const int lmax = space.levels(m);
      table.assign(lmax, std::vector<int>(d, -1));
      for (int k = 0; k < lmax; ++k) {
        for (int j = 0; j < d; ++j) {
          const BareLabel& l = space.label(j);
          const int n = l.occupation(m);
          if (n < k) continue;
          auto idx = space.index_of(l.with(m, n - k));
          table[k][j] = idx ? *idx : -1;
        }
      }
    }
  }

  void damp(Mode m, double eta, CMatrix& x) const {
    if (eta >= 1.0) return;
    const int d = space.dimension();
    const auto& table = lowered[static_cast<int>(m)];
    std::vector<int> n(d);
    for (int j = 0; j < d; ++j) n[j] = space.label(j).occupation(m);
    CMatrix out = CMatrix::Zero(d, d);
    for (std::size_t k = 0; k < table.size(); ++k) {
      std::vector<double> c(d, 0.0);
      bool any = false;
      for (int j = 0; j < d; ++j) {
        if (n[j] < static_cast<int>(k) || table[k][j] < 0) continue;
        const double binom = std::exp(std::lgamma(n[j] + 1.0) - std::lgamma(k + 1.0) -
                                      std::lgamma(n[j] - k + 1.0));
        c[j] = std::sqrt(binom * std::pow(eta, n[j] - static_cast<double>(k)) *
                         std::pow(1.0 - eta, static_cast<double>(k)));
        any = any || c[j] != 0.0;
      }
      if (!any) continue;
      for (int j = 0; j < d; ++j) {
        if (c[j] == 0.0) continue;
        for (int l = 0; l < d; ++l) {
          if (c[l] == 0.0) continue;
          out(table[k][j], table[k][l]) += c[j] * c[l] * x(j, l);
        }
      }
    }
    x = std::move(out);
  }

  // coherence (j, l) decays by exp(-dt * sum_m gamma_m (n_mj - n_ml)^2)
  Eigen::MatrixXd dephasing_mask(const std::array<double, 3>& gamma_phi, double dt) const {
    const int d = space.dimension();
    Eigen::MatrixXd mask(d, d);
    for (int j = 0; j < d; ++j) {
      for (int l = 0; l < d; ++l) {
        double s = 0.0;
        for (Mode m : kModes) {
          const double dn = space.label(j).occupation(m) - space.label(l).occupation(m);
          s += gamma_phi[static_cast<int>(m)] * dn * dn;
        }
        mask(j, l) = std::exp(-dt * s);
      }
    }
    return mask;
  }
};

}  // namespace

CMatrix propagate_unitary_fixed_step(const DeviceParams& params, const PulseShape& pulse,
                                     const StateSpace& space, double dt_ns,
                                     const NoiseModel* noise, const QuasiStaticDraw* draw) {
  if (!(dt_ns > 0.0)) throw ValidationError("time step must be positive");
  pulse.validate();
  const BlockModel model(params, space);
  const Drive drive{pulse, noise, draw};
  std::vector<CMatrix> u = model.identity();
  const double step = std::min(dt_ns, pulse.sample_step_ns);
  advance(model, drive, 0.0, pulse.duration_ns, steps_for(pulse.duration_ns, step), u);
  return model.assemble(u);
}

double richardson_residual(const DeviceParams& params, const PulseShape& pulse,
                           const StateSpace& space, double dt_ns) {
  const CMatrix coarse = propagate_unitary_fixed_step(params, pulse, space, dt_ns);
  const CMatrix fine = propagate_unitary_fixed_step(params, pulse, space, 0.5 * dt_ns);
  return (coarse - fine).cwiseAbs().maxCoeff();
}

CMatrix propagate_unitary(const DeviceParams& params, const PulseShape& pulse,
                          const StateSpace& space, const PropagatorOptions& options) {
  params.validate();
  const double dt = std::min(options.dt_ns, pulse.sample_step_ns);
  if (!options.richardson) return propagate_unitary_fixed_step(params, pulse, space, dt);
  const CMatrix coarse = propagate_unitary_fixed_step(params, pulse, space, dt);
  const CMatrix fine = propagate_unitary_fixed_step(params, pulse, space, 0.5 * dt);
  const double residual = (coarse - fine).cwiseAbs().maxCoeff();
  if (residual > options.richardson_tolerance) {
    std::ostringstream os;
    os << "propagator not converged: halving dt=" << dt << " ns changed U by " << residual;
    throw AccuracyError(os.str(), residual);
  }
  return fine;
}

CMatrix propagate_unitary(const DeviceParams& params, const PulseShape& pulse,
                          const PropagatorOptions& options) {
  return propagate_unitary(params, pulse, StateSpace::excitation_limited(params, 2), options);
}

double unitarity_defect(const CMatrix& u) {
  return (u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

std::vector<QuasiStaticDraw> quasi_static_draws(std::uint64_t seed, int count) {
  if (count < 1) throw ValidationError("quasi-static draw count must be >= 1");
  std::vector<QuasiStaticDraw> out(count);
  for (int m = 0; m < 3; ++m) {
    std::vector<int> strata(count);
    std::iota(strata.begin(), strata.end(), 0);
    CounterRng perm(seed, 0x100 + m);
    perm.shuffle(strata);
    CounterRng jitter(seed, 0x200 + m);
    for (int k = 0; k < count; ++k) {
      const double u = jitter.uniform();
      double p = (strata[k] + u) / count;
      p = std::clamp(p, 1e-300, 1.0 - 1e-16);
      out[k][m] = normal_quantile(p);
    }
  }
  return out;
}

void validate_density_matrix(const CMatrix& rho, double tolerance) {
  if (rho.rows() != rho.cols()) throw ValidationError("density matrix must be square");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tolerance) {
    throw ValidationError("density matrix must be Hermitian");
  }
  if (std::abs(rho.trace() - Complex(1.0)) > tolerance) {
    throw ValidationError("density matrix must have unit trace");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tolerance) {
    throw ValidationError("density matrix must be positive semidefinite");
  }
}

void evolve_operators(const DeviceParams& params, const PulseShape& pulse,
                      const NoiseModel& noise, const StateSpace& space,
                      const QuasiStaticDraw& draw, const PropagatorOptions& options,
                      std::vector<CMatrix>& ops) {
  pulse.validate();
  noise.validate();
  const BlockModel model(params, space);
  const Drive drive{pulse, &noise, &draw};
  const bool markovian_dephasing =
      noise.dephasing == DephasingKind::Markovian && noise.has_dephasing();
  const bool dissipative = noise.has_relaxation() || markovian_dephasing;
  const double dt = std::min(options.dt_ns, pulse.sample_step_ns);

  if (!dissipative) {
    std::vector<CMatrix> u = model.identity();
    advance(model, drive, 0.0, pulse.duration_ns, steps_for(pulse.duration_ns, dt), u);
    const CMatrix U = model.assemble(u);
    for (auto& x : ops) x = U * x * U.adjoint();
    return;
  }

  const Dissipator diss(space);
  const int intervals = steps_for(pulse.duration_ns, options.dissipation_step_ns);
  const double span = pulse.duration_ns / intervals;
  const int sub = steps_for(span, dt);

  auto half_step = [&](double w) {
    std::array<double, 3> eta{};
    std::array<double, 3> gphi{0.0, 0.0, 0.0};
    for (Mode m : kModes) {
      const int i = static_cast<int>(m);
      eta[i] = std::exp(-noise.modes[i].gamma1_at(w) * 0.5 * span);
      if (markovian_dephasing) gphi[i] = noise.modes[i].gamma_phi_at(w);
    }
    const Eigen::MatrixXd mask = diss.dephasing_mask(gphi, 0.5 * span);
    for (auto& x : ops) {
      for (Mode m : kModes) diss.damp(m, eta[static_cast<int>(m)], x);
      if (markovian_dephasing) x = x.cwiseProduct(mask.cast<Complex>());
    }
  };

  for (int c = 0; c < intervals; ++c) {
    const double t0 = c * span;
    const double t1 = c + 1 == intervals ? pulse.duration_ns : (c + 1) * span;
    const double w_mid = drive.omega(0.5 * (t0 + t1));
    half_step(w_mid);
    std::vector<CMatrix> u = model.identity();
    advance(model, drive, t0, t1, sub, u);
    const CMatrix U = model.assemble(u);
    const CMatrix Ud = U.adjoint();
    for (auto& x : ops) x = U * x * Ud;
    half_step(w_mid);
  }
}

CMatrix propagate_lindblad(const DeviceParams& params, const PulseShape& pulse,
                           const NoiseModel& noise, const CMatrix& rho0, const StateSpace& space,
                           const PropagatorOptions& options) {
  if (rho0.rows() != space.dimension()) {
    throw InvalidDimensionError("initial state does not match the state space");
  }
  validate_density_matrix(rho0);
  noise.validate();
  if (noise.noiseless()) {
    const CMatrix U = propagate_unitary(params, pulse, space, options);
    return U * rho0 * U.adjoint();
  }
  const bool sample = noise.dephasing == DephasingKind::QuasiStaticGaussian && noise.has_dephasing();
  const std::vector<QuasiStaticDraw> draws =
      sample ? quasi_static_draws(noise.seed, noise.quasi_static_samples)
             : std::vector<QuasiStaticDraw>{QuasiStaticDraw{0.0, 0.0, 0.0}};
  std::vector<CMatrix> results(draws.size());
  parallel_for(draws.size(), options.threads, [&](std::size_t k) {
    std::vector<CMatrix> ops{rho0};
    evolve_operators(params, pulse, noise, space, draws[k], options, ops);
    results[k] = std::move(ops[0]);
  });
  CMatrix rho = CMatrix::Zero(rho0.rows(), rho0.cols());
  for (const auto& r : results) rho += r;
  return rho / static_cast<double>(draws.size());
}

CMatrix propagate_lindblad(const DeviceParams& params, const PulseShape& pulse,
                           const NoiseModel& noise, const CMatrix& rho0,
                           const PropagatorOptions& options) {
  return propagate_lindblad(params, pulse, noise, rho0, StateSpace::excitation_limited(params, 2),
                            options);
}

}  // namespace tcz
