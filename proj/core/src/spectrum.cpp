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

#include "tcz/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "tcz/errors.hpp"
#include "tcz/parallel.hpp"

namespace tcz {

namespace {

constexpr BareLabel k000{0, 0, 0};
constexpr BareLabel k001{0, 0, 1};
constexpr BareLabel k100{1, 0, 0};
constexpr BareLabel k101{1, 0, 1};

StateSpace two_excitation_space(const DeviceParams& params) {
  return StateSpace::excitation_limited(params, 2);
}

}  // namespace

Eigensystem eigensolve(const CMatrix& h) {
  if (h.rows() != h.cols()) throw ValidationError("eigensolve: matrix is not square");
  if (hermiticity_defect(h) > 1e-12) throw ValidationError("eigensolve: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw AccuracyError("eigensolve did not converge", 0.0);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double eigen_residual(const CMatrix& h, const Eigensystem& es) {
  const double scale = std::max(h.cwiseAbs().maxCoeff(), 1e-300);
  double worst = 0.0;
  for (int k = 0; k < es.energies.size(); ++k) {
    const CVector r = h * es.vectors.col(k) - es.energies[k] * es.vectors.col(k);
    worst = std::max(worst, r.norm());
  }
  return worst / scale;
}

const LabeledLevel& LabeledSpectrum::at(const BareLabel& label) const {
  for (const auto& l : levels) {
    if (l.label == label) return l;
  }
  throw ValidationError("label " + label.str() + " not present in spectrum");
}

std::vector<const LabeledLevel*> LabeledSpectrum::manifold(int excitations) const {
  std::vector<const LabeledLevel*> out;
  for (const auto& l : levels) {
    if (l.label.excitations() == excitations) out.push_back(&l);
  }
  return out;
}

std::vector<Eigensystem> block_eigensystems(const DeviceParams& params,
                                            double coupler_frequency_ghz,
                                            const StateSpace& space) {
  const CMatrix h = build_hamiltonian(params, coupler_frequency_ghz, space);
  std::vector<Eigensystem> out;
  out.reserve(space.manifolds().size());
  for (const auto& idx : space.manifolds()) {
    const int k = static_cast<int>(idx.size());
    CMatrix block(k, k);
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) block(r, c) = h(idx[r], idx[c]);
    }
    out.push_back(eigensolve(block));
  }
  return out;
}

LabeledSpectrum label_states(const std::vector<Eigensystem>& blocks, const StateSpace& space,
                             double coupler_frequency_ghz, const LabeledSpectrum* reference) {
  if (blocks.size() != space.manifolds().size()) {
    throw InvalidDimensionError("label_states: block count does not match the state space");
  }
  LabeledSpectrum out;
  out.coupler_frequency_ghz = coupler_frequency_ghz;
  out.levels.reserve(space.dimension());

  for (std::size_t n = 0; n < blocks.size(); ++n) {
    const auto& idx = space.manifold(static_cast<int>(n));
    const Eigensystem& es = blocks[n];
    const int k = static_cast<int>(idx.size());

    // overlap(b, e): label b (manifold order) against eigenvector e
    Eigen::MatrixXd overlap(k, k);
    if (reference == nullptr) {
      overlap = es.vectors.cwiseAbs2();
    } else {
      for (int b = 0; b < k; ++b) {
        const CVector& ref = reference->at(space.label(idx[b])).state;
        for (int e = 0; e < k; ++e) {
          Complex dot = 0.0;
          for (int r = 0; r < k; ++r) dot += std::conj(ref[idx[r]]) * es.vectors(r, e);
          overlap(b, e) = std::norm(dot);
        }
      }
    }

    std::vector<int> label_of(k, -1);
    std::vector<bool> b_used(k, false), e_used(k, false);
    for (int round = 0; round < k; ++round) {
      int bb = -1, be = -1;
      double best = -1.0;
      for (int b = 0; b < k; ++b) {
        if (b_used[b]) continue;
        for (int e = 0; e < k; ++e) {
          if (!e_used[e] && overlap(b, e) > best) {
            best = overlap(b, e);
            bb = b;
            be = e;
          }
        }
      }
      if (round + 1 < k) {
        for (int b = 0; b < k; ++b) {
          if (b == bb || b_used[b]) continue;
          if (overlap(b, be) > best - kLabelTieTolerance) {
            throw DegenerateLabelError("ambiguous label assignment between " +
                                           space.label(idx[bb]).str() + " and " +
                                           space.label(idx[b]).str(),
                                       space.label(idx[bb]), space.label(idx[b]));
          }
        }
        for (int e = 0; e < k; ++e) {
          if (e == be || e_used[e]) continue;
          if (overlap(bb, e) > best - kLabelTieTolerance) {
            int rival = bb;
            double rival_ov = -1.0;
            for (int b = 0; b < k; ++b) {
              if (b != bb && !b_used[b] && overlap(b, e) > rival_ov) {
                rival_ov = overlap(b, e);
                rival = b;
              }
            }
            throw DegenerateLabelError("ambiguous eigenvector for " + space.label(idx[bb]).str(),
                                       space.label(idx[bb]), space.label(idx[rival]));
          }
        }
      }
      b_used[bb] = true;
      e_used[be] = true;
      label_of[be] = bb;
    }

    for (int e = 0; e < k; ++e) {
      LabeledLevel level;
      level.label = space.label(idx[label_of[e]]);
      level.energy_ghz = es.energies[e];
      level.state = CVector::Zero(space.dimension());
      // fix the gauge so the bare component of the own label is real positive
      const Complex own = es.vectors(label_of[e], e);
      const Complex gauge = std::abs(own) > 0.0 ? std::conj(own) / std::abs(own) : Complex(1.0);
      for (int r = 0; r < k; ++r) level.state[idx[r]] = es.vectors(r, e) * gauge;
      level.overlap = std::norm(own);
      out.levels.push_back(std::move(level));
    }
  }
  return out;
}

BranchTracker::BranchTracker(DeviceParams params, StateSpace space, double max_step_ghz)
    : params_(std::move(params)), space_(std::move(space)), max_step_ghz_(max_step_ghz) {
  params_.validate();
  if (!(max_step_ghz_ > 0.0)) throw ValidationError("tracker step must be positive");
  const double idle = params_.idle_frequency();
  idle_ = label_states(block_eigensystems(params_, idle, space_), space_, idle);
}

BranchTracker::BranchTracker(const DeviceParams& params, double max_step_ghz)
    : BranchTracker(params, two_excitation_space(params), max_step_ghz) {}

LabeledSpectrum BranchTracker::step(const LabeledSpectrum& from, double target) const {
  const double start = from.coupler_frequency_ghz;
  const int n = std::max(1, static_cast<int>(std::ceil(std::abs(target - start) / max_step_ghz_)));
  if (target == start) return from;
  LabeledSpectrum cur = from;
  for (int i = 1; i <= n; ++i) {
    const double w = i == n ? target : start + (target - start) * i / n;
    cur = label_states(block_eigensystems(params_, w, space_), space_, w, &cur);
  }
  return cur;
}

LabeledSpectrum BranchTracker::at(double coupler_frequency_ghz) const {
  return step(idle_, coupler_frequency_ghz);
}

std::vector<LabeledSpectrum> BranchTracker::along(const std::vector<double>& freqs) const {
  std::vector<LabeledSpectrum> out;
  out.reserve(freqs.size());
  const LabeledSpectrum* prev = &idle_;
  for (double w : freqs) {
    out.push_back(step(*prev, w));
    prev = &out.back();
  }
  return out;
}

double chi12_from(const LabeledSpectrum& s) {
  return s.energy(k101) + s.energy(k000) - s.energy(k100) - s.energy(k001);
}

double chi12_spectral(const DeviceParams& params, double coupler_frequency_ghz) {
  if (!(coupler_frequency_ghz > 0.0)) throw ValidationError("coupler frequency must be positive");
  BranchTracker tracker(params);
  return chi12_from(tracker.at(coupler_frequency_ghz));
}

double ChiCurve::min_abs_ghz() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    if (p.valid()) m = std::min(m, std::abs(p.chi12_ghz));
  }
  return m;
}

double ChiCurve::max_abs_ghz() const {
  double m = 0.0;
  for (const auto& p : points) {
    if (p.valid()) m = std::max(m, std::abs(p.chi12_ghz));
  }
  return m;
}

namespace {

// True when two bare levels of different coupler occupation coincide.
bool bare_degenerate(const DeviceParams& params, const StateSpace& space, double w) {
  const CMatrix h = build_hamiltonian(params, w, space);
  for (const auto& idx : space.manifolds()) {
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = i + 1; j < idx.size(); ++j) {
        if (space.label(idx[i]).c == space.label(idx[j]).c) continue;
        if (std::abs(h(idx[i], idx[i]).real() - h(idx[j], idx[j]).real()) < 1e-9) return true;
      }
    }
  }
  return false;
}

}  // namespace

ChiCurve sweep_chi(const DeviceParams& params, const std::vector<double>& freqs, int threads) {
  params.validate();
  const StateSpace space = two_excitation_space(params);
  BranchTracker tracker(params, space);
  const double idle = params.idle_frequency();
  const std::size_t n = freqs.size();

  ChiCurve curve;
  curve.points.resize(n);
  std::vector<double> eval(n);
  for (std::size_t i = 0; i < n; ++i) {
    curve.points[i].coupler_frequency_ghz = freqs[i];
    eval[i] = freqs[i];
    if (!(freqs[i] > 0.0)) {
      curve.points[i].flags = "invalid_frequency";
      continue;
    }
    if (bare_degenerate(params, space, freqs[i])) {
      eval[i] = freqs[i] + kDegeneracyShiftGhz;
      curve.points[i].flags = "perturbed";
    }
    curve.points[i].evaluated_frequency_ghz = eval[i];
  }

  std::vector<std::vector<Eigensystem>> blocks(n);
  parallel_for(n, threads, [&](std::size_t i) {
    if (eval[i] > 0.0) blocks[i] = block_eigensystems(params, eval[i], space);
  });

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return eval[a] < eval[b]; });
  std::size_t start = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(eval[order[k]] - idle) < std::abs(eval[order[start]] - idle)) start = k;
  }

  auto label_point = [&](std::size_t i, const LabeledSpectrum& prev) -> std::optional<LabeledSpectrum> {
    ChiPoint& p = curve.points[i];
    if (!(eval[i] > 0.0)) return std::nullopt;
    try {
      const double w = eval[i];
      const double gap = w - prev.coupler_frequency_ghz;
      LabeledSpectrum ref = prev;
      if (std::abs(gap) > 0.002) ref = tracker.step(prev, w - std::copysign(0.001, gap));
      LabeledSpectrum s = label_states(blocks[i], space, w, &ref);
      p.chi12_ghz = chi12_from(s);
      p.label_overlap = s.at(k101).overlap;
      return s;
    } catch (const DegenerateLabelError& e) {
      p.flags = "degenerate";
      p.chi12_ghz = std::numeric_limits<double>::quiet_NaN();
    } catch (const Error& e) {
      p.flags = std::string("error:") + e.what();
      p.chi12_ghz = std::numeric_limits<double>::quiet_NaN();
    }
    return std::nullopt;
  };

  if (n == 0) return curve;
  // upward then downward from the point nearest idle
  LabeledSpectrum base = tracker.idle();
  LabeledSpectrum prev = base;
  for (std::size_t k = start; k < n; ++k) {
    if (auto s = label_point(order[k], prev)) prev = std::move(*s);
    if (k == start) base = prev;
  }
  prev = base;
  for (std::size_t k = start; k-- > 0;) {
    if (auto s = label_point(order[k], prev)) prev = std::move(*s);
  }
  return curve;
}

namespace {

double gap_of(const LabeledSpectrum& s, BareLabel* nearest) {
  const double e101 = s.energy(k101);
  double best = std::numeric_limits<double>::infinity();
  for (const LabeledLevel* l : s.manifold(2)) {
    if (l->label == k101) continue;
    const double d = std::abs(l->energy_ghz - e101);
    if (d < best) {
      best = d;
      if (nearest) *nearest = l->label;
    }
  }
  return best;
}

}  // namespace

GapResult min_gap(const DeviceParams& params, const std::vector<double>& trajectory,
                  double grid_step_ghz) {
  if (trajectory.empty()) throw ValidationError("min_gap: empty trajectory");
  if (!(grid_step_ghz > 0.0)) throw ValidationError("min_gap: grid step must be positive");
  const auto [lo_it, hi_it] = std::minmax_element(trajectory.begin(), trajectory.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  BranchTracker tracker(params, grid_step_ghz);

  GapResult result;
  const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / grid_step_ghz)));
  std::vector<LabeledSpectrum> grid;
  std::vector<double> gaps;
  grid.reserve(n + 1);
  LabeledSpectrum cur = tracker.at(hi);
  for (int i = 0; i <= n; ++i) {
    const double w = hi - (hi - lo) * i / n;
    cur = tracker.step(cur, w);
    gaps.push_back(gap_of(cur, nullptr));
    grid.push_back(cur);
    ++result.evaluations;
    if (hi == lo) break;
  }
  const std::size_t k = static_cast<std::size_t>(
      std::min_element(gaps.begin(), gaps.end()) - gaps.begin());
  result.coupler_frequency_ghz = grid[k].coupler_frequency_ghz;
  result.gap_ghz = gap_of(grid[k], &result.nearest);
  if (grid.size() < 3) return result;

  // golden section on the bracketing grid cells
  double a = grid[std::min(k + 1, grid.size() - 1)].coupler_frequency_ghz;
  double b = grid[k == 0 ? 0 : k - 1].coupler_frequency_ghz;
  const LabeledSpectrum& anchor = grid[k];
  auto f = [&](double w) {
    ++result.evaluations;
    return gap_of(tracker.step(anchor, w), nullptr);
  };
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-7) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  const double w = 0.5 * (a + b);
  BareLabel nearest{};
  const double g = gap_of(tracker.step(anchor, w), &nearest);
  if (g < result.gap_ghz) {
    result.gap_ghz = g;
    result.coupler_frequency_ghz = w;
    result.nearest = nearest;
  }
  return result;
}

double chi12_at_flux(const DeviceParams& params, double flux) {
  return chi12_spectral(params, params.flux_map.frequency(flux));
}

double crosstalk_sensitivity(const DeviceParams& params, double victim_idle_flux,
                             double aggressor_amplitude_flux, double fraction) {
  if (fraction == 0.0) return 0.0;
  const double shifted = victim_idle_flux + fraction * aggressor_amplitude_flux;
  if (std::abs(shifted) >= 0.5) throw RangeError("crosstalk shifts the coupler off the flux branch");
  return std::abs(chi12_at_flux(params, shifted) - chi12_at_flux(params, victim_idle_flux));
}

}  // namespace tcz
