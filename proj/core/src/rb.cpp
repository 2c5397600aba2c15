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

#include "tcz/rb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tcz/errors.hpp"
#include "tcz/parallel.hpp"

namespace tcz {

void RBConfig::validate() const {
  if (sequence_lengths.empty()) throw ValidationError("RB needs at least one sequence length");
  for (std::size_t i = 0; i < sequence_lengths.size(); ++i) {
    if (sequence_lengths[i] < 1) throw ValidationError("RB lengths must be >= 1");
    if (i > 0 && sequence_lengths[i] <= sequence_lengths[i - 1]) {
      throw ValidationError("RB lengths must be strictly ascending");
    }
  }
  if (sequences_per_length < 1) throw ValidationError("RB needs at least one sequence per length");
  if (shots < 0) throw ValidationError("shot count must be >= 0");
  if (!(readout_error >= 0.0 && readout_error < 0.5)) {
    throw ValidationError("readout error must lie in [0, 0.5)");
  }
}

RBChannels RBChannels::ideal(int dimension) {
  CMatrix cz = CMatrix::Identity(dimension, dimension);
  cz(3, 3) = -1.0;
  return RBChannels{QuantumChannel::from_unitary(cz), QuantumChannel::identity(dimension), 0.0,
                    std::nullopt};
}

namespace {

struct Simulator {
  const RBChannels& channels;
  int d;
  CMatrix cz_then_idle;
  std::array<CMatrix, 3> paulis_q1;
  std::array<CMatrix, 3> paulis_q2;
  std::vector<CMatrix> paulis_2q;  // 16, identity first

  explicit Simulator(const RBChannels& ch) : channels(ch), d(ch.dimension()) {
    cz_then_idle = ch.cz.then(ch.idle).superoperator();
    const CMatrix i2 = CMatrix::Identity(2, 2);
    std::array<CMatrix, 4> p1{i2, i2, i2, i2};
    p1[1] << 0, 1, 1, 0;
    p1[2] << 0, Complex(0, -1), Complex(0, 1), 0;
    p1[3] << 1, 0, 0, -1;
    auto kron = [](const CMatrix& a, const CMatrix& b) {
      CMatrix out(4, 4);
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
      }
      return out;
    };
    for (int k = 0; k < 3; ++k) {
      paulis_q1[k] = embed_computational(kron(p1[k + 1], i2), d);
      paulis_q2[k] = embed_computational(kron(i2, p1[k + 1]), d);
    }
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) paulis_2q.push_back(embed_computational(kron(p1[a], p1[b]), d));
    }
  }

  void depolarize(CMatrix& rho, const std::array<CMatrix, 3>& paulis, int gates) const {
    if (gates == 0 || channels.single_qubit_error == 0.0) return;
    const double lambda = 1.0 - std::pow(1.0 - 2.0 * channels.single_qubit_error, gates);
    CMatrix out = (1.0 - 0.75 * lambda) * rho;
    for (const auto& p : paulis) out += 0.25 * lambda * (p * rho * p.adjoint());
    rho = std::move(out);
  }

  void clifford_depolarize(CMatrix& rho) const {
    if (!channels.clifford_depolarizing) return;
    const double p = *channels.clifford_depolarizing;
    CMatrix twirl = CMatrix::Zero(d, d);
    for (const auto& q : paulis_2q) twirl += q * rho * q.adjoint();
    rho = p * rho + (1.0 - p) / 16.0 * twirl;
  }

  void apply(CMatrix& rho, const CliffordElement& e) const {
    for (const Layer& l : e.layers) {
      if (l.cz) {
        CMatrix v = cz_then_idle * Eigen::Map<const CVector>(rho.data(), rho.size());
        rho = Eigen::Map<const CMatrix>(v.data(), d, d);
        continue;
      }
      const CMatrix u = embed_computational(
          [&] {
            const CMatrix a = single_qubit_unitary(l.q1);
            const CMatrix b = single_qubit_unitary(l.q2);
            CMatrix out(4, 4);
            for (int i = 0; i < 2; ++i) {
              for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
            }
            return out;
          }(),
          d);
      rho = u * rho * u.adjoint();
      depolarize(rho, paulis_q1, static_cast<int>(l.q1.size()));
      depolarize(rho, paulis_q2, static_cast<int>(l.q2.size()));
    }
  }
};

std::uint64_t sequence_stream(int length, int sequence) {
  return (static_cast<std::uint64_t>(length) << 32) | static_cast<std::uint32_t>(sequence);
}

}  // namespace

std::vector<RBSample> simulate_rb(const RBChannels& channels, const RBConfig& config,
                                  int threads) {
  config.validate();
  if (channels.idle.dimension() != channels.dimension() || channels.dimension() < kComputationalDim) {
    throw InvalidDimensionError("RB channels must share a dimension >= 4");
  }
  const CliffordGroup& group = CliffordGroup::instance();
  const Simulator sim(channels);
  const CliffordElement cz = cz_element();
  const int d = channels.dimension();
  const std::size_t per = static_cast<std::size_t>(config.sequences_per_length);
  std::vector<RBSample> out(config.sequence_lengths.size() * per);

  parallel_for(out.size(), threads, [&](std::size_t item) {
    const int m = config.sequence_lengths[item / per];
    const int s = static_cast<int>(item % per);
    CounterRng rng(config.seed, sequence_stream(m, s));
    CMatrix rho = CMatrix::Zero(d, d);
    rho(0, 0) = 1.0;
    Tableau total = Tableau::identity();
    for (int k = 0; k < m; ++k) {
      const CliffordElement c = group.sample(rng);
      sim.apply(rho, c);
      sim.clifford_depolarize(rho);
      total = total.then(c.tableau);
      if (config.interleaved) {
        sim.apply(rho, cz);
        total = total.then(cz.tableau);
      }
    }
    const CliffordElement recovery = group.synthesize(total.inverse());
    sim.apply(rho, recovery);
    sim.clifford_depolarize(rho);

    double ground = rho(0, 0).real();
    double leak = 0.0;
    for (int k = kComputationalDim; k < d; ++k) leak += rho(k, k).real();
    ground = (1.0 - config.readout_error) * ground + config.readout_error * (1.0 - ground);
    if (config.shots > 0) {
      CounterRng shot_rng(config.seed ^ (config.interleaved ? 0xa5a5a5a5ULL : 0x5a5a5a5aULL),
                          sequence_stream(m, s));
      ground = static_cast<double>(shot_rng.binomial(config.shots, std::clamp(ground, 0.0, 1.0))) /
               config.shots;
    }
    out[item] = RBSample{m, s, ground, leak};
  });
  return out;
}

RBResult summarize_rb(const std::vector<RBSample>& samples, const std::vector<int>& lengths) {
  RBResult r;
  r.lengths = lengths;
  r.samples = samples;
  std::vector<double> m, sig;
  for (int len : lengths) {
    std::vector<double> v;
    double leak = 0.0;
    for (const auto& s : samples) {
      if (s.length == len) {
        v.push_back(s.ground_population);
        leak += s.leakage_population;
      }
    }
    if (v.empty()) throw ValidationError("no RB samples for a requested length");
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    const double sd = v.size() > 1 ? std::sqrt(var / (v.size() - 1)) : 0.0;
    r.means.push_back(mean);
    r.stds.push_back(sd);
    r.mean_leakage.push_back(leak / v.size());
    m.push_back(len);
    sig.push_back(sd / std::sqrt(static_cast<double>(v.size())));
  }
  r.fit = fit_rb(m, r.means, sig);
  r.r = error_from_p(r.fit.p);
  return r;
}

RBResult run_rb(const RBChannels& channels, const RBConfig& config, int threads) {
  return summarize_rb(simulate_rb(channels, config, threads), config.sequence_lengths);
}

FitResult fit_exponential(const std::vector<double>& m, const std::vector<double>& y,
                          const std::vector<double>& sigmas, double b0, const FitBounds& bounds) {
  const std::size_t n = m.size();
  if (n != y.size() || n != sigmas.size()) throw ValidationError("fit inputs differ in length");
  std::vector<double> xs(m);
  std::sort(xs.begin(), xs.end());
  if (std::unique(xs.begin(), xs.end()) - xs.begin() < 3) {
    throw FitError("exponential fit needs at least 3 distinct lengths");
  }
  // uncertainties at rounding level, absolute or relative to the largest, count as zero
  const double largest = *std::max_element(sigmas.begin(), sigmas.end());
  const double kSigmaFloor = std::max(1e-12, 1e-4 * largest);
  double min_pos = std::numeric_limits<double>::infinity();
  for (double s : sigmas) {
    if (s > kSigmaFloor) min_pos = std::min(min_pos, s);
  }
  Eigen::VectorXd w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = std::isinf(min_pos) ? 1.0 : (sigmas[i] > kSigmaFloor ? sigmas[i] : min_pos);
    w[i] = 1.0 / s;
  }

  // log-linear start on y - b0
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = y[i] - b0;
    if (v <= 1e-12) continue;
    sx += m[i];
    sy += std::log(v);
    sxx += m[i] * m[i];
    sxy += m[i] * std::log(v);
    ++cnt;
  }
  Eigen::Vector3d theta(0.75, 0.95, b0);
  if (cnt >= 2 && cnt * sxx - sx * sx > 0.0) {
    const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    const double icpt = (sy - slope * sx) / cnt;
    theta << std::exp(icpt), std::clamp(std::exp(slope), 1e-6, 1.0), b0;
  }
  for (int k = 0; k < 3; ++k) theta[k] = std::clamp(theta[k], bounds.lower[k], bounds.upper[k]);
  auto project = [&](Eigen::Vector3d t) {
    for (int k = 0; k < 3; ++k) t[k] = std::clamp(t[k], bounds.lower[k], bounds.upper[k]);
    return t;
  };

  auto residual = [&](const Eigen::Vector3d& t) {
    Eigen::VectorXd r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = (y[i] - (t[0] * std::pow(t[1], m[i]) + t[2])) * w[i];
    return r;
  };
  Eigen::VectorXd r = residual(theta);
  double chi2 = r.squaredNorm();
  double lambda = 1e-3;
  FitResult fit;
  bool converged = false;
  for (int it = 0; it < 1000; ++it) {
    fit.iterations = it + 1;
    Eigen::MatrixXd j(n, 3);
    for (std::size_t i = 0; i < n; ++i) {
      const double pm = std::pow(theta[1], m[i]);
      const double dp = m[i] == 0.0 ? 0.0 : theta[0] * m[i] * std::pow(theta[1], m[i] - 1.0);
      j.row(i) << pm * w[i], dp * w[i], w[i];
    }
    const Eigen::Matrix3d jtj = j.transpose() * j;
    const Eigen::Vector3d g = j.transpose() * r;
    if (g.cwiseAbs().maxCoeff() < 1e-300 || chi2 < 1e-28) {
      converged = true;
      break;
    }
    bool accepted = false;
    for (int tries = 0; tries < 60 && !accepted; ++tries) {
      Eigen::Matrix3d a = jtj;
      a.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-30);
      Eigen::Vector3d step = a.ldlt().solve(g);
      // freeze parameters pinned at a bound and pushed outward, then re-solve
      std::array<bool, 3> frozen{};
      bool any = false;
      for (int k = 0; k < 3; ++k) {
        frozen[k] = (theta[k] <= bounds.lower[k] && step[k] < 0.0) ||
                    (theta[k] >= bounds.upper[k] && step[k] > 0.0);
        any = any || frozen[k];
      }
      if (any) {
        Eigen::Matrix3d af = a;
        Eigen::Vector3d gf = g;
        for (int k = 0; k < 3; ++k) {
          if (!frozen[k]) continue;
          af.row(k).setZero();
          af.col(k).setZero();
          af(k, k) = 1.0;
          gf[k] = 0.0;
        }
        step = af.ldlt().solve(gf);
      }
      const Eigen::Vector3d cand = project(theta + step);
      const Eigen::VectorXd rc = residual(cand);
      const double c2 = rc.squaredNorm();
      if (std::isfinite(c2) && c2 <= chi2 && cand[1] > 0.0) {
        const double rel =
            ((cand - theta).cwiseAbs().array() / theta.cwiseAbs().array().max(1e-12)).maxCoeff();
        // a flat valley (p near 1 trades A against B) stalls the step test
        const bool stalled = chi2 - c2 <= 1e-12 * chi2;
        theta = cand;
        r = rc;
        chi2 = c2;
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        if (rel < 1e-9 || stalled) converged = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!accepted) {
      // no downhill step at any damping: already at the minimum
      converged = true;
    }
    if (converged) break;
  }
  if (!converged) throw FitError("exponential fit did not converge");
  fit.A = theta[0];
  fit.p = theta[1];
  fit.B = theta[2];
  fit.chi2 = chi2;
  return fit;
}

FitResult fit_rb(const std::vector<double>& lengths, const std::vector<double>& means,
                 const std::vector<double>& sigmas) {
  FitResult f = fit_exponential(lengths, means, sigmas, 0.25, kPopulationBounds);
  // p within 1e-6 above one is a flat curve carrying rounding noise
  if (!(f.p > 0.0 && f.p <= 1.0 + 1e-6)) {
    std::ostringstream os;
    os << "fitted decay p = " << f.p << " outside (0, 1] (A = " << f.A << ", B = " << f.B << ")";
    throw FitError(os.str());
  }
  f.p = std::min(f.p, 1.0);
  return f;
}

double error_from_p(double p) { return 0.75 * (1.0 - p); }
double p_from_error(double r) { return 1.0 - r / 0.75; }

ErrorRates error_rates(double p_ref, double p_int) {
  if (!(p_ref > 0.0) || !(p_int > 0.0)) throw ValidationError("decay parameters must be positive");
  ErrorRates e;
  e.r_ref = error_from_p(p_ref);
  e.r_int = error_from_p(p_int);
  e.r_cz = 0.75 * (1.0 - p_int / p_ref);
  e.f_cz = 1.0 - e.r_cz;
  if (p_int > p_ref) e.warning = "interleaved decay slower than reference";
  return e;
}

double consistency_upper_bound(double r_ref, double r_1q) {
  if (!(r_ref > 8.25 * r_1q)) {
    throw ValidationError("single-qubit errors exceed the reference error; bound would be negative");
  }
  return (r_ref - 8.25 * r_1q) / 1.5;
}

namespace {

std::vector<std::vector<double>> by_length(const std::vector<RBSample>& s,
                                           const std::vector<int>& lengths) {
  std::vector<std::vector<double>> out(lengths.size());
  for (const auto& x : s) {
    auto it = std::find(lengths.begin(), lengths.end(), x.length);
    if (it != lengths.end()) out[it - lengths.begin()].push_back(x.ground_population);
  }
  return out;
}

double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double s = 0.0;
  for (double x : v) s += (x - mu) * (x - mu);
  return std::sqrt(s / (v.size() - 1));
}

FitResult refit(const std::vector<std::vector<double>>& groups, const std::vector<int>& lengths,
                CounterRng& rng) {
  std::vector<double> m, mean, sig;
  for (std::size_t l = 0; l < groups.size(); ++l) {
    const auto& g = groups[l];
    const std::size_t n = g.size();
    std::vector<double> draw(n);
    for (auto& v : draw) v = g[rng.below(n)];
    m.push_back(lengths[l]);
    mean.push_back(std::accumulate(draw.begin(), draw.end(), 0.0) / n);
    sig.push_back(stddev(draw) / std::sqrt(static_cast<double>(n)));
  }
  return fit_rb(m, mean, sig);
}


void check_failures(int failures, int resamples) {
  if (failures > 0.05 * resamples) {
    std::ostringstream os;
    os << failures << " of " << resamples << " bootstrap refits failed";
    throw FitError(os.str());
  }
}

}  // namespace

double bootstrap_uncertainty(const std::vector<RBSample>& reference,
                             const std::vector<RBSample>& interleaved,
                             const std::vector<int>& lengths, int resamples, std::uint64_t seed) {
  if (resamples < 200) throw ValidationError("bootstrap needs at least 200 resamples");
  const auto ref = by_length(reference, lengths);
  const auto inl = by_length(interleaved, lengths);
  std::vector<double> f;
  int failures = 0;
  for (int b = 0; b < resamples; ++b) {
    CounterRng rng(seed, 0xb0075ULL + static_cast<std::uint64_t>(b));
    try {
      const FitResult fr = refit(ref, lengths, rng);
      const FitResult fi = refit(inl, lengths, rng);
      f.push_back(error_rates(fr.p, fi.p).f_cz);
    } catch (const Error&) {
      ++failures;
    }
  }
  check_failures(failures, resamples);
  return stddev(f);
}

double bootstrap_p_uncertainty(const std::vector<RBSample>& samples,
                               const std::vector<int>& lengths, int resamples,
                               std::uint64_t seed) {
  if (resamples < 200) throw ValidationError("bootstrap needs at least 200 resamples");
  const auto groups = by_length(samples, lengths);
  std::vector<double> p;
  int failures = 0;
  for (int b = 0; b < resamples; ++b) {
    CounterRng rng(seed, 0xb0075ULL + static_cast<std::uint64_t>(b));
    try {
      p.push_back(refit(groups, lengths, rng).p);
    } catch (const Error&) {
      ++failures;
    }
  }
  check_failures(failures, resamples);
  return stddev(p);
}

InterleavedResult run_interleaved_rb(const RBChannels& channels, RBConfig config,
                                     int bootstrap_resamples, int threads) {
  InterleavedResult out;
  config.interleaved = false;
  out.reference = run_rb(channels, config, threads);
  config.interleaved = true;
  out.interleaved = run_rb(channels, config, threads);
  out.rates = error_rates(out.reference.fit.p, out.interleaved.fit.p);
  out.sigma_f_cz = bootstrap_uncertainty(out.reference.samples, out.interleaved.samples,
                                         config.sequence_lengths, bootstrap_resamples, config.seed);
  return out;
}

namespace {

nlohmann::json arm_json(const RBResult& r) {
  return {{"lengths", r.lengths},       {"mean_ground_population", r.means},
          {"std_ground_population", r.stds}, {"mean_leakage_population", r.mean_leakage},
          {"A", r.fit.A},               {"p", r.fit.p},
          {"B", r.fit.B},               {"r", r.r}};
}

}  // namespace

nlohmann::json to_json(const InterleavedResult& r) {
  nlohmann::json j;
  j["reference"] = arm_json(r.reference);
  j["interleaved"] = arm_json(r.interleaved);
  j["r_ref"] = r.rates.r_ref;
  j["r_int"] = r.rates.r_int;
  j["r_cz"] = r.rates.r_cz;
  j["F_cz"] = r.rates.f_cz;
  j["F_cz_bootstrap_sigma"] = r.sigma_f_cz;
  if (!r.rates.warning.empty()) j["warning"] = r.rates.warning;
  return j;
}

}  // namespace tcz
