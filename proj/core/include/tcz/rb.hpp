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

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tcz/channel.hpp"
#include "tcz/clifford.hpp"

namespace tcz {

struct RBConfig {
  std::vector<int> sequence_lengths{1, 2, 4, 6, 8, 12, 16, 24, 32, 48, 64};
  int sequences_per_length = 30;
  std::uint64_t seed = 1;
  bool interleaved = false;
  /// Finite-shot estimate of the ground population; 0 keeps the exact value.
  int shots = 0;
  /// Symmetric assignment error on the ground-state readout.
  double readout_error = 0.0;

  void validate() const;
};

/// Noise channels supplied to the sequence simulator.
struct RBChannels {
  QuantumChannel cz;    // calibrated, phase-compensated
  QuantumChannel idle;  // spacing after every CZ
  /// Error per physical single-qubit gate; each gate is followed by a
  /// depolarizing channel of this average infidelity.
  double single_qubit_error = 0.0;
  /// Optional two-qubit depolarizing parameter applied after every Clifford.
  std::optional<double> clifford_depolarizing;

  int dimension() const { return cz.dimension(); }
  static RBChannels ideal(int dimension = kComputationalDim);
};

struct RBSample {
  int length = 0;
  int sequence = 0;
  double ground_population = 0.0;
  double leakage_population = 0.0;
};

struct FitResult {
  double A = 0.0;
  double p = 0.0;
  double B = 0.0;
  int iterations = 0;
  double chi2 = 0.0;
};

struct RBResult {
  std::vector<int> lengths;
  std::vector<double> means;
  std::vector<double> stds;
  std::vector<double> mean_leakage;
  std::vector<RBSample> samples;
  FitResult fit;
  double r = 0.0;
};

/// Populations for every (length, sequence) in config order.
std::vector<RBSample> simulate_rb(const RBChannels& channels, const RBConfig& config,
                                  int threads = 1);

RBResult summarize_rb(const std::vector<RBSample>& samples, const std::vector<int>& lengths);

RBResult run_rb(const RBChannels& channels, const RBConfig& config, int threads = 1);

/// Box constraints on (A, p, B).
struct FitBounds {
  std::array<double, 3> lower{-std::numeric_limits<double>::infinity(), 0.0,
                              -std::numeric_limits<double>::infinity()};
  std::array<double, 3> upper{std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity()};
};

/// Populations: A and B in [0, 1]; p is left free above so growth is reported.
inline constexpr FitBounds kPopulationBounds{
    {0.0, 0.0, 0.0}, {1.0, std::numeric_limits<double>::infinity(), 1.0}};

/// Weighted Levenberg-Marquardt fit of F = A p^m + B within kPopulationBounds.
FitResult fit_rb(const std::vector<double>& lengths, const std::vector<double>& means,
                 const std::vector<double>& sigmas);

/// Same model without the RB-specific range check; B0 seeds the log-linear start.
FitResult fit_exponential(const std::vector<double>& m, const std::vector<double>& y,
                          const std::vector<double>& sigmas, double b0,
                          const FitBounds& bounds = {});

double error_from_p(double p);
double p_from_error(double r);

struct ErrorRates {
  double r_ref = 0.0;
  double r_int = 0.0;
  double r_cz = 0.0;
  double f_cz = 0.0;
  std::string warning;
};

ErrorRates error_rates(double p_ref, double p_int);

double consistency_upper_bound(double r_ref, double r_1q);

/// Standard deviation of F_CZ over sequence resamples within each length.
double bootstrap_uncertainty(const std::vector<RBSample>& reference,
                             const std::vector<RBSample>& interleaved,
                             const std::vector<int>& lengths, int resamples, std::uint64_t seed);

/// Standard deviation of the fitted p of one RB arm.
double bootstrap_p_uncertainty(const std::vector<RBSample>& samples,
                               const std::vector<int>& lengths, int resamples,
                               std::uint64_t seed);

struct InterleavedResult {
  RBResult reference;
  RBResult interleaved;
  ErrorRates rates;
  double sigma_f_cz = 0.0;
};

InterleavedResult run_interleaved_rb(const RBChannels& channels, RBConfig config,
                                     int bootstrap_resamples = 200, int threads = 1);

nlohmann::json to_json(const InterleavedResult& r);

}  // namespace tcz
