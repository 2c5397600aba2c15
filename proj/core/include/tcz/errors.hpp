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

#include <stdexcept>
#include <string>
#include <utility>

namespace tcz {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operator dimensions or truncation levels are unusable.
class InvalidDimensionError : public Error {
 public:
  using Error::Error;
};

/// An input object violates its documented invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A requested frequency, flux or time lies outside the supported band.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not reach the requested accuracy.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// Phase calibration could not bracket or converge on its target.
class CalibrationError : public Error {
 public:
  CalibrationError(const std::string& what, std::string diagnostics)
      : Error(what), diagnostics_(std::move(diagnostics)) {}
  const std::string& diagnostics() const { return diagnostics_; }

 private:
  std::string diagnostics_;
};

/// A curve fit diverged, left its admissible domain, or fit too poorly.
class FitError : public Error {
 public:
  using Error::Error;
};

/// A phase was requested from an amplitude too small to define it.
class PhaseUndefinedError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace tcz
