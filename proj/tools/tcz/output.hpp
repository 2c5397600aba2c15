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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "run_config.hpp"

namespace tcz::cli {

/// Writes result files into the run's output directory. Every file carries
/// the toolkit version, seed and configuration hash.
class Output {
 public:
  explicit Output(const RunConfig& rc);

  nlohmann::json meta() const;
  void json(const std::string& name, nlohmann::json body) const;
  void csv(const std::string& name, const std::vector<std::string>& header,
           const std::vector<std::vector<std::string>>& rows) const;

 private:
  const RunConfig& rc_;
};

/// Round-trip decimal form of a double.
std::string num(double v);

}  // namespace tcz::cli
