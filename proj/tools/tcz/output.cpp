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

#include "output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "tcz/errors.hpp"

namespace tcz::cli {

namespace {

std::ofstream open(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + (dir / name).string());
  return out;
}

}  // namespace

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Output::Output(const RunConfig& rc) : rc_(rc) {}

nlohmann::json Output::meta() const {
  return {{"tool", "tcz"}, {"version", TCZ_VERSION}, {"seed", rc_.seed}, {"config_hash", rc_.hash}};
}

void Output::json(const std::string& name, nlohmann::json body) const {
  body["meta"] = meta();
  open(rc_.out_dir, name) << body.dump(2) << '\n';
}

void Output::csv(const std::string& name, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) const {
  std::ofstream out = open(rc_.out_dir, name);
  out << "# tcz " << TCZ_VERSION << " seed=" << rc_.seed << " config_hash=" << rc_.hash << '\n';
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

}  // namespace tcz::cli
