// Copyright 2026 the bbdecomp authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bbdecomp/physconst.hpp"

namespace bbdecomp {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

struct VerifyConfig {
  double beta = 1.0;               // dimensionless checks + Monte Carlo
  std::size_t samples = 1000000;   // Monte Carlo batch size
  std::uint64_t seed = 0;
  double nu = 1e11;                // physical checks [Hz]
  double temperature = 2.728;     // physical checks [K]
  PhysicalConstants constants{};
};

/// Runs every identity, property and seeded statistical suite of the library
/// and reports one result per check. The Monte Carlo portion is deterministic
/// for a fixed (seed, samples) pair.
std::vector<CheckResult> verify_all(const VerifyConfig& config);

}  // namespace bbdecomp
