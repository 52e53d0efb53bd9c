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

#include "bbdecomp/physconst.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace bbdecomp {

void PhysicalConstants::validate() const {
  if (!(h > 0.0) || !(k_B > 0.0) || !(c > 0.0) || !(G > 0.0)) {
    throw std::invalid_argument("physical constants must all be positive");
  }
}

double ModeContext::photon_energy() const {
  if (!physical) {
    throw std::logic_error(
        "photon energy requested from a dimensionless mode context");
  }
  return constants.h * nu;
}

ModeContext make_mode_context(double nu, double temperature,
                              const PhysicalConstants& constants) {
  constants.validate();
  if (!(nu > 0.0) || std::isinf(nu)) {
    throw std::invalid_argument("mode frequency must be positive and finite");
  }
  if (!(temperature >= 0.0)) {
    throw std::invalid_argument("temperature must be non-negative");
  }
  ModeContext ctx;
  ctx.nu = nu;
  ctx.temperature = temperature;
  ctx.physical = true;
  ctx.constants = constants;
  if (temperature == 0.0) {
    ctx.beta = std::numeric_limits<double>::infinity();
    ctx.b = 0.0;
  } else {
    ctx.beta = constants.h * nu / (constants.k_B * temperature);
    ctx.b = std::exp(-ctx.beta);
  }
  return ctx;
}

ModeContext mode_from_beta(double beta) {
  if (std::isnan(beta) || !(beta > 0.0)) {
    throw std::invalid_argument("beta must be positive");
  }
  ModeContext ctx;
  ctx.nu = std::numeric_limits<double>::quiet_NaN();
  ctx.temperature = std::numeric_limits<double>::quiet_NaN();
  ctx.beta = beta;
  ctx.b = std::exp(-beta);
  ctx.physical = false;
  ctx.constants = PhysicalConstants{};
  return ctx;
}

double mode_density(double nu, const PhysicalConstants& constants) {
  constants.validate();
  if (!(nu >= 0.0)) {
    throw std::invalid_argument("frequency must be non-negative");
  }
  const double c3 = constants.c * constants.c * constants.c;
  return 8.0 * std::numbers::pi * nu * nu / c3;
}

NaturalUnits natural_units(const PhysicalConstants& constants) {
  constants.validate();
  const double hbar = constants.h / (2.0 * std::numbers::pi);
  const double c3 = constants.c * constants.c * constants.c;
  NaturalUnits units;
  units.length_cm = std::sqrt(hbar * constants.G / c3);
  units.time_s = units.length_cm / constants.c;
  units.mass_g = std::sqrt(hbar * constants.c / constants.G);
  units.temperature_K =
      units.mass_g * constants.c * constants.c / constants.k_B;
  return units;
}

}  // namespace bbdecomp
