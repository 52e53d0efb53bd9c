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

namespace bbdecomp {

/// Fundamental constants, cgs. The Boltzmann value is the 2019 exact SI
/// figure expressed in erg/K.
struct PhysicalConstants {
  double h = 6.626e-27;       // quantum of action [erg s]
  double k_B = 1.380649e-16;  // Boltzmann constant [erg/K]
  double c = 2.99792458e10;   // speed of light [cm/s]
  double G = 6.674e-8;        // gravitational constant [cm^3 g^-1 s^-2]

  void validate() const;  // throws std::invalid_argument unless all positive
};

/// Planck natural units derived from (h, k_B, c, G), with hbar = h / 2 pi.
struct NaturalUnits {
  double length_cm;      // sqrt(hbar G / c^3)
  double time_s;         // length / c
  double mass_g;         // sqrt(hbar c / G)
  double temperature_K;  // mass c^2 / k_B
};

/// Shared parameterization of a single radiation mode.
///
/// Every distribution-level routine runs on the dimensionless pair
/// (beta = h nu / k_B T, b = exp(-beta)); the physical fields are needed only
/// by the radiometric layer. A context built from beta alone carries NaN in
/// nu and temperature and has physical == false.
struct ModeContext {
  double nu;           // frequency [Hz]
  double temperature;  // [K]
  double beta;         // h nu / (k_B T); +inf at T = 0
  double b;            // exp(-beta); 0 at T = 0
  bool physical;
  PhysicalConstants constants;

  /// h nu [erg]. Requires a physical context.
  double photon_energy() const;
};

/// Builds a mode context from frequency [Hz] and temperature [K].
/// nu must be positive; T = 0 is admitted and maps to b = 0.
ModeContext make_mode_context(double nu, double temperature,
                              const PhysicalConstants& constants = {});

/// Builds a dimensionless mode context directly from beta > 0
/// (+inf admitted, representing T = 0).
ModeContext mode_from_beta(double beta);

/// Spectral mode density Z_nu = 8 pi nu^2 / c^3 [modes cm^-3 Hz^-1].
double mode_density(double nu, const PhysicalConstants& constants = {});

NaturalUnits natural_units(const PhysicalConstants& constants = {});

}  // namespace bbdecomp
