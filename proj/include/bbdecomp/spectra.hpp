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

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bbdecomp/physconst.hpp"

namespace bbdecomp {

enum class RadiationLaw { planck, rayleigh_jeans, wien, schweikert };

RadiationLaw radiation_law_from_name(std::string_view name);
std::string_view radiation_law_name(RadiationLaw law);

/// Spectral energy density u(nu, T) [erg cm^-3 Hz^-1]: the mode density
/// Z_nu times the law's mean energy per mode
///   planck          h nu / (e^beta - 1)
///   rayleigh_jeans  kT
///   wien            h nu e^-beta
///   schweikert      (kT + h nu) e^-beta
/// Requires nu > 0 and T > 0.
double spectral_density(RadiationLaw law, double nu, double T,
                        const PhysicalConstants& constants = {});

/// The dimensionless peak location x* = h nu_max / kT of the thermal
/// spectrum: the positive root of x = 3 (1 - e^-x), to 1e-12.
double wien_peak_x();

/// Sub-volume parameters of the fluctuation formulas. The mode count
/// M = V Z_nu dnu is kept real-valued.
struct FluctuationParams {
  double volume_cm3;
  double nu_hz;
  double bandwidth_hz;
  double mode_count;
};

FluctuationParams make_fluctuation_params(double volume_cm3, double nu_hz,
                                          double bandwidth_hz,
                                          const PhysicalConstants& constants = {});

enum class EnergyLaw { gauss, planck, dark };

/// Total mean energy and energy variance [erg, erg^2] of M modes in a
/// sub-volume.
///
/// `variance` is the direct second-moment route M (h nu)^2 Var. The
/// particle-plus-wave split gives the second route
///   gauss    E^2 / M                      (wave term only)
///   planck   h nu E + E^2 / M
///   dark     (2 nbar - 1) h nu E + E^2 / M
/// For the gauss and planck laws the two routes coincide; for the dark law
/// they do not, and both numbers are reported with forms_consistent = false
/// rather than silently picking one.
struct EnergyFluctuation {
  double mean_energy;
  double variance;
  double variance_split_form;
  bool forms_consistent;
};

EnergyFluctuation energy_fluctuation(EnergyLaw law,
                                     const FluctuationParams& params,
                                     const ModeContext& ctx);

struct SpectrumTable {
  std::vector<double> nu;  // strictly increasing [Hz]
  std::vector<double> u;   // non-negative [erg cm^-3 Hz^-1]
  std::optional<RadiationLaw> law;
  std::optional<double> temperature;  // [K], set for synthetic tables

  std::size_t size() const { return nu.size(); }
};

/// Logarithmically spaced grid with `points` entries from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t points);

SpectrumTable synthesize_table(RadiationLaw law, double T,
                               std::span<const double> nu_grid,
                               const PhysicalConstants& constants = {});

struct FitResult {
  double t_hat;        // [K]
  double residual_l2;  // sqrt of the residual sum of squares at t_hat
  std::size_t n_rows;
};

/// Least-squares temperature fit of a table against one radiation law:
/// coarse scan of [t_lo, t_hi] followed by golden-section refinement to a
/// relative 1e-8 in T. The bracket must contain an interior minimum.
FitResult fit_temperature(const SpectrumTable& table, RadiationLaw law,
                          double t_lo, double t_hi,
                          const PhysicalConstants& constants = {});

/// CSV with the exact header `nu_hz,u_erg_per_cm3_hz`.
void write_spectrum_csv(const SpectrumTable& table, std::ostream& out);

/// Parses the CSV format written above; validates the header, strictly
/// increasing frequencies and non-negative densities.
SpectrumTable read_spectrum_csv(std::istream& in);

}  // namespace bbdecomp
