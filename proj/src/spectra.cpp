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

#include "bbdecomp/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "bbdecomp/io.hpp"
#include "bbdecomp/laws.hpp"

namespace bbdecomp {
namespace {

constexpr std::string_view kCsvHeader = "nu_hz,u_erg_per_cm3_hz";

double mean_energy_per_mode(RadiationLaw law, const ModeContext& ctx) {
  const double kt = ctx.constants.k_B * ctx.temperature;
  const double hnu = ctx.photon_energy();
  switch (law) {
    case RadiationLaw::planck:
      return hnu * planck_summary(ctx).mean;
    case RadiationLaw::rayleigh_jeans:
      return kt;
    case RadiationLaw::wien:
      return hnu * ctx.b;
    case RadiationLaw::schweikert:
      return (kt + hnu) * ctx.b;
  }
  throw std::invalid_argument("unknown radiation law");
}

double sum_squared_residuals(const SpectrumTable& table, RadiationLaw law,
                             double T, const PhysicalConstants& constants) {
  double sse = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double r = spectral_density(law, table.nu[i], T, constants) - table.u[i];
    sse += r * r;
  }
  return sse;
}

}  // namespace

RadiationLaw radiation_law_from_name(std::string_view name) {
  if (name == "planck") return RadiationLaw::planck;
  if (name == "rayleigh_jeans") return RadiationLaw::rayleigh_jeans;
  if (name == "wien") return RadiationLaw::wien;
  if (name == "schweikert") return RadiationLaw::schweikert;
  throw std::invalid_argument("unknown radiation law: '" + std::string(name) +
                              "'");
}

std::string_view radiation_law_name(RadiationLaw law) {
  switch (law) {
    case RadiationLaw::planck:
      return "planck";
    case RadiationLaw::rayleigh_jeans:
      return "rayleigh_jeans";
    case RadiationLaw::wien:
      return "wien";
    case RadiationLaw::schweikert:
      return "schweikert";
  }
  return "unknown";
}

double spectral_density(RadiationLaw law, double nu, double T,
                        const PhysicalConstants& constants) {
  if (!(T > 0.0)) {
    throw std::invalid_argument("spectral density requires T > 0");
  }
  const ModeContext ctx = make_mode_context(nu, T, constants);
  return mode_density(nu, constants) * mean_energy_per_mode(law, ctx);
}

double wien_peak_x() {
  // Newton iteration on g(x) = x - 3(1 - e^-x); the root is simple and the
  // iteration is locally quadratic from x = 2.8.
  double x = 2.8;
  for (int i = 0; i < 64; ++i) {
    const double ex = std::exp(-x);
    const double g = x - 3.0 * (1.0 - ex);
    const double dg = 1.0 - 3.0 * ex;
    const double dx = g / dg;
    x -= dx;
    if (std::abs(dx) < 1e-14) break;
  }
  return x;
}

FluctuationParams make_fluctuation_params(double volume_cm3, double nu_hz,
                                          double bandwidth_hz,
                                          const PhysicalConstants& constants) {
  if (!(volume_cm3 > 0.0) || !(bandwidth_hz > 0.0)) {
    throw std::invalid_argument("volume and bandwidth must be positive");
  }
  FluctuationParams params;
  params.volume_cm3 = volume_cm3;
  params.nu_hz = nu_hz;
  params.bandwidth_hz = bandwidth_hz;
  params.mode_count = volume_cm3 * mode_density(nu_hz, constants) * bandwidth_hz;
  return params;
}

EnergyFluctuation energy_fluctuation(EnergyLaw law,
                                     const FluctuationParams& params,
                                     const ModeContext& ctx) {
  if (!(params.mode_count > 0.0)) {
    throw std::invalid_argument("mode count must be positive");
  }
  const double m = params.mode_count;
  const double hnu = ctx.photon_energy();
  const double nbar = planck_summary(ctx).mean;

  EnergyFluctuation out;
  switch (law) {
    case EnergyLaw::gauss: {
      const LawSummary s = gauss_summary(ctx);
      out.mean_energy = m * hnu * s.mean;  // = M kT
      out.variance = m * hnu * hnu * s.variance;
      out.variance_split_form = out.mean_energy * out.mean_energy / m;
      break;
    }
    case EnergyLaw::planck: {
      const LawSummary s = planck_summary(ctx);
      out.mean_energy = m * hnu * s.mean;
      out.variance = m * hnu * hnu * s.variance;
      out.variance_split_form =
          hnu * out.mean_energy + out.mean_energy * out.mean_energy / m;
      break;
    }
    case EnergyLaw::dark: {
      const LawSummary s = dark_summary(ctx);
      out.mean_energy = m * hnu * s.mean;
      out.variance = m * hnu * hnu * s.variance;
      out.variance_split_form = (2.0 * nbar - 1.0) * hnu * out.mean_energy +
                                out.mean_energy * out.mean_energy / m;
      break;
    }
  }
  const double scale = std::max(std::abs(out.variance), std::abs(out.variance_split_form));
  out.forms_consistent =
      std::abs(out.variance - out.variance_split_form) <= 1e-9 * scale;
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi > lo)) {
    throw std::invalid_argument("grid bounds must satisfy 0 < lo < hi");
  }
  if (points < 2) throw std::invalid_argument("grid needs at least two points");
  std::vector<double> grid(points);
  const double step = std::log(hi / lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = lo * std::exp(step * static_cast<double>(i));
  }
  grid.back() = hi;
  return grid;
}

SpectrumTable synthesize_table(RadiationLaw law, double T,
                               std::span<const double> nu_grid,
                               const PhysicalConstants& constants) {
  SpectrumTable table;
  table.law = law;
  table.temperature = T;
  table.nu.reserve(nu_grid.size());
  table.u.reserve(nu_grid.size());
  double prev = 0.0;
  for (double nu : nu_grid) {
    if (!(nu > prev)) {
      throw std::invalid_argument("frequency grid must be strictly increasing");
    }
    table.nu.push_back(nu);
    table.u.push_back(spectral_density(law, nu, T, constants));
    prev = nu;
  }
  return table;
}

FitResult fit_temperature(const SpectrumTable& table, RadiationLaw law,
                          double t_lo, double t_hi,
                          const PhysicalConstants& constants) {
  if (table.size() < 3) {
    throw std::invalid_argument("temperature fit needs at least 3 rows");
  }
  if (!(t_lo > 0.0) || !(t_hi > t_lo)) {
    throw std::invalid_argument("temperature bracket must satisfy 0 < lo < hi");
  }
  for (double u : table.u) {
    if (!(u >= 0.0)) {
      throw std::invalid_argument("spectral densities must be non-negative");
    }
  }

  // Coarse scan; the minimum must be interior to the bracket.
  constexpr int kScan = 64;
  double best_sse = std::numeric_limits<double>::infinity();
  int best_index = 0;
  std::vector<double> ts(kScan + 1);
  for (int i = 0; i <= kScan; ++i) {
    ts[i] = t_lo + (t_hi - t_lo) * static_cast<double>(i) / kScan;
    const double sse = sum_squared_residuals(table, law, ts[i], constants);
    if (sse < best_sse) {
      best_sse = sse;
      best_index = i;
    }
  }
  if (best_index == 0 || best_index == kScan) {
    throw std::runtime_error(
        "fit error: no interior least-squares minimum in the bracket");
  }

  // Golden-section refinement on the bracketing neighbours.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = ts[best_index - 1];
  double d = ts[best_index + 1];
  double b = d - inv_phi * (d - a);
  double c = a + inv_phi * (d - a);
  double fb = sum_squared_residuals(table, law, b, constants);
  double fc = sum_squared_residuals(table, law, c, constants);
  while ((d - a) > 1e-8 * (0.5 * (a + d))) {
    if (fb < fc) {
      d = c;
      c = b;
      fc = fb;
      b = d - inv_phi * (d - a);
      fb = sum_squared_residuals(table, law, b, constants);
    } else {
      a = b;
      b = c;
      fb = fc;
      c = a + inv_phi * (d - a);
      fc = sum_squared_residuals(table, law, c, constants);
    }
  }
  const double t_hat = 0.5 * (a + d);
  FitResult result;
  result.t_hat = t_hat;
  result.residual_l2 =
      std::sqrt(sum_squared_residuals(table, law, t_hat, constants));
  result.n_rows = table.size();
  return result;
}

void write_spectrum_csv(const SpectrumTable& table, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << format_double(table.nu[i]) << ',' << format_double(table.u[i])
        << '\n';
  }
}

SpectrumTable read_spectrum_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::invalid_argument("spectrum CSV must start with the header '" +
                                std::string(kCsvHeader) + "'");
  }
  SpectrumTable table;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("missing field separator on line " +
                                  std::to_string(line_number));
    }
    const double nu = parse_double(std::string_view(line).substr(0, comma));
    const double u = parse_double(std::string_view(line).substr(comma + 1));
    if (!table.nu.empty() && !(nu > table.nu.back())) {
      throw std::invalid_argument("frequencies must be strictly increasing");
    }
    if (!(u >= 0.0)) {
      throw std::invalid_argument("spectral densities must be non-negative");
    }
    table.nu.push_back(nu);
    table.u.push_back(u);
  }
  return table;
}

}  // namespace bbdecomp
