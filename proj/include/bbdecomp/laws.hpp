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

#include <complex>
#include <cstdint>
#include <span>

#include "bbdecomp/physconst.hpp"

namespace bbdecomp {

/// Mean, variance and entropy of one of the mode-energy laws. Everything is
/// dimensionless: energies in units of h nu, entropies in units of k_B.
/// Entropy of a continuous law is differential entropy and may be negative.
struct LawSummary {
  double mean;
  double variance;
  double entropy;
};

struct BinaryPmf {
  double p_empty;     // P(u_s = 0)     = 1 / (1 + b^(2^s))
  double p_occupied;  // P(u_s = 2^s)   = b^(2^s) / (1 + b^(2^s))
};

// ---------------------------------------------------------------------------
// The four laws of the decomposition eta = xi + zeta = sum_s u_s + zeta.
// ---------------------------------------------------------------------------

/// Density beta exp(-beta y) of the full (exponential) mode energy, y >= 0.
double gauss_pdf(double y, const ModeContext& ctx);

/// mean 1/beta, variance 1/beta^2, entropy 1 - ln beta.
LawSummary gauss_summary(const ModeContext& ctx);

/// Density beta exp(-beta z) / (1 - b) of the fractional part, 0 <= z < 1.
double dark_pdf(double z, const ModeContext& ctx);

/// The fractional-part law. Mean and variance are the exponential values
/// minus the photon-number values, and the entropy is the exponential entropy
/// minus the photon-number entropy; the three identities hold exactly by
/// construction. The mean lies in (0, 1/2) and decreases with beta.
LawSummary dark_summary(const ModeContext& ctx);

/// P(xi = n) = (1 - b) b^n, the geometric photon-number law.
double planck_pmf(std::uint64_t n, const ModeContext& ctx);

/// mean nbar = 1/(e^beta - 1), variance nbar + nbar^2,
/// entropy (1 + nbar) ln(1 + nbar) - nbar ln nbar.
LawSummary planck_summary(const ModeContext& ctx);

/// Two-point law of the binary component u_s in {0, 2^s}.
BinaryPmf binary_pmf(unsigned level, const ModeContext& ctx);

/// mean 2^s p_occupied, variance 2^s mean - mean^2, binary entropy.
LawSummary binary_summary(unsigned level, const ModeContext& ctx);

// ---------------------------------------------------------------------------
// Characteristic functions. All satisfy phi(0) = 1, |phi| <= 1,
// phi(-t) = conj(phi(t)).
// ---------------------------------------------------------------------------

std::complex<double> cf_gauss(double t, const ModeContext& ctx);   // (1 - it/beta)^-1
std::complex<double> cf_dark(double t, const ModeContext& ctx);    // cf_gauss (1 - b e^it)/(1 - b)
std::complex<double> cf_planck(double t, const ModeContext& ctx);  // (1 - b)/(1 - b e^it)
std::complex<double> cf_binary(double t, unsigned level,
                               const ModeContext& ctx);  // (1 + b^n e^int)/(1 + b^n), n = 2^s

/// max over the grid of |cf_gauss - cf_planck cf_dark| (analytically zero).
double cf_factorization_residual(std::span<const double> t_grid,
                                 const ModeContext& ctx);

/// max over the grid of |cf_planck - prod_{s<=levels} cf_binary|. Bounded by
/// cf_truncation_bound(levels, ctx).
double cf_product_truncation_residual(std::span<const double> t_grid,
                                      unsigned levels, const ModeContext& ctx);

/// 2 B / (1 - B) with B = b^(2^(levels+1)).
double cf_truncation_bound(unsigned levels, const ModeContext& ctx);

/// Smallest S with b^(2^(S+1)) < 1e-30, capped at 64. Binary components above
/// this level carry nothing at double precision, so sums over s may stop here.
unsigned truncation_level(const ModeContext& ctx);

// ---------------------------------------------------------------------------
// Mean-energy formulas of the classical analysis [erg]. These require a
// physical context with T > 0.
// ---------------------------------------------------------------------------

/// Equipartition value kT (full Boltzmann average).
double mean_energy_classical(const ModeContext& ctx);

/// kT minus the below-threshold average: kT - h nu / (e^beta - 1). The
/// difference classical - sub_eps0 is exactly h nu nbar.
double mean_energy_sub_eps0(const ModeContext& ctx);

/// (kT + h nu) exp(-beta); interpolates between the low- and high-frequency
/// radiation formulas.
double mean_energy_schweikert(const ModeContext& ctx);

/// Entropy per mode, in k_B units, of placing `excitations` indistinguishable
/// excitations on `modes` modes: ln C(modes, excitations) / modes.
/// Requires 0 < excitations < modes.
double combinatorial_entropy(std::uint64_t modes, std::uint64_t excitations);

}  // namespace bbdecomp
