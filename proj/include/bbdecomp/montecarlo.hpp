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
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bbdecomp/physconst.hpp"
#include "bbdecomp/rng.hpp"

namespace bbdecomp {

/// Seeded draws of the mode energy together with their decomposition.
/// Per sample: xi = floor(eta) and zeta = eta - xi, both exact at double
/// precision (an eta landing exactly on an integer gets zeta = 0). The
/// occupied binary levels of a sample are exactly the set bits of xi.
struct SampleBatch {
  std::vector<double> eta;
  std::vector<std::uint64_t> xi;
  std::vector<double> zeta;

  std::size_t size() const { return eta.size(); }
  std::uint64_t bits(std::size_t i) const { return xi[i]; }
  bool level_occupied(std::size_t i, unsigned level) const {
    return (xi[i] >> level) & 1u;
  }
  /// Fraction of samples with binary level `level` occupied.
  double bit_frequency(unsigned level) const;
};

/// Draws n i.i.d. exponential energies of mean 1/beta by inverse CDF
/// (eta = -ln(1 - U)/beta) and fills in the decomposition.
SampleBatch sample_gauss(std::size_t n, const ModeContext& ctx,
                         RngSpec rng = {});

enum class CltBase { uniform, rademacher, triangular };

CltBase clt_base_from_name(std::string_view name);

struct AmplitudePair {
  double a_c;
  double a_s;
  double theta;  // arg(a_c + i a_s), mapped to [0, 2 pi)
};

/// Normalized superpositions (x_1 + ... + x_m)/sqrt(m) of zero-mean
/// unit-variance base draws; one independent superposition per quadrature.
std::vector<AmplitudePair> clt_superpose(std::size_t n_terms,
                                         std::size_t n_samples, CltBase base,
                                         RngSpec rng = {});

struct EnergyPhase {
  double energy;  // (a_c^2 + a_s^2)/2; unit mean for unit-variance amplitudes
  double phase;
};

std::vector<EnergyPhase> amplitudes_to_energy(
    std::span<const AmplitudePair> pairs);

struct GofReport {
  double statistic;
  double threshold;
  std::size_t n;
  bool rejected;  // statistic > threshold
};

/// One-sample Kolmogorov-Smirnov test at alpha = 0.01, asymptotic critical
/// value 1.628/sqrt(n). Input is copied and sorted; requires n >= 100 and
/// rejects NaN samples.
GofReport ks_test(std::span<const double> samples,
                  const std::function<double(double)>& cdf);

double exponential_cdf(double x, double rate);
double dark_cdf(double z, const ModeContext& ctx);
double standard_normal_cdf(double x);

/// Pearson chi-square of photon-number counts against (1 - b) b^n. Cells are
/// 0..K-1 plus the pooled tail {xi >= K}, K chosen so every expected count is
/// at least 5; alpha = 0.01 with K degrees of freedom. Requires n >= 10^4 and
/// 0 < b < 1. An all-zero batch under b > 1/2 cannot come from the law being
/// binned and raises a binning error.
GofReport chi2_planck_test(std::span<const std::uint64_t> xi,
                           const ModeContext& ctx);

/// Pearson chi-square of samples against the uniform law on [lo, hi), over
/// `bins` equal cells, alpha = 0.01.
GofReport chi2_uniform_test(std::span<const double> samples, double lo,
                            double hi, int bins);

/// Chi-square quantile (Wilson-Hilferty approximation).
double chi2_quantile(double p, int dof);

struct CorrelationEntry {
  std::string label;
  double value;    // NaN when degenerate
  bool degenerate; // a component had zero variance
  bool flagged;    // |value| > band
};

/// Sample correlations that vanish under the decomposition: corr(zeta, xi)
/// and every occupancy-bit pair with levels <= 4, reported against the
/// 4/sqrt(n) acceptance band. Requires n >= 10^4.
struct IndependenceReport {
  double band;
  std::vector<CorrelationEntry> entries;
  bool any_flagged() const;
};

IndependenceReport empirical_independence(const SampleBatch& batch);

struct BitFrequencyEntry {
  unsigned level;
  double empirical;
  double expected;  // occupation probability of the level
  double band;      // 4 sqrt(p (1-p) / n)
  bool within;
};

/// Empirical decomposition statistics of a batch against the laws: component
/// means, occupancy-bit frequencies for levels <= 4 with their binomial
/// bands, and the independence report.
struct DecompositionReport {
  std::size_t n;
  double eta_mean;
  double zeta_mean;
  double xi_mean;
  double eta_mean_law;
  double zeta_mean_law;
  double xi_mean_law;
  std::vector<BitFrequencyEntry> bit_frequencies;
  IndependenceReport independence;
};

DecompositionReport decomposition_report(const SampleBatch& batch,
                                         const ModeContext& ctx);

/// Base-2 expansion, least-significant level first ("0" for zero);
/// the occupied-level string of one sample.
std::string bits_lsb_first(std::uint64_t value);

/// CSV export, header `eta,xi,zeta,bits`; bits is the base-2 expansion of xi,
/// least-significant level first.
void write_batch_csv(const SampleBatch& batch, std::ostream& out);

}  // namespace bbdecomp
