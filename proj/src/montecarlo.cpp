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

#include "bbdecomp/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "bbdecomp/io.hpp"
#include "bbdecomp/laws.hpp"

namespace bbdecomp {
namespace {

constexpr double kKsCritical001 = 1.628;  // asymptotic, alpha = 0.01
constexpr double kNormalQuantile099 = 2.3263478740408408;

double sqrt3() { return std::sqrt(3.0); }
double sqrt6() { return std::sqrt(6.0); }

double draw_base(CltBase base, CounterRng& rng) {
  switch (base) {
    case CltBase::uniform:
      return sqrt3() * (2.0 * rng.next_uniform() - 1.0);
    case CltBase::rademacher:
      return (rng.next_u64() >> 63) ? 1.0 : -1.0;
    case CltBase::triangular:
      return sqrt6() * (rng.next_uniform() + rng.next_uniform() - 1.0);
  }
  throw std::invalid_argument("unknown base distribution");
}

struct Moments {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double variance = 0.0;
};

template <typename Get>
Moments moments(std::size_t n, Get&& get) {
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += get(i);
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = get(i) - mean;
    var += d * d;
  }
  var /= static_cast<double>(n);
  return {mean, var};
}

template <typename GetA, typename GetB>
CorrelationEntry correlation(std::string label, std::size_t n, GetA&& a,
                             GetB&& b, double band) {
  const Moments ma = moments(n, a);
  const Moments mb = moments(n, b);
  CorrelationEntry entry{std::move(label),
                         std::numeric_limits<double>::quiet_NaN(), false,
                         false};
  if (ma.variance == 0.0 || mb.variance == 0.0) {
    entry.degenerate = true;
    return entry;
  }
  double cov = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cov += (a(i) - ma.mean) * (b(i) - mb.mean);
  }
  cov /= static_cast<double>(n);
  entry.value = cov / std::sqrt(ma.variance * mb.variance);
  entry.flagged = std::abs(entry.value) > band;
  return entry;
}

}  // namespace

double SampleBatch::bit_frequency(unsigned level) const {
  std::size_t count = 0;
  for (std::uint64_t value : xi) count += (value >> level) & 1u;
  return static_cast<double>(count) / static_cast<double>(xi.size());
}

SampleBatch sample_gauss(std::size_t n, const ModeContext& ctx, RngSpec rng) {
  if (n == 0) throw std::invalid_argument("sample count must be positive");
  if (!(ctx.beta > 0.0) || std::isinf(ctx.beta)) {
    throw std::invalid_argument(
        "sampling requires a finite positive beta (T > 0)");
  }
  SampleBatch batch;
  batch.eta.reserve(n);
  batch.xi.reserve(n);
  batch.zeta.reserve(n);
  CounterRng gen(rng);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = gen.next_uniform();
    const double eta = -std::log1p(-u) / ctx.beta;
    const double whole = std::floor(eta);
    batch.eta.push_back(eta);
    batch.xi.push_back(static_cast<std::uint64_t>(whole));
    batch.zeta.push_back(eta - whole);
  }
  return batch;
}

CltBase clt_base_from_name(std::string_view name) {
  if (name == "uniform") return CltBase::uniform;
  if (name == "rademacher") return CltBase::rademacher;
  if (name == "triangular") return CltBase::triangular;
  throw std::invalid_argument("unknown base distribution: '" +
                              std::string(name) + "'");
}

std::vector<AmplitudePair> clt_superpose(std::size_t n_terms,
                                         std::size_t n_samples, CltBase base,
                                         RngSpec rng) {
  if (n_terms == 0) throw std::invalid_argument("need at least one term");
  if (n_samples == 0) throw std::invalid_argument("need at least one sample");
  const double norm = 1.0 / std::sqrt(static_cast<double>(n_terms));
  std::vector<AmplitudePair> pairs;
  pairs.reserve(n_samples);
  CounterRng gen(rng);
  for (std::size_t i = 0; i < n_samples; ++i) {
    double a_c = 0.0;
    double a_s = 0.0;
    for (std::size_t k = 0; k < n_terms; ++k) a_c += draw_base(base, gen);
    for (std::size_t k = 0; k < n_terms; ++k) a_s += draw_base(base, gen);
    a_c *= norm;
    a_s *= norm;
    double theta = std::atan2(a_s, a_c);
    if (theta < 0.0) theta += 2.0 * std::numbers::pi;
    if (theta >= 2.0 * std::numbers::pi) theta = 0.0;  // -0.0 rounded up
    pairs.push_back({a_c, a_s, theta});
  }
  return pairs;
}

std::vector<EnergyPhase> amplitudes_to_energy(
    std::span<const AmplitudePair> pairs) {
  std::vector<EnergyPhase> out;
  out.reserve(pairs.size());
  for (const AmplitudePair& p : pairs) {
    out.push_back({0.5 * (p.a_c * p.a_c + p.a_s * p.a_s), p.theta});
  }
  return out;
}

GofReport ks_test(std::span<const double> samples,
                  const std::function<double(double)>& cdf) {
  const std::size_t n = samples.size();
  if (n < 100) {
    throw std::invalid_argument("KS test requires at least 100 samples");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  for (double x : sorted) {
    if (std::isnan(x)) throw std::invalid_argument("NaN sample in KS input");
  }
  std::sort(sorted.begin(), sorted.end());
  const double dn = static_cast<double>(n);
  double statistic = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(sorted[i]);
    const double upper = static_cast<double>(i + 1) / dn - f;
    const double lower = f - static_cast<double>(i) / dn;
    statistic = std::max(statistic, std::max(upper, lower));
  }
  const double threshold = kKsCritical001 / std::sqrt(dn);
  return {statistic, threshold, n, statistic > threshold};
}

double exponential_cdf(double x, double rate) {
  if (x <= 0.0) return 0.0;
  return -std::expm1(-rate * x);
}

double dark_cdf(double z, const ModeContext& ctx) {
  if (z <= 0.0) return 0.0;
  if (z >= 1.0) return 1.0;
  return std::expm1(-ctx.beta * z) / std::expm1(-ctx.beta);
}

double standard_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

GofReport chi2_planck_test(std::span<const std::uint64_t> xi,
                           const ModeContext& ctx) {
  const std::size_t n = xi.size();
  if (n < 10000) {
    throw std::invalid_argument("chi-square test requires at least 10^4 samples");
  }
  const double b = ctx.b;
  if (!(b > 0.0) || !(b < 1.0)) {
    throw std::invalid_argument("chi-square binning requires 0 < b < 1");
  }
  const std::uint64_t max_xi = *std::max_element(xi.begin(), xi.end());
  if (b > 0.5 && max_xi == 0) {
    throw std::runtime_error(
        "binning error: all-zero batch cannot come from a law with "
        "P(xi = 0) < 1/2");
  }

  // Cells 0..K-1 plus the pooled tail; K maximal with every expected >= 5.
  const double dn = static_cast<double>(n);
  int k = 1;
  while (k < 4096 && dn * (1.0 - b) * std::pow(b, k) >= 5.0 &&
         dn * std::pow(b, k + 1) >= 5.0) {
    ++k;
  }
  std::vector<double> observed(static_cast<std::size_t>(k) + 1, 0.0);
  for (std::uint64_t value : xi) {
    const std::size_t cell =
        value >= static_cast<std::uint64_t>(k) ? static_cast<std::size_t>(k)
                                               : static_cast<std::size_t>(value);
    observed[cell] += 1.0;
  }
  double statistic = 0.0;
  for (int j = 0; j < k; ++j) {
    const double expected = dn * (1.0 - b) * std::pow(b, j);
    const double d = observed[static_cast<std::size_t>(j)] - expected;
    statistic += d * d / expected;
  }
  const double tail_expected = dn * std::pow(b, k);
  const double tail_d = observed[static_cast<std::size_t>(k)] - tail_expected;
  statistic += tail_d * tail_d / tail_expected;

  const double threshold = chi2_quantile(0.99, k);
  return {statistic, threshold, n, statistic > threshold};
}

GofReport chi2_uniform_test(std::span<const double> samples, double lo,
                            double hi, int bins) {
  if (bins < 2) throw std::invalid_argument("need at least two bins");
  if (!(hi > lo)) throw std::invalid_argument("empty bin range");
  const std::size_t n = samples.size();
  if (n < 100) throw std::invalid_argument("too few samples to bin");
  std::vector<double> observed(static_cast<std::size_t>(bins), 0.0);
  for (double x : samples) {
    if (!(x >= lo) || !(x < hi)) {
      throw std::invalid_argument("sample outside the binned range");
    }
    auto cell = static_cast<std::size_t>((x - lo) / (hi - lo) * bins);
    if (cell >= static_cast<std::size_t>(bins)) cell = bins - 1;
    observed[cell] += 1.0;
  }
  const double expected = static_cast<double>(n) / bins;
  double statistic = 0.0;
  for (double count : observed) {
    const double d = count - expected;
    statistic += d * d / expected;
  }
  const double threshold = chi2_quantile(0.99, bins - 1);
  return {statistic, threshold, n, statistic > threshold};
}

double chi2_quantile(double p, int dof) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::invalid_argument("probability must lie in (0, 1)");
  }
  if (dof < 1) throw std::invalid_argument("degrees of freedom must be >= 1");
  // Only the fixed alpha = 0.01 level is used by the suite.
  if (p != 0.99) {
    throw std::invalid_argument("only the 0.99 quantile is supported");
  }
  const double d = static_cast<double>(dof);
  const double term = 1.0 - 2.0 / (9.0 * d) +
                      kNormalQuantile099 * std::sqrt(2.0 / (9.0 * d));
  return d * term * term * term;
}

bool IndependenceReport::any_flagged() const {
  return std::any_of(entries.begin(), entries.end(),
                     [](const CorrelationEntry& e) { return e.flagged; });
}

IndependenceReport empirical_independence(const SampleBatch& batch) {
  const std::size_t n = batch.size();
  if (n < 10000) {
    throw std::invalid_argument(
        "independence check requires at least 10^4 samples");
  }
  IndependenceReport report;
  report.band = 4.0 / std::sqrt(static_cast<double>(n));
  report.entries.push_back(correlation(
      "zeta-xi", n, [&](std::size_t i) { return batch.zeta[i]; },
      [&](std::size_t i) { return static_cast<double>(batch.xi[i]); },
      report.band));
  for (unsigned s = 0; s <= 4; ++s) {
    for (unsigned t = s + 1; t <= 4; ++t) {
      report.entries.push_back(correlation(
          "bit" + std::to_string(s) + "-bit" + std::to_string(t), n,
          [&](std::size_t i) {
            return batch.level_occupied(i, s) ? 1.0 : 0.0;
          },
          [&](std::size_t i) {
            return batch.level_occupied(i, t) ? 1.0 : 0.0;
          },
          report.band));
    }
  }
  return report;
}

DecompositionReport decomposition_report(const SampleBatch& batch,
                                         const ModeContext& ctx) {
  DecompositionReport report;
  report.n = batch.size();
  const double n = static_cast<double>(batch.size());
  double eta = 0.0;
  double zeta = 0.0;
  double xi = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    eta += batch.eta[i];
    zeta += batch.zeta[i];
    xi += static_cast<double>(batch.xi[i]);
  }
  report.eta_mean = eta / n;
  report.zeta_mean = zeta / n;
  report.xi_mean = xi / n;
  report.eta_mean_law = gauss_summary(ctx).mean;
  report.zeta_mean_law = dark_summary(ctx).mean;
  report.xi_mean_law = planck_summary(ctx).mean;
  for (unsigned s = 0; s <= 4; ++s) {
    const double expected = binary_pmf(s, ctx).p_occupied;
    const double freq = batch.bit_frequency(s);
    const double band = 4.0 * std::sqrt(expected * (1.0 - expected) / n);
    report.bit_frequencies.push_back(
        {s, freq, expected, band, std::abs(freq - expected) <= band});
  }
  report.independence = empirical_independence(batch);
  return report;
}

std::string bits_lsb_first(std::uint64_t value) {
  if (value == 0) return "0";
  std::string bits;
  while (value != 0) {
    bits += static_cast<char>('0' + (value & 1u));
    value >>= 1;
  }
  return bits;
}

void write_batch_csv(const SampleBatch& batch, std::ostream& out) {
  out << "eta,xi,zeta,bits\n";
  for (std::size_t i = 0; i < batch.size(); ++i) {
    out << format_double(batch.eta[i]) << ',' << batch.xi[i] << ','
        << format_double(batch.zeta[i]) << ',' << bits_lsb_first(batch.xi[i])
        << '\n';
  }
}

}  // namespace bbdecomp
