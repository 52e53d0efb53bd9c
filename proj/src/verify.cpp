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

#include "bbdecomp/verify.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "bbdecomp/dyadic_events.hpp"
#include "bbdecomp/kinetics.hpp"
#include "bbdecomp/laws.hpp"
#include "bbdecomp/montecarlo.hpp"
#include "bbdecomp/spectra.hpp"

namespace bbdecomp {
namespace {

class Checker {
 public:
  void bound(const std::string& name, double value, double limit) {
    std::ostringstream detail;
    detail << value << " vs limit " << limit;
    results_.push_back({name, value <= limit, detail.str()});
  }

  void truth(const std::string& name, bool ok, const std::string& detail = "") {
    results_.push_back({name, ok, detail});
  }

  void gof(const std::string& name, const GofReport& report) {
    std::ostringstream detail;
    detail << "statistic " << report.statistic << " vs threshold "
           << report.threshold << " (n = " << report.n << ")";
    results_.push_back({name, !report.rejected, detail.str()});
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::vector<CheckResult> results_;
};

std::vector<double> symmetric_grid(double half_width, std::size_t points) {
  std::vector<double> grid;
  grid.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid.push_back(-half_width +
                   2.0 * half_width * static_cast<double>(i) /
                       static_cast<double>(points - 1));
  }
  return grid;
}

void check_physconst(Checker& check, const VerifyConfig& config) {
  const double betas[] = {1e-3, 0.1, std::numbers::ln2, 1.0, 5.0, 20.0};
  double worst = 0.0;
  for (double beta : betas) {
    const ModeContext ctx = mode_from_beta(beta);
    worst = std::max(worst,
                     std::abs(ctx.b - std::exp(-ctx.beta)) / std::exp(-beta));
  }
  const ModeContext physical =
      make_mode_context(config.nu, config.temperature, config.constants);
  worst = std::max(worst, std::abs(physical.b - std::exp(-physical.beta)) /
                              std::exp(-physical.beta));
  check.bound("physconst: b = exp(-beta) (relative)", worst, 1e-15);

  const NaturalUnits units = natural_units(config.constants);
  check.truth("physconst: t_p c = l_p",
              units.time_s * config.constants.c == units.length_cm);
  check.bound("physconst: T_p k_B vs m_p c^2 (relative)",
              std::abs(units.temperature_K * config.constants.k_B -
                       units.mass_g * config.constants.c * config.constants.c) /
                  (units.mass_g * config.constants.c * config.constants.c),
              1e-14);
  const auto sig3 = [](double x, double ref) {
    return std::abs(x - ref) <= 5e-4 * std::abs(ref);
  };
  check.truth("physconst: natural units match reference to 3 digits",
              sig3(units.length_cm, 1.616e-33) &&
                  sig3(units.time_s, 5.392e-44) &&
                  sig3(units.mass_g, 2.176e-5) &&
                  sig3(units.temperature_K, 1.417e32));
}

void check_laws(Checker& check, const VerifyConfig& config) {
  const double betas[] = {1e-3, 0.1, std::numbers::ln2, 1.0, 5.0, 20.0};

  double worst_mean = 0.0;
  double worst_var = 0.0;
  double worst_ent = 0.0;
  for (double beta : betas) {
    const ModeContext ctx = mode_from_beta(beta);
    const LawSummary g = gauss_summary(ctx);
    const LawSummary d = dark_summary(ctx);
    const LawSummary p = planck_summary(ctx);
    worst_mean = std::max(worst_mean, std::abs(g.mean - d.mean - p.mean));
    worst_var =
        std::max(worst_var, std::abs(g.variance - d.variance - p.variance));
    worst_ent =
        std::max(worst_ent, std::abs(g.entropy - d.entropy - p.entropy));
  }
  check.bound("laws: mean splitting", worst_mean, 1e-14);
  check.bound("laws: variance additivity", worst_var, 1e-12);
  check.bound("laws: entropy additivity (dark + planck)", worst_ent, 1e-12);

  // Sums over the binary components, truncated where the tail is < 1e-30.
  double worst_entropy_sum = 0.0;
  double worst_mean_sum = 0.0;
  double worst_fluct_sum = 0.0;
  for (double beta : {0.1, std::numbers::ln2, 1.0, 5.0}) {
    const ModeContext ctx = mode_from_beta(beta);
    const unsigned cap = truncation_level(ctx);
    const LawSummary p = planck_summary(ctx);
    double entropy_sum = 0.0;
    double mean_sum = 0.0;
    double fluct_sum = 0.0;
    for (unsigned s = 0; s <= cap; ++s) {
      const LawSummary bs = binary_summary(s, ctx);
      entropy_sum += bs.entropy;
      mean_sum += bs.mean;
      fluct_sum += bs.variance;
    }
    worst_entropy_sum =
        std::max(worst_entropy_sum, std::abs(p.entropy - entropy_sum));
    worst_mean_sum = std::max(worst_mean_sum, std::abs(p.mean - mean_sum));
    worst_fluct_sum =
        std::max(worst_fluct_sum, std::abs(p.variance - fluct_sum));
  }
  check.bound("laws: entropy additivity (binary sum)", worst_entropy_sum,
              1e-12);
  check.bound("laws: occupation equals binary mean sum", worst_mean_sum, 1e-12);
  check.bound("laws: fluctuation equals binary variance sum", worst_fluct_sum,
              1e-10);

  // d(entropy)/d(energy) = 1/T for all four laws, by central differences.
  const double t0 = config.temperature;
  const double h = 1e-4 * t0;
  double worst_thermo = 0.0;
  for (int law = 0; law < 6; ++law) {
    const auto summary_at = [&](double T) -> LawSummary {
      const ModeContext ctx = make_mode_context(config.nu, T, config.constants);
      switch (law) {
        case 0: return gauss_summary(ctx);
        case 1: return dark_summary(ctx);
        case 2: return planck_summary(ctx);
        default: return binary_summary(static_cast<unsigned>(law - 3), ctx);
      }
    };
    const LawSummary hi = summary_at(t0 + h);
    const LawSummary lo = summary_at(t0 - h);
    const double hnu = config.constants.h * config.nu;
    const double ds = config.constants.k_B * (hi.entropy - lo.entropy);
    const double de = hnu * (hi.mean - lo.mean);
    worst_thermo = std::max(worst_thermo, std::abs(t0 * ds / de - 1.0));
  }
  check.bound("laws: thermodynamic relation T dS/dE = 1 (relative)",
              worst_thermo, 1e-6);

  // Characteristic-function axioms on a standard grid.
  const std::vector<double> grid = symmetric_grid(50.0, 401);
  double worst_axiom = 0.0;
  const ModeContext ctx = mode_from_beta(config.beta);
  const auto check_cf = [&](auto&& cf) {
    worst_axiom = std::max(worst_axiom, std::abs(cf(0.0) - 1.0));
    for (double t : grid) {
      const std::complex<double> v = cf(t);
      worst_axiom = std::max(worst_axiom, std::abs(v) - 1.0);
      worst_axiom =
          std::max(worst_axiom, std::abs(cf(-t) - std::conj(v)));
    }
  };
  check_cf([&](double t) { return cf_gauss(t, ctx); });
  check_cf([&](double t) { return cf_dark(t, ctx); });
  check_cf([&](double t) { return cf_planck(t, ctx); });
  check_cf([&](double t) { return cf_binary(t, 2, ctx); });
  check.bound("laws: characteristic-function axioms", worst_axiom, 1e-14);

  check.bound("laws: factorization residual",
              cf_factorization_residual(symmetric_grid(50.0, 1001), ctx),
              1e-12);
  const unsigned cap = truncation_level(ctx);
  check.bound("laws: product truncation residual at the certified level",
              cf_product_truncation_residual(symmetric_grid(50.0, 101), cap, ctx),
              1e-14);

  // Dark mean: inside (0, 1/2), decreasing in beta.
  bool dark_ok = true;
  double last = 0.5;
  for (double beta : log_grid(1e-6, 50.0, 200)) {
    const double mean = dark_summary(mode_from_beta(beta)).mean;
    if (!(mean > 0.0) || !(mean < 0.5) || !(mean < last + 1e-15)) {
      dark_ok = false;
      break;
    }
    last = mean;
  }
  check.truth("laws: dark mean in (0, 1/2) and decreasing", dark_ok);
}

void check_montecarlo(Checker& check, const VerifyConfig& config) {
  const ModeContext ctx = mode_from_beta(config.beta);
  const RngSpec rng{config.seed, 0};
  const SampleBatch batch = sample_gauss(config.samples, ctx, rng);
  const SampleBatch replay = sample_gauss(config.samples, ctx, rng);

  check.truth("montecarlo: determinism for fixed (seed, stream)",
              batch.eta == replay.eta && batch.xi == replay.xi &&
                  batch.zeta == replay.zeta);

  bool decomposition_ok = true;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const double whole = static_cast<double>(batch.xi[i]);
    if (whole != std::floor(batch.eta[i]) ||
        batch.zeta[i] != batch.eta[i] - whole ||
        whole + batch.zeta[i] != batch.eta[i]) {
      decomposition_ok = false;
      break;
    }
  }
  check.truth("montecarlo: per-sample decomposition identities", decomposition_ok);

  const double n = static_cast<double>(batch.size());
  const LawSummary g = gauss_summary(ctx);
  const LawSummary d = dark_summary(ctx);
  const LawSummary p = planck_summary(ctx);
  double eta_mean = 0.0;
  double zeta_mean = 0.0;
  double xi_mean = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    eta_mean += batch.eta[i];
    zeta_mean += batch.zeta[i];
    xi_mean += static_cast<double>(batch.xi[i]);
  }
  eta_mean /= n;
  zeta_mean /= n;
  xi_mean /= n;
  const double se_eta = std::sqrt(g.variance / n);
  const double se_zeta = std::sqrt(d.variance / n);
  const double se_xi = std::sqrt(p.variance / n);
  check.bound("montecarlo: eta mean (4 SE units)",
              std::abs(eta_mean - g.mean) / se_eta, 4.0);
  check.bound("montecarlo: zeta mean (4 SE units)",
              std::abs(zeta_mean - d.mean) / se_zeta, 4.0);
  check.bound("montecarlo: xi mean (4 SE units)",
              std::abs(xi_mean - p.mean) / se_xi, 4.0);

  double worst_bit = 0.0;
  for (unsigned s = 0; s <= 4; ++s) {
    const LawSummary bs = binary_summary(s, ctx);
    const double scale = std::ldexp(1.0, static_cast<int>(s));
    const double freq = batch.bit_frequency(s);
    const double se = std::sqrt(bs.variance / n) / scale;
    worst_bit = std::max(worst_bit, std::abs(freq - bs.mean / scale) / se);
  }
  check.bound("montecarlo: bit means (4 SE units)", worst_bit, 4.0);

  // Variance of xi against nbar + nbar^2. The standard error uses the law's
  // exact central moments, summed until the tail is negligible.
  double xi_var = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const double dev = static_cast<double>(batch.xi[i]) - xi_mean;
    xi_var += dev * dev;
  }
  xi_var /= n;
  double mu4 = 0.0;
  for (std::uint64_t k = 0;; ++k) {
    const double pk = planck_pmf(k, ctx);
    const double dev = static_cast<double>(k) - p.mean;
    const double term = pk * dev * dev * dev * dev;
    mu4 += term;
    if (static_cast<double>(k) > p.mean + 5.0 && term < 1e-18) break;
  }
  const double se_var = std::sqrt((mu4 - p.variance * p.variance) / n);
  check.bound("montecarlo: xi variance (5 SE units)",
              std::abs(xi_var - p.variance) / se_var, 5.0);

  check.gof("montecarlo: KS of eta vs exponential",
            ks_test(batch.eta, [&](double x) {
              return exponential_cdf(x, ctx.beta);
            }));
  check.gof("montecarlo: KS of zeta vs fractional law",
            ks_test(batch.zeta, [&](double z) { return dark_cdf(z, ctx); }));
  check.gof("montecarlo: chi-square of xi vs photon-number law",
            chi2_planck_test(batch.xi, ctx));

  double worst_freq = 0.0;
  for (unsigned s = 0; s <= 4; ++s) {
    const double p_occ = atom_prob(s, ctx, true);
    const double band = 4.0 * std::sqrt(p_occ * (1.0 - p_occ) / n);
    worst_freq =
        std::max(worst_freq, std::abs(batch.bit_frequency(s) - p_occ) / band);
  }
  check.bound("montecarlo: bit frequencies (4-sigma binomial units)",
              worst_freq, 1.0);

  const IndependenceReport independence = empirical_independence(batch);
  check.truth("montecarlo: zeta/xi and bit-pair correlations inside 4/sqrt(n)",
              !independence.any_flagged());

  // CLT pipeline.
  const std::size_t clt_samples = 100000;
  const auto pairs =
      clt_superpose(64, clt_samples, CltBase::uniform, RngSpec{config.seed, 1});
  std::vector<double> a_c(clt_samples);
  std::vector<double> a_s(clt_samples);
  for (std::size_t i = 0; i < clt_samples; ++i) {
    a_c[i] = pairs[i].a_c;
    a_s[i] = pairs[i].a_s;
  }
  check.gof("montecarlo: KS of cosine amplitude vs normal",
            ks_test(a_c, standard_normal_cdf));
  check.gof("montecarlo: KS of sine amplitude vs normal",
            ks_test(a_s, standard_normal_cdf));
  const auto energies = amplitudes_to_energy(pairs);
  std::vector<double> energy(clt_samples);
  std::vector<double> phase(clt_samples);
  for (std::size_t i = 0; i < clt_samples; ++i) {
    energy[i] = energies[i].energy;
    phase[i] = energies[i].phase;
  }
  check.gof("montecarlo: KS of derived energies vs unit-mean exponential",
            ks_test(energy, [](double x) { return exponential_cdf(x, 1.0); }));
  check.gof("montecarlo: chi-square of phases vs uniform (36 bins)",
            chi2_uniform_test(phase, 0.0, 2.0 * std::numbers::pi, 36));
}

void check_dyadic(Checker& check, const VerifyConfig& config) {
  double worst_bn = 0.0;
  for (double b : {0.1, 0.5, 0.9}) {
    const ModeContext ctx = mode_from_beta(-std::log(b));
    for (std::uint64_t n = 0; n <= 64; ++n) {
      const EventExpr expr = bn_to_expr(n, 16);
      const double direct = (1.0 - b) * std::pow(b, static_cast<double>(n));
      worst_bn = std::max(worst_bn, std::abs(eval_prob(expr, ctx) - direct));
    }
  }
  check.bound("dyadic: P(B_n) = (1-b) b^n for n <= 64", worst_bn, 1e-14);

  const ModeContext half = mode_from_beta(std::numbers::ln2);
  const EventExpr example =
      parse_event("(A0|A3)&!A1&!A2&...rest-empty");
  const std::vector<std::uint64_t> bn_set = expr_to_bn_set(example);
  double additive = 0.0;
  for (std::uint64_t n : bn_set) {
    additive += (1.0 - half.b) * std::pow(half.b, static_cast<double>(n));
  }
  check.bound("dyadic: closed-expression additivity",
              std::abs(eval_prob(example, half) - additive), 1e-13);
  check.truth("dyadic: worked compound event set",
              bn_set == std::vector<std::uint64_t>({1, 8, 9}));

  const EventExpr open = EventExpr::conjunction(
      {EventExpr::disjunction(
           {EventExpr::occupied(0), EventExpr::occupied(3)}),
       EventExpr::unoccupied(1)});
  check.bound("dyadic: complement law",
              std::abs(eval_prob(open, half) +
                       eval_prob(EventExpr::negation(open), half) - 1.0),
              1e-14);

  // Agreement with sampled occupancy patterns.
  const SampleBatch batch = sample_gauss(
      config.samples, mode_from_beta(std::numbers::ln2), RngSpec{config.seed, 2});
  std::size_t hits = 0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (example.matches(batch.bits(i))) ++hits;
  }
  const double p = eval_prob(example, half);
  const double freq = static_cast<double>(hits) / static_cast<double>(batch.size());
  const double band =
      4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(batch.size()));
  check.bound("dyadic: sampled event frequency vs exact probability",
              std::abs(freq - p), band);
}

void check_kinetics(Checker& check) {
  const EnergyLadder ladder = build_ladder(LadderKind::linear, 8);
  const double beta = 1.0;
  const std::vector<double> fermi = fermi_occupancies(ladder, beta);

  double worst_balance = 0.0;
  OccupancyState fermi_state{fermi, 0.0};
  for (const Quadruple& quad : ladder.quadruples) {
    const RatePair pair = rates(fermi_state, quad);
    worst_balance =
        std::max(worst_balance, std::abs(pair.forward - pair.backward));
  }
  check.bound("kinetics: detailed balance at the Fermi state", worst_balance,
              1e-14);

  // Convergence from several interior starting points (deterministic seeds).
  bool converged_all = true;
  double worst_err = 0.0;
  bool bounds_ok = true;
  CounterRng rng(RngSpec{7, 0});
  for (int trial = 0; trial < 3; ++trial) {
    OccupancyState init;
    init.n.resize(ladder.levels.size());
    for (double& x : init.n) x = 0.01 + 0.98 * rng.next_uniform();
    RelaxOptions options;
    options.tol = 1e-13;
    const RelaxResult result = relax_to_equilibrium(ladder, beta, init, options);
    converged_all = converged_all && result.converged;
    for (std::size_t j = 0; j < fermi.size(); ++j) {
      worst_err = std::max(worst_err, std::abs(result.state.n[j] - fermi[j]));
    }
    for (const TracePoint& point : result.trace) {
      for (double x : point.occupancy) {
        bounds_ok = bounds_ok && x >= 0.0 && x <= 1.0;
      }
    }
  }
  check.truth("kinetics: relaxation converges from interior starts",
              converged_all);
  check.bound("kinetics: converged state vs Fermi occupancies", worst_err,
              1e-10);
  check.truth("kinetics: iterates stay inside [0, 1]", bounds_ok);

  RelaxOptions options;
  options.tol = 1e-15;
  OccupancyState mid;
  mid.n.assign(ladder.levels.size(), 0.5);
  const RelaxResult result = relax_to_equilibrium(ladder, beta, mid, options);
  check.bound("kinetics: fitted alpha at equilibrium",
              std::abs(result.state.alpha), 1e-8);
  check.bound("kinetics: q-invariant violation at equilibrium",
              verify_q_invariant(result.state, ladder), 1e-12);
}

void check_spectra(Checker& check, const VerifyConfig& config) {
  const double T = config.temperature;
  const std::vector<double> grid = log_grid(1e9, 1e13, 200);
  bool ordering_ok = true;
  for (double nu : grid) {
    const double w = spectral_density(RadiationLaw::wien, nu, T, config.constants);
    const double p = spectral_density(RadiationLaw::planck, nu, T, config.constants);
    const double rj =
        spectral_density(RadiationLaw::rayleigh_jeans, nu, T, config.constants);
    ordering_ok = ordering_ok && w <= p && p <= rj;
  }
  check.truth("spectra: wien <= planck <= rayleigh-jeans pointwise",
              ordering_ok);

  // Interpolation of the threshold-corrected law: it meets the classical
  // density as beta -> 0 and carries an exact 1 + 1/beta ratio to the
  // high-frequency law, which certifies the beta -> inf limit.
  {
    const PhysicalConstants& constants = config.constants;
    const double kt = constants.k_B * T;
    const double nu_low = 1e-6 * kt / constants.h;
    const double ratio_low =
        spectral_density(RadiationLaw::schweikert, nu_low, T, constants) /
        spectral_density(RadiationLaw::rayleigh_jeans, nu_low, T, constants);
    check.bound("spectra: schweikert/rayleigh-jeans at beta = 1e-6",
                std::abs(ratio_low - 1.0), 1e-5);
    double worst = 0.0;
    for (double beta : {30.0, 100.0, 600.0}) {
      const double nu_high = beta * kt / constants.h;
      const double ratio =
          spectral_density(RadiationLaw::schweikert, nu_high, T, constants) /
          spectral_density(RadiationLaw::wien, nu_high, T, constants);
      worst = std::max(worst, std::abs(ratio - (1.0 + 1.0 / beta)));
    }
    check.bound("spectra: schweikert/wien = 1 + 1/beta identity", worst, 1e-12);
  }

  double worst_scaling = 0.0;
  for (double lambda : {2.0, 10.0}) {
    for (RadiationLaw law :
         {RadiationLaw::planck, RadiationLaw::rayleigh_jeans,
          RadiationLaw::wien, RadiationLaw::schweikert}) {
      for (double nu : {1e10, 1e11, 1e12}) {
        const double lhs =
            spectral_density(law, lambda * nu, lambda * T, config.constants);
        const double rhs = lambda * lambda * lambda *
                           spectral_density(law, nu, T, config.constants);
        worst_scaling = std::max(worst_scaling, std::abs(lhs / rhs - 1.0));
      }
    }
  }
  check.bound("spectra: u(l nu, l T) = l^3 u(nu, T) (relative)", worst_scaling,
              1e-12);

  // The subtraction U' - U'' is representable at double precision only while
  // h nu nbar stays above ulp(kT), so the identity is checked for beta <= 5.
  double worst_identity = 0.0;
  const double nu_cap = 5.0 * config.constants.k_B * T / config.constants.h;
  for (double nu : log_grid(1e-4 * nu_cap, nu_cap, 200)) {
    const ModeContext ctx = make_mode_context(nu, T, config.constants);
    const double lhs = spectral_density(RadiationLaw::planck, nu, T, config.constants);
    const double rhs = mode_density(nu, config.constants) *
                       (mean_energy_classical(ctx) - mean_energy_sub_eps0(ctx));
    worst_identity = std::max(worst_identity, std::abs(lhs / rhs - 1.0));
  }
  check.bound("spectra: planck density equals Z (U' - U'') (relative)",
              worst_identity, 1e-13);

  const EnergyFluctuation dark_fluct = energy_fluctuation(
      EnergyLaw::dark,
      FluctuationParams{0.0, config.nu, 0.0, 1.0},
      make_mode_context(config.nu, T, config.constants));
  check.truth("spectra: dark fluctuation routes disagree and are both reported",
              !dark_fluct.forms_consistent &&
                  dark_fluct.variance != dark_fluct.variance_split_form);
}

}  // namespace

std::vector<CheckResult> verify_all(const VerifyConfig& config) {
  Checker check;
  check_physconst(check, config);
  check_laws(check, config);
  check_montecarlo(check, config);
  check_dyadic(check, config);
  check_kinetics(check);
  check_spectra(check, config);
  return check.take();
}

}  // namespace bbdecomp
