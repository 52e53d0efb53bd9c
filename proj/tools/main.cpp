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

// Command-line frontend. Every subcommand is a thin adapter around the
// library: it builds a mode context from the flags, calls one library entry
// point and emits the result as CSV or JSON. No numerics live here.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bbdecomp/dyadic_events.hpp"
#include "bbdecomp/io.hpp"
#include "bbdecomp/kinetics.hpp"
#include "bbdecomp/laws.hpp"
#include "bbdecomp/montecarlo.hpp"
#include "bbdecomp/physconst.hpp"
#include "bbdecomp/spectra.hpp"
#include "bbdecomp/verify.hpp"

namespace {

using bbdecomp::format_double;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRejected = 2;

struct CommonFlags {
  std::optional<double> nu;
  std::optional<double> temperature;
  std::optional<double> beta;
  std::size_t samples = 1000000;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  bbdecomp::PhysicalConstants constants{};
};

void add_mode_flags(CLI::App* cmd, CommonFlags& flags) {
  auto* nu = cmd->add_option("--nu", flags.nu, "Mode frequency [Hz]");
  auto* temp = cmd->add_option("--temp", flags.temperature, "Temperature [K]");
  auto* beta =
      cmd->add_option("--beta", flags.beta, "Dimensionless h nu / k T");
  nu->needs(temp);
  temp->needs(nu);
  beta->excludes(nu);
  beta->excludes(temp);
}

void add_output_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--out", flags.out, "Output path (default: stdout)");
  cmd->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

void add_constant_flags(CLI::App* cmd, CommonFlags& flags) {
  // The override flag --h needs the short help alias out of the way.
  cmd->set_help_flag("--help", "Print help");
  cmd->add_option("--h", flags.constants.h, "Action quantum [erg s]");
  cmd->add_option("--kb", flags.constants.k_B, "Boltzmann constant [erg/K]");
  cmd->add_option("--c", flags.constants.c, "Speed of light [cm/s]");
  cmd->add_option("--g", flags.constants.G, "Gravitational constant [cgs]");
}

bbdecomp::ModeContext context_from_flags(const CommonFlags& flags) {
  if (flags.beta.has_value()) {
    return bbdecomp::mode_from_beta(*flags.beta);
  }
  if (flags.nu.has_value() && flags.temperature.has_value()) {
    return bbdecomp::make_mode_context(*flags.nu, *flags.temperature,
                                       flags.constants);
  }
  throw CLI::ValidationError("either --beta or --nu together with --temp is required");
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot open output path: " + out_path);
  }
  file << payload;
  if (!file.good()) {
    throw std::runtime_error("write failed: " + out_path);
  }
}

json summary_json(const bbdecomp::LawSummary& summary) {
  return json{{"mean", summary.mean},
              {"variance", summary.variance},
              {"entropy", summary.entropy}};
}

std::string csv_row(std::initializer_list<std::string> fields) {
  std::string row;
  bool first = true;
  for (const std::string& field : fields) {
    if (!first) row += ',';
    row += field;
    first = false;
  }
  row += '\n';
  return row;
}

// --- laws --------------------------------------------------------------------

int run_laws(const CommonFlags& flags) {
  const bbdecomp::ModeContext ctx = context_from_flags(flags);
  const bbdecomp::LawSummary gauss = bbdecomp::gauss_summary(ctx);
  const bbdecomp::LawSummary dark = bbdecomp::dark_summary(ctx);
  const bbdecomp::LawSummary planck = bbdecomp::planck_summary(ctx);
  const unsigned cap = bbdecomp::truncation_level(ctx);
  const unsigned shown = std::min(cap, 16u);

  if (flags.format == "json") {
    json doc{{"schema_version", 1},
             {"beta", ctx.beta},
             {"b", ctx.b},
             {"truncation_level", cap},
             {"gauss", summary_json(gauss)},
             {"dark", summary_json(dark)},
             {"planck", summary_json(planck)}};
    json binary = json::array();
    for (unsigned s = 0; s <= shown; ++s) {
      json entry = summary_json(bbdecomp::binary_summary(s, ctx));
      entry["s"] = s;
      binary.push_back(entry);
    }
    doc["binary"] = binary;
    emit(doc.dump(2) + "\n", flags.out);
    return kExitOk;
  }

  std::string payload = "law,mean,variance,entropy\n";
  const auto row = [&](const std::string& name,
                       const bbdecomp::LawSummary& s) {
    payload += csv_row({name, format_double(s.mean), format_double(s.variance),
                        format_double(s.entropy)});
  };
  row("gauss", gauss);
  row("dark", dark);
  row("planck", planck);
  for (unsigned s = 0; s <= shown; ++s) {
    row("binary_" + std::to_string(s), bbdecomp::binary_summary(s, ctx));
  }
  emit(payload, flags.out);
  return kExitOk;
}

// --- sample / decompose --------------------------------------------------------

int run_sample(const CommonFlags& flags) {
  const bbdecomp::ModeContext ctx = context_from_flags(flags);
  const bbdecomp::SampleBatch batch =
      bbdecomp::sample_gauss(flags.samples, ctx, {flags.seed, 0});
  if (flags.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < batch.size(); ++i) {
      rows.push_back({{"eta", batch.eta[i]},
                      {"xi", batch.xi[i]},
                      {"zeta", batch.zeta[i]},
                      {"bits", bbdecomp::bits_lsb_first(batch.bits(i))}});
    }
    json doc{{"schema_version", 1},
             {"beta", ctx.beta},
             {"n", batch.size()},
             {"rows", rows}};
    emit(doc.dump(2) + "\n", flags.out);
    return kExitOk;
  }
  std::ostringstream payload;
  bbdecomp::write_batch_csv(batch, payload);
  emit(payload.str(), flags.out);
  return kExitOk;
}

int run_decompose(const CommonFlags& flags) {
  const bbdecomp::ModeContext ctx = context_from_flags(flags);
  const bbdecomp::SampleBatch batch =
      bbdecomp::sample_gauss(flags.samples, ctx, {flags.seed, 0});
  const bbdecomp::DecompositionReport report =
      bbdecomp::decomposition_report(batch, ctx);

  if (flags.format == "json") {
    json bits = json::array();
    for (const bbdecomp::BitFrequencyEntry& bit : report.bit_frequencies) {
      bits.push_back({{"level", bit.level},
                      {"empirical", bit.empirical},
                      {"expected", bit.expected},
                      {"band", bit.band},
                      {"within", bit.within}});
    }
    json correlations = json::array();
    for (const bbdecomp::CorrelationEntry& entry : report.independence.entries) {
      correlations.push_back(
          {{"pair", entry.label},
           {"value", entry.degenerate ? json() : json(entry.value)},
           {"degenerate", entry.degenerate},
           {"flagged", entry.flagged}});
    }
    json doc{{"schema_version", 1},
             {"beta", ctx.beta},
             {"n", report.n},
             {"empirical",
              {{"eta_mean", report.eta_mean},
               {"zeta_mean", report.zeta_mean},
               {"xi_mean", report.xi_mean}}},
             {"law",
              {{"eta_mean", report.eta_mean_law},
               {"zeta_mean", report.zeta_mean_law},
               {"xi_mean", report.xi_mean_law}}},
             {"bit_frequencies", bits},
             {"correlation_band", report.independence.band},
             {"correlations", correlations}};
    emit(doc.dump(2) + "\n", flags.out);
    return kExitOk;
  }

  std::string payload = "quantity,empirical,expected\n";
  payload += csv_row({"eta_mean", format_double(report.eta_mean),
                      format_double(report.eta_mean_law)});
  payload += csv_row({"zeta_mean", format_double(report.zeta_mean),
                      format_double(report.zeta_mean_law)});
  payload += csv_row({"xi_mean", format_double(report.xi_mean),
                      format_double(report.xi_mean_law)});
  for (const bbdecomp::BitFrequencyEntry& bit : report.bit_frequencies) {
    payload += csv_row({"bit" + std::to_string(bit.level) + "_frequency",
                        format_double(bit.empirical),
                        format_double(bit.expected)});
  }
  emit(payload, flags.out);
  return kExitOk;
}

// --- events --------------------------------------------------------------------

int run_events(const CommonFlags& flags, const std::string& expr_text) {
  const bbdecomp::ModeContext ctx = context_from_flags(flags);
  const bbdecomp::EventExpr expr = bbdecomp::parse_event(expr_text);
  const double probability = bbdecomp::eval_prob(expr, ctx);

  json doc{{"schema_version", 1},
           {"expr", expr.to_string()},
           {"beta", ctx.beta},
           {"b", ctx.b},
           {"probability", probability},
           {"closure", expr.closure()}};
  if (expr.closure()) {
    doc["s_cap"] = expr.s_cap();
    const std::vector<std::uint64_t> set = bbdecomp::expr_to_bn_set(expr);
    doc["photon_number_count"] = set.size();
    constexpr std::size_t kListCap = 1024;
    json list = json::array();
    for (std::size_t i = 0; i < set.size() && i < kListCap; ++i) {
      list.push_back(set[i]);
    }
    doc["photon_numbers"] = list;
  }
  if (flags.format == "json") {
    emit(doc.dump(2) + "\n", flags.out);
    return kExitOk;
  }
  std::string payload = "key,value\n";
  payload += csv_row({"expr", expr.to_string()});
  payload += csv_row({"probability", format_double(probability)});
  if (expr.closure()) {
    std::string joined;
    for (const auto& n : doc["photon_numbers"]) {
      if (!joined.empty()) joined += ' ';
      joined += n.dump();
    }
    payload += csv_row({"photon_numbers", joined});
  }
  emit(payload, flags.out);
  return kExitOk;
}

// --- kinetics --------------------------------------------------------------------

int run_kinetics(const CommonFlags& flags, const std::string& ladder_name,
                 std::size_t levels) {
  const bbdecomp::ModeContext ctx = context_from_flags(flags);
  bbdecomp::LadderKind kind;
  if (ladder_name == "linear") {
    kind = bbdecomp::LadderKind::linear;
  } else if (ladder_name == "dyadic") {
    kind = bbdecomp::LadderKind::dyadic;
  } else {
    throw CLI::ValidationError("--ladder must be linear or dyadic");
  }
  const bbdecomp::EnergyLadder ladder = bbdecomp::build_ladder(kind, levels);
  bbdecomp::OccupancyState init;
  init.n.assign(ladder.levels.size(), 0.5);
  const bbdecomp::RelaxResult result =
      bbdecomp::relax_to_equilibrium(ladder, ctx.beta, init);
  if (!result.converged) {
    std::ostringstream trace;
    bbdecomp::write_trace_csv(result.trace, trace);
    std::cerr << "kinetics failed to converge; trace follows\n" << trace.str();
    return kExitUsage;
  }

  if (flags.format == "json") {
    const std::vector<double> fermi =
        bbdecomp::fermi_occupancies(ladder, ctx.beta);
    double worst = 0.0;
    for (std::size_t j = 0; j < fermi.size(); ++j) {
      worst = std::max(worst, std::abs(result.state.n[j] - fermi[j]));
    }
    json doc{{"schema_version", 1},
             {"ladder", ladder_name},
             {"levels", ladder.levels},
             {"beta", ctx.beta},
             {"iterations", result.iterations},
             {"converged", result.converged},
             {"occupancy", result.state.n},
             {"fermi", fermi},
             {"max_abs_error", worst},
             {"alpha", result.state.alpha},
             {"q_invariant_violation",
              bbdecomp::verify_q_invariant(result.state, ladder)}};
    emit(doc.dump(2) + "\n", flags.out);
    return kExitOk;
  }
  std::ostringstream payload;
  bbdecomp::write_trace_csv(result.trace, payload);
  emit(payload.str(), flags.out);
  return kExitOk;
}

// --- spectrum / fit ---------------------------------------------------------------

int run_spectrum(const CommonFlags& flags, const std::string& law_name,
                 double nu_min, double nu_max, std::size_t points) {
  if (!flags.temperature.has_value()) {
    throw CLI::ValidationError("spectrum requires --temp");
  }
  const bbdecomp::RadiationLaw law = bbdecomp::radiation_law_from_name(law_name);
  const std::vector<double> grid = bbdecomp::log_grid(nu_min, nu_max, points);
  const bbdecomp::SpectrumTable table =
      bbdecomp::synthesize_table(law, *flags.temperature, grid, flags.constants);
  if (flags.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < table.size(); ++i) {
      rows.push_back({{"nu_hz", table.nu[i]}, {"u_erg_per_cm3_hz", table.u[i]}});
    }
    json doc{{"schema_version", 1},
             {"law", law_name},
             {"temperature_kelvin", *flags.temperature},
             {"rows", rows}};
    emit(doc.dump(2) + "\n", flags.out);
    return kExitOk;
  }
  std::ostringstream payload;
  bbdecomp::write_spectrum_csv(table, payload);
  emit(payload.str(), flags.out);
  return kExitOk;
}

int run_fit(const CommonFlags& flags, const std::string& law_name,
            const std::string& in_path, double t_lo, double t_hi) {
  std::ifstream in(in_path);
  if (!in) throw std::runtime_error("cannot open input table: " + in_path);
  const bbdecomp::SpectrumTable table = bbdecomp::read_spectrum_csv(in);
  const bbdecomp::RadiationLaw law = bbdecomp::radiation_law_from_name(law_name);
  const bbdecomp::FitResult fit =
      bbdecomp::fit_temperature(table, law, t_lo, t_hi, flags.constants);
  if (flags.format == "json") {
    json doc{{"schema_version", 1},
             {"law", law_name},
             {"t_hat_kelvin", fit.t_hat},
             {"residual_l2", fit.residual_l2},
             {"n_rows", fit.n_rows}};
    emit(doc.dump(2) + "\n", flags.out);
    return kExitOk;
  }
  std::string payload = "key,value\n";
  payload += csv_row({"law", law_name});
  payload += csv_row({"t_hat_kelvin", format_double(fit.t_hat)});
  payload += csv_row({"residual_l2", format_double(fit.residual_l2)});
  payload += csv_row({"n_rows", std::to_string(fit.n_rows)});
  emit(payload, flags.out);
  return kExitOk;
}

// --- clt --------------------------------------------------------------------------

int run_clt(const CommonFlags& flags, std::size_t terms,
            const std::string& base_name) {
  const bbdecomp::CltBase base = bbdecomp::clt_base_from_name(base_name);
  const auto pairs =
      bbdecomp::clt_superpose(terms, flags.samples, base, {flags.seed, 0});
  std::vector<double> a_c(pairs.size());
  std::vector<double> a_s(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    a_c[i] = pairs[i].a_c;
    a_s[i] = pairs[i].a_s;
  }
  const auto energies = bbdecomp::amplitudes_to_energy(pairs);
  std::vector<double> energy(pairs.size());
  std::vector<double> phase(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    energy[i] = energies[i].energy;
    phase[i] = energies[i].phase;
  }

  struct Entry {
    std::string name;
    bbdecomp::GofReport report;
  };
  const std::vector<Entry> entries{
      {"ks_amplitude_c",
       bbdecomp::ks_test(a_c, bbdecomp::standard_normal_cdf)},
      {"ks_amplitude_s",
       bbdecomp::ks_test(a_s, bbdecomp::standard_normal_cdf)},
      {"ks_energy", bbdecomp::ks_test(energy, [](double x) {
         return bbdecomp::exponential_cdf(x, 1.0);
       })},
      {"chi2_phase", bbdecomp::chi2_uniform_test(
                         phase, 0.0, 2.0 * std::numbers::pi, 36)}};

  if (flags.format == "json") {
    json checks = json::array();
    for (const Entry& entry : entries) {
      checks.push_back({{"check", entry.name},
                        {"statistic", entry.report.statistic},
                        {"threshold", entry.report.threshold},
                        {"rejected", entry.report.rejected}});
    }
    json doc{{"schema_version", 1},
             {"n_terms", terms},
             {"n_samples", flags.samples},
             {"base", base_name},
             {"checks", checks}};
    emit(doc.dump(2) + "\n", flags.out);
    return kExitOk;
  }
  std::string payload = "check,statistic,threshold,rejected\n";
  for (const Entry& entry : entries) {
    payload += csv_row({entry.name, format_double(entry.report.statistic),
                        format_double(entry.report.threshold),
                        entry.report.rejected ? "true" : "false"});
  }
  emit(payload, flags.out);
  return kExitOk;
}

// --- verify -----------------------------------------------------------------------

int run_verify(const CommonFlags& flags) {
  bbdecomp::VerifyConfig config;
  if (flags.beta.has_value()) config.beta = *flags.beta;
  if (flags.nu.has_value()) config.nu = *flags.nu;
  if (flags.temperature.has_value()) config.temperature = *flags.temperature;
  config.samples = flags.samples;
  config.seed = flags.seed;
  config.constants = flags.constants;

  const std::vector<bbdecomp::CheckResult> results = bbdecomp::verify_all(config);
  std::size_t failures = 0;
  for (const bbdecomp::CheckResult& result : results) {
    std::cout << (result.passed ? "PASS  " : "FAIL  ") << result.name;
    if (!result.detail.empty()) std::cout << "  [" << result.detail << "]";
    std::cout << '\n';
    if (!result.passed) ++failures;
  }
  std::cout << results.size() - failures << "/" << results.size()
            << " checks passed\n";

  if (!flags.out.empty()) {
    if (flags.format == "json") {
      json checks = json::array();
      for (const bbdecomp::CheckResult& result : results) {
        checks.push_back({{"name", result.name},
                          {"passed", result.passed},
                          {"detail", result.detail}});
      }
      json doc{{"schema_version", 1}, {"checks", checks}};
      emit(doc.dump(2) + "\n", flags.out);
    } else {
      std::string payload = "name,passed\n";
      for (const bbdecomp::CheckResult& result : results) {
        payload += csv_row({result.name, result.passed ? "true" : "false"});
      }
      emit(payload, flags.out);
    }
  }
  return failures == 0 ? kExitOk : kExitRejected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Decomposition of thermal mode energy into dark, photon-number and "
      "binary-photon components, with black-body radiometry and kinetics"};
  app.set_help_flag("--help", "Print help");
  app.require_subcommand(1);

  CommonFlags flags;

  auto* laws = app.add_subcommand("laws", "Moments and entropies of the four laws");
  add_mode_flags(laws, flags);
  add_output_flags(laws, flags);
  add_constant_flags(laws, flags);

  auto* sample = app.add_subcommand("sample", "Draw and decompose mode energies");
  add_mode_flags(sample, flags);
  add_output_flags(sample, flags);
  add_constant_flags(sample, flags);
  sample->add_option("--samples", flags.samples, "Sample count");
  sample->add_option("--seed", flags.seed, "RNG seed");

  auto* decompose = app.add_subcommand(
      "decompose", "Empirical decomposition statistics against the laws");
  add_mode_flags(decompose, flags);
  add_output_flags(decompose, flags);
  add_constant_flags(decompose, flags);
  decompose->add_option("--samples", flags.samples, "Sample count");
  decompose->add_option("--seed", flags.seed, "RNG seed");

  std::string expr_text;
  auto* events = app.add_subcommand(
      "events", "Exact probability of an occupancy-event expression");
  add_mode_flags(events, flags);
  add_output_flags(events, flags);
  add_constant_flags(events, flags);
  events
      ->add_option("--expr", expr_text,
                   "Event expression, e.g. \"(A0|A3)&!A1&!A2&...rest-empty\"")
      ->required();

  std::string ladder_name = "linear";
  std::size_t levels = 8;
  auto* kinetics = app.add_subcommand(
      "kinetics", "Relax pair-exchange kinetics to the Fermi occupancies");
  add_mode_flags(kinetics, flags);
  add_output_flags(kinetics, flags);
  add_constant_flags(kinetics, flags);
  kinetics->add_option("--ladder", ladder_name, "Ladder kind: linear|dyadic");
  kinetics->add_option("--levels", levels, "Ladder size J");

  std::string law_name = "planck";
  double nu_min = 1e10;
  double nu_max = 1e12;
  std::size_t points = 200;
  auto* spectrum =
      app.add_subcommand("spectrum", "Synthesize a spectral-density table");
  add_output_flags(spectrum, flags);
  add_constant_flags(spectrum, flags);
  spectrum->add_option("--temp", flags.temperature, "Temperature [K]")
      ->required();
  spectrum->add_option("--law", law_name,
                       "planck|rayleigh_jeans|wien|schweikert");
  spectrum->add_option("--nu-min", nu_min, "Grid start [Hz]");
  spectrum->add_option("--nu-max", nu_max, "Grid end [Hz]");
  spectrum->add_option("--points", points, "Grid size");

  std::string in_path;
  double t_lo = 1.0;
  double t_hi = 10.0;
  auto* fit = app.add_subcommand("fit", "Fit a temperature to a spectrum table");
  add_output_flags(fit, flags);
  add_constant_flags(fit, flags);
  fit->add_option("--in", in_path, "Input CSV table")->required();
  fit->add_option("--law", law_name, "planck|rayleigh_jeans|wien|schweikert");
  fit->add_option("--tmin", t_lo, "Bracket lower bound [K]");
  fit->add_option("--tmax", t_hi, "Bracket upper bound [K]");

  std::size_t terms = 64;
  std::string base_name = "uniform";
  auto* clt = app.add_subcommand(
      "clt", "Superposition pipeline: amplitudes, energies, phases");
  add_output_flags(clt, flags);
  clt->add_option("--terms", terms, "Summands per amplitude");
  clt->add_option("--samples", flags.samples, "Sample count");
  clt->add_option("--base", base_name, "uniform|rademacher|triangular");
  clt->add_option("--seed", flags.seed, "RNG seed");

  auto* verify = app.add_subcommand(
      "verify", "Run the full identity and seeded-regression suite");
  add_mode_flags(verify, flags);
  add_output_flags(verify, flags);
  add_constant_flags(verify, flags);
  verify->add_option("--samples", flags.samples, "Monte Carlo sample count");
  verify->add_option("--seed", flags.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return kExitUsage;
  }

  try {
    if (laws->parsed()) return run_laws(flags);
    if (sample->parsed()) return run_sample(flags);
    if (decompose->parsed()) return run_decompose(flags);
    if (events->parsed()) return run_events(flags, expr_text);
    if (kinetics->parsed()) return run_kinetics(flags, ladder_name, levels);
    if (spectrum->parsed())
      return run_spectrum(flags, law_name, nu_min, nu_max, points);
    if (fit->parsed()) return run_fit(flags, law_name, in_path, t_lo, t_hi);
    if (clt->parsed()) return run_clt(flags, terms, base_name);
    if (verify->parsed()) return run_verify(flags);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
