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

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "bbdecomp/laws.hpp"
#include "bbdecomp/rng.hpp"
#include "test_util.hpp"

using namespace bbdecomp;

namespace {

constexpr double kLn2 = std::numbers::ln2;

std::vector<double> grid_1001() {
  std::vector<double> grid;
  for (int i = 0; i <= 1000; ++i) grid.push_back(-50.0 + 0.1 * i);
  return grid;
}

}  // namespace

TEST_CASE("exponential mode-energy law") {
  SUBCASE("density values") {
    CHECK(gauss_pdf(0.0, mode_from_beta(2.0)) == 2.0);
    CHECK(gauss_pdf(1.0, mode_from_beta(kLn2)) ==
          doctest::Approx(0.34657359027997265).epsilon(1e-13));
    CHECK_THROWS_AS(gauss_pdf(-0.1, mode_from_beta(1.0)), std::domain_error);
  }

  SUBCASE("density integrates to one") {
    const ModeContext ctx = mode_from_beta(1.0);
    const double mass =
        testutil::integrate([&](double y) { return gauss_pdf(y, ctx); }, 0.0, 60.0);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("summary") {
    const LawSummary unit = gauss_summary(mode_from_beta(1.0));
    CHECK(unit.mean == 1.0);
    CHECK(unit.variance == 1.0);
    CHECK(unit.entropy == 1.0);
    CHECK(gauss_summary(mode_from_beta(std::numbers::e)).entropy ==
          doctest::Approx(0.0).epsilon(1e-15));
    CHECK(gauss_summary(mode_from_beta(kLn2)).mean ==
          doctest::Approx(1.4426950408889634).epsilon(1e-14));
  }

  SUBCASE("degenerate contexts are rejected") {
    const ModeContext frozen = make_mode_context(1e11, 0.0);
    CHECK_THROWS_AS(gauss_summary(frozen), std::domain_error);
    CHECK_THROWS_AS(gauss_pdf(0.5, frozen), std::domain_error);
  }
}

TEST_CASE("fractional-part (dark) law") {
  SUBCASE("density values") {
    CHECK(dark_pdf(0.3, mode_from_beta(1e-8)) ==
          doctest::Approx(1.0).epsilon(1e-7));
    CHECK(dark_pdf(0.0, mode_from_beta(kLn2)) ==
          doctest::Approx(2.0 * kLn2).epsilon(1e-14));
    CHECK_THROWS_AS(dark_pdf(1.0, mode_from_beta(1.0)), std::domain_error);
    CHECK_THROWS_AS(dark_pdf(-0.1, mode_from_beta(1.0)), std::domain_error);
  }

  // The support is the half-open interval, so quadrature endpoints take the
  // one-sided boundary value.
  const auto pdf_closed = [](double z, const ModeContext& ctx) {
    return dark_pdf(std::min(z, std::nextafter(1.0, 0.0)), ctx);
  };

  SUBCASE("density integrates to one") {
    for (double beta : {0.1, 1.0, 10.0}) {
      const ModeContext ctx = mode_from_beta(beta);
      const double mass = testutil::integrate(
          [&](double z) { return pdf_closed(z, ctx); }, 0.0, 1.0);
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  SUBCASE("zero-point limit from below") {
    const double mean = dark_summary(mode_from_beta(1e-6)).mean;
    CHECK(mean == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(mean < 0.5);
  }

  SUBCASE("mean at b = 1/2") {
    CHECK(dark_summary(mode_from_beta(kLn2)).mean ==
          doctest::Approx(1.0 / kLn2 - 1.0).epsilon(1e-13));
  }

  SUBCASE("moments and entropy against quadrature oracles") {
    const ModeContext ctx = mode_from_beta(kLn2);
    const double m1 = testutil::integrate(
        [&](double z) { return z * pdf_closed(z, ctx); }, 0.0, 1.0);
    const double m2 = testutil::integrate(
        [&](double z) { return z * z * pdf_closed(z, ctx); }, 0.0, 1.0);
    const double entropy = testutil::integrate(
        [&](double z) {
          const double f = pdf_closed(z, ctx);
          return -f * std::log(f);
        },
        0.0, 1.0);
    const LawSummary summary = dark_summary(ctx);
    CHECK(summary.mean == doctest::Approx(m1).epsilon(1e-12));
    CHECK(summary.variance == doctest::Approx(m2 - m1 * m1).epsilon(1e-10));
    CHECK(summary.entropy == doctest::Approx(entropy).epsilon(1e-10));
  }
}

TEST_CASE("photon-number (geometric) law") {
  const ModeContext half = mode_from_beta(kLn2);

  SUBCASE("mass function") {
    CHECK(planck_pmf(0, half) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(planck_pmf(9, half) ==
          doctest::Approx(std::pow(2.0, -10.0)).epsilon(1e-13));
    const ModeContext frozen = make_mode_context(1e11, 0.0);
    CHECK(planck_pmf(0, frozen) == 1.0);
    CHECK(planck_pmf(3, frozen) == 0.0);
  }

  SUBCASE("summary at b = 1/2") {
    const LawSummary s = planck_summary(half);
    CHECK(s.mean == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.variance == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s.entropy == doctest::Approx(2.0 * kLn2).epsilon(1e-14));
  }

  SUBCASE("vacuum summary") {
    const LawSummary s = planck_summary(make_mode_context(1e11, 0.0));
    CHECK(s.mean == 0.0);
    CHECK(s.variance == 0.0);
    CHECK(s.entropy == 0.0);
  }

  SUBCASE("occupation at the microwave-background beta") {
    CHECK(planck_summary(mode_from_beta(2.8146)).mean ==
          doctest::Approx(0.063749084235635052).epsilon(1e-12));
  }

  SUBCASE("extreme beta degrades to the asymptotic regime") {
    // Past the overflow point of e^beta the occupation equals e^-beta to
    // first order, down into the subnormal range; past that it underflows
    // to zero.
    const LawSummary deep = planck_summary(mode_from_beta(710.0));
    CHECK(deep.mean == std::exp(-710.0));
    CHECK(deep.mean > 0.0);
    CHECK(planck_summary(mode_from_beta(800.0)).mean == 0.0);
  }

  SUBCASE("mass sums to one") {
    double total = 0.0;
    for (std::uint64_t n = 0; n < 200; ++n) total += planck_pmf(n, half);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("binary-component law") {
  const ModeContext half = mode_from_beta(kLn2);

  SUBCASE("two-point masses") {
    const BinaryPmf s0 = binary_pmf(0, half);
    CHECK(s0.p_empty == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(s0.p_occupied == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    const BinaryPmf s1 = binary_pmf(1, half);
    CHECK(s1.p_empty == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(s1.p_occupied == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(binary_pmf(2, half).p_occupied ==
          doctest::Approx(1.0 / 17.0).epsilon(1e-14));
    CHECK(binary_pmf(0, half).p_empty + binary_pmf(0, half).p_occupied == 1.0);
    CHECK(binary_pmf(5, make_mode_context(1e11, 0.0)).p_occupied == 0.0);
  }

  SUBCASE("summaries at b = 1/2") {
    const LawSummary s0 = binary_summary(0, half);
    CHECK(s0.mean == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(s0.variance == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
    const LawSummary s1 = binary_summary(1, half);
    CHECK(s1.mean == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(s1.variance == doctest::Approx(0.64).epsilon(1e-14));
    CHECK(binary_summary(3, half).mean ==
          doctest::Approx(8.0 / 257.0).epsilon(1e-14));
  }

  SUBCASE("entropy matches the direct two-point form") {
    for (unsigned s = 0; s <= 2; ++s) {
      const BinaryPmf pmf = binary_pmf(s, half);
      const double direct = -(pmf.p_empty * std::log(pmf.p_empty) +
                              pmf.p_occupied * std::log(pmf.p_occupied));
      CHECK(binary_summary(s, half).entropy ==
            doctest::Approx(direct).epsilon(1e-13));
    }
  }

  SUBCASE("vacuum summary is degenerate at zero") {
    const LawSummary s = binary_summary(3, make_mode_context(1e11, 0.0));
    CHECK(s.mean == 0.0);
    CHECK(s.variance == 0.0);
    CHECK(s.entropy == 0.0);
  }
}

TEST_CASE("characteristic functions") {
  const ModeContext half = mode_from_beta(kLn2);

  SUBCASE("point values") {
    CHECK(std::abs(cf_gauss(0.0, mode_from_beta(1.0)) - 1.0) == 0.0);
    const std::complex<double> v = cf_gauss(1.0, mode_from_beta(1.0));
    CHECK(v.real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(v.imag() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(cf_gauss(2.0, half)) ==
          doctest::Approx(0.32746470496031490).epsilon(1e-13));
    CHECK(std::abs(cf_planck(0.0, half) - 1.0) < 1e-15);
    CHECK(cf_planck(std::numbers::pi, half).real() ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(cf_binary(std::numbers::pi, 0, half).real() ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  }

  SUBCASE("axioms across random betas, all four laws") {
    CounterRng rng(RngSpec{23, 0});
    for (int trial = 0; trial < 20; ++trial) {
      // log-uniform beta in [1e-4, 50]
      const double beta =
          1e-4 * std::exp(rng.next_uniform() * std::log(50.0 / 1e-4));
      const ModeContext ctx = mode_from_beta(beta);
      const auto check_axioms = [&](auto&& cf) {
        CHECK(std::abs(cf(0.0) - 1.0) < 1e-15);
        for (double t = -20.0; t <= 20.0; t += 0.37) {
          CHECK(std::abs(cf(t)) <= 1.0 + 1e-14);
          CHECK(std::abs(cf(-t) - std::conj(cf(t))) < 1e-15);
        }
      };
      check_axioms([&](double t) { return cf_gauss(t, ctx); });
      check_axioms([&](double t) { return cf_dark(t, ctx); });
      check_axioms([&](double t) { return cf_planck(t, ctx); });
      check_axioms([&](double t) { return cf_binary(t, 1, ctx); });
    }
  }

  SUBCASE("the dark CF is the quotient of the other two") {
    const ModeContext ctx = mode_from_beta(1.3);
    for (double t : {-7.1, -0.5, 0.9, 13.0}) {
      const std::complex<double> product = cf_planck(t, ctx) * cf_dark(t, ctx);
      CHECK(std::abs(product - cf_gauss(t, ctx)) < 1e-15);
    }
  }

  SUBCASE("closed forms match the defining transforms") {
    const ModeContext ctx = mode_from_beta(1.3);
    for (double t : {-5.0, 0.7, 3.2}) {
      // Continuous laws: quadrature of the Fourier integral.
      const double gauss_re = testutil::integrate(
          [&](double y) { return gauss_pdf(y, ctx) * std::cos(t * y); }, 0.0,
          60.0, 1 << 16);
      const double gauss_im = testutil::integrate(
          [&](double y) { return gauss_pdf(y, ctx) * std::sin(t * y); }, 0.0,
          60.0, 1 << 16);
      CHECK(std::abs(cf_gauss(t, ctx) -
                     std::complex<double>(gauss_re, gauss_im)) < 1e-9);

      const auto dark_at = [&](double z) {
        return dark_pdf(std::min(z, std::nextafter(1.0, 0.0)), ctx);
      };
      const double dark_re = testutil::integrate(
          [&](double z) { return dark_at(z) * std::cos(t * z); }, 0.0, 1.0);
      const double dark_im = testutil::integrate(
          [&](double z) { return dark_at(z) * std::sin(t * z); }, 0.0, 1.0);
      CHECK(std::abs(cf_dark(t, ctx) -
                     std::complex<double>(dark_re, dark_im)) < 1e-12);

      // Discrete laws: partial series of the expectation.
      std::complex<double> planck_sum = 0.0;
      for (std::uint64_t n = 0; n < 200; ++n) {
        planck_sum += planck_pmf(n, ctx) *
                      std::polar(1.0, t * static_cast<double>(n));
      }
      CHECK(std::abs(cf_planck(t, ctx) - planck_sum) < 1e-12);

      const BinaryPmf pmf = binary_pmf(2, ctx);
      const std::complex<double> binary_sum =
          pmf.p_empty + pmf.p_occupied * std::polar(1.0, 4.0 * t);
      CHECK(std::abs(cf_binary(t, 2, ctx) - binary_sum) < 1e-14);
    }
  }

  SUBCASE("n-fold divisibility: the n-th root CF to the n-th power") {
    const ModeContext ctx = mode_from_beta(1.3);
    for (int n : {2, 5, 12}) {
      for (double t : {-9.0, -1.0, 0.3, 4.0}) {
        const std::complex<double> root =
            std::pow(1.0 / cf_gauss(t, ctx), -1.0 / n);
        CHECK(std::abs(std::pow(root, n) - cf_gauss(t, ctx)) < 1e-14);
      }
    }
  }
}

TEST_CASE("characteristic-function residual scans") {
  SUBCASE("factorization residual") {
    const std::vector<double> zero{0.0};
    CHECK(cf_factorization_residual(zero, mode_from_beta(2.0)) == 0.0);
    const std::vector<double> grid = grid_1001();
    CHECK(cf_factorization_residual(grid, mode_from_beta(1.0)) < 1e-12);
    CHECK(cf_factorization_residual(grid, mode_from_beta(0.1)) < 1e-12);
  }

  SUBCASE("product truncation residual and bound") {
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(-50.0 + i);

    const ModeContext half = mode_from_beta(kLn2);
    CHECK(cf_product_truncation_residual(grid, 5, half) < 1e-18);

    const ModeContext warm = mode_from_beta(-std::log(0.9));
    const double bound = cf_truncation_bound(6, warm);
    CHECK(bound == doctest::Approx(2.7801729122182333e-6).epsilon(1e-12));
    CHECK(cf_product_truncation_residual(grid, 6, warm) <= bound);

    // Far past the certified level the residual sits at the precision floor.
    const unsigned cap = truncation_level(half);
    CHECK(cf_product_truncation_residual(grid, cap, half) < 1e-17);
  }

  SUBCASE("truncation level selection") {
    CHECK(truncation_level(mode_from_beta(kLn2)) == 6);
    CHECK(truncation_level(mode_from_beta(-std::log(0.9))) == 9);
    CHECK(truncation_level(mode_from_beta(100.0)) == 0);
  }
}

TEST_CASE("classical mean-energy formulas") {
  const PhysicalConstants constants;
  const double T = 2.728;
  const double kt = constants.k_B * T;

  SUBCASE("interpolating average approaches kT at small beta") {
    const double nu = 1e-7 * kt / constants.h;
    const ModeContext ctx = make_mode_context(nu, T);
    CHECK(mean_energy_schweikert(ctx) == doctest::Approx(kt).epsilon(1e-6));
  }

  SUBCASE("threshold difference equals h nu nbar") {
    const double nu = kLn2 * kt / constants.h;
    const ModeContext ctx = make_mode_context(nu, T);
    const double diff = mean_energy_classical(ctx) - mean_energy_sub_eps0(ctx);
    CHECK(diff == doctest::Approx(ctx.photon_energy()).epsilon(1e-12));
  }

  SUBCASE("high-frequency form") {
    const double nu = 10.0 * kt / constants.h;
    const ModeContext ctx = make_mode_context(nu, T);
    const double ratio =
        mean_energy_schweikert(ctx) / (ctx.photon_energy() * ctx.b);
    CHECK(ratio == doctest::Approx(1.1).epsilon(1e-12));
  }

  SUBCASE("zero temperature diverges") {
    const ModeContext frozen = make_mode_context(1e11, 0.0);
    CHECK_THROWS_AS(mean_energy_classical(frozen), std::domain_error);
    CHECK_THROWS_AS(mean_energy_schweikert(frozen), std::domain_error);
  }
}

TEST_CASE("combinatorial entropy per mode") {
  CHECK(combinatorial_entropy(2, 1) ==
        doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-15));

  // Stirling-corrected oracle: ln C(M, P)/M = H(P/M) - ln(2 pi M p(1-p))/(2M).
  const auto stirling = [](double m, double p) {
    const double f = p / m;
    return -(f * std::log(f) + (1.0 - f) * std::log(1.0 - f)) -
           std::log(2.0 * std::numbers::pi * m * f * (1.0 - f)) / (2.0 * m);
  };
  CHECK(combinatorial_entropy(1000000, 500000) ==
        doctest::Approx(stirling(1e6, 5e5)).epsilon(1e-10));
  CHECK(std::abs(combinatorial_entropy(1000000, 500000) - std::numbers::ln2) <
        1e-5);

  // P/M at the occupation probability of the first binary level, b = 1/2.
  const double p1 = 1.0 / 3.0;
  const std::uint64_t P = static_cast<std::uint64_t>(1e6 * p1);
  const double entropy = binary_summary(0, mode_from_beta(kLn2)).entropy;
  CHECK(std::abs(combinatorial_entropy(1000000, P) - entropy) < 1e-4);

  CHECK_THROWS_AS(combinatorial_entropy(10, 0), std::domain_error);
  CHECK_THROWS_AS(combinatorial_entropy(10, 10), std::domain_error);
  CHECK_THROWS_AS(combinatorial_entropy(10, 11), std::domain_error);
}

TEST_CASE("decomposition identities across beta") {
  for (double beta : {1e-3, 0.1, kLn2, 1.0, 5.0, 20.0}) {
    const ModeContext ctx = mode_from_beta(beta);
    const LawSummary g = gauss_summary(ctx);
    const LawSummary d = dark_summary(ctx);
    const LawSummary p = planck_summary(ctx);
    CHECK(std::abs(g.mean - d.mean - p.mean) < 1e-14);
    CHECK(std::abs(g.variance - d.variance - p.variance) < 1e-12);
    CHECK(std::abs(g.entropy - d.entropy - p.entropy) < 1e-12);
  }
}

TEST_CASE("binary sums reproduce the photon-number law") {
  for (double beta : {0.1, kLn2, 1.0, 5.0}) {
    const ModeContext ctx = mode_from_beta(beta);
    const unsigned cap = truncation_level(ctx);
    const LawSummary p = planck_summary(ctx);
    double mean = 0.0;
    double entropy = 0.0;
    double variance = 0.0;
    for (unsigned s = 0; s <= cap; ++s) {
      const LawSummary bs = binary_summary(s, ctx);
      mean += bs.mean;
      entropy += bs.entropy;
      variance += bs.variance;
    }
    CHECK(std::abs(p.mean - mean) < 1e-12);
    CHECK(std::abs(p.entropy - entropy) < 1e-12);
    CHECK(std::abs(p.variance - variance) < 1e-10);
  }

  SUBCASE("partial variance sums at b = 1/2") {
    const ModeContext half = mode_from_beta(kLn2);
    CHECK(binary_summary(0, half).variance ==
          doctest::Approx(2.0 / 9.0).epsilon(1e-13));
    CHECK(binary_summary(1, half).variance ==
          doctest::Approx(0.64).epsilon(1e-13));
    CHECK(binary_summary(2, half).variance ==
          doctest::Approx(16.0 / 17.0 - 16.0 / 289.0).epsilon(1e-13));
    double total = 0.0;
    for (unsigned s = 0; s <= 6; ++s) total += binary_summary(s, half).variance;
    CHECK(std::abs(total - 2.0) < 1e-10);
  }
}

TEST_CASE("thermodynamic relation by central differences") {
  const PhysicalConstants constants;
  const double nu = 1e11;
  const double T = 2.728;
  const double h = 1e-4 * T;
  const double hnu = constants.h * nu;

  const auto relation = [&](auto&& summary_of) {
    const LawSummary hi = summary_of(make_mode_context(nu, T + h));
    const LawSummary lo = summary_of(make_mode_context(nu, T - h));
    const double ds = constants.k_B * (hi.entropy - lo.entropy);
    const double de = hnu * (hi.mean - lo.mean);
    return T * ds / de;
  };

  CHECK(relation([](const ModeContext& c) { return gauss_summary(c); }) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(relation([](const ModeContext& c) { return dark_summary(c); }) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(relation([](const ModeContext& c) { return planck_summary(c); }) ==
        doctest::Approx(1.0).epsilon(1e-6));
  for (unsigned s = 0; s <= 2; ++s) {
    CHECK(relation([s](const ModeContext& c) { return binary_summary(s, c); }) ==
          doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("dark mean stays in (0, 1/2) and decreases") {
  double last = 0.5;
  for (double beta = 1e-6; beta < 60.0; beta *= 1.7) {
    const double mean = dark_summary(mode_from_beta(beta)).mean;
    CHECK(mean > 0.0);
    CHECK(mean < 0.5);
    CHECK(mean < last);
    last = mean;
  }
}
