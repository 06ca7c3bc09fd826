#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "tripent/config.hpp"
#include "tripent/error.hpp"
#include "tripent/spdc.hpp"
#include "tripent/witness.hpp"

using namespace tripent;

namespace {

SpdcConfig worked_example() { return load_spdc_config(std::string(TRIPENT_CONFIG_DIR) + "/worked_example.cfg"); }
SpdcConfig fused_silica() { return load_spdc_config(std::string(TRIPENT_CONFIG_DIR) + "/fused_silica.cfg"); }

constexpr double kOffsetLimit = -1.88539008177793;  // 1 - 2/ln 2

}  // namespace

TEST_SUITE("spdc") {

TEST_CASE("sinc") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(1e-10) == doctest::Approx(1.0));
  CHECK(sinc(std::numbers::pi) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(sinc(-2.0) == doctest::Approx(std::sin(2.0) / 2.0));
}

TEST_CASE("phase-matching geometry") {
  const auto c = worked_example();
  CHECK(pump_wavenumber(c) == doctest::Approx(12160925.3627646).epsilon(1e-13));
  const auto g = phase_match_geometry(c);
  CHECK(g.a == doctest::Approx(3.0 * c.L_z / (4.0 * g.k_p)));
}

TEST_CASE("Gaussian fit widths and their position-space ratio") {
  auto c = worked_example();
  for (double sp : {1e-7, 1e-6, 1e-5, 1e-4}) {
    c.sigma_p = sp;
    const auto k = gaussian_fit_widths(c);
    const auto x = gaussian_fit_position_widths(c);
    const auto g = phase_match_geometry(c);
    CHECK(k.sigma_v == k.sigma_w);
    CHECK(k.sigma_v * k.sigma_v == doctest::Approx(9.0 / (32.0 * g.a)));
    CHECK(x.sigma_u * x.sigma_u == doctest::Approx(32.0 * g.a / 9.0 + 3.0 * sp * sp));
    CHECK(x.sigma_v * x.sigma_v == doctest::Approx(8.0 * g.a / 9.0));
    const double ratio2 = x.sigma_u * x.sigma_u / (x.sigma_v * x.sigma_v);
    CHECK(ratio2 == doctest::Approx(4.0 + 4.5 * sp * sp * g.k_p / c.L_z).epsilon(1e-12));
    CHECK(to_momentum(x).sigma_u == doctest::Approx(k.sigma_u).epsilon(1e-14));
  }
}

TEST_CASE("closed-form witness") {
  auto c = worked_example();
  c.sigma_p = 1e-12;
  CHECK(closed_form_witness(c) == doctest::Approx(-1.52765754161012).epsilon(1e-10));

  // agrees with the Gaussian-entropy witness of the fitted state
  for (double sp : {1e-6, 1e-5, 1e-4}) {
    c.sigma_p = sp;
    const double analytic = analytic_witness(gaussian_fit_position_widths(c), WitnessCoefficients::triplet_default());
    CHECK(closed_form_witness(c) == doctest::Approx(analytic).epsilon(1e-11));
  }

  // offset to the exact value tends to 1 - 2/ln 2
  c.sigma_p = 1e-2;
  CHECK(pump_size_parameter(c) > 1e4);
  const double exact = exact_e3f(gaussian_fit_position_widths(c));
  CHECK(closed_form_witness(c) - exact == doctest::Approx(kOffsetLimit).epsilon(1e-4));
}

TEST_CASE("witness sweep") {
  const auto c = worked_example();
  const auto rows = witness_sweep(c, {1e-6, 1e-3, 2});
  REQUIRE(rows.size() == 2);
  CHECK(rows.front().sigma_p == 1e-6);
  CHECK(rows.back().sigma_p == 1e-3);

  const auto many = witness_sweep(c, {1e-7, 1e-1, 300});
  for (std::size_t i = 0; i < many.size(); ++i) {
    CHECK(many[i].witness_gebits <= many[i].exact_gebits);
    if (i > 0) {
      CHECK(many[i].sigma_p > many[i - 1].sigma_p);
      CHECK(many[i].witness_gebits >= many[i - 1].witness_gebits);
      CHECK(many[i].exact_gebits >= many[i - 1].exact_gebits);
    }
  }
  CHECK(many.back().witness_gebits - many.back().exact_gebits == doctest::Approx(kOffsetLimit).epsilon(1e-3));

  CHECK_THROWS_AS(witness_sweep(c, {1e-3, 1e-6, 10}), UsageError);
  CHECK_THROWS_AS(witness_sweep(c, {1e-6, 1e-3, 1}), UsageError);
  CHECK_THROWS_AS(witness_sweep(c, {0.0, 1e-3, 10}), UsageError);
}

TEST_CASE("sinc profile vs its Gaussian fit: transverse overlap fidelity") {
  // Radial quadrature over (k_v, k_w) at k_u = 0. With t = a k^2 the overlap
  // reduces to atan(9/8)^2 / (pi/2 * 9/16) ~ 0.80662.
  const auto c = worked_example();
  const auto g = phase_match_geometry(c);
  const double sk = gaussian_fit_widths(c).sigma_v;
  const double kmax = std::sqrt(4000.0 / g.a);
  const int steps = 2'000'000;
  const double dk = kmax / steps;
  double fg = 0.0, ff = 0.0, gg = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double k = (i + 0.5) * dk;
    const double f = triphoton_momentum_amplitude(g, c.sigma_p, 0.0, k, 0.0).real();
    const double q = std::exp(-k * k / (4.0 * sk * sk));
    fg += f * q * k;
    ff += f * f * k;
    gg += q * q * k;
  }
  const double fidelity = fg * fg / (ff * gg);
  CHECK(fidelity == doctest::Approx(0.80662).epsilon(5e-3));
}

TEST_CASE("momentum amplitude symmetry and pump envelope") {
  const auto c = worked_example();
  const auto g = phase_match_geometry(c);
  CHECK(std::abs(triphoton_momentum_amplitude(g, c.sigma_p, 0, 0, 0)) == doctest::Approx(1.0));
  const double k = 1e4;
  CHECK(std::abs(triphoton_momentum_amplitude(g, c.sigma_p, 0, k, 0)) ==
        doctest::Approx(std::abs(triphoton_momentum_amplitude(g, c.sigma_p, 0, 0, k))));
  CHECK(std::abs(triphoton_momentum_amplitude(g, c.sigma_p, k, 0, 0)) ==
        doctest::Approx(std::abs(triphoton_momentum_amplitude(g, c.sigma_p, -k, 0, 0))));
}

TEST_CASE("rate penalties") {
  CHECK(qpm_penalty(1) == doctest::Approx(0.40528473456935).epsilon(1e-13));
  CHECK(qpm_penalty(2) == doctest::Approx(0.10132118364234).epsilon(1e-13));
  CHECK_THROWS_AS(qpm_penalty(0), UsageError);
  CHECK(index_modulation_penalty(1e-4, 1700.0) == doctest::Approx(0.00292818220726).epsilon(1e-11));
  CHECK(index_modulation_penalty(0.0, 1700.0) == 0.0);
}

TEST_CASE("triplet rate") {
  // simplified constant 11.6267 /(m W s): 0.1 m, 143 mW -> ~10 per minute
  CHECK(11.6267 * 0.1 * 0.143 * 60.0 == doctest::Approx(9.9757).epsilon(1e-4));

  auto c = fused_silica();
  CHECK(rate_constant(c) == doctest::Approx(11.6267).epsilon(0.05));
  CHECK(triplet_rate(c) == doctest::Approx(rate_constant(c) * c.L_z * c.pump_power).epsilon(1e-12));
  CHECK(60.0 * triplet_rate(c) == doctest::Approx(9.98).epsilon(0.05));

  auto qpm = c;
  qpm.qpm_order = 1;
  CHECK(triplet_rate(qpm) / triplet_rate(c) == doctest::Approx(0.40528473456935).epsilon(1e-12));

  c.pump_power = 0.0;
  CHECK(triplet_rate(c) == 0.0);

  // rate scales as chi3^2 and 1/sigma_p^4
  auto d = fused_silica();
  const double base = triplet_rate(d);
  d.chi3_eff *= 2.0;
  d.sigma_p *= 2.0;
  CHECK(triplet_rate(d) == doctest::Approx(base * 4.0 / 16.0).epsilon(1e-12));
}

TEST_CASE("joint spectral amplitude") {
  auto c = fused_silica();
  CHECK_THROWS_AS(joint_spectral_amplitude(c, 0, 0, 0), UsageError);
  c.pump_bandwidth = 1e11;
  CHECK(std::abs(joint_spectral_amplitude(c, 0, 0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(joint_spectral_amplitude(c, 0, 1e12, 0)) ==
        doctest::Approx(std::abs(joint_spectral_amplitude(c, 0, 0, 1e12))));
  CHECK(std::abs(joint_spectral_amplitude(c, 1e11, 0, 0)) < 1.0);
}

TEST_CASE("config validation") {
  auto c = fused_silica();
  c.L_z = 0.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = fused_silica();
  c.kappa0 = 0.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  CHECK_THROWS_AS(triplet_rate(c), DomainError);
  c = fused_silica();
  c.pump_power = -1.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = fused_silica();
  c.qpm_order = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = fused_silica();
  c.kappa0 = -c.kappa0;
  CHECK_NOTHROW(c.validate());
  CHECK(triplet_rate(c) == doctest::Approx(triplet_rate(fused_silica())));
}

}  // TEST_SUITE
