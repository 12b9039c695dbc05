#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "spdc/dispersion.hpp"
#include "spdc/numerics.hpp"
#include "spdc/pump.hpp"

using namespace spdc;
using spdc::cdouble;

namespace {

constexpr double kDeg = M_PI / 180.0;

PumpWalkoffProfile profile(double w0, double rho0_deg, double z, int mp = 0) {
  ExperimentConfig cfg;
  cfg.pump.waist_w0 = w0;
  cfg.pump.oam_mp = mp;
  PumpWalkoffProfile p;
  p.spec = cfg.pump;
  p.rho0 = rho0_deg * kDeg;
  p.z = z;
  p.k_p0 = center_wavenumber(Photon::Pump, cfg);
  return p;
}

// Walked-off beam without any spiral expansion: Gaussian spectrum times the
// paraxial z phase times the displacement ramp exp(-i p_x d).
cdouble displaced_oracle(double rho, double phi, const PumpWalkoffProfile& p) {
  const double w2 = p.spec.waist_w0 * p.spec.waist_w0;
  cdouble vortex{1.0, 0.0};
  for (int k = 0; k < p.spec.oam_mp; ++k) vortex *= std::polar(rho, phi);
  return p.spec.amplitude_e0 * vortex * std::exp(-rho * rho * w2 / 4.0) *
         std::polar(1.0, -p.z * rho * rho / (2.0 * p.k_p0)) *
         std::polar(1.0, -p.displacement() * rho * std::cos(phi));
}

// Modified Bessel I_m by ascending series (test oracle, small arguments).
double bessel_i_oracle(int m, double x) {
  double term = 1.0;
  for (int k = 1; k <= m; ++k) term *= x / 2.0 / k;
  double sum = term;
  for (int k = 1; k <= 60; ++k) {
    term *= x * x / 4.0 / (static_cast<double>(k) * (k + m));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("pump angular amplitude basics") {
  PumpSpec spec;
  CHECK(pump_angular_amplitude({0, 0}, spec) == cdouble(1.0, 0.0));

  spec.oam_mp = 1;
  CHECK(pump_angular_amplitude({0, 0}, spec) == cdouble(0.0, 0.0));
}

TEST_CASE("pump vortex rotates covariantly") {
  PumpSpec spec;
  spec.oam_mp = 2;
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-2e4, 2e4);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
  for (int i = 0; i < 30; ++i) {
    const Vec2 p{dist(rng), dist(rng)};
    const double alpha = ang(rng);
    const Vec2 rotated{p.x * std::cos(alpha) - p.y * std::sin(alpha),
                       p.x * std::sin(alpha) + p.y * std::cos(alpha)};
    const cdouble expect =
        std::polar(1.0, 2.0 * alpha) * pump_angular_amplitude(p, spec);
    CHECK(std::abs(pump_angular_amplitude(rotated, spec) - expect) <
          1e-12 * std::abs(expect) + 1e-300);
  }
}

TEST_CASE("pump_sum_argument gaussian case") {
  PumpSpec spec;  // m_p = 0
  const double rho_s = 1.5e4, rho_i = 0.7e4, dphi = 1.1;
  const double mod2 =
      rho_s * rho_s + rho_i * rho_i + 2.0 * rho_s * rho_i * std::cos(dphi);
  const cdouble expect =
      std::exp(-mod2 * spec.waist_w0 * spec.waist_w0 / 4.0);
  CHECK(std::abs(pump_sum_argument(rho_s, rho_i, dphi, spec) - expect) <
        1e-14);
}

TEST_CASE("pump_sum_argument binomial collapse at rho_i = 0") {
  PumpSpec spec;
  spec.oam_mp = 1;
  const double rho_s = 2.2e4, dphi = 0.63;
  const cdouble got = pump_sum_argument(rho_s, 0.0, dphi, spec);
  const cdouble expect =
      rho_s * std::polar(1.0, dphi) *
      std::exp(-rho_s * rho_s * spec.waist_w0 * spec.waist_w0 / 4.0);
  CHECK(std::abs(got - expect) < 1e-12 * std::abs(expect));
}

TEST_CASE("pump_sum_argument matches the cartesian evaluation") {
  PumpSpec spec;
  spec.oam_mp = 3;
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> rad(0.0, 3e4);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
  for (int i = 0; i < 300; ++i) {
    const double rho_s = rad(rng), rho_i = rad(rng);
    const double phi_s = ang(rng), phi_i = ang(rng);
    // every third draw sits near the antiparallel cancellation region
    const double dphi = (i % 3 == 0) ? M_PI - 0.03 * ang(rng) : phi_s - phi_i;
    // the polar form fixes phi_i = 0; rotate the cartesian sum to match
    const Vec2 sum = Vec2::polar(rho_s, dphi) + Vec2::polar(rho_i, 0.0);
    const cdouble expect = pump_angular_amplitude(sum, spec);
    const cdouble got = pump_sum_argument(rho_s, rho_i, dphi, spec);
    // binomial terms cancel near dphi = pi; 1e-12 binds to the term scale
    const double scale = std::pow(rho_s + rho_i, spec.oam_mp) *
                         std::exp(-sum.norm2() * spec.waist_w0 *
                                  spec.waist_w0 / 4.0);
    CHECK(std::abs(got - expect) <= 1e-12 * scale + 1e-300);
  }
}

TEST_CASE("walkoff field reduces to the gaussian at z = 0") {
  const auto p = profile(100e-6, 5.0, 0.0);
  for (double rho : {0.0, 5e3, 2e4, 6e4}) {
    const cdouble got = pump_walkoff_field(rho, 0.9, p);
    const cdouble expect =
        std::exp(-rho * rho * p.spec.waist_w0 * p.spec.waist_w0 / 4.0);
    CHECK(std::abs(got - expect) < 1e-14);
  }
}

TEST_CASE("no walk-off leaves a phi-independent complex gaussian") {
  const auto p = profile(100e-6, 0.0, 4e-3);
  const double rho = 1.7e4;
  const cdouble ref = pump_walkoff_field(rho, 0.0, p);
  for (double phi : {0.4, 1.9, 3.3, 5.6}) {
    CHECK(std::abs(pump_walkoff_field(rho, phi, p) - ref) < 1e-14);
  }
  const double w2 = p.spec.waist_w0 * p.spec.waist_w0;
  const cdouble expect = std::exp(-rho * rho * w2 / 4.0) *
                         std::polar(1.0, -p.z * rho * rho / (2.0 * p.k_p0));
  CHECK(std::abs(ref - expect) < 1e-14);
}

TEST_CASE("walkoff spiral sum matches the displaced beam") {
  const auto p = profile(100e-6, 5.0, 5e-3);
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> rad(0.0, 8e4);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
  for (int i = 0; i < 100; ++i) {
    const double rho = rad(rng), phi = ang(rng);
    const cdouble expect = displaced_oracle(rho, phi, p);
    const cdouble got = pump_walkoff_field(rho, phi, p);
    CHECK(std::abs(got - expect) <= 1e-8 * std::abs(expect) + 1e-16);
  }
}

TEST_CASE("walkoff spiral sum matches the displaced vortex beam") {
  const auto p = profile(200e-6, 3.0, 8e-3, 2);
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> rad(1e3, 4e4);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
  for (int i = 0; i < 50; ++i) {
    const double rho = rad(rng), phi = ang(rng);
    const cdouble expect = displaced_oracle(rho, phi, p);
    const cdouble got = pump_walkoff_field(rho, phi, p);
    CHECK(std::abs(got - expect) <= 1e-8 * std::abs(expect) + 1e-16);
  }
}

TEST_CASE("jacobi-anger closure: sum of squared coefficients is 1") {
  for (double a = 0.0; a <= 20.0; a += 2.5) {
    const auto j = num::bessel_j_sequence(num::kBesselMaxOrder, a);
    double sum = j[0] * j[0];
    for (size_t n = 1; n < j.size(); ++n) sum += 2.0 * j[n] * j[n];
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("pump OAM distribution is a delta at z = 0") {
  const auto p = profile(100e-6, 5.0, 0.0);
  PolarGridSpec grid;
  const OAMSpectrum s = pump_oam_distribution(p, grid);
  CHECK(s.weight(0) == doctest::Approx(1.0).epsilon(1e-12));
  for (int m = s.m_min; m <= s.m_max; ++m)
    if (m != 0) CHECK(s.weight(m) < 1e-12);
}

TEST_CASE("free diffraction preserves the pump OAM") {
  for (int mp : {0, 2}) {
    const auto p = profile(100e-6, 0.0, 9e-3, mp);
    PolarGridSpec grid;
    const OAMSpectrum s = pump_oam_distribution(p, grid);
    CHECK(s.weight(mp) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("pump OAM weights match the closed form exp(-k) I_m(k)") {
  // displacement d = z tan(rho0), kappa = (d / w0)^2
  for (double w0 : {400e-6, 1e-3}) {
    const auto p = profile(w0, 5.0, 5e-3);
    const double kappa = std::pow(p.displacement() / w0, 2.0);
    PolarGridSpec grid;
    const OAMSpectrum s = pump_oam_distribution(p, grid);
    const double norm = std::exp(-kappa);
    for (int m = 0; m <= 4; ++m) {
      const double expect = norm * bessel_i_oracle(m, kappa);
      CHECK(s.weight(m) == doctest::Approx(expect).epsilon(1e-6));
      CHECK(s.weight(-m) == doctest::Approx(expect).epsilon(1e-6));
    }
  }
}

TEST_CASE("strong walk-off spreads the pump spectrum") {
  const auto p = profile(100e-6, 5.0, 5e-3);
  PolarGridSpec grid;
  const OAMSpectrum s = pump_oam_distribution(p, grid);
  int wide = 0;
  for (int m = s.m_min; m <= s.m_max; ++m)
    if (s.weight(m) > 0.01) ++wide;
  CHECK(wide >= 3);

  double total = 0.0;
  for (int m = s.m_min; m <= s.m_max; ++m) total += s.weight(m);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("spiral sums beyond the supported order are rejected") {
  // a = z rho tan(rho0) ~ 200 leaves |J_200| above the tail tolerance
  const auto p = profile(100e-6, 45.0, 10e-3);
  CHECK_THROWS_AS((void)pump_walkoff_field(2e4, 0.3, p),
                  TruncationNotConverged);
  CHECK_THROWS_AS((void)walkoff_spiral_order(p, 2e4), TruncationNotConverged);
}

TEST_CASE("pump OAM width is non-decreasing in z") {
  PolarGridSpec grid;
  double prev = 0.0;
  for (double z : {0.0, 1e-3, 2e-3, 3.5e-3, 5e-3}) {
    const auto p = profile(100e-6, 5.0, z);
    const double width = pump_oam_distribution(p, grid).participation_number();
    CHECK(width >= prev - 1e-9);
    prev = width;
  }
}
