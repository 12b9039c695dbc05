#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "spdc/biphoton.hpp"
#include "spdc/dispersion.hpp"
#include "spdc/oam.hpp"
#include "spdc/pump.hpp"

using namespace spdc;
using spdc::cdouble;

namespace {

constexpr double kDeg = M_PI / 180.0;

ExperimentConfig full_cone(int mp = 0) {
  ExperimentConfig cfg;
  cfg.pump.oam_mp = mp;
  return cfg;
}

ExperimentConfig noncollinear(double theta_deg, double w0 = 100e-6, int mp = 0) {
  ExperimentConfig cfg;
  cfg.geometry.scenario = Scenario::NonCollinear;
  cfg.geometry.theta = theta_deg * kDeg;
  cfg.pump.waist_w0 = w0;
  cfg.pump.oam_mp = mp;
  return cfg;
}

ExperimentConfig walkoff(double rho0_deg) {
  ExperimentConfig cfg;
  cfg.geometry.scenario = Scenario::FullConeWalkoff;
  cfg.crystal.walkoff_rho0 = rho0_deg * kDeg;
  return cfg;
}

}  // namespace

TEST_CASE("full-cone mode function at the matched center") {
  const auto cfg = full_cone();
  const BiphotonSample phi(cfg);
  const double ks0 = center_wavenumber(Photon::Signal, cfg);
  const double ki0 = center_wavenumber(Photon::Idler, cfg);
  const cdouble value = phi({0, 0}, {0, 0});
  CHECK(std::abs(value) == doctest::Approx(1.0).epsilon(1e-12));
  const cdouble expect = std::polar(1.0, (ks0 + ki0) * cfg.crystal.length);
  CHECK(std::abs(value - expect) < 1e-9);
}

TEST_CASE("vortex pump zeroes the mode function at P = -Q") {
  const BiphotonSample phi(full_cone(1));
  for (double a : {0.0, 1e4, 3e4}) {
    const Vec2 P{a, -0.5 * a};
    CHECK(std::abs(phi(P, -1.0 * P)) < 1e-300);
  }
}

TEST_CASE("full-cone modulus factorizes into pump and sinc factors") {
  const auto cfg = full_cone(2);
  const BiphotonSample phi(cfg);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-4e4, 4e4);
  for (int i = 0; i < 100; ++i) {
    const Vec2 P{dist(rng), dist(rng)};
    const Vec2 Q{dist(rng), dist(rng)};
    const double expect =
        std::abs(pump_angular_amplitude(P + Q, cfg.pump)) *
        std::abs(num::sinc_with_phase(delta_k_collinear(P, Q, cfg) *
                                      cfg.crystal.length / 2.0));
    CHECK(std::abs(phi(P, Q)) ==
          doctest::Approx(expect).epsilon(1e-11));
  }
}

TEST_CASE("rotational covariance carries the pump winding number") {
  for (int mp : {0, 1, 2}) {
    const BiphotonSample phi(full_cone(mp));
    std::mt19937 rng(100 + mp);
    std::uniform_real_distribution<double> dist(-3e4, 3e4);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    for (int i = 0; i < 40; ++i) {
      const Vec2 P{dist(rng), dist(rng)};
      const Vec2 Q{dist(rng), dist(rng)};
      const double alpha = ang(rng);
      const double c = std::cos(alpha), s = std::sin(alpha);
      const Vec2 Pr{c * P.x - s * P.y, s * P.x + c * P.y};
      const Vec2 Qr{c * Q.x - s * Q.y, s * Q.x + c * Q.y};
      const cdouble expect = std::polar(1.0, mp * alpha) * phi(P, Q);
      CHECK(std::abs(phi(Pr, Qr) - expect) <=
            1e-10 * std::abs(expect) + 1e-300);
    }
  }
}

TEST_CASE("non-collinear mode function approaches the collinear one") {
  auto cfg = noncollinear(1.0);
  cfg.geometry.theta = 1e-9;
  const BiphotonSample nc(cfg);
  const BiphotonSample fc(full_cone());
  const cdouble a = nc({0, 0}, {0, 0});
  const cdouble b = fc({0, 0}, {0, 0});
  CHECK(std::abs(a - b) < 1e-10 * std::abs(b));
}

TEST_CASE("non-collinear pump factor structure for a vortex pump") {
  const auto cfg = noncollinear(1.0, 100e-6, 1);
  const BiphotonSample phi(cfg);
  // p_x + q_x = 0 leaves only the i * delta_0 part of the vortex
  const Vec2 p{2e4, 1e4};
  const Vec2 q{-2e4, 0.5e4};
  const auto mm = delta_k_noncollinear(p, q, cfg);
  const double ks = longitudinal_wavevector(Photon::Signal, p, cfg);
  const double ki = longitudinal_wavevector(Photon::Idler, q, cfg);
  const double w2 = cfg.pump.waist_w0 * cfg.pump.waist_w0;
  const cdouble expect =
      cdouble(0.0, mm.delta_0) * std::exp(-mm.delta_0 * mm.delta_0 * w2 / 4.0) *
      num::sinc_with_phase(mm.delta_k * cfg.crystal.length / 2.0) *
      std::polar(1.0, (ks + ki) * cfg.crystal.length /
                          std::cos(cfg.geometry.theta));
  // the propagation phase is ~3e5 rad, so allow eps-level reduction noise
  CHECK(std::abs(phi(p, q) - expect) < 1e-9 * std::abs(expect));
}

TEST_CASE("restricted-cone ellipticity on a ring when L exceeds L_nc") {
  // w0 = 100 um, theta = 1 deg: L_nc = 5.7 mm < L = 10 mm
  const auto cfg = noncollinear(1.0, 100e-6);
  const BiphotonSample phi(cfg);
  const double ring = 1.0 / cfg.pump.waist_w0;
  double lo = 1e300, hi = 0.0;
  for (int j = 0; j < 64; ++j) {
    const double mod = std::abs(phi(Vec2::polar(ring, 2.0 * M_PI * j / 64.0),
                                    {0.0, 0.0}));
    lo = std::min(lo, mod);
    hi = std::max(hi, mod);
  }
  CHECK(hi / lo > 1.01);

  // far below L_nc the same ring is nearly round
  const auto wide = noncollinear(1.0, 1000e-6);
  const BiphotonSample phi2(wide);
  const double ring2 = 1.0 / wide.pump.waist_w0;
  lo = 1e300;
  hi = 0.0;
  for (int j = 0; j < 64; ++j) {
    const double mod = std::abs(phi2(Vec2::polar(ring2, 2.0 * M_PI * j / 64.0),
                                     {0.0, 0.0}));
    lo = std::min(lo, mod);
    hi = std::max(hi, mod);
  }
  CHECK(hi / lo < 1.01);
}

TEST_CASE("walk-off scenario converges to the noncritical one") {
  auto cfg = walkoff(5.0);
  cfg.crystal.walkoff_rho0 = 1e-14;
  const BiphotonSample wo(cfg);
  const BiphotonSample fc(full_cone());
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-4e4, 4e4);
  for (int i = 0; i < 30; ++i) {
    const Vec2 P{dist(rng), dist(rng)};
    const Vec2 Q{dist(rng), dist(rng)};
    const cdouble a = wo(P, Q);
    const cdouble b = fc(P, Q);
    CHECK(std::abs(a - b) <= 1e-10 * std::abs(b) + 1e-300);
  }
}

TEST_CASE("walk-off center stays matched, off-axis sinc shifts") {
  const auto cfg = walkoff(5.0);
  const BiphotonSample phi(cfg);
  CHECK(std::abs(phi({0, 0}, {0, 0})) == doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937 rng(13);
  std::uniform_real_distribution<double> dist(-4e4, 4e4);
  for (int i = 0; i < 50; ++i) {
    const Vec2 P{dist(rng), dist(rng)};
    const Vec2 Q{dist(rng), dist(rng)};
    const double expect =
        std::abs(pump_angular_amplitude(P + Q, cfg.pump)) *
        std::abs(num::sinc_with_phase(delta_k_walkoff(P, Q, cfg) *
                                      cfg.crystal.length / 2.0));
    CHECK(std::abs(phi(P, Q)) == doctest::Approx(expect).epsilon(1e-11));
  }
}

TEST_CASE("phase-matching coefficients collapse at zero radius") {
  const auto cfg = full_cone();
  const double rho = 2.5e4;
  const auto coeffs = phasematch_azimuthal_coeffs(0.0, rho, cfg, 6);
  const double dk = delta_k_collinear({0, 0}, {rho, 0}, cfg);
  const cdouble expect = num::sinc_with_phase(dk * cfg.crystal.length / 2.0);
  CHECK(std::abs(coeffs.coeff(0) - expect) < 1e-12);
  for (int l = 1; l <= 6; ++l) {
    CHECK(std::abs(coeffs.coeff(l)) < 1e-12);
    CHECK(std::abs(coeffs.coeff(-l)) < 1e-12);
  }
}

TEST_CASE("phase-matching coefficients reduce to H_0 = 1 for a short crystal") {
  auto cfg = full_cone();
  cfg.crystal.length = 1e-12;
  const auto coeffs = phasematch_azimuthal_coeffs(3e4, 2e4, cfg, 5);
  CHECK(std::abs(coeffs.coeff(0) - 1.0) < 1e-9);
  for (int l = 1; l <= 5; ++l) CHECK(std::abs(coeffs.coeff(l)) < 1e-9);
}

TEST_CASE("phase-matching coefficients: parseval and reconstruction") {
  const auto cfg = full_cone();
  const double rho_s = 5e4, rho_i = 4e4;
  const int l_max = 30;
  const auto coeffs = phasematch_azimuthal_coeffs(rho_s, rho_i, cfg, l_max);

  const double kp0 = center_wavenumber(Photon::Pump, cfg);
  const double ks = longitudinal_wavevector(Photon::Signal, {rho_s, 0}, cfg);
  const double ki = longitudinal_wavevector(Photon::Idler, {rho_i, 0}, cfg);
  const double kg = resolved_qpm_grating(cfg);
  auto factor = [&](double dphi) {
    const double mod2 = rho_s * rho_s + rho_i * rho_i +
                        2.0 * rho_s * rho_i * std::cos(dphi);
    const double dk = std::sqrt(kp0 * kp0 - mod2) - ks - ki - kg;
    return num::sinc_with_phase(dk * cfg.crystal.length / 2.0);
  };

  // Parseval against the direct dphi average of |sinc|^2
  const int n = 4096;
  double avg = 0.0;
  for (int j = 0; j < n; ++j) avg += std::norm(factor(2.0 * M_PI * j / n));
  avg /= n;
  double sum = 0.0;
  for (int l = -l_max; l <= l_max; ++l) sum += std::norm(coeffs.coeff(l));
  CHECK(sum == doctest::Approx(avg).epsilon(1e-10));

  // pointwise reconstruction from the spiral series
  for (double dphi : {0.3, 1.2, 2.8, 4.4}) {
    cdouble rebuilt{0.0, 0.0};
    for (int l = -l_max; l <= l_max; ++l)
      rebuilt += coeffs.coeff(l) * std::polar(1.0, l * dphi);
    CHECK(std::abs(rebuilt - factor(dphi)) < 1e-8);
  }
}

TEST_CASE("phase-matching decomposition rejects walk-off") {
  const auto cfg = walkoff(5.0);
  CHECK_THROWS_AS((void)phasematch_azimuthal_coeffs(1e4, 1e4, cfg, 4),
                  ScenarioMismatch);
}

TEST_CASE("idler-at-zero reduction is the q = 0 slice") {
  const auto cfg = noncollinear(1.0);
  const BiphotonSample phi(cfg);
  const ReducedSignalField reduced(phi, Detection::idler_at_zero());
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(-4e4, 4e4);
  for (int i = 0; i < 30; ++i) {
    const Vec2 p{dist(rng), dist(rng)};
    CHECK(reduced(p) == phi(p, {0.0, 0.0}));
  }
}

TEST_CASE("gaussian idler projection matches a brute-force fine grid") {
  const auto cfg = noncollinear(1.0, 100e-6);
  const BiphotonSample phi(cfg);
  const double w1 = 500e-6;
  const ReducedSignalField reduced(phi, Detection::idler_gaussian(w1));

  // independent quadrature, double the resolution of the internal grid
  ExperimentConfig scales = cfg;
  scales.detection = Detection::idler_gaussian(w1);
  const double rho_max = default_rho_max(scales);
  const auto radial = num::gauss_legendre(160, 0.0, rho_max);
  const int n_phi = 128;
  const double dphi = 2.0 * M_PI / n_phi;
  auto oracle = [&](Vec2 p) {
    cdouble sum{0.0, 0.0};
    for (int k = 0; k < radial.size(); ++k) {
      const double rho = radial.nodes[static_cast<size_t>(k)];
      const double wgt = radial.weights[static_cast<size_t>(k)] * rho * dphi *
                         std::exp(-rho * rho * w1 * w1 / 4.0);
      for (int j = 0; j < n_phi; ++j)
        sum += wgt * phi(p, Vec2::polar(rho, dphi * j));
    }
    return sum;
  };

  double diff2 = 0.0, norm2 = 0.0;
  for (int i = 0; i < 8; ++i) {
    const Vec2 p = Vec2::polar(1.2e4 * ((i % 3) + 1) / 3.0,
                               2.0 * M_PI * i / 8.0);
    const cdouble a = reduced(p);
    const cdouble b = oracle(p);
    diff2 += std::norm(a - b);
    norm2 += std::norm(b);
  }
  CHECK(std::sqrt(diff2 / norm2) < 1e-6);
}

TEST_CASE("very wide idler mode approaches the q = 0 slice") {
  const auto cfg = noncollinear(1.0, 100e-6);
  const BiphotonSample phi(cfg);
  const ReducedSignalField reduced(phi, Detection::idler_gaussian(2e-3), 1e-3);
  const cdouble scale = reduced({0, 0}) / phi({0, 0}, {0, 0});
  for (int i = 0; i < 8; ++i) {
    const Vec2 p = Vec2::polar(1e4, 2.0 * M_PI * i / 8.0);
    const cdouble a = reduced(p);
    const cdouble b = scale * phi(p, {0.0, 0.0});
    CHECK(std::abs(a - b) <= 2e-3 * std::abs(b) + 1e-300);
  }
}

TEST_CASE("unresolvable idler projection grids are rejected") {
  // a near-delta Gaussian projection cannot be resolved by the fixed
  // quadrature grid, so construction must fail the doubling check
  const auto cfg = noncollinear(1.0, 100e-6);
  const BiphotonSample phi(cfg);
  CHECK_THROWS_AS(
      ReducedSignalField(phi, Detection::idler_gaussian(50e-3), 1e-6),
      QuadratureNotConverged);
}

TEST_CASE("mirror symmetry of the reduced non-collinear field") {
  const auto cfg = noncollinear(1.0, 100e-6);
  const BiphotonSample phi(cfg);
  const ReducedSignalField reduced(phi, Detection::idler_at_zero());
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> dist(-3e4, 3e4);
  for (int i = 0; i < 30; ++i) {
    const Vec2 p{dist(rng), dist(rng)};
    const cdouble a = reduced(p);
    const cdouble b = reduced({-p.x, p.y});
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(a) + 1e-300);
  }
}
