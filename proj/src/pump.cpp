#include "spdc/pump.hpp"

#include <algorithm>
#include <cmath>

#include "spdc/numerics.hpp"

namespace spdc {

using num::cdouble;

namespace {

cdouble ipow(cdouble base, int n) {
  cdouble out{1.0, 0.0};
  for (int k = 0; k < n; ++k) out *= base;
  return out;
}

constexpr double kSpiralTail = 1e-12;

}  // namespace

cdouble pump_angular_amplitude(Vec2 p, const PumpSpec& spec) {
  const cdouble vortex = ipow(cdouble(p.x, p.y), spec.oam_mp);
  const double w2 = spec.waist_w0 * spec.waist_w0;
  return spec.amplitude_e0 * vortex * std::exp(-p.norm2() * w2 / 4.0);
}

cdouble pump_sum_argument(double rho_s, double rho_i, double dphi,
                          const PumpSpec& spec) {
  // |P+Q|^2 through the polar identity; factor 2 on the cross term.
  const double mod2 =
      rho_s * rho_s + rho_i * rho_i + 2.0 * rho_s * rho_i * std::cos(dphi);
  const double w2 = spec.waist_w0 * spec.waist_w0;
  const double gauss = std::exp(-mod2 * w2 / 4.0);

  // Binomial spiral sum with phi_s = dphi, phi_i = 0.
  cdouble sum{0.0, 0.0};
  double binom = 1.0;  // C(m_p, l)
  for (int l = 0; l <= spec.oam_mp; ++l) {
    const double radial =
        std::pow(rho_s, l) * std::pow(rho_i, spec.oam_mp - l);
    sum += binom * radial * std::polar(1.0, l * dphi);
    binom *= static_cast<double>(spec.oam_mp - l) / (l + 1);
  }
  return spec.amplitude_e0 * gauss * sum;
}

int walkoff_spiral_order(const PumpWalkoffProfile& profile, double rho_max) {
  const double a_max = std::abs(profile.displacement()) * rho_max;
  if (a_max == 0.0) return 0;
  const std::vector<double> j = num::bessel_j_sequence(num::kBesselMaxOrder, a_max);
  if (std::abs(j.back()) >= kSpiralTail)
    throw TruncationNotConverged(
        "spiral sum tail |J_n| >= 1e-12 at the supported order limit; "
        "Bessel argument " + std::to_string(a_max));
  int n = num::kBesselMaxOrder;
  while (n > 0 && std::abs(j[static_cast<size_t>(n - 1)]) < kSpiralTail) --n;
  return n;
}

cdouble pump_walkoff_field(double rho_p, double phi_p,
                           const PumpWalkoffProfile& profile) {
  const PumpSpec& spec = profile.spec;
  const double w2 = spec.waist_w0 * spec.waist_w0;
  const cdouble vortex = ipow(std::polar(rho_p, phi_p), spec.oam_mp);
  // Gaussian envelope and paraxial z phase, both radial.
  const cdouble envelope =
      spec.amplitude_e0 * vortex *
      std::exp(cdouble(-rho_p * rho_p * w2 / 4.0,
                       -profile.z * rho_p * rho_p / (2.0 * profile.k_p0)));

  const double a = profile.displacement() * rho_p;
  if (a == 0.0) return envelope;

  // decompositions sweep phi at fixed rho, so memoize the last argument
  thread_local double cached_a = -1.0;
  thread_local std::vector<double> cached_j;
  if (a != cached_a) {
    cached_j = num::bessel_j_sequence(num::kBesselMaxOrder, a);
    cached_a = a;
  }
  const std::vector<double>& j = cached_j;
  if (std::abs(j.back()) >= kSpiralTail)
    throw TruncationNotConverged("spiral sum tail |J_n| >= 1e-12 at order " +
                                 std::to_string(num::kBesselMaxOrder));
  int order = num::kBesselMaxOrder;
  while (order > 0 && std::abs(j[static_cast<size_t>(order - 1)]) < kSpiralTail)
    --order;
  // exp(-i a cos phi) = J_0(a) + 2 sum_n (-i)^n J_n(a) cos(n phi)
  cdouble spiral{j[0], 0.0};
  cdouble minus_i_pow{1.0, 0.0};
  for (int n = 1; n <= order; ++n) {
    minus_i_pow *= cdouble(0.0, -1.0);
    spiral += 2.0 * minus_i_pow * j[static_cast<size_t>(n)] * std::cos(n * phi_p);
  }
  return envelope * spiral;
}

OAMSpectrum pump_oam_distribution(const PumpWalkoffProfile& profile,
                                  const PolarGridSpec& grid) {
  PolarGridSpec g = grid;
  if (g.rho_max <= 0.0) g.rho_max = 8.0 / profile.spec.waist_w0;

  const int order = walkoff_spiral_order(profile, g.rho_max);
  const int mp = profile.spec.oam_mp;
  // Spiral content is exactly [mp - order, mp + order]; keep the phi grid
  // above its Nyquist rate so nothing aliases.
  const int m_extent = order + std::abs(mp);
  g.n_phi = std::max(g.n_phi, num::next_pow2(2 * m_extent + 4));

  const FieldFn field = [&profile](double rho, double phi) {
    return pump_walkoff_field(rho, phi, profile);
  };
  return oam_weights(field, g, MRange{mp - order, mp + order});
}

}  // namespace spdc
