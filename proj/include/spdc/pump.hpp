#pragma once

#include "spdc/oam.hpp"
#include "spdc/types.hpp"

namespace spdc {

// Pump angular spectrum E_0 (p_x + i p_y)^{m_p} exp(-|p|^2 w0^2 / 4).
cdouble pump_angular_amplitude(Vec2 p, const PumpSpec& spec);

// Same amplitude at P + Q, evaluated through the polar data
// (rho_s, rho_i, dphi = phi_s - phi_i) via the binomial spiral expansion
//   sum_l C(m_p, l) rho_s^l rho_i^{m_p - l} e^{i l phi_s + i (m_p - l) phi_i}
// with the convention phi_s = dphi, phi_i = 0, and the Gaussian argument
// rho_s^2 + rho_i^2 + 2 rho_s rho_i cos(dphi).
cdouble pump_sum_argument(double rho_s, double rho_i, double dphi,
                          const PumpSpec& spec);

// Pump angular spectrum at depth z inside the crystal with Poynting walk-off
// along x. The walk-off displacement z tan(rho0) enters as the phase ramp
// exp(-i p_x z tan(rho0)); its spiral coefficients are (-i)^n J_n(z rho tan rho0).
struct PumpWalkoffProfile {
  PumpSpec spec;
  double rho0 = 0.0;  // walk-off angle, rad
  double z = 0.0;     // position inside the crystal, m
  double k_p0 = 0.0;  // longitudinal pump wavevector at center, rad/m

  double displacement() const { return z * std::tan(rho0); }
};

// Field value via the truncated spiral sum; rho_p is the transverse
// wavevector radius (rad/m). Throws TruncationNotConverged when the
// spiral tail cannot reach 1e-12 within the supported Bessel orders.
cdouble pump_walkoff_field(double rho_p, double phi_p,
                           const PumpWalkoffProfile& profile);

// Highest spiral order kept for Bessel arguments up to a_max = d * rho_max:
// smallest N with |J_n(a_max)| < 1e-12 for all n > N.
int walkoff_spiral_order(const PumpWalkoffProfile& profile, double rho_max);

// Normalized OAM weights of the pump field at position z. The m window and
// the phi resolution are derived from the spiral truncation order, so the
// reported tails vanish by construction.
OAMSpectrum pump_oam_distribution(const PumpWalkoffProfile& profile,
                                  const PolarGridSpec& grid);

}  // namespace spdc
