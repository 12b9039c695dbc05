#pragma once

#include "spdc/types.hpp"

namespace spdc {

// omega_j n_j / c at zero transverse wavevector, rad/m.
double center_wavenumber(Photon which, const ExperimentConfig& cfg);

// K_j(P) = sqrt((omega_j n_j / c)^2 - |P|^2), the positive root.
// Throws EvanescentWave outside the propagating cone.
double longitudinal_wavevector(Photon which, Vec2 transverse,
                               const ExperimentConfig& cfg);

// Maps a local transverse wavevector to the lab frame for a beam tilted by
// theta1 = theta (signal) or theta2 = -theta (idler) about the x axis:
//   lab_x = p_x,  lab_y = cos(theta_j) p_y - sin(theta_j) k_long.
Vec2 local_to_lab(Photon signal_or_idler, Vec2 p_local, double k_long,
                  double theta);

// Lab-frame longitudinal component of the same tilted wavevector:
//   lab_z = sin(theta_j) p_y + cos(theta_j) k_long.
double local_to_lab_longitudinal(Photon signal_or_idler, Vec2 p_local,
                                 double k_long, double theta);

// Poling grating wavevector that nulls the scenario's mismatch at the
// center point (P = Q = 0 or p = q = 0).
double qpm_grating_for_center(const ExperimentConfig& cfg);

// Grating actually applied, resolved from the configured QPM mode.
double resolved_qpm_grating(const ExperimentConfig& cfg);

// Collinear full-cone mismatch: K_p(P+Q) - K_s(P) - K_i(Q) - k_G.
double delta_k_collinear(Vec2 P, Vec2 Q, const ExperimentConfig& cfg);

// Restricted-cone mismatches in the local signal/idler frames:
//   delta_k = k_p - (k_s + k_i) cos(theta) - (p_y - q_y) sin(theta) - k_G
//   delta_0 = (p_y + q_y) cos(theta) - (k_s - k_i) sin(theta)
// delta_0 is the y component of the summed lab transverse wavevectors and
// feeds the pump argument (p_x + q_x, delta_0).
struct NoncollinearMismatch {
  double delta_k = 0.0;  // rad/m
  double delta_0 = 0.0;  // rad/m
};
NoncollinearMismatch delta_k_noncollinear(Vec2 p, Vec2 q,
                                          const ExperimentConfig& cfg);

// Full-cone mismatch with pump walk-off:
// delta_k_collinear(P, Q) + (P_x + Q_x) tan(rho0).
double delta_k_walkoff(Vec2 P, Vec2 Q, const ExperimentConfig& cfg);

// L_nc = w0 / sin(theta). Throws DegenerateAngle at theta = 0 (infinite).
double noncollinear_length(double w0, double theta);

// L_w = w0 / tan(rho0). Throws DegenerateAngle at rho0 = 0 (infinite).
double walkoff_length(double w0, double rho0);

}  // namespace spdc
