#include "spdc/dispersion.hpp"

#include <cmath>
#include <string>

namespace spdc {

namespace {

double refractive_index(Photon which, const ExperimentConfig& cfg) {
  switch (which) {
    case Photon::Pump: return cfg.crystal.n_pump;
    case Photon::Signal: return cfg.crystal.n_signal;
    case Photon::Idler: return cfg.crystal.n_idler;
  }
  return 0.0;
}

double angular_frequency(Photon which, const ExperimentConfig& cfg) {
  const PhotonFrequencies f = cfg.frequencies();
  switch (which) {
    case Photon::Pump: return f.omega_p;
    case Photon::Signal: return f.omega_s;
    case Photon::Idler: return f.omega_i;
  }
  return 0.0;
}

double tilt_angle(Photon which, double theta) {
  // theta1 = -theta2 = theta
  return which == Photon::Idler ? -theta : theta;
}

}  // namespace

double center_wavenumber(Photon which, const ExperimentConfig& cfg) {
  return angular_frequency(which, cfg) * refractive_index(which, cfg) /
         kSpeedOfLight;
}

double longitudinal_wavevector(Photon which, Vec2 transverse,
                               const ExperimentConfig& cfg) {
  const double k0 = center_wavenumber(which, cfg);
  const double t2 = transverse.norm2();
  if (t2 > k0 * k0)
    throw EvanescentWave("|P| = " + std::to_string(transverse.norm()) +
                         " rad/m exceeds omega n / c = " + std::to_string(k0));
  return std::sqrt(k0 * k0 - t2);
}

Vec2 local_to_lab(Photon signal_or_idler, Vec2 p_local, double k_long,
                  double theta) {
  const double t = tilt_angle(signal_or_idler, theta);
  return {p_local.x, std::cos(t) * p_local.y - std::sin(t) * k_long};
}

double local_to_lab_longitudinal(Photon signal_or_idler, Vec2 p_local,
                                 double k_long, double theta) {
  const double t = tilt_angle(signal_or_idler, theta);
  return std::sin(t) * p_local.y + std::cos(t) * k_long;
}

double qpm_grating_for_center(const ExperimentConfig& cfg) {
  const double kp0 = center_wavenumber(Photon::Pump, cfg);
  const double ks0 = center_wavenumber(Photon::Signal, cfg);
  const double ki0 = center_wavenumber(Photon::Idler, cfg);
  if (cfg.geometry.scenario == Scenario::NonCollinear)
    return kp0 - (ks0 + ki0) * std::cos(cfg.geometry.theta);
  return kp0 - ks0 - ki0;
}

double resolved_qpm_grating(const ExperimentConfig& cfg) {
  switch (cfg.crystal.qpm.kind) {
    case QpmMode::Kind::AutoCenter: return qpm_grating_for_center(cfg);
    case QpmMode::Kind::ExplicitGrating: return cfg.crystal.qpm.grating_kg;
    case QpmMode::Kind::None: return 0.0;
  }
  return 0.0;
}

double delta_k_collinear(Vec2 P, Vec2 Q, const ExperimentConfig& cfg) {
  return longitudinal_wavevector(Photon::Pump, P + Q, cfg) -
         longitudinal_wavevector(Photon::Signal, P, cfg) -
         longitudinal_wavevector(Photon::Idler, Q, cfg) -
         resolved_qpm_grating(cfg);
}

NoncollinearMismatch delta_k_noncollinear(Vec2 p, Vec2 q,
                                          const ExperimentConfig& cfg) {
  const double theta = cfg.geometry.theta;
  const double kp0 = center_wavenumber(Photon::Pump, cfg);
  const double ks = longitudinal_wavevector(Photon::Signal, p, cfg);
  const double ki = longitudinal_wavevector(Photon::Idler, q, cfg);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  NoncollinearMismatch out;
  out.delta_k = kp0 - (ks + ki) * c - (p.y - q.y) * s - resolved_qpm_grating(cfg);
  out.delta_0 = (p.y + q.y) * c - (ks - ki) * s;
  return out;
}

double delta_k_walkoff(Vec2 P, Vec2 Q, const ExperimentConfig& cfg) {
  return delta_k_collinear(P, Q, cfg) +
         (P.x + Q.x) * std::tan(cfg.crystal.walkoff_rho0);
}

double noncollinear_length(double w0, double theta) {
  if (theta == 0.0)
    throw DegenerateAngle("noncollinear length is infinite at theta = 0");
  return w0 / std::sin(theta);
}

double walkoff_length(double w0, double rho0) {
  if (rho0 == 0.0)
    throw DegenerateAngle("walk-off length is infinite at rho0 = 0");
  return w0 / std::tan(rho0);
}

}  // namespace spdc
