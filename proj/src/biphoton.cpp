#include "spdc/biphoton.hpp"

#include <cmath>

#include "spdc/dispersion.hpp"
#include "spdc/oam.hpp"
#include "spdc/pump.hpp"

namespace spdc {

using num::cdouble;

BiphotonSample::BiphotonSample(const ExperimentConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  k_g_ = resolved_qpm_grating(cfg_);
  kp0_ = center_wavenumber(Photon::Pump, cfg_);
  ks0_ = center_wavenumber(Photon::Signal, cfg_);
  ki0_ = center_wavenumber(Photon::Idler, cfg_);
}

cdouble BiphotonSample::operator()(Vec2 P, Vec2 Q) const {
  switch (cfg_.geometry.scenario) {
    case Scenario::FullConeNoncritical:
      return full_cone(P, Q, 0.0);
    case Scenario::FullConeWalkoff:
      return full_cone(P, Q, std::tan(cfg_.crystal.walkoff_rho0));
    case Scenario::NonCollinear:
      return non_collinear(P, Q);
  }
  return {0.0, 0.0};
}

cdouble BiphotonSample::full_cone(Vec2 P, Vec2 Q, double tilt_tan) const {
  const double L = cfg_.crystal.length;
  const double Ks = longitudinal_wavevector(Photon::Signal, P, cfg_);
  const double Ki = longitudinal_wavevector(Photon::Idler, Q, cfg_);
  const double Kp = longitudinal_wavevector(Photon::Pump, P + Q, cfg_);
  const double dk = Kp - Ks - Ki - k_g_ + (P.x + Q.x) * tilt_tan;
  const double half_phase = dk * L / 2.0;
  return pump_angular_amplitude(P + Q, cfg_.pump) * num::sinc(half_phase) *
         std::polar(1.0, half_phase + (Ks + Ki) * L);
}

cdouble BiphotonSample::non_collinear(Vec2 p, Vec2 q) const {
  const double L = cfg_.crystal.length;
  const double theta = cfg_.geometry.theta;
  const double ks = longitudinal_wavevector(Photon::Signal, p, cfg_);
  const double ki = longitudinal_wavevector(Photon::Idler, q, cfg_);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double dk = kp0_ - (ks + ki) * c - (p.y - q.y) * s - k_g_;
  const double d0 = (p.y + q.y) * c - (ks - ki) * s;
  const double half_phase = dk * L / 2.0;
  return pump_angular_amplitude({p.x + q.x, d0}, cfg_.pump) *
         num::sinc(half_phase) *
         std::polar(1.0, half_phase + (ks + ki) * L / c);
}

PhasematchCoeffs phasematch_azimuthal_coeffs(double rho_s, double rho_i,
                                             const ExperimentConfig& cfg,
                                             int l_max) {
  if (cfg.geometry.scenario != Scenario::FullConeNoncritical)
    throw ScenarioMismatch(
        "phase-matching dphi decomposition requires the full-cone "
        "noncritical scenario");
  if (l_max < 0) throw Error("phasematch_azimuthal_coeffs: l_max must be >= 0");

  const double L = cfg.crystal.length;
  const double k_g = resolved_qpm_grating(cfg);
  const double kp0 = center_wavenumber(Photon::Pump, cfg);
  const double Ks = longitudinal_wavevector(Photon::Signal, {rho_s, 0.0}, cfg);
  const double Ki = longitudinal_wavevector(Photon::Idler, {rho_i, 0.0}, cfg);

  int n_phi = std::max(cfg.grid.n_phi, num::next_pow2(2 * l_max + 4));
  std::vector<cdouble> samples(static_cast<size_t>(n_phi));
  for (int j = 0; j < n_phi; ++j) {
    const double dphi = 2.0 * M_PI * j / n_phi;
    const double mod2 =
        rho_s * rho_s + rho_i * rho_i + 2.0 * rho_s * rho_i * std::cos(dphi);
    if (mod2 > kp0 * kp0)
      throw EvanescentWave("|P+Q| beyond the pump propagating cone");
    const double dk = std::sqrt(kp0 * kp0 - mod2) - Ks - Ki - k_g;
    samples[static_cast<size_t>(j)] = num::sinc_with_phase(dk * L / 2.0);
  }
  num::AzimuthalCoeffs coeffs = num::azimuthal_dft(samples);

  PhasematchCoeffs out;
  out.l_min = -l_max;
  out.l_max = l_max;
  out.h.resize(static_cast<size_t>(2 * l_max + 1));
  for (int l = -l_max; l <= l_max; ++l)
    out.h[static_cast<size_t>(l + l_max)] = coeffs.coeff(l);
  return out;
}

ReducedSignalField::ReducedSignalField(const BiphotonSample& biphoton,
                                       Detection detection, double tol)
    : biphoton_(biphoton), detection_(detection) {
  if (detection_.mode == Detection::Mode::IdlerAtZero) return;
  if (!(detection_.idler_waist_w1 > 0))
    throw ConfigInvalid("detection.idler_waist", "idler_gaussian requires waist > 0");

  const ExperimentConfig& cfg = biphoton_.config();
  const double w1 = detection_.idler_waist_w1;

  auto build = [&](int n_rho, int n_phi) {
    // Range covers the Gaussian projection and the pump spectral width.
    ExperimentConfig scales = cfg;
    scales.detection = detection_;
    const double rho_max = default_rho_max(scales);
    const num::QuadratureRule radial = num::gauss_legendre(n_rho, 0.0, rho_max);
    std::vector<QNode> nodes;
    nodes.reserve(static_cast<size_t>(n_rho) * n_phi);
    const double dphi = 2.0 * M_PI / n_phi;
    for (int k = 0; k < n_rho; ++k) {
      const double rho = radial.nodes[static_cast<size_t>(k)];
      const double gauss = std::exp(-rho * rho * w1 * w1 / 4.0);
      const double wgt = radial.weights[static_cast<size_t>(k)] * rho * dphi * gauss;
      for (int j = 0; j < n_phi; ++j)
        nodes.push_back({Vec2::polar(rho, dphi * j), wgt});
    }
    return nodes;
  };

  const int n_rho = 64, n_phi = 64;
  q_nodes_ = build(n_rho, n_phi);
  const std::vector<QNode> fine = build(2 * n_rho, 2 * n_phi);

  // Doubling check over a probe set spanning the signal grid range.
  const double probe_rho = default_rho_max(cfg) / 4.0;
  double diff2 = 0.0, norm2 = 0.0;
  for (int i = 0; i < 9; ++i) {
    const Vec2 p = i == 0 ? Vec2{0.0, 0.0}
                          : Vec2::polar(probe_rho * ((i % 2) ? 1.0 : 0.4),
                                        2.0 * M_PI * i / 8.0);
    const cdouble coarse = integrate(p, q_nodes_);
    const cdouble refined = integrate(p, fine);
    diff2 += std::norm(refined - coarse);
    norm2 += std::norm(refined);
  }
  if (!(norm2 > 0.0) || std::sqrt(diff2 / norm2) > tol)
    throw QuadratureNotConverged(
        "idler projection quadrature changed by more than tol under doubling");
}

cdouble ReducedSignalField::integrate(Vec2 p,
                                      const std::vector<QNode>& nodes) const {
  cdouble sum{0.0, 0.0};
  for (const QNode& n : nodes) sum += n.weight * biphoton_(p, n.q);
  return sum;
}

cdouble ReducedSignalField::operator()(Vec2 p) const {
  if (detection_.mode == Detection::Mode::IdlerAtZero)
    return biphoton_(p, Vec2{0.0, 0.0});
  return integrate(p, q_nodes_);
}

}  // namespace spdc
