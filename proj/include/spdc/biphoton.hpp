#pragma once

#include <vector>

#include "spdc/numerics.hpp"
#include "spdc/types.hpp"

namespace spdc {

// Two-photon mode function over signal/idler transverse wavevectors.
// Full-cone scenarios take lab-frame (P, Q); the non-collinear scenario
// takes local-frame (p, q) around the detected directions.
class BiphotonSample {
 public:
  explicit BiphotonSample(const ExperimentConfig& cfg);

  cdouble operator()(Vec2 P, Vec2 Q) const;

  Scenario scenario() const { return cfg_.geometry.scenario; }
  const ExperimentConfig& config() const { return cfg_; }
  double grating() const { return k_g_; }

 private:
  cdouble full_cone(Vec2 P, Vec2 Q, double tilt_tan) const;
  cdouble non_collinear(Vec2 p, Vec2 q) const;

  ExperimentConfig cfg_;
  double k_g_ = 0.0;   // resolved poling grating, rad/m
  double kp0_ = 0.0;   // center wavenumbers, rad/m
  double ks0_ = 0.0;
  double ki0_ = 0.0;
};

// Azimuthal Fourier coefficients H_l of the combined phase-matching factor
// sinc(dk L/2) exp(i dk L/2) over dphi = phi_s - phi_i at fixed radii
// (full-cone noncritical only; walk-off breaks the dphi dependence).
struct PhasematchCoeffs {
  int l_min = 0;
  int l_max = 0;
  std::vector<cdouble> h;

  cdouble coeff(int l) const {
    if (l < l_min || l > l_max) return {0.0, 0.0};
    return h[static_cast<size_t>(l - l_min)];
  }
};

PhasematchCoeffs phasematch_azimuthal_coeffs(double rho_s, double rho_i,
                                             const ExperimentConfig& cfg,
                                             int l_max);

// Signal one-photon field after projecting the idler.
//   IdlerAtZero:    Phi_s(p) = Phi(p, 0)
//   IdlerGaussian:  Phi_s(p) = integral dq Phi(p, q) exp(-|q|^2 w1^2 / 4)
// The Gaussian quadrature grid is checked at construction by doubling it on
// a probe set; throws QuadratureNotConverged beyond `tol` relative norm.
class ReducedSignalField {
 public:
  ReducedSignalField(const BiphotonSample& biphoton, Detection detection,
                     double tol = 1e-6);

  cdouble operator()(Vec2 p) const;
  cdouble at_polar(double rho, double phi) const {
    return (*this)(Vec2::polar(rho, phi));
  }

 private:
  struct QNode {
    Vec2 q;
    double weight;  // rho dq measure times the Gaussian projection
  };
  cdouble integrate(Vec2 p, const std::vector<QNode>& nodes) const;

  const BiphotonSample& biphoton_;
  Detection detection_;
  std::vector<QNode> q_nodes_;
};

}  // namespace spdc
