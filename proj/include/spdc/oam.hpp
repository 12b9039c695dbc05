#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "spdc/numerics.hpp"
#include "spdc/types.hpp"

namespace spdc {

// Normalized spiral-harmonic weights P_m over m in [m_min, m_max].
struct OAMSpectrum {
  int m_min = 0;
  int m_max = 0;
  std::vector<double> weights;

  double weight(int m) const {
    if (m < m_min || m > m_max) return 0.0;
    return weights[static_cast<size_t>(m - m_min)];
  }
  double max_weight_delta(const OAMSpectrum& other) const;
  std::uint64_t checksum() const {
    return num::fnv1a_hash(weights.data(), weights.size());
  }
  // Inverse participation: 1 / sum P_m^2; 1 for a pure mode.
  double participation_number() const;
};

// Normalized joint weights P_{m1,m2}, row-major over m1 then m2.
struct JointOAMSpectrum {
  MRange m1;
  MRange m2;
  std::vector<double> weights;

  double weight(int i, int j) const {
    if (i < m1.lo || i > m1.hi || j < m2.lo || j > m2.hi) return 0.0;
    return weights[static_cast<size_t>(i - m1.lo) * m2.count() +
                   static_cast<size_t>(j - m2.lo)];
  }
  // Total weight off the anti-diagonal m1 + m2 = mp.
  double off_antidiagonal_weight(int mp) const;
  double max_weight_delta(const JointOAMSpectrum& other) const;
  std::uint64_t checksum() const {
    return num::fnv1a_hash(weights.data(), weights.size());
  }
  // Marginal over m1 (sums m2 out).
  OAMSpectrum signal_marginal() const;
};

using FieldFn = std::function<cdouble(double rho, double phi)>;
using JointFieldFn = std::function<cdouble(Vec2 P, Vec2 Q)>;

// Azimuthal Fourier coefficients a_m(rho_k) of a scalar field, computed by
// the discrete transform over a uniform phi grid at each radial node.
struct AzimuthalDecomposition {
  int m_min = 0;
  int m_max = 0;
  std::vector<double> rho;         // radial nodes
  std::vector<double> rho_weight;  // radial quadrature weights
  std::vector<cdouble> a;          // [n_rho][m_count], row-major

  int m_count() const { return m_max - m_min + 1; }
  cdouble coeff(size_t k, int m) const {
    return a[k * static_cast<size_t>(m_count()) + static_cast<size_t>(m - m_min)];
  }
};

AzimuthalDecomposition azimuthal_decompose(const FieldFn& field,
                                           const PolarGridSpec& grid,
                                           MRange m_range);

// P_m = 2 pi * integral |a_m(rho)|^2 rho drho via the radial rule, then
// normalized to sum 1. Throws ZeroField when the total power vanishes.
OAMSpectrum oam_weights(const FieldFn& field, const PolarGridSpec& grid,
                        MRange m_range);

// Joint decomposition over e^{i m1 phi_s + i m2 phi_i} with radial node sets
// for the signal and idler rings.  P_{m1,m2} = (2 pi)^2 * double radial
// integral of |a_{m1,m2}|^2 rho_s rho_i, normalized.
JointOAMSpectrum joint_oam_weights(const JointFieldFn& biphoton,
                                   const num::QuadratureRule& rings_signal,
                                   const num::QuadratureRule& rings_idler,
                                   int n_phi, MRange range_m1, MRange range_m2,
                                   int threads = 1);

// 1 - P_{expected_m} of a normalized spectrum.
double selection_rule_violation(const OAMSpectrum& spectrum, int expected_m);

// Grid range policy: rho_max = 8 / w_eff with w_eff the smallest transverse
// scale among the pump waist, idler projection waist and the phase-matching
// sinc extent, clamped below the propagating-cone bound.
double default_rho_max(const ExperimentConfig& cfg);

// Tighter range for joint ring grids: covers the phase-matched diagonal
// ridge rho_s ~ rho_i plus the pump spectral width.
double default_joint_rho_max(const ExperimentConfig& cfg);

}  // namespace spdc
