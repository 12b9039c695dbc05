#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "spdc/errors.hpp"
#include "spdc/types.hpp"

namespace spdc::num {

using spdc::cdouble;

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

// Bessel function of the first kind, integer order. Downward (Miller)
// recurrence normalized by J_0 + 2*sum J_2k = 1, with a power series for
// small arguments. Supported envelope: |n| <= 200, |x| <= 1e4.
double bessel_j(int n, double x);

// J_0(x) .. J_{n_max}(x) in one downward pass; x >= 0, n_max <= 200.
std::vector<double> bessel_j_sequence(int n_max, double x);

inline constexpr int kBesselMaxOrder = 200;
inline constexpr double kBesselMaxArg = 1e4;

// sin(x)/x, continuous at 0 (series form near 0).
double sinc(double x);

// sinc(x) * exp(i x).
cdouble sinc_with_phase(double x);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

// Gauss-Legendre rule on [a, b]; exact for polynomials of degree <= 2n-1.
QuadratureRule gauss_legendre(int n, double a, double b);

// Open midpoint rule on [a, b].
QuadratureRule uniform_midpoint(int n, double a, double b);

QuadratureRule radial_rule(const PolarGridSpec& grid);

// ---------------------------------------------------------------------------
// Azimuthal discrete Fourier transform
// ---------------------------------------------------------------------------
//
// Samples live at phi_k = 2 pi k / n_phi. Coefficients follow the Fourier
// series convention a_m = (1/n) sum_k f_k exp(-i m phi_k) so that
// f(phi) = sum_m a_m exp(i m phi) for band-limited fields,
// with m in [-n/2 + 1, n/2].

struct AzimuthalCoeffs {
  int n_phi = 0;
  std::vector<cdouble> bins;  // FFT bin order: bins[(m + n) % n]

  cdouble coeff(int m) const {
    int j = m % n_phi;
    if (j < 0) j += n_phi;
    return bins[static_cast<size_t>(j)];
  }
  int m_min() const { return -n_phi / 2 + 1; }
  int m_max() const { return n_phi / 2; }
};

AzimuthalCoeffs azimuthal_dft(std::span<const cdouble> samples);

// Reconstructs the samples; round-trips to ~1e-12.
std::vector<cdouble> azimuthal_idft(const AzimuthalCoeffs& coeffs);

// In-place radix-2 transform; size must be a power of two.
void fft_pow2(std::vector<cdouble>& v, bool inverse);

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
int next_pow2(int n);

// ---------------------------------------------------------------------------
// Convergence control
// ---------------------------------------------------------------------------

struct ConvergenceLevel {
  PolarGridSpec grid;
  std::uint64_t checksum = 0;
  // Max spectral-weight change vs the previous level; +inf for the first
  // level, which has nothing to compare against.
  double max_delta = std::numeric_limits<double>::infinity();
};

struct ConvergenceReport {
  std::vector<ConvergenceLevel> levels;
  bool converged = false;
  double final_tolerance = 0.0;

  double last_delta() const {
    return levels.empty() ? std::numeric_limits<double>::infinity()
                          : levels.back().max_delta;
  }
};

std::uint64_t fnv1a_hash(const double* data, size_t count);

// Doubles the grid until the result moves by less than tol between levels.
// Result must provide max_weight_delta(other) and checksum().
// Non-convergence is reported, not thrown; the finest result is returned.
template <class Result, class Compute>
std::pair<Result, ConvergenceReport> converge_by_doubling(Compute&& compute,
                                                          PolarGridSpec grid,
                                                          double tol,
                                                          int max_doublings) {
  ConvergenceReport report;
  report.final_tolerance = tol;
  Result current = compute(grid);
  report.levels.push_back({grid, current.checksum(),
                           std::numeric_limits<double>::infinity()});
  for (int level = 0; level < max_doublings; ++level) {
    PolarGridSpec finer = grid.doubled();
    Result refined = compute(finer);
    double delta = refined.max_weight_delta(current);
    report.levels.push_back({finer, refined.checksum(), delta});
    current = std::move(refined);
    grid = finer;
    if (delta < tol) {
      report.converged = true;
      break;
    }
  }
  return {std::move(current), report};
}

}  // namespace spdc::num
