#include "spdc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace spdc::num {

namespace {

// Ascending power series; accurate for |x| <= 2 where the terms do not
// alternate destructively. n >= 0, x >= 0.
double bessel_series(int n, double x) {
  double half = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= half / k;  // (x/2)^n / n!
  if (term == 0.0) return 0.0;
  double sum = term;
  double q = -half * half;
  for (int k = 1; k <= 64; ++k) {
    term *= q / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

int miller_start_order(int n_max, double x) {
  double cube = std::cbrt(std::max(x, 1.0));
  int start = std::max(n_max, static_cast<int>(std::ceil(x))) + 60 +
              static_cast<int>(18.0 * cube);
  return start + (start & 1);  // even
}

// Downward recurrence from well above both n_max and x, normalized with
// J_0 + 2 sum_k J_2k = 1. x > 2 (series covers the rest), x <= kBesselMaxArg.
std::vector<double> bessel_miller(int n_max, double x) {
  const int start = miller_start_order(n_max, x);
  std::vector<double> out(static_cast<size_t>(n_max) + 1, 0.0);
  double jp1 = 0.0;          // J_{k+1}, scaled
  double j = 1e-30;          // J_k trial value
  double norm = 0.0;
  const double rescale_limit = 1e250;
  for (int k = start; k >= 1; --k) {
    double jm1 = (2.0 * k / x) * j - jp1;
    jp1 = j;
    j = jm1;
    if (k - 1 <= n_max) out[static_cast<size_t>(k - 1)] = j;
    if (((k - 1) & 1) == 0) norm += (k - 1 == 0) ? j : 2.0 * j;
    if (std::abs(j) > rescale_limit) {
      j /= rescale_limit;
      jp1 /= rescale_limit;
      norm /= rescale_limit;
      for (auto& v : out) v /= rescale_limit;
    }
  }
  for (auto& v : out) v /= norm;
  return out;
}

}  // namespace

std::vector<double> bessel_j_sequence(int n_max, double x) {
  if (n_max < 0 || n_max > kBesselMaxOrder)
    throw OutOfSupportedRange("bessel order outside [0, 200]: n=" +
                              std::to_string(n_max));
  if (!(x >= 0) || x > kBesselMaxArg)
    throw OutOfSupportedRange("bessel argument outside [0, 1e4]: x=" +
                              std::to_string(x));
  if (x == 0.0) {
    std::vector<double> out(static_cast<size_t>(n_max) + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  if (x <= 2.0) {
    std::vector<double> out(static_cast<size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) out[static_cast<size_t>(n)] = bessel_series(n, x);
    return out;
  }
  return bessel_miller(n_max, x);
}

double bessel_j(int n, double x) {
  double sign = 1.0;
  if (n < 0) {
    n = -n;
    if (n & 1) sign = -sign;  // J_{-n} = (-1)^n J_n
  }
  if (x < 0) {
    x = -x;
    if (n & 1) sign = -sign;  // J_n(-x) = (-1)^n J_n(x)
  }
  if (n > kBesselMaxOrder)
    throw OutOfSupportedRange("bessel order outside [-200, 200]: n=" +
                              std::to_string(n));
  if (x > kBesselMaxArg)
    throw OutOfSupportedRange("bessel argument outside [-1e4, 1e4]: x=" +
                              std::to_string(x));
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (x <= 2.0) return sign * bessel_series(n, x);
  return sign * bessel_miller(n, x)[static_cast<size_t>(n)];
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

cdouble sinc_with_phase(double x) {
  const double s = std::sin(x);
  const double c = std::cos(x);
  const double v = std::abs(x) < 1e-4
                       ? 1.0 - x * x / 6.0 * (1.0 - x * x / 20.0)
                       : s / x;
  return {v * c, v * s};
}

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw Error("gauss_legendre: n must be >= 1");
  if (!(a < b)) throw Error("gauss_legendre: need a < b");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<size_t>(n));
  rule.weights.resize(static_cast<size_t>(n));
  const double mid = 0.5 * (b + a);
  const double half = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev estimate, then Newton on P_n(z).
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int k = 0; k < n; ++k) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * k + 1.0) * z * p2 - k * p3) / (k + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    rule.nodes[static_cast<size_t>(i)] = mid - half * z;
    rule.nodes[static_cast<size_t>(n - 1 - i)] = mid + half * z;
    double w = 2.0 * half / ((1.0 - z * z) * pp * pp);
    rule.weights[static_cast<size_t>(i)] = w;
    rule.weights[static_cast<size_t>(n - 1 - i)] = w;
  }
  return rule;
}

QuadratureRule uniform_midpoint(int n, double a, double b) {
  if (n < 1) throw Error("uniform_midpoint: n must be >= 1");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<size_t>(n));
  rule.weights.resize(static_cast<size_t>(n));
  const double h = (b - a) / n;
  for (int i = 0; i < n; ++i) {
    rule.nodes[static_cast<size_t>(i)] = a + (i + 0.5) * h;
    rule.weights[static_cast<size_t>(i)] = h;
  }
  return rule;
}

QuadratureRule radial_rule(const PolarGridSpec& grid) {
  if (!(grid.rho_max > 0)) throw Error("radial_rule: rho_max not resolved");
  return grid.radial_rule == RadialRule::GaussLegendre
             ? gauss_legendre(grid.n_rho, 0.0, grid.rho_max)
             : uniform_midpoint(grid.n_rho, 0.0, grid.rho_max);
}

void fft_pow2(std::vector<cdouble>& v, bool inverse) {
  const size_t n = v.size();
  if (!is_pow2(static_cast<int>(n))) throw Error("fft_pow2: size must be a power of two");
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(v[i], v[j]);
  }
  std::vector<cdouble> twiddle(n / 2);
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
    for (size_t k = 0; k < len / 2; ++k)
      twiddle[k] = std::polar(1.0, ang * static_cast<double>(k));
    for (size_t i = 0; i < n; i += len) {
      for (size_t k = 0; k < len / 2; ++k) {
        cdouble u = v[i + k];
        cdouble t = v[i + k + len / 2] * twiddle[k];
        v[i + k] = u + t;
        v[i + k + len / 2] = u - t;
      }
    }
  }
  if (inverse) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& z : v) z *= inv_n;
  }
}

AzimuthalCoeffs azimuthal_dft(std::span<const cdouble> samples) {
  const int n = static_cast<int>(samples.size());
  if (!is_pow2(n)) throw Error("azimuthal_dft: n_phi must be a power of two");
  AzimuthalCoeffs out;
  out.n_phi = n;
  out.bins.assign(samples.begin(), samples.end());
  fft_pow2(out.bins, false);
  const double inv_n = 1.0 / n;
  for (auto& z : out.bins) z *= inv_n;
  return out;
}

std::vector<cdouble> azimuthal_idft(const AzimuthalCoeffs& coeffs) {
  std::vector<cdouble> samples = coeffs.bins;
  fft_pow2(samples, true);  // (1/n) sum bins e^{+i...}
  const double n = static_cast<double>(coeffs.n_phi);
  for (auto& z : samples) z *= n;
  return samples;
}

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::uint64_t fnv1a_hash(const double* data, size_t count) {
  std::uint64_t h = 1469598103934665603ull;
  const unsigned char* bytes = reinterpret_cast<const unsigned char*>(data);
  for (size_t i = 0; i < count * sizeof(double); ++i) {
    h ^= bytes[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace spdc::num
