#include "spdc/oam.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "spdc/dispersion.hpp"

namespace spdc {

using num::cdouble;

double OAMSpectrum::max_weight_delta(const OAMSpectrum& other) const {
  int lo = std::min(m_min, other.m_min);
  int hi = std::max(m_max, other.m_max);
  double delta = 0.0;
  for (int m = lo; m <= hi; ++m)
    delta = std::max(delta, std::abs(weight(m) - other.weight(m)));
  return delta;
}

double OAMSpectrum::participation_number() const {
  double s2 = 0.0;
  for (double w : weights) s2 += w * w;
  return s2 > 0 ? 1.0 / s2 : 0.0;
}

double JointOAMSpectrum::off_antidiagonal_weight(int mp) const {
  double sum = 0.0;
  for (int i = m1.lo; i <= m1.hi; ++i)
    for (int j = m2.lo; j <= m2.hi; ++j)
      if (i + j != mp) sum += weight(i, j);
  return sum;
}

double JointOAMSpectrum::max_weight_delta(const JointOAMSpectrum& other) const {
  int lo1 = std::min(m1.lo, other.m1.lo), hi1 = std::max(m1.hi, other.m1.hi);
  int lo2 = std::min(m2.lo, other.m2.lo), hi2 = std::max(m2.hi, other.m2.hi);
  double delta = 0.0;
  for (int i = lo1; i <= hi1; ++i)
    for (int j = lo2; j <= hi2; ++j)
      delta = std::max(delta, std::abs(weight(i, j) - other.weight(i, j)));
  return delta;
}

OAMSpectrum JointOAMSpectrum::signal_marginal() const {
  OAMSpectrum out;
  out.m_min = m1.lo;
  out.m_max = m1.hi;
  out.weights.assign(static_cast<size_t>(m1.count()), 0.0);
  for (int i = m1.lo; i <= m1.hi; ++i)
    for (int j = m2.lo; j <= m2.hi; ++j)
      out.weights[static_cast<size_t>(i - m1.lo)] += weight(i, j);
  return out;
}

namespace {

void check_nyquist(int n_phi, MRange m_range) {
  int need = std::max(std::abs(m_range.lo), std::abs(m_range.hi));
  if (need > n_phi / 2 - 1)
    throw NyquistViolation("requested |m| up to " + std::to_string(need) +
                           " needs n_phi > " + std::to_string(2 * need + 2) +
                           ", got " + std::to_string(n_phi));
}

}  // namespace

AzimuthalDecomposition azimuthal_decompose(const FieldFn& field,
                                           const PolarGridSpec& grid,
                                           MRange m_range) {
  grid.validate();
  m_range.validate();
  check_nyquist(grid.n_phi, m_range);
  const num::QuadratureRule rule = num::radial_rule(grid);

  AzimuthalDecomposition out;
  out.m_min = m_range.lo;
  out.m_max = m_range.hi;
  out.rho = rule.nodes;
  out.rho_weight = rule.weights;
  out.a.resize(out.rho.size() * static_cast<size_t>(out.m_count()));

  std::vector<cdouble> row(static_cast<size_t>(grid.n_phi));
  const double dphi = 2.0 * M_PI / grid.n_phi;
  for (size_t k = 0; k < out.rho.size(); ++k) {
    for (int j = 0; j < grid.n_phi; ++j)
      row[static_cast<size_t>(j)] = field(out.rho[k], dphi * j);
    num::AzimuthalCoeffs coeffs = num::azimuthal_dft(row);
    for (int m = m_range.lo; m <= m_range.hi; ++m)
      out.a[k * static_cast<size_t>(out.m_count()) +
            static_cast<size_t>(m - m_range.lo)] = coeffs.coeff(m);
  }
  return out;
}

OAMSpectrum oam_weights(const FieldFn& field, const PolarGridSpec& grid,
                        MRange m_range) {
  AzimuthalDecomposition dec = azimuthal_decompose(field, grid, m_range);
  OAMSpectrum out;
  out.m_min = dec.m_min;
  out.m_max = dec.m_max;
  out.weights.assign(static_cast<size_t>(dec.m_count()), 0.0);
  for (size_t k = 0; k < dec.rho.size(); ++k) {
    const double measure = 2.0 * M_PI * dec.rho_weight[k] * dec.rho[k];
    for (int m = dec.m_min; m <= dec.m_max; ++m)
      out.weights[static_cast<size_t>(m - dec.m_min)] +=
          measure * std::norm(dec.coeff(k, m));
  }
  double total = 0.0;
  for (double w : out.weights) total += w;
  if (!(total > 1e-300))
    throw ZeroField("total field power " + std::to_string(total) +
                    " too small to normalize");
  for (double& w : out.weights) w /= total;
  return out;
}

JointOAMSpectrum joint_oam_weights(const JointFieldFn& biphoton,
                                   const num::QuadratureRule& rings_signal,
                                   const num::QuadratureRule& rings_idler,
                                   int n_phi, MRange range_m1, MRange range_m2,
                                   int threads) {
  if (!num::is_pow2(n_phi))
    throw Error("joint_oam_weights: n_phi must be a power of two");
  check_nyquist(n_phi, range_m1);
  check_nyquist(n_phi, range_m2);

  const int c1 = range_m1.count(), c2 = range_m2.count();
  const double dphi = 2.0 * M_PI / n_phi;
  const size_t n_pairs = static_cast<size_t>(rings_signal.size()) *
                         static_cast<size_t>(rings_idler.size());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(n_pairs)));

  // Unit direction tables shared by all ring pairs.
  std::vector<double> cphi(static_cast<size_t>(n_phi)), sphi(cphi.size());
  for (int j = 0; j < n_phi; ++j) {
    cphi[static_cast<size_t>(j)] = std::cos(dphi * j);
    sphi[static_cast<size_t>(j)] = std::sin(dphi * j);
  }

  std::vector<std::vector<double>> partial(
      static_cast<size_t>(threads),
      std::vector<double>(static_cast<size_t>(c1) * c2, 0.0));
  std::atomic<size_t> next_pair{0};

  auto worker = [&](int tid) {
    std::vector<cdouble> tile(static_cast<size_t>(n_phi) * n_phi);
    std::vector<cdouble> col(static_cast<size_t>(n_phi));
    std::vector<double>& acc = partial[static_cast<size_t>(tid)];
    for (size_t pair = next_pair.fetch_add(1); pair < n_pairs;
         pair = next_pair.fetch_add(1)) {
      const size_t ks = pair / static_cast<size_t>(rings_idler.size());
      const size_t ki = pair % static_cast<size_t>(rings_idler.size());
      const double rs = rings_signal.nodes[ks];
      const double ri = rings_idler.nodes[ki];
      for (int js = 0; js < n_phi; ++js) {
        const Vec2 P{rs * cphi[static_cast<size_t>(js)],
                     rs * sphi[static_cast<size_t>(js)]};
        for (int ji = 0; ji < n_phi; ++ji) {
          const Vec2 Q{ri * cphi[static_cast<size_t>(ji)],
                       ri * sphi[static_cast<size_t>(ji)]};
          tile[static_cast<size_t>(js) * n_phi + static_cast<size_t>(ji)] =
              biphoton(P, Q);
        }
      }
      // 2D azimuthal transform: rows (phi_i), then columns (phi_s).
      for (int js = 0; js < n_phi; ++js) {
        std::vector<cdouble> row(
            tile.begin() + static_cast<ptrdiff_t>(js) * n_phi,
            tile.begin() + static_cast<ptrdiff_t>(js + 1) * n_phi);
        num::fft_pow2(row, false);
        std::copy(row.begin(), row.end(),
                  tile.begin() + static_cast<ptrdiff_t>(js) * n_phi);
      }
      const double inv_n2 = 1.0 / (static_cast<double>(n_phi) * n_phi);
      const double measure = (2.0 * M_PI) * (2.0 * M_PI) *
                             rings_signal.weights[ks] * rs *
                             rings_idler.weights[ki] * ri;
      for (int m2v = range_m2.lo; m2v <= range_m2.hi; ++m2v) {
        int b2 = m2v % n_phi;
        if (b2 < 0) b2 += n_phi;
        for (int js = 0; js < n_phi; ++js)
          col[static_cast<size_t>(js)] =
              tile[static_cast<size_t>(js) * n_phi + static_cast<size_t>(b2)];
        num::fft_pow2(col, false);
        for (int m1v = range_m1.lo; m1v <= range_m1.hi; ++m1v) {
          int b1 = m1v % n_phi;
          if (b1 < 0) b1 += n_phi;
          const double amp2 = std::norm(col[static_cast<size_t>(b1)] * inv_n2);
          acc[static_cast<size_t>(m1v - range_m1.lo) * c2 +
              static_cast<size_t>(m2v - range_m2.lo)] += measure * amp2;
        }
      }
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  JointOAMSpectrum out;
  out.m1 = range_m1;
  out.m2 = range_m2;
  out.weights.assign(static_cast<size_t>(c1) * c2, 0.0);
  for (const auto& acc : partial)
    for (size_t i = 0; i < out.weights.size(); ++i) out.weights[i] += acc[i];

  double total = 0.0;
  for (double w : out.weights) total += w;
  if (!(total > 1e-300)) throw ZeroField("joint field power too small");
  for (double& w : out.weights) w /= total;
  return out;
}

double selection_rule_violation(const OAMSpectrum& spectrum, int expected_m) {
  return 1.0 - spectrum.weight(expected_m);
}

namespace {

// p-space half width of the sinc factor (where the mismatch phase reaches
// pi), used only to size grids; convergence doubling validates the choice.
double sinc_extent(const ExperimentConfig& cfg) {
  const double ks0 = center_wavenumber(Photon::Signal, cfg);
  const double L = cfg.crystal.length;
  const double ct = std::cos(cfg.geometry.theta);
  double extent = std::sqrt(4.0 * M_PI * ks0 * ct / L);
  if (cfg.geometry.scenario == Scenario::NonCollinear && cfg.geometry.theta > 0)
    extent = std::min(extent, 2.0 * M_PI / (L * std::sin(cfg.geometry.theta)));
  return extent;
}

double cone_bound(const ExperimentConfig& cfg) {
  return 0.45 * std::min({center_wavenumber(Photon::Signal, cfg),
                          center_wavenumber(Photon::Idler, cfg),
                          center_wavenumber(Photon::Pump, cfg)});
}

}  // namespace

double default_rho_max(const ExperimentConfig& cfg) {
  double w_eff = cfg.pump.waist_w0;
  if (cfg.detection.mode == Detection::Mode::IdlerGaussian)
    w_eff = std::min(w_eff, cfg.detection.idler_waist_w1);
  w_eff = std::min(w_eff, 2.0 / sinc_extent(cfg));
  return std::min(8.0 / w_eff, cone_bound(cfg));
}

double default_joint_rho_max(const ExperimentConfig& cfg) {
  const double ks0 = center_wavenumber(Photon::Signal, cfg);
  // Per-photon radius of the phase-matched ridge rho_s ~ rho_i.
  const double ridge = std::sqrt(2.0 * M_PI * ks0 / cfg.crystal.length);
  const double range = 1.5 * ridge + 8.0 / cfg.pump.waist_w0;
  return std::min({range, default_rho_max(cfg), cone_bound(cfg)});
}

}  // namespace spdc
