#include "spdc/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "spdc/biphoton.hpp"
#include "spdc/dispersion.hpp"
#include "spdc/pump.hpp"

namespace spdc {

namespace {

constexpr double kTailTolerance = 1e-6;

bool tail_ok(const OAMSpectrum& s) {
  return s.weight(s.m_min) < kTailTolerance && s.weight(s.m_max) < kTailTolerance;
}

}  // namespace

SpectrumResult run_spectrum(const ExperimentConfig& cfg) {
  cfg.validate();
  BiphotonSample biphoton(cfg);
  ReducedSignalField field(biphoton, cfg.detection);
  const FieldFn evaluate = [&field](double rho, double phi) {
    return field.at_polar(rho, phi);
  };

  PolarGridSpec base = cfg.grid;
  if (base.rho_max <= 0.0) base.rho_max = default_rho_max(cfg);
  MRange m_range = cfg.m_range;

  // A hot spectrum edge means the window, not the grid, is too small:
  // widen the window (and the phi rate with it) and rerun.
  for (int attempt = 0; attempt < 4; ++attempt) {
    base.n_phi = std::max(
        base.n_phi,
        num::next_pow2(2 * std::max(std::abs(m_range.lo), std::abs(m_range.hi)) + 4));
    auto compute = [&](const PolarGridSpec& g) {
      return oam_weights(evaluate, g, m_range);
    };
    auto [spectrum, report] = num::converge_by_doubling<OAMSpectrum>(
        compute, base, cfg.convergence.tol, cfg.convergence.max_doublings);
    if (tail_ok(spectrum)) return {std::move(spectrum), std::move(report)};
    const int width = m_range.count();
    m_range = MRange{m_range.lo - width, m_range.hi + width};
  }
  throw TailNotNegligible("spectrum weight at the m-range edge exceeds " +
                          std::to_string(kTailTolerance) +
                          " after widening the window");
}

JointResult run_joint(const ExperimentConfig& cfg, int threads) {
  cfg.validate();
  BiphotonSample biphoton(cfg);
  const JointFieldFn evaluate = [&biphoton](Vec2 P, Vec2 Q) {
    return biphoton(P, Q);
  };

  PolarGridSpec base = cfg.joint_grid;
  if (base.rho_max <= 0.0) base.rho_max = default_joint_rho_max(cfg);
  const MRange range = cfg.m_range;

  auto compute = [&](const PolarGridSpec& g) {
    const num::QuadratureRule rings = num::radial_rule(g);
    return joint_oam_weights(evaluate, rings, rings, g.n_phi, range, range,
                             threads);
  };
  auto [spectrum, report] = num::converge_by_doubling<JointOAMSpectrum>(
      compute, base, cfg.convergence.tol, cfg.convergence.max_doublings);
  return {std::move(spectrum), std::move(report)};
}

LengthsResult run_lengths(const ExperimentConfig& cfg) {
  cfg.validate();
  LengthsResult out;
  out.crystal_length = cfg.crystal.length;
  if (cfg.geometry.theta > 0.0)
    out.l_nc = noncollinear_length(cfg.pump.waist_w0, cfg.geometry.theta);
  if (cfg.crystal.walkoff_rho0 > 0.0)
    out.l_w = walkoff_length(cfg.pump.waist_w0, cfg.crystal.walkoff_rho0);

  const double L = out.crystal_length;
  out.much_shorter_than_lnc = !out.l_nc || L < 0.5 * *out.l_nc;
  out.at_least_lnc = out.l_nc && L >= *out.l_nc;
  out.longer_than_lw = out.l_w && L > *out.l_w;
  return out;
}

SpectrumResult run_pump_walkoff(const ExperimentConfig& cfg, double z) {
  cfg.validate();
  if (!(z >= 0.0 && z <= cfg.crystal.length))
    throw ConfigInvalid("z", "must lie inside the crystal [0, " +
                                 std::to_string(cfg.crystal.length) + "] m");

  PumpWalkoffProfile profile;
  profile.spec = cfg.pump;
  profile.rho0 = cfg.crystal.walkoff_rho0;
  profile.z = z;
  profile.k_p0 = center_wavenumber(Photon::Pump, cfg);

  PolarGridSpec base = cfg.grid;
  if (base.rho_max <= 0.0) base.rho_max = 8.0 / cfg.pump.waist_w0;

  auto compute = [&](const PolarGridSpec& g) {
    return pump_oam_distribution(profile, g);
  };
  auto [spectrum, report] = num::converge_by_doubling<OAMSpectrum>(
      compute, base, cfg.convergence.tol, cfg.convergence.max_doublings);
  return {std::move(spectrum), std::move(report)};
}

std::vector<double> SweepSpec::make_range(double from, double to, int steps,
                                          bool log_scale) {
  if (steps < 2) throw ConfigInvalid("sweep.steps", "must be >= 2");
  if (log_scale && !(from > 0 && to > 0))
    throw ConfigInvalid("sweep.range", "log scale requires positive bounds");
  if (from == to) throw ConfigInvalid("sweep.range", "from and to must differ");
  std::vector<double> out(static_cast<size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) / (steps - 1);
    out[static_cast<size_t>(i)] =
        log_scale ? from * std::pow(to / from, t) : from + (to - from) * t;
  }
  return out;
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigInvalid("sweep.values", "must be non-empty");
  if (values.size() == 1) return;
  const bool up = values[1] > values[0];
  for (size_t i = 1; i < values.size(); ++i)
    if ((up && values[i] <= values[i - 1]) || (!up && values[i] >= values[i - 1]))
      throw ConfigInvalid("sweep.values", "must be strictly monotone");
  if (parameter == Parameter::ZPosition && metric != Metric::PumpOamWidth)
    throw ConfigInvalid("sweep.parameter",
                        "z_position sweeps require the pump_oam_width metric");
}

namespace {

ExperimentConfig with_parameter(const ExperimentConfig& base,
                                SweepSpec::Parameter parameter, double value) {
  ExperimentConfig cfg = base;
  switch (parameter) {
    case SweepSpec::Parameter::WaistW0: cfg.pump.waist_w0 = value; break;
    case SweepSpec::Parameter::Theta: cfg.geometry.theta = value; break;
    case SweepSpec::Parameter::LengthL: cfg.crystal.length = value; break;
    case SweepSpec::Parameter::WalkoffRho0: cfg.crystal.walkoff_rho0 = value; break;
    case SweepSpec::Parameter::ZPosition: break;  // consumed by the metric
  }
  return cfg;
}

SweepRow evaluate_row(const ExperimentConfig& base, const SweepSpec& sweep,
                      double value) {
  SweepRow row;
  row.value = value;
  try {
    const ExperimentConfig cfg = with_parameter(base, sweep.parameter, value);
    switch (sweep.metric) {
      case SweepSpec::Metric::ViolationWeight: {
        SpectrumResult res = run_spectrum(cfg);
        row.metric_value = selection_rule_violation(res.spectrum, cfg.pump.oam_mp);
        row.converged = res.report.converged;
        break;
      }
      case SweepSpec::Metric::FullSpectrum: {
        SpectrumResult res = run_spectrum(cfg);
        row.spectrum = std::move(res.spectrum);
        row.metric_value = selection_rule_violation(row.spectrum, cfg.pump.oam_mp);
        row.converged = res.report.converged;
        break;
      }
      case SweepSpec::Metric::PumpOamWidth: {
        const double z = sweep.parameter == SweepSpec::Parameter::ZPosition
                             ? value
                             : cfg.crystal.length;
        SpectrumResult res = run_pump_walkoff(cfg, z);
        row.metric_value = res.spectrum.participation_number();
        row.converged = res.report.converged;
        break;
      }
    }
    row.ok = true;
  } catch (const Error& e) {
    row.ok = false;
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg,
                                const SweepSpec& sweep, int threads) {
  cfg.validate();
  sweep.validate();
  const size_t n = sweep.values.size();
  std::vector<SweepRow> rows(n);
  threads = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  if (threads == 1) {
    for (size_t i = 0; i < n; ++i)
      rows[i] = evaluate_row(cfg, sweep, sweep.values[i]);
    return rows;
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
      rows[i] = evaluate_row(cfg, sweep, sweep.values[i]);
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return rows;
}

}  // namespace spdc
