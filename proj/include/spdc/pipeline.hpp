#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spdc/numerics.hpp"
#include "spdc/oam.hpp"
#include "spdc/types.hpp"

namespace spdc {

struct SpectrumResult {
  OAMSpectrum spectrum;
  num::ConvergenceReport report;
};

struct JointResult {
  JointOAMSpectrum spectrum;
  num::ConvergenceReport report;
};

// Signal-photon OAM spectrum for the configured scenario and detection,
// under grid-doubling convergence control with an m-range tail check.
SpectrumResult run_spectrum(const ExperimentConfig& cfg);

// Joint (m1, m2) spectrum of the two-photon mode function.
JointResult run_joint(const ExperimentConfig& cfg, int threads = 1);

// Characteristic lengths and regime flags. Infinite lengths (theta = 0 or
// rho0 = 0) are reported as empty optionals, never as overflowed numbers.
struct LengthsResult {
  std::optional<double> l_nc;  // m; empty = infinite
  std::optional<double> l_w;   // m; empty = infinite
  double crystal_length = 0.0;
  bool much_shorter_than_lnc = false;  // L < 0.5 L_nc
  bool at_least_lnc = false;           // L >= L_nc
  bool longer_than_lw = false;         // L > L_w
};
LengthsResult run_lengths(const ExperimentConfig& cfg);

// Pump OAM spectrum at position z inside the crystal (walk-off broadening).
SpectrumResult run_pump_walkoff(const ExperimentConfig& cfg, double z);

struct SweepSpec {
  enum class Parameter { WaistW0, Theta, LengthL, WalkoffRho0, ZPosition };
  enum class Metric { ViolationWeight, FullSpectrum, PumpOamWidth };

  Parameter parameter = Parameter::WaistW0;
  std::vector<double> values;  // SI units, strictly monotone
  Metric metric = Metric::ViolationWeight;

  static std::vector<double> make_range(double from, double to, int steps,
                                        bool log_scale);
  void validate() const;
};

struct SweepRow {
  double value = 0.0;
  bool ok = false;
  std::string error;          // set when ok is false; the run continues
  double metric_value = 0.0;  // violation weight or participation number
  bool converged = false;
  OAMSpectrum spectrum;       // filled for the FullSpectrum metric
};

// One row per parameter value; rows are independent and run on a worker
// pool. A failing row records its error and does not abort the sweep.
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg,
                                const SweepSpec& sweep, int threads = 1);

}  // namespace spdc
