#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "spdc/errors.hpp"

namespace spdc {

using cdouble = std::complex<double>;

// Vacuum speed of light, m/s.
inline constexpr double kSpeedOfLight = 299792458.0;

// Transverse wavevector (rad/m) or any 2-vector in the transverse plane.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm2()); }

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

  static Vec2 polar(double rho, double phi) {
    return {rho * std::cos(phi), rho * std::sin(phi)};
  }
};

enum class Photon { Pump, Signal, Idler };

// The three emission/detection regimes.
enum class Scenario { FullConeNoncritical, NonCollinear, FullConeWalkoff };

struct PumpSpec {
  double wavelength = 405e-9;  // m, vacuum
  double waist_w0 = 100e-6;    // m
  int oam_mp = 0;              // pump winding number, >= 0
  double amplitude_e0 = 1.0;

  void validate() const {
    if (!(wavelength > 0)) throw ConfigInvalid("pump.wavelength", "must be > 0");
    if (!(waist_w0 > 0)) throw ConfigInvalid("pump.waist", "must be > 0");
    if (oam_mp < 0) throw ConfigInvalid("pump.oam", "must be >= 0");
  }

  friend bool operator==(const PumpSpec&, const PumpSpec&) = default;
};

// Quasi-phase-matching poling grating.
struct QpmMode {
  enum class Kind { AutoCenter, ExplicitGrating, None };
  Kind kind = Kind::AutoCenter;
  double grating_kg = 0.0;  // rad/m, used for ExplicitGrating only

  static QpmMode auto_center() { return {Kind::AutoCenter, 0.0}; }
  static QpmMode explicit_grating(double kg) { return {Kind::ExplicitGrating, kg}; }
  static QpmMode none() { return {Kind::None, 0.0}; }

  friend bool operator==(const QpmMode& a, const QpmMode& b) {
    return a.kind == b.kind &&
           (a.kind != Kind::ExplicitGrating || a.grating_kg == b.grating_kg);
  }
};

struct CrystalSpec {
  double length = 10e-3;  // m
  double n_pump = 1.8;
  double n_signal = 1.8;
  double n_idler = 1.8;
  double walkoff_rho0 = 0.0;  // rad; 0 for noncritical phase matching
  QpmMode qpm = QpmMode::auto_center();

  void validate() const {
    if (!(length > 0)) throw ConfigInvalid("crystal.length", "must be > 0");
    if (!(n_pump > 1.0)) throw ConfigInvalid("crystal.n_pump", "must be > 1");
    if (!(n_signal > 1.0)) throw ConfigInvalid("crystal.n_signal", "must be > 1");
    if (!(n_idler > 1.0)) throw ConfigInvalid("crystal.n_idler", "must be > 1");
    if (!(walkoff_rho0 >= 0.0 && walkoff_rho0 < M_PI / 2))
      throw ConfigInvalid("crystal.walkoff_angle", "must be in [0, pi/2)");
  }

  friend bool operator==(const CrystalSpec&, const CrystalSpec&) = default;
};

struct GeometrySpec {
  Scenario scenario = Scenario::FullConeNoncritical;
  double theta = 0.0;  // rad; non-collinear half-angle, theta1 = -theta2 = theta

  void validate() const {
    if (!(theta >= 0.0 && theta < M_PI / 2))
      throw ConfigInvalid("geometry.theta", "must be in [0, pi/2)");
  }

  friend bool operator==(const GeometrySpec&, const GeometrySpec&) = default;
};

// Degenerate frequencies: omega_s = omega_i = omega_p / 2.
struct PhotonFrequencies {
  double omega_p = 0.0;  // rad/s
  double omega_s = 0.0;
  double omega_i = 0.0;

  static PhotonFrequencies degenerate(double pump_wavelength) {
    PhotonFrequencies f;
    f.omega_p = 2.0 * M_PI * kSpeedOfLight / pump_wavelength;
    f.omega_s = f.omega_p / 2.0;
    f.omega_i = f.omega_p / 2.0;
    return f;
  }
};

// How the idler photon is detected when reducing to a one-photon field.
struct Detection {
  enum class Mode { IdlerAtZero, IdlerGaussian };
  Mode mode = Mode::IdlerAtZero;
  double idler_waist_w1 = 0.0;  // m, Gaussian projection width

  static Detection idler_at_zero() { return {Mode::IdlerAtZero, 0.0}; }
  static Detection idler_gaussian(double w1) { return {Mode::IdlerGaussian, w1}; }

  friend bool operator==(const Detection& a, const Detection& b) {
    return a.mode == b.mode &&
           (a.mode != Mode::IdlerGaussian || a.idler_waist_w1 == b.idler_waist_w1);
  }
};

enum class RadialRule { GaussLegendre, Uniform };

// Polar (rho, phi) sampling grid for spiral decomposition and quadrature.
struct PolarGridSpec {
  int n_phi = 128;       // uniform azimuthal samples, power of two
  int n_rho = 256;       // radial quadrature nodes
  double rho_max = 0.0;  // rad/m; 0 means auto from the physical scales
  RadialRule radial_rule = RadialRule::GaussLegendre;

  PolarGridSpec doubled() const {
    PolarGridSpec g = *this;
    g.n_phi *= 2;
    g.n_rho *= 2;
    return g;
  }

  void validate() const {
    if (n_phi < 16 || (n_phi & (n_phi - 1)) != 0)
      throw ConfigInvalid("grid.n_phi", "must be a power of two >= 16");
    if (n_rho < 16) throw ConfigInvalid("grid.n_rho", "must be >= 16");
    if (rho_max < 0) throw ConfigInvalid("grid.rho_max", "must be > 0 or 0 for auto");
  }

  friend bool operator==(const PolarGridSpec&, const PolarGridSpec&) = default;
};

struct ConvergenceSpec {
  double tol = 1e-4;       // max absolute change per spectral weight
  int max_doublings = 3;

  void validate() const {
    if (!(tol > 0)) throw ConfigInvalid("convergence.tol", "must be > 0");
    if (max_doublings < 1)
      throw ConfigInvalid("convergence.max_doublings", "must be >= 1");
  }

  friend bool operator==(const ConvergenceSpec&, const ConvergenceSpec&) = default;
};

// Reported winding-number window [lo, hi].
struct MRange {
  int lo = -10;
  int hi = 10;

  int count() const { return hi - lo + 1; }

  void validate() const {
    if (lo > hi) throw ConfigInvalid("oam.m_range", "lo must be <= hi");
  }

  friend bool operator==(const MRange&, const MRange&) = default;
};

enum class OutputFormat { Csv, Json };

// Where results go by default; command-line flags take precedence.
struct OutputSpec {
  std::string path = "-";  // "-" = stdout
  OutputFormat format = OutputFormat::Csv;

  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

// Everything needed to run one simulation.
struct ExperimentConfig {
  PumpSpec pump;
  CrystalSpec crystal;
  GeometrySpec geometry;
  Detection detection = Detection::idler_at_zero();
  PolarGridSpec grid;
  PolarGridSpec joint_grid{64, 32, 0.0, RadialRule::GaussLegendre};
  ConvergenceSpec convergence;
  MRange m_range;
  OutputSpec output;

  PhotonFrequencies frequencies() const {
    return PhotonFrequencies::degenerate(pump.wavelength);
  }

  void validate() const {
    pump.validate();
    crystal.validate();
    geometry.validate();
    grid.validate();
    joint_grid.validate();
    convergence.validate();
    m_range.validate();
    if (geometry.scenario == Scenario::NonCollinear && !(geometry.theta > 0))
      throw ConfigInvalid("geometry.theta", "non_collinear requires theta > 0");
    if (geometry.scenario == Scenario::FullConeWalkoff && !(crystal.walkoff_rho0 > 0))
      throw ConfigInvalid("crystal.walkoff_angle",
                          "full_cone_walkoff requires walkoff_angle > 0");
    if (detection.mode == Detection::Mode::IdlerGaussian &&
        !(detection.idler_waist_w1 > 0))
      throw ConfigInvalid("detection.idler_waist", "idler_gaussian requires waist > 0");
  }

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

}  // namespace spdc
