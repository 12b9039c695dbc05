#pragma once

#include <stdexcept>
#include <string>

namespace spdc {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// |P| exceeds omega*n/c: the transverse wavevector lies outside the
// propagating cone, usually a sign that a grid is too wide.
struct EvanescentWave : Error {
  using Error::Error;
};

// A characteristic length was requested at zero angle (result is infinite).
struct DegenerateAngle : Error {
  using Error::Error;
};

// Requested azimuthal order exceeds what the phi grid can represent.
struct NyquistViolation : Error {
  using Error::Error;
};

// Total field power below representable threshold; weights are undefined.
struct ZeroField : Error {
  using Error::Error;
};

// Operation called for a scenario it is not defined in.
struct ScenarioMismatch : Error {
  using Error::Error;
};

// Spiral-harmonic sum could not reach the tail tolerance within the
// supported Bessel order range.
struct TruncationNotConverged : Error {
  using Error::Error;
};

// Doubling the integration grid still changes the result beyond tolerance.
struct QuadratureNotConverged : Error {
  using Error::Error;
};

// Argument outside the supported envelope of a special function.
struct OutOfSupportedRange : Error {
  using Error::Error;
};

// Spectrum weight at the edge of the reported m range is not negligible;
// the range was too small for this field.
struct TailNotNegligible : Error {
  using Error::Error;
};

// Invalid configuration; carries the offending field name.
struct ConfigInvalid : Error {
  ConfigInvalid(std::string field_name, const std::string& message)
      : Error(field_name + ": " + message), field(std::move(field_name)) {}
  std::string field;
};

}  // namespace spdc
