#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "spdc/numerics.hpp"
#include "spdc/oam.hpp"
#include "spdc/pipeline.hpp"
#include "spdc/types.hpp"

namespace spdc::io {

using nlohmann::json;

// Lengths accept unit-suffixed strings ("405nm", "100um", "10mm", "1m") or
// bare numbers in meters; angles accept "deg"/"mrad"/"rad" or bare radians.
double parse_length(const json& value, const std::string& field);
double parse_angle(const json& value, const std::string& field);
double parse_length_str(const std::string& text, const std::string& field);
double parse_angle_str(const std::string& text, const std::string& field);

// %.12e
std::string format_number(double v);

ExperimentConfig config_from_json(const json& doc);
ExperimentConfig load_config(const std::string& path);
json config_to_json(const ExperimentConfig& cfg);

json convergence_to_json(const num::ConvergenceReport& report);

void write_spectrum_csv(std::ostream& os, const OAMSpectrum& spectrum);
json spectrum_to_json(const OAMSpectrum& spectrum,
                      const num::ConvergenceReport* report);

void write_joint_csv(std::ostream& os, const JointOAMSpectrum& spectrum);
json joint_to_json(const JointOAMSpectrum& spectrum,
                   const num::ConvergenceReport* report);

void write_lengths_csv(std::ostream& os, const LengthsResult& lengths);
json lengths_to_json(const LengthsResult& lengths);

void write_sweep_csv(std::ostream& os, const SweepSpec& sweep,
                     const std::vector<SweepRow>& rows);
json sweep_to_json(const SweepSpec& sweep, const std::vector<SweepRow>& rows);

std::string parameter_name(SweepSpec::Parameter p);
std::string metric_name(SweepSpec::Metric m);
SweepSpec::Parameter parameter_from_name(const std::string& name);
SweepSpec::Metric metric_from_name(const std::string& name);

}  // namespace spdc::io
