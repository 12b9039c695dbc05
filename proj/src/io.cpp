#include "spdc/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace spdc::io {

namespace {

struct UnitScale {
  const char* suffix;
  double scale;
};

constexpr UnitScale kLengthUnits[] = {
    {"nm", 1e-9}, {"um", 1e-6}, {"mm", 1e-3}, {"cm", 1e-2}, {"m", 1.0}};
constexpr UnitScale kAngleUnits[] = {
    {"deg", M_PI / 180.0}, {"mrad", 1e-3}, {"rad", 1.0}};

double parse_with_units(const std::string& text, const UnitScale* units,
                        size_t n_units, const std::string& field) {
  size_t end = text.size();
  while (end > 0 && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  size_t split = end;
  while (split > 0 && std::isalpha(static_cast<unsigned char>(text[split - 1])))
    --split;
  const std::string suffix = text.substr(split, end - split);
  while (split > 0 && std::isspace(static_cast<unsigned char>(text[split - 1])))
    --split;
  const std::string number = text.substr(0, split);

  char* tail = nullptr;
  const double value = std::strtod(number.c_str(), &tail);
  if (tail == number.c_str() || *tail != '\0')
    throw ConfigInvalid(field, "cannot parse number in '" + text + "'");
  if (suffix.empty()) return value;  // bare number: SI
  for (size_t i = 0; i < n_units; ++i)
    if (suffix == units[i].suffix) return value * units[i].scale;
  throw ConfigInvalid(field, "unknown unit '" + suffix + "' in '" + text + "'");
}

}  // namespace

double parse_length_str(const std::string& text, const std::string& field) {
  return parse_with_units(text, kLengthUnits, std::size(kLengthUnits), field);
}

double parse_angle_str(const std::string& text, const std::string& field) {
  return parse_with_units(text, kAngleUnits, std::size(kAngleUnits), field);
}

double parse_length(const json& value, const std::string& field) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return parse_length_str(value.get<std::string>(), field);
  throw ConfigInvalid(field, "expected a number (m) or a unit-suffixed string");
}

double parse_angle(const json& value, const std::string& field) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return parse_angle_str(value.get<std::string>(), field);
  throw ConfigInvalid(field, "expected a number (rad) or a unit-suffixed string");
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

namespace {

Scenario scenario_from_name(const std::string& name) {
  if (name == "full_cone") return Scenario::FullConeNoncritical;
  if (name == "non_collinear") return Scenario::NonCollinear;
  if (name == "full_cone_walkoff") return Scenario::FullConeWalkoff;
  throw ConfigInvalid("geometry.scenario",
                      "expected full_cone | non_collinear | full_cone_walkoff, "
                      "got '" + name + "'");
}

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::FullConeNoncritical: return "full_cone";
    case Scenario::NonCollinear: return "non_collinear";
    case Scenario::FullConeWalkoff: return "full_cone_walkoff";
  }
  return "";
}

PolarGridSpec grid_from_json(const json& g, PolarGridSpec defaults,
                             const std::string& prefix) {
  PolarGridSpec grid = defaults;
  if (g.contains("n_phi")) grid.n_phi = g.at("n_phi").get<int>();
  if (g.contains("n_rho")) grid.n_rho = g.at("n_rho").get<int>();
  if (g.contains("rho_max")) {
    const json& r = g.at("rho_max");
    if (r.is_string() && r.get<std::string>() == "auto")
      grid.rho_max = 0.0;
    else
      grid.rho_max = r.get<double>();  // rad/m
  }
  if (g.contains("radial_rule")) {
    const std::string rule = g.at("radial_rule").get<std::string>();
    if (rule == "gauss_legendre")
      grid.radial_rule = RadialRule::GaussLegendre;
    else if (rule == "uniform")
      grid.radial_rule = RadialRule::Uniform;
    else
      throw ConfigInvalid(prefix + ".radial_rule",
                          "expected gauss_legendre | uniform");
  }
  return grid;
}

json grid_to_json(const PolarGridSpec& grid) {
  json g;
  g["n_phi"] = grid.n_phi;
  g["n_rho"] = grid.n_rho;
  g["rho_max"] = grid.rho_max;
  g["radial_rule"] = grid.radial_rule == RadialRule::GaussLegendre
                         ? "gauss_legendre"
                         : "uniform";
  return g;
}

}  // namespace

ExperimentConfig config_from_json(const json& doc) {
  ExperimentConfig cfg;
  if (doc.contains("pump")) {
    const json& p = doc.at("pump");
    if (p.contains("wavelength"))
      cfg.pump.wavelength = parse_length(p.at("wavelength"), "pump.wavelength");
    if (p.contains("waist"))
      cfg.pump.waist_w0 = parse_length(p.at("waist"), "pump.waist");
    if (p.contains("oam")) cfg.pump.oam_mp = p.at("oam").get<int>();
    if (p.contains("amplitude"))
      cfg.pump.amplitude_e0 = p.at("amplitude").get<double>();
  }
  if (doc.contains("crystal")) {
    const json& c = doc.at("crystal");
    if (c.contains("length"))
      cfg.crystal.length = parse_length(c.at("length"), "crystal.length");
    if (c.contains("n_pump")) cfg.crystal.n_pump = c.at("n_pump").get<double>();
    if (c.contains("n_signal"))
      cfg.crystal.n_signal = c.at("n_signal").get<double>();
    if (c.contains("n_idler")) cfg.crystal.n_idler = c.at("n_idler").get<double>();
    if (c.contains("walkoff_angle"))
      cfg.crystal.walkoff_rho0 =
          parse_angle(c.at("walkoff_angle"), "crystal.walkoff_angle");
    if (c.contains("qpm")) {
      const json& q = c.at("qpm");
      if (q.is_string()) {
        const std::string mode = q.get<std::string>();
        if (mode == "auto")
          cfg.crystal.qpm = QpmMode::auto_center();
        else if (mode == "none")
          cfg.crystal.qpm = QpmMode::none();
        else
          throw ConfigInvalid("crystal.qpm",
                              "expected auto | none | {\"grating\": rad/m}");
      } else if (q.is_object() && q.contains("grating")) {
        cfg.crystal.qpm = QpmMode::explicit_grating(q.at("grating").get<double>());
      } else {
        throw ConfigInvalid("crystal.qpm",
                            "expected auto | none | {\"grating\": rad/m}");
      }
    }
  }
  if (doc.contains("geometry")) {
    const json& g = doc.at("geometry");
    if (g.contains("scenario"))
      cfg.geometry.scenario = scenario_from_name(g.at("scenario").get<std::string>());
    if (g.contains("theta"))
      cfg.geometry.theta = parse_angle(g.at("theta"), "geometry.theta");
  }
  if (doc.contains("detection")) {
    const json& d = doc.at("detection");
    const std::string mode =
        d.contains("mode") ? d.at("mode").get<std::string>() : "idler_at_zero";
    if (mode == "idler_at_zero") {
      cfg.detection = Detection::idler_at_zero();
    } else if (mode == "idler_gaussian") {
      if (!d.contains("idler_waist"))
        throw ConfigInvalid("detection.idler_waist",
                            "required for idler_gaussian");
      cfg.detection = Detection::idler_gaussian(
          parse_length(d.at("idler_waist"), "detection.idler_waist"));
    } else {
      throw ConfigInvalid("detection.mode",
                          "expected idler_at_zero | idler_gaussian");
    }
  }
  if (doc.contains("grid"))
    cfg.grid = grid_from_json(doc.at("grid"), cfg.grid, "grid");
  if (doc.contains("joint_grid"))
    cfg.joint_grid = grid_from_json(doc.at("joint_grid"), cfg.joint_grid,
                                    "joint_grid");
  if (doc.contains("convergence")) {
    const json& c = doc.at("convergence");
    if (c.contains("tol")) cfg.convergence.tol = c.at("tol").get<double>();
    if (c.contains("max_doublings"))
      cfg.convergence.max_doublings = c.at("max_doublings").get<int>();
  }
  if (doc.contains("oam")) {
    const json& o = doc.at("oam");
    if (o.contains("m_min")) cfg.m_range.lo = o.at("m_min").get<int>();
    if (o.contains("m_max")) cfg.m_range.hi = o.at("m_max").get<int>();
  }
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    if (o.contains("path")) cfg.output.path = o.at("path").get<std::string>();
    if (o.contains("format")) {
      const std::string fmt = o.at("format").get<std::string>();
      if (fmt == "csv")
        cfg.output.format = OutputFormat::Csv;
      else if (fmt == "json")
        cfg.output.format = OutputFormat::Json;
      else
        throw ConfigInvalid("output.format", "expected csv | json");
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("config", "cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigInvalid("config", "invalid JSON in '" + path + "': " + e.what());
  }
  return config_from_json(doc);
}

json config_to_json(const ExperimentConfig& cfg) {
  json doc;
  doc["pump"] = {{"wavelength", cfg.pump.wavelength},
                 {"waist", cfg.pump.waist_w0},
                 {"oam", cfg.pump.oam_mp},
                 {"amplitude", cfg.pump.amplitude_e0}};
  json qpm;
  switch (cfg.crystal.qpm.kind) {
    case QpmMode::Kind::AutoCenter: qpm = "auto"; break;
    case QpmMode::Kind::None: qpm = "none"; break;
    case QpmMode::Kind::ExplicitGrating:
      qpm = json{{"grating", cfg.crystal.qpm.grating_kg}};
      break;
  }
  doc["crystal"] = {{"length", cfg.crystal.length},
                    {"n_pump", cfg.crystal.n_pump},
                    {"n_signal", cfg.crystal.n_signal},
                    {"n_idler", cfg.crystal.n_idler},
                    {"walkoff_angle", cfg.crystal.walkoff_rho0},
                    {"qpm", qpm}};
  doc["geometry"] = {{"scenario", scenario_name(cfg.geometry.scenario)},
                     {"theta", cfg.geometry.theta}};
  if (cfg.detection.mode == Detection::Mode::IdlerAtZero)
    doc["detection"] = {{"mode", "idler_at_zero"}};
  else
    doc["detection"] = {{"mode", "idler_gaussian"},
                        {"idler_waist", cfg.detection.idler_waist_w1}};
  doc["grid"] = grid_to_json(cfg.grid);
  doc["joint_grid"] = grid_to_json(cfg.joint_grid);
  doc["convergence"] = {{"tol", cfg.convergence.tol},
                        {"max_doublings", cfg.convergence.max_doublings}};
  doc["oam"] = {{"m_min", cfg.m_range.lo}, {"m_max", cfg.m_range.hi}};
  doc["output"] = {{"path", cfg.output.path},
                   {"format", cfg.output.format == OutputFormat::Csv ? "csv"
                                                                     : "json"}};
  return doc;
}

json convergence_to_json(const num::ConvergenceReport& report) {
  json levels = json::array();
  for (const auto& level : report.levels) {
    char checksum[20];
    std::snprintf(checksum, sizeof(checksum), "%016llx",
                  static_cast<unsigned long long>(level.checksum));
    levels.push_back({{"n_phi", level.grid.n_phi},
                      {"n_rho", level.grid.n_rho},
                      {"rho_max", level.grid.rho_max},
                      {"max_delta", std::isfinite(level.max_delta)
                                        ? json(level.max_delta)
                                        : json(nullptr)},
                      {"checksum", checksum}});
  }
  return {{"converged", report.converged},
          {"tolerance", report.final_tolerance},
          {"levels", levels}};
}

void write_spectrum_csv(std::ostream& os, const OAMSpectrum& spectrum) {
  os << "m,weight\n";
  for (int m = spectrum.m_min; m <= spectrum.m_max; ++m)
    os << m << ',' << format_number(spectrum.weight(m)) << '\n';
}

json spectrum_to_json(const OAMSpectrum& spectrum,
                      const num::ConvergenceReport* report) {
  json rows = json::array();
  for (int m = spectrum.m_min; m <= spectrum.m_max; ++m)
    rows.push_back({{"m", m}, {"weight", spectrum.weight(m)}});
  json doc{{"spectrum", rows}};
  if (report) doc["convergence"] = convergence_to_json(*report);
  return doc;
}

void write_joint_csv(std::ostream& os, const JointOAMSpectrum& spectrum) {
  os << "m1,m2,weight\n";
  for (int i = spectrum.m1.lo; i <= spectrum.m1.hi; ++i)
    for (int j = spectrum.m2.lo; j <= spectrum.m2.hi; ++j)
      os << i << ',' << j << ',' << format_number(spectrum.weight(i, j)) << '\n';
}

json joint_to_json(const JointOAMSpectrum& spectrum,
                   const num::ConvergenceReport* report) {
  json rows = json::array();
  for (int i = spectrum.m1.lo; i <= spectrum.m1.hi; ++i)
    for (int j = spectrum.m2.lo; j <= spectrum.m2.hi; ++j)
      rows.push_back({{"m1", i}, {"m2", j}, {"weight", spectrum.weight(i, j)}});
  json doc{{"joint_spectrum", rows}};
  if (report) doc["convergence"] = convergence_to_json(*report);
  return doc;
}

namespace {

std::string length_or_inf(const std::optional<double>& v) {
  return v ? format_number(*v) : "inf";
}

}  // namespace

void write_lengths_csv(std::ostream& os, const LengthsResult& lengths) {
  os << "quantity,value_m\n";
  os << "L_nc," << length_or_inf(lengths.l_nc) << '\n';
  os << "L_w," << length_or_inf(lengths.l_w) << '\n';
  os << "L," << format_number(lengths.crystal_length) << '\n';
}

json lengths_to_json(const LengthsResult& lengths) {
  json doc;
  doc["L_nc_m"] = lengths.l_nc ? json(*lengths.l_nc) : json("inf");
  doc["L_w_m"] = lengths.l_w ? json(*lengths.l_w) : json("inf");
  doc["L_m"] = lengths.crystal_length;
  doc["regimes"] = {{"L_much_less_than_Lnc", lengths.much_shorter_than_lnc},
                    {"L_ge_Lnc", lengths.at_least_lnc},
                    {"L_gt_Lw", lengths.longer_than_lw}};
  return doc;
}

std::string parameter_name(SweepSpec::Parameter p) {
  switch (p) {
    case SweepSpec::Parameter::WaistW0: return "waist_w0";
    case SweepSpec::Parameter::Theta: return "theta";
    case SweepSpec::Parameter::LengthL: return "length_L";
    case SweepSpec::Parameter::WalkoffRho0: return "walkoff_rho0";
    case SweepSpec::Parameter::ZPosition: return "z_position";
  }
  return "";
}

std::string metric_name(SweepSpec::Metric m) {
  switch (m) {
    case SweepSpec::Metric::ViolationWeight: return "violation_weight";
    case SweepSpec::Metric::FullSpectrum: return "full_spectrum";
    case SweepSpec::Metric::PumpOamWidth: return "pump_oam_width";
  }
  return "";
}

SweepSpec::Parameter parameter_from_name(const std::string& name) {
  if (name == "waist_w0") return SweepSpec::Parameter::WaistW0;
  if (name == "theta") return SweepSpec::Parameter::Theta;
  if (name == "length_L") return SweepSpec::Parameter::LengthL;
  if (name == "walkoff_rho0") return SweepSpec::Parameter::WalkoffRho0;
  if (name == "z_position") return SweepSpec::Parameter::ZPosition;
  throw ConfigInvalid("sweep.parameter",
                      "expected waist_w0 | theta | length_L | walkoff_rho0 | "
                      "z_position, got '" + name + "'");
}

SweepSpec::Metric metric_from_name(const std::string& name) {
  if (name == "violation_weight") return SweepSpec::Metric::ViolationWeight;
  if (name == "full_spectrum") return SweepSpec::Metric::FullSpectrum;
  if (name == "pump_oam_width") return SweepSpec::Metric::PumpOamWidth;
  throw ConfigInvalid("sweep.metric",
                      "expected violation_weight | full_spectrum | "
                      "pump_oam_width, got '" + name + "'");
}

void write_sweep_csv(std::ostream& os, const SweepSpec& sweep,
                     const std::vector<SweepRow>& rows) {
  const std::string param = parameter_name(sweep.parameter);
  if (sweep.metric == SweepSpec::Metric::FullSpectrum) {
    os << "param,value,m,weight,converged\n";
    for (const SweepRow& row : rows) {
      if (!row.ok) continue;
      for (int m = row.spectrum.m_min; m <= row.spectrum.m_max; ++m)
        os << param << ',' << format_number(row.value) << ',' << m << ','
           << format_number(row.spectrum.weight(m)) << ','
           << (row.converged ? 1 : 0) << '\n';
    }
    return;
  }
  os << "param,value," << metric_name(sweep.metric) << ",converged\n";
  for (const SweepRow& row : rows) {
    if (!row.ok) {
      os << param << ',' << format_number(row.value) << ",nan,0\n";
      continue;
    }
    os << param << ',' << format_number(row.value) << ','
       << format_number(row.metric_value) << ',' << (row.converged ? 1 : 0)
       << '\n';
  }
}

json sweep_to_json(const SweepSpec& sweep, const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const SweepRow& row : rows) {
    json r{{"param", parameter_name(sweep.parameter)},
           {"value", row.value},
           {"converged", row.converged}};
    if (!row.ok) {
      r["error"] = row.error;
    } else if (sweep.metric == SweepSpec::Metric::FullSpectrum) {
      r["spectrum"] = spectrum_to_json(row.spectrum, nullptr)["spectrum"];
    } else {
      r[metric_name(sweep.metric)] = row.metric_value;
    }
    out.push_back(r);
  }
  return {{"rows", out}};
}

}  // namespace spdc::io
