// Command-line front end: spectra, joint spectra, parameter sweeps,
// characteristic lengths and pump walk-off analysis, CSV or JSON out.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "spdc/io.hpp"
#include "spdc/pipeline.hpp"

namespace {

struct GlobalOptions {
  std::string config_path;
  std::string out_path = "-";
  std::string format = "csv";
  int threads = 0;
  int seed = 0;  // reserved; the pipeline is deterministic
};

spdc::ExperimentConfig load_or_default(const GlobalOptions& opt) {
  if (opt.config_path.empty()) return spdc::ExperimentConfig{};
  return spdc::io::load_config(opt.config_path);
}

int resolve_threads(const GlobalOptions& opt) {
  if (opt.threads > 0) return opt.threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void emit(const GlobalOptions& opt, const std::string& text) {
  if (opt.out_path == "-" || opt.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out_path, std::ios::binary);
  if (!out) throw spdc::Error("cannot open output file '" + opt.out_path + "'");
  out << text;
}

std::vector<double> parse_value_list(const std::string& csv, bool angle,
                                     const std::string& field) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(angle ? spdc::io::parse_angle_str(item, field)
                        : spdc::io::parse_length_str(item, field));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OAM spectra of photon pairs from parametric down-conversion"};
  app.require_subcommand(1);

  GlobalOptions opt;
  app.add_option("--config", opt.config_path, "JSON configuration file");
  auto* out_opt =
      app.add_option("--out", opt.out_path, "output path ('-' = stdout)");
  auto* format_opt = app.add_option("--format", opt.format, "csv | json")
                         ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", opt.threads,
                 "worker threads (default: available parallelism)");
  app.add_option("--seed", opt.seed, "reserved (deterministic pipeline)");

  auto* cmd_spectrum =
      app.add_subcommand("spectrum", "signal-photon OAM spectrum");
  auto* cmd_joint = app.add_subcommand("joint", "joint (m1, m2) OAM spectrum");
  auto* cmd_lengths =
      app.add_subcommand("lengths", "characteristic lengths and regime flags");
  cmd_spectrum->fallthrough();
  cmd_joint->fallthrough();
  cmd_lengths->fallthrough();

  auto* cmd_pump =
      app.add_subcommand("pump-walkoff", "pump OAM spectrum inside the crystal");
  cmd_pump->fallthrough();
  std::string z_text;
  cmd_pump->add_option("--z", z_text, "position inside the crystal, e.g. 5mm")
      ->required();

  auto* cmd_sweep = app.add_subcommand("sweep", "sweep one parameter");
  cmd_sweep->fallthrough();
  std::string param_name = "waist_w0";
  std::string metric_name = "violation_weight";
  std::string values_text, from_text, to_text;
  int steps = 0;
  bool log_scale = false;
  cmd_sweep->add_option("--param", param_name,
                        "waist_w0 | theta | length_L | walkoff_rho0 | z_position");
  cmd_sweep->add_option("--metric", metric_name,
                        "violation_weight | full_spectrum | pump_oam_width");
  cmd_sweep->add_option("--values", values_text,
                        "comma-separated values, unit suffixes allowed");
  cmd_sweep->add_option("--from", from_text, "range start");
  cmd_sweep->add_option("--to", to_text, "range end");
  cmd_sweep->add_option("--steps", steps, "number of range points (>= 2)");
  cmd_sweep->add_flag("--log", log_scale, "logarithmic spacing");

  CLI11_PARSE(app, argc, argv);

  try {
    const spdc::ExperimentConfig cfg = load_or_default(opt);
    // flags beat the config's output block
    if (out_opt->count() == 0) opt.out_path = cfg.output.path;
    if (format_opt->count() == 0)
      opt.format =
          cfg.output.format == spdc::OutputFormat::Csv ? "csv" : "json";
    const int threads = resolve_threads(opt);
    std::ostringstream body;
    bool converged = true;

    if (cmd_spectrum->parsed()) {
      spdc::SpectrumResult res = spdc::run_spectrum(cfg);
      converged = res.report.converged;
      if (opt.format == "csv")
        spdc::io::write_spectrum_csv(body, res.spectrum);
      else
        body << spdc::io::spectrum_to_json(res.spectrum, &res.report).dump(2)
             << '\n';
    } else if (cmd_joint->parsed()) {
      spdc::JointResult res = spdc::run_joint(cfg, threads);
      converged = res.report.converged;
      if (opt.format == "csv")
        spdc::io::write_joint_csv(body, res.spectrum);
      else
        body << spdc::io::joint_to_json(res.spectrum, &res.report).dump(2)
             << '\n';
    } else if (cmd_lengths->parsed()) {
      spdc::LengthsResult res = spdc::run_lengths(cfg);
      if (opt.format == "csv")
        spdc::io::write_lengths_csv(body, res);
      else
        body << spdc::io::lengths_to_json(res).dump(2) << '\n';
    } else if (cmd_pump->parsed()) {
      const double z = spdc::io::parse_length_str(z_text, "z");
      spdc::SpectrumResult res = spdc::run_pump_walkoff(cfg, z);
      converged = res.report.converged;
      if (opt.format == "csv")
        spdc::io::write_spectrum_csv(body, res.spectrum);
      else
        body << spdc::io::spectrum_to_json(res.spectrum, &res.report).dump(2)
             << '\n';
    } else if (cmd_sweep->parsed()) {
      spdc::SweepSpec sweep;
      sweep.parameter = spdc::io::parameter_from_name(param_name);
      sweep.metric = spdc::io::metric_from_name(metric_name);
      const bool angle = sweep.parameter == spdc::SweepSpec::Parameter::Theta ||
                         sweep.parameter ==
                             spdc::SweepSpec::Parameter::WalkoffRho0;
      if (!values_text.empty()) {
        sweep.values = parse_value_list(values_text, angle, "sweep.values");
      } else if (!from_text.empty() && !to_text.empty() && steps > 0) {
        const double from =
            angle ? spdc::io::parse_angle_str(from_text, "sweep.from")
                  : spdc::io::parse_length_str(from_text, "sweep.from");
        const double to = angle ? spdc::io::parse_angle_str(to_text, "sweep.to")
                                : spdc::io::parse_length_str(to_text, "sweep.to");
        sweep.values = spdc::SweepSpec::make_range(from, to, steps, log_scale);
      } else {
        throw spdc::ConfigInvalid(
            "sweep.values", "provide --values or --from/--to/--steps");
      }
      std::vector<spdc::SweepRow> rows = spdc::run_sweep(cfg, sweep, threads);
      for (const auto& row : rows) converged = converged && row.converged;
      if (opt.format == "csv")
        spdc::io::write_sweep_csv(body, sweep, rows);
      else
        body << spdc::io::sweep_to_json(sweep, rows).dump(2) << '\n';
    }

    emit(opt, body.str());
    return converged ? 0 : 2;
  } catch (const spdc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
