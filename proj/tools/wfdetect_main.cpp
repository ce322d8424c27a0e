// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wf/cli.hpp"
#include "wf/error.hpp"

namespace {

struct FlagState {
  std::string config_path;
  std::string signal, field, from_csv, grid, window, backend, x0, dir, cone;
  std::string out, csv, dump_stft, weights;
  double half_angle = 15.0, k_radius = 0.0, epsilon = 0.05;
  int center_count = 3, schedule_count = 4, stride = 16, directions = 16,
      parallel = 0;
  bool refine = false, inject_phase_bug = false;
};

void add_source_flags(CLI::App* cmd, FlagState& fs) {
  cmd->add_option("--signal", fs.signal, "catalog entry spec, e.g. delta:x0=0");
  cmd->add_option("--field", fs.field, "field file produced by synth");
  cmd->add_option("--grid", fs.grid, "grid spec n=<n>[x<n>],dx=<dx>[,origin=..]");
}

void add_query_flags(CLI::App* cmd, FlagState& fs) {
  cmd->add_option("--window", fs.window, "window spec bump:R=<R>,a=<a>");
  cmd->add_option("--backend", fs.backend,
                  "backend spec sobolev:s=.. | flq:q=..,s=.. | ultra:...");
  cmd->add_option("--half-angle", fs.half_angle, "cone half angle, degrees");
  cmd->add_option("--k-radius", fs.k_radius,
                  "compact neighbourhood half width (0: 8 spacings)");
  cmd->add_option("--center-count", fs.center_count,
                  "centers per axis spanning K (odd, >= 3)");
  cmd->add_option("--epsilon", fs.epsilon, "tail tolerance");
  cmd->add_option("--schedule-count", fs.schedule_count,
                  "number of dyadic schedule radii");
  cmd->add_flag("--refine", fs.refine,
                "retry singular verdicts at half the cone angle");
  cmd->add_option("--parallel", fs.parallel, "worker thread count (0: auto)");
}

// Flags present on the command line override file-config values.
void apply_overrides(const CLI::App* cmd, const FlagState& fs,
                     nlohmann::json& j) {
  auto set_if = [&](const char* flag, const char* key, auto value) {
    const CLI::Option* opt = cmd->get_option_no_throw(flag);
    if (opt && opt->count() > 0) j[key] = value;
  };
  set_if("--signal", "signal", fs.signal);
  set_if("--field", "field", fs.field);
  set_if("--from-csv", "from_csv", fs.from_csv);
  set_if("--grid", "grid", fs.grid);
  set_if("--window", "window", fs.window);
  set_if("--backend", "backend", fs.backend);
  set_if("--x0", "x0", fs.x0);
  set_if("--dir", "dir", fs.dir);
  set_if("--cone", "cone", fs.cone);
  set_if("--half-angle", "half_angle_deg", fs.half_angle);
  set_if("--k-radius", "k_radius", fs.k_radius);
  set_if("--center-count", "center_count", fs.center_count);
  set_if("--epsilon", "epsilon", fs.epsilon);
  set_if("--schedule-count", "schedule_count", fs.schedule_count);
  set_if("--stride", "stride", fs.stride);
  set_if("--directions", "directions", fs.directions);
  set_if("--refine", "refine", fs.refine);
  set_if("--parallel", "parallel", fs.parallel);
  set_if("--out", "out", fs.out);
  set_if("--csv", "csv", fs.csv);
  set_if("--dump-stft", "dump_stft", fs.dump_stft);
  set_if("--weights", "weights", fs.weights);
  set_if("--inject-phase-bug", "inject_phase_bug", fs.inject_phase_bug);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wfdetect: direction-resolved singularity detection for "
               "sampled signals via windowed Fourier analysis"};
  app.require_subcommand(1);
  app.fallthrough();  // parent --config stays reachable after the subcommand
  FlagState fs;
  app.add_option("--config", fs.config_path,
                 "JSON config file (flags override file values)");

  CLI::App* synth = app.add_subcommand("synth", "sample a catalog signal");
  add_source_flags(synth, fs);
  synth->add_option("--from-csv", fs.from_csv, "import a small CSV field");
  synth->add_option("--out", fs.out, "output field file");

  CLI::App* detect =
      app.add_subcommand("detect", "single (point, direction) membership test");
  add_source_flags(detect, fs);
  add_query_flags(detect, fs);
  detect->add_option("--x0", fs.x0, "query point, comma separated");
  detect->add_option("--dir", fs.dir, "direction: +1/-1 (dim 1) or degrees");
  detect->add_option("--cone", fs.cone, "cone spec cone:axis=..,angle=..");
  detect->add_option("--out", fs.out, "also write the JSON to a file");
  detect->add_option("--dump-stft", fs.dump_stft, "dump the center slices");

  CLI::App* sweep = app.add_subcommand("sweep", "full (x, direction) report");
  add_source_flags(sweep, fs);
  add_query_flags(sweep, fs);
  sweep->add_option("--stride", fs.stride, "x-grid stride in nodes");
  sweep->add_option("--directions", fs.directions, "direction count");
  sweep->add_option("--out", fs.out, "report JSON path");
  sweep->add_option("--csv", fs.csv, "CSV export of (x, dir_angle, score)");

  CLI::App* sigma =
      app.add_subcommand("sigma", "global directions of a compact field");
  add_source_flags(sigma, fs);
  sigma->add_option("--backend", fs.backend, "backend spec");
  sigma->add_option("--directions", fs.directions, "direction count");
  sigma->add_option("--half-angle", fs.half_angle, "cone half angle, degrees");
  sigma->add_option("--epsilon", fs.epsilon, "tail tolerance");
  sigma->add_option("--schedule-count", fs.schedule_count, "schedule radii");
  sigma->add_option("--out", fs.out, "also write the JSON to a file");

  CLI::App* weights =
      app.add_subcommand("weights-check", "weight sequence condition report");
  weights->add_option("--weights", fs.weights, "gevrey:s=<s>,pmax=<p>");
  weights->add_option("--out", fs.out, "also write the JSON to a file");

  CLI::App* validate =
      app.add_subcommand("validate", "engine-vs-oracle validation suites");
  validate->add_option("--epsilon", fs.epsilon, "calibration tolerance");
  validate->add_option("--out", fs.out, "also write the JSON to a file");
  validate
      ->add_flag("--inject-phase-bug", fs.inject_phase_bug,
                 "negative control: break the phase convention")
      ->group("");  // hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  std::string command = sub->get_name();

  nlohmann::json j = nlohmann::json::object();
  if (!fs.config_path.empty()) {
    std::ifstream in(fs.config_path);
    if (!in) {
      std::cerr << "error: cannot read config '" << fs.config_path << "'\n";
      return 1;
    }
    j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) {
      std::cerr << "usage error: config is not valid JSON\n";
      return 2;
    }
  }
  apply_overrides(sub, fs, j);

  try {
    const wf::cli::RunConfig cfg = wf::cli::config_from_json(j, command);
    return wf::cli::run_command(cfg, std::cout, std::cerr);
  } catch (const wf::Error& e) {
    std::cerr << (e.kind() == wf::ErrorKind::invalid_argument ? "usage error: "
                                                              : "error: ")
              << e.what() << "\n";
    return e.kind() == wf::ErrorKind::invalid_argument ? 2 : 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
}
