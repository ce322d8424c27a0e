// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wf/detector.hpp"
#include "wf/weights.hpp"

namespace wf::cli {

// Resolved run configuration. Parsed from a single JSON document (unknown
// keys rejected per command); command-line flags override file values.
struct RunConfig {
  std::string command;
  std::optional<std::string> signal;
  std::optional<std::string> field_path;
  std::optional<std::string> from_csv;
  std::optional<std::string> grid;
  std::string window = "bump:R=0.1,a=2";
  std::string backend = "sobolev:s=0";
  std::vector<double> x0{0.0};
  std::string dir = "+1";  // "+1"/"-1" in dim 1, axis degrees in dim 2
  double half_angle_deg = 15.0;
  double k_radius = 0.0;  // 0: 8 grid spacings
  int center_count = 3;
  double epsilon = 0.05;
  int schedule_count = 4;
  std::vector<double> schedule_radii;  // optional explicit dyadic radii
  int stride = 16;
  int directions = 16;
  bool refine = false;
  int parallel = 0;
  std::optional<std::string> out;
  std::optional<std::string> csv;
  std::optional<std::string> dump_stft;
  std::string weights = "gevrey:s=2,pmax=100";
  bool inject_phase_bug = false;
};

RunConfig config_from_json(const nlohmann::json& j,
                           const std::string& command);

// Exit codes: 0 success (decisions are data, not status), 1 operational
// failure, 2 usage error (malformed specs or flags).
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int cmd_synth(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_detect(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sigma(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_weights_check(const RunConfig& cfg, std::ostream& out,
                      std::ostream& err);
int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Building blocks exposed for tests (byte-determinism is asserted on these).
SampledField load_input_field(const RunConfig& cfg);
nlohmann::ordered_json sweep_report_json(const RunConfig& cfg,
                                         const WavefrontReport& report);
std::string report_csv(const WavefrontReport& report);
nlohmann::ordered_json condition_report_json(const ConditionReport& rep);
WavefrontReport run_sweep(const RunConfig& cfg);

}  // namespace wf::cli
