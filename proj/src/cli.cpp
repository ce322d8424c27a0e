// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "wf/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "wf/error.hpp"
#include "wf/oracle.hpp"
#include "wf/specstring.hpp"

namespace wf::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

const std::set<std::string>& allowed_keys(const std::string& command) {
  static const std::set<std::string> synth = {"command", "signal", "from_csv",
                                              "grid", "out"};
  static const std::set<std::string> detect = {
      "command",       "signal",      "field",     "grid",
      "window",        "backend",     "x0",        "dir",
      "cone",          "half_angle_deg", "k_radius", "center_count",
      "epsilon",       "schedule_count", "schedule_radii", "refine",
      "out",           "dump_stft",   "parallel"};
  static const std::set<std::string> sweep = {
      "command",       "signal",      "field",     "grid",
      "window",        "backend",     "half_angle_deg", "k_radius",
      "center_count",  "epsilon",     "schedule_count", "schedule_radii",
      "stride",        "directions",  "refine",    "out",
      "csv",           "parallel"};
  static const std::set<std::string> sigma = {
      "command", "signal",  "field",          "grid",
      "backend", "directions", "half_angle_deg", "epsilon",
      "schedule_count", "schedule_radii", "out"};
  static const std::set<std::string> weights = {"command", "weights", "out"};
  static const std::set<std::string> validate = {"command", "epsilon",
                                                 "inject_phase_bug", "out"};
  if (command == "synth") return synth;
  if (command == "detect") return detect;
  if (command == "sweep") return sweep;
  if (command == "sigma") return sigma;
  if (command == "weights-check") return weights;
  if (command == "validate") return validate;
  fail(ErrorKind::invalid_argument, "unknown command '" + command + "'");
}

std::vector<double> parse_point(const nlohmann::json& v) {
  std::vector<double> out;
  if (v.is_number()) {
    out.push_back(v.get<double>());
  } else if (v.is_array()) {
    for (const auto& e : v) out.push_back(e.get<double>());
  } else if (v.is_string()) {
    std::stringstream ss(v.get<std::string>());
    std::string part;
    while (std::getline(ss, part, ','))
      out.push_back(std::strtod(part.c_str(), nullptr));
  } else {
    fail(ErrorKind::invalid_argument, "x0 must be a number, array or string");
  }
  if (out.empty() || out.size() > 2)
    fail(ErrorKind::invalid_argument, "x0 must have one or two coordinates");
  return out;
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& j,
                           const std::string& command) {
  if (!j.is_object())
    fail(ErrorKind::invalid_argument, "config must be a JSON object");
  const auto& allowed = allowed_keys(command);
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      fail(ErrorKind::invalid_argument,
           "unknown config key '" + it.key() + "' for command " + command);

  RunConfig cfg;
  cfg.command = command;
  if (j.contains("command") && j["command"].get<std::string>() != command)
    fail(ErrorKind::invalid_argument,
         "config command does not match the invoked command");
  auto opt_str = [&](const char* key) -> std::optional<std::string> {
    if (!j.contains(key)) return std::nullopt;
    return j[key].get<std::string>();
  };
  cfg.signal = opt_str("signal");
  cfg.field_path = opt_str("field");
  cfg.from_csv = opt_str("from_csv");
  cfg.grid = opt_str("grid");
  if (j.contains("window")) cfg.window = j["window"].get<std::string>();
  if (j.contains("backend")) cfg.backend = j["backend"].get<std::string>();
  if (j.contains("x0")) cfg.x0 = parse_point(j["x0"]);
  if (j.contains("dir")) {
    if (j["dir"].is_number())
      cfg.dir = format_double(j["dir"].get<double>());
    else
      cfg.dir = j["dir"].get<std::string>();
  }
  if (j.contains("cone")) {
    // Cone spec shorthand: sets both the direction and the half angle.
    SpecString s = SpecString::parse(j["cone"].get<std::string>());
    if (s.name != "cone")
      fail(ErrorKind::invalid_argument, "bad cone spec");
    cfg.dir = s.get_str("axis");
    cfg.half_angle_deg = s.get_real("angle");
    s.require_consumed("cone");
  }
  if (j.contains("half_angle_deg"))
    cfg.half_angle_deg = j["half_angle_deg"].get<double>();
  if (j.contains("k_radius")) cfg.k_radius = j["k_radius"].get<double>();
  if (j.contains("center_count"))
    cfg.center_count = j["center_count"].get<int>();
  if (j.contains("epsilon")) cfg.epsilon = j["epsilon"].get<double>();
  if (j.contains("schedule_count"))
    cfg.schedule_count = j["schedule_count"].get<int>();
  if (j.contains("schedule_radii"))
    cfg.schedule_radii = j["schedule_radii"].get<std::vector<double>>();
  if (j.contains("stride")) cfg.stride = j["stride"].get<int>();
  if (j.contains("directions")) cfg.directions = j["directions"].get<int>();
  if (j.contains("refine")) cfg.refine = j["refine"].get<bool>();
  if (j.contains("parallel")) cfg.parallel = j["parallel"].get<int>();
  cfg.out = opt_str("out");
  cfg.csv = opt_str("csv");
  cfg.dump_stft = opt_str("dump_stft");
  if (j.contains("weights")) cfg.weights = j["weights"].get<std::string>();
  if (j.contains("inject_phase_bug"))
    cfg.inject_phase_bug = j["inject_phase_bug"].get<bool>();
  return cfg;
}

SampledField load_input_field(const RunConfig& cfg) {
  const int sources = (cfg.signal ? 1 : 0) + (cfg.field_path ? 1 : 0) +
                      (cfg.from_csv ? 1 : 0);
  if (sources != 1)
    fail(ErrorKind::config,
         "exactly one of signal, field, from_csv must be given");
  if (cfg.field_path) {
    if (cfg.grid)
      fail(ErrorKind::config, "grid is implied by the field file");
    return load_field(*cfg.field_path);
  }
  if (cfg.from_csv) return load_field_csv(*cfg.from_csv);
  if (!cfg.grid) fail(ErrorKind::config, "signal synthesis requires a grid");
  return synth(AnalyticSignal::parse(*cfg.signal), GridSpec::parse(*cfg.grid));
}

namespace {

Vec2 parse_direction(const std::string& dir, int dim) {
  if (dim == 1) {
    if (dir == "+1" || dir == "1") return {1.0, 0.0};
    if (dir == "-1") return {-1.0, 0.0};
    fail(ErrorKind::invalid_argument,
         "dim-1 direction must be +1 or -1, got '" + dir + "'");
  }
  char* end = nullptr;
  const double deg = std::strtod(dir.c_str(), &end);
  if (end == dir.c_str() || *end != '\0')
    fail(ErrorKind::invalid_argument, "bad direction '" + dir + "'");
  return unit_from_angle(deg * kPi / 180.0);
}

RadiusSchedule resolve_schedule_cfg(const RunConfig& cfg,
                                    const FreqLattice& lat) {
  if (!cfg.schedule_radii.empty()) {
    RadiusSchedule s{cfg.schedule_radii};
    s.validate(lat);
    return s;
  }
  return RadiusSchedule::dyadic(cfg.schedule_count, lat.nyquist());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::io, "cannot open '" + path + "' for writing");
  f << text;
  if (!f) fail(ErrorKind::io, "short write to '" + path + "'");
}

nlohmann::ordered_json base_echo(const RunConfig& cfg, const GridSpec& grid,
                                 const RadiusSchedule& sched,
                                 double k_radius) {
  nlohmann::ordered_json e;
  e["command"] = cfg.command;
  if (cfg.field_path) {
    e["field"] = *cfg.field_path;
  } else {
    e["signal"] = AnalyticSignal::parse(*cfg.signal).canonical();
    e["grid"] = grid.canonical();
  }
  e["window"] = WindowParams::parse(cfg.window).canonical();
  e["backend"] = NormBackend::parse(cfg.backend).canonical();
  e["half_angle_deg"] = cfg.half_angle_deg;
  e["k_radius"] = k_radius;
  e["center_count"] = cfg.center_count;
  e["epsilon"] = cfg.epsilon;
  e["schedule_radii"] = sched.radii;
  e["refine"] = cfg.refine;
  // The parallelism degree is operational, never echoed: reports must be
  // byte-identical across thread counts.
  return e;
}

nlohmann::ordered_json vec_json(const Vec2& v, int dim) {
  if (dim == 1) return nlohmann::ordered_json::array({v[0]});
  return nlohmann::ordered_json::array({v[0], v[1]});
}

int exit_code_for(const Error& e) {
  return e.kind() == ErrorKind::invalid_argument ? 2 : 1;
}

}  // namespace

nlohmann::ordered_json sweep_report_json(const RunConfig& cfg,
                                         const WavefrontReport& report) {
  const GridSpec dummy{};  // echo uses the field grid only for signal runs
  (void)dummy;
  nlohmann::ordered_json j;
  nlohmann::ordered_json echo;
  {
    // Rebuild the resolved configuration for reproducible reruns.
    SampledField f = load_input_field(cfg);
    const FreqLattice lat = FreqLattice::of(f.grid());
    const RadiusSchedule sched = resolve_schedule_cfg(cfg, lat);
    const double k =
        cfg.k_radius > 0.0 ? cfg.k_radius : 8.0 * f.grid().spacing;
    echo = base_echo(cfg, f.grid(), sched, k);
    echo["stride"] = cfg.stride;
    echo["directions"] = cfg.directions;
  }
  j["config"] = echo;
  auto cells = nlohmann::ordered_json::array();
  for (const WavefrontCell& c : report.cells) {
    nlohmann::ordered_json cj;
    cj["x"] = vec_json(c.x, report.dim);
    cj["dir"] = vec_json(c.direction, report.dim);
    cj["score"] = c.score;
    cj["decision"] = to_string(c.decision);
    cells.push_back(cj);
  }
  j["cells"] = cells;
  j["sing_supp"] = report.sing_supp;
  return j;
}

std::string report_csv(const WavefrontReport& report) {
  std::string out = report.dim == 1 ? "x,dir_angle_deg,score\n"
                                    : "x1,x2,dir_angle_deg,score\n";
  for (const WavefrontCell& c : report.cells) {
    const double deg =
        report.directions.angles[c.direction_index] * 180.0 / kPi;
    out += format_double(c.x[0]);
    if (report.dim == 2) out += "," + format_double(c.x[1]);
    out += "," + format_double(deg) + "," + format_double(c.score) + "\n";
  }
  return out;
}

nlohmann::ordered_json condition_report_json(const ConditionReport& rep) {
  nlohmann::ordered_json j;
  j["m1_ok"] = rep.m1_ok;
  if (rep.m2) {
    j["m2"] = {{"c0", rep.m2->c0}, {"H", rep.m2->H}};
  } else {
    j["m2"] = nullptr;
  }
  if (rep.m3) {
    j["m3"] = {{"c0_prime", rep.m3->c0_prime}, {"surrogate", true}};
  } else {
    j["m3"] = nullptr;
  }
  j["m4_ok"] = rep.m4_ok;
  return j;
}

WavefrontReport run_sweep(const RunConfig& cfg) {
  SampledField f = load_input_field(cfg);
  const FreqLattice lat = FreqLattice::of(f.grid());
  SweepConfig sc;
  sc.stride = cfg.stride;
  sc.directions = cfg.directions;
  sc.half_angle = cfg.half_angle_deg * kPi / 180.0;
  sc.k_radius = cfg.k_radius;
  sc.window = WindowParams::parse(cfg.window);
  sc.backend = NormBackend::parse(cfg.backend);
  sc.center_count = cfg.center_count;
  sc.schedule = resolve_schedule_cfg(cfg, lat);
  sc.epsilon = cfg.epsilon;
  sc.refine = cfg.refine;
  sc.threads = cfg.parallel;
  if (f.grid().dim == 1 && !(cfg.directions == 2))
    fail(ErrorKind::config, "dim-1 sweeps use exactly 2 directions");
  return sweep(f, sc);
}

int cmd_synth(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!cfg.out) fail(ErrorKind::config, "synth requires an output path");
    SampledField f = cfg.from_csv
                         ? load_field_csv(*cfg.from_csv)
                         : [&] {
                             if (!cfg.signal || !cfg.grid)
                               fail(ErrorKind::config,
                                    "synth requires signal and grid (or "
                                    "from_csv)");
                             return synth(AnalyticSignal::parse(*cfg.signal),
                                          GridSpec::parse(*cfg.grid));
                           }();
    save_field(f, *cfg.out);
    // Print the header line in the same form the file carries.
    std::ifstream in(*cfg.out, std::ios::binary);
    std::string header;
    std::getline(in, header);
    out << header << "\n";
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int cmd_detect(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    SampledField f = load_input_field(cfg);
    const GridSpec& g = f.grid();
    const FreqLattice lat = FreqLattice::of(g);
    RegularityQuery q;
    if (static_cast<int>(cfg.x0.size()) < g.dim)
      fail(ErrorKind::config, "x0 arity below the field dimension");
    q.x0 = {cfg.x0[0], g.dim == 2 ? cfg.x0[1] : 0.0};
    q.direction = parse_direction(cfg.dir, g.dim);
    q.k_radius = cfg.k_radius;
    q.half_angle = cfg.half_angle_deg * kPi / 180.0;
    q.window = WindowParams::parse(cfg.window);
    q.backend = NormBackend::parse(cfg.backend);
    q.center_count = cfg.center_count;
    q.schedule = resolve_schedule_cfg(cfg, lat);
    q.epsilon = cfg.epsilon;
    q.refine = cfg.refine;
    const PointResult r = test_point(f, q);

    nlohmann::ordered_json j;
    nlohmann::ordered_json echo = base_echo(
        cfg, g, q.schedule, cfg.k_radius > 0.0 ? cfg.k_radius : 8.0 * g.spacing);
    echo["x0"] = vec_json(q.x0, g.dim);
    echo["dir"] = cfg.dir;
    j["config"] = echo;
    j["x"] = vec_json(r.cell.x, g.dim);
    j["dir"] = vec_json(r.cell.direction, g.dim);
    j["score"] = r.cell.score;
    j["decision"] = to_string(r.cell.decision);
    j["refined"] = r.refined;
    auto centers = nlohmann::ordered_json::array();
    for (const CenterDetail& c : r.centers) {
      nlohmann::ordered_json cj;
      cj["x"] = vec_json(c.x, g.dim);
      cj["tail_ratio"] = c.tail_ratio;
      cj["decision"] = to_string(c.decision);
      centers.push_back(cj);
    }
    j["centers"] = centers;
    const std::string text = j.dump(2) + "\n";
    out << text;
    if (cfg.out) write_text(*cfg.out, text);
    if (cfg.dump_stft) {
      const Window w = bump_window(q.window.support_radius,
                                   q.window.flat_order, g);
      std::vector<Vec2> pts;
      for (const CenterDetail& c : r.centers) pts.push_back(c.x);
      save_stft(compute_stft(f, w, pts), *cfg.dump_stft);
    }
    return 0;  // the decision is data, not an exit status
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const WavefrontReport rep = run_sweep(cfg);
    const nlohmann::ordered_json j = sweep_report_json(cfg, rep);
    const std::string text = j.dump(2) + "\n";
    if (cfg.out)
      write_text(*cfg.out, text);
    else
      out << text;
    if (cfg.csv) write_text(*cfg.csv, report_csv(rep));
    int singular = 0, inconclusive = 0;
    for (const auto& c : rep.cells) {
      singular += c.decision == Decision::singular;
      inconclusive += c.decision == Decision::inconclusive;
    }
    if (cfg.out)
      out << "cells=" << rep.cells.size() << " singular=" << singular
          << " inconclusive=" << inconclusive
          << " sing_supp=" << rep.sing_supp.size() << "\n";
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int cmd_sigma(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    SampledField f = load_input_field(cfg);
    const GridSpec& g = f.grid();
    const FreqLattice lat = FreqLattice::of(g);
    const DirectionGrid dirs = direction_grid(g.dim, cfg.directions);
    const RadiusSchedule sched = resolve_schedule_cfg(cfg, lat);
    const auto decisions =
        sigma_global(f, NormBackend::parse(cfg.backend), dirs,
                     cfg.half_angle_deg * kPi / 180.0, sched, cfg.epsilon);
    nlohmann::ordered_json j;
    nlohmann::ordered_json echo;
    echo["command"] = cfg.command;
    if (cfg.field_path)
      echo["field"] = *cfg.field_path;
    else {
      echo["signal"] = AnalyticSignal::parse(*cfg.signal).canonical();
      echo["grid"] = g.canonical();
    }
    echo["backend"] = NormBackend::parse(cfg.backend).canonical();
    echo["directions"] = cfg.directions;
    echo["half_angle_deg"] = cfg.half_angle_deg;
    echo["epsilon"] = cfg.epsilon;
    echo["schedule_radii"] = sched.radii;
    j["config"] = echo;
    auto arr = nlohmann::ordered_json::array();
    for (const DirectionDecision& d : decisions) {
      nlohmann::ordered_json dj;
      dj["dir"] = vec_json(d.direction, g.dim);
      dj["angle_deg"] = d.angle * 180.0 / kPi;
      dj["score"] = d.score;
      dj["decision"] = to_string(d.decision);
      arr.push_back(dj);
    }
    j["directions"] = arr;
    const std::string text = j.dump(2) + "\n";
    out << text;
    if (cfg.out) write_text(*cfg.out, text);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int cmd_weights_check(const RunConfig& cfg, std::ostream& out,
                      std::ostream& err) {
  try {
    const WeightSequence seq = parse_weight_spec(cfg.weights);
    nlohmann::ordered_json j = condition_report_json(verify_conditions(seq));
    j["spec"] = weight_spec_string(seq);
    const std::string text = j.dump(2) + "\n";
    out << text;
    if (cfg.out) write_text(*cfg.out, text);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

namespace {

struct SuiteResult {
  std::string name;
  bool pass = false;
  bool flagged = false;
  nlohmann::ordered_json detail;
};

SuiteResult suite_stft_closed_form(bool inject_phase_bug) {
  SuiteResult r{"stft_closed_form", false, false, {}};
  const GridSpec grid = GridSpec::parse("n=4096,dx=0.00390625");
  const Window w = bump_window(0.1, 2.0, grid);
  const std::vector<Vec2> centers = {{0.0, 0.0}, {-0.5, 0.0}, {0.5, 0.0}};
  const FreqLattice lat = FreqLattice::of(grid);
  StftOptions opt;
  opt.absolute_phase = !inject_phase_bug;

  double max_err = 0.0;
  for (const char* spec : {"delta:x0=0", "plane_wave:eta=10"}) {
    const AnalyticSignal sig = AnalyticSignal::parse(spec);
    const StftVolume vol = compute_stft(synth(sig, grid), w, centers, opt);
    for (std::size_t c = 0; c < centers.size(); ++c) {
      const auto slice = vol.slice(c);
      for (std::size_t k = 0; k < lat.count(); ++k) {
        const cplx oracle =
            closed_form_stft(sig, w, vol.centers[c], lat.xi(k));
        max_err = std::max(max_err, std::abs(slice[k] - oracle));
      }
    }
  }
  const double bound = 5.0 * grid.spacing * w.max_abs();
  r.pass = max_err <= bound;
  r.detail["max_error"] = max_err;
  r.detail["bound"] = bound;
  return r;
}

SuiteResult suite_solidity() {
  SuiteResult r{"solidity", false, false, {}};
  const GridSpec grid = GridSpec::parse("n=1024,dx=0.03125");
  const FreqLattice lat = FreqLattice::of(grid);
  std::mt19937_64 rng(0x5eed5011u);
  auto uniform = [&] { return (rng() >> 11) * 0x1.0p-53; };
  const std::vector<std::string> specs = {
      "sobolev:s=0",  "sobolev:s=-1", "sobolev:s=1.5", "flq:q=1,s=0.5",
      "flq:q=3,s=-0.5", "flq:q=inf,s=1", "ultra:q=2,s=2,h=0.5,t=1",
      "ultra:q=2,s=2,h=0.5,t=-1"};
  int violations = 0, trials = 0;
  for (const auto& spec : specs) {
    const NormBackend b = NormBackend::parse(spec);
    for (int t = 0; t < 25; ++t) {
      std::vector<cplx> g2(lat.count()), g1(lat.count());
      for (std::size_t k = 0; k < g2.size(); ++k) {
        g2[k] = cplx(2.0 * uniform() - 1.0, 2.0 * uniform() - 1.0);
        g1[k] = g2[k] * uniform();  // |g1| <= |g2| pointwise, exactly
      }
      const Cone cone = Cone::half_line(uniform() < 0.5 ? +1 : -1);
      const double radius = lat.nyquist() * (0.1 + 0.85 * uniform());
      ++trials;
      if (backend_norm(g1, cone, b, radius, lat) >
          backend_norm(g2, cone, b, radius, lat))
        ++violations;
    }
  }
  r.pass = violations == 0;
  r.detail["trials"] = trials;
  r.detail["violations"] = violations;
  return r;
}

SuiteResult suite_associated_function() {
  SuiteResult r{"associated_function", false, false, {}};
  bool ok = true;
  double worst = 0.0;
  for (double s : {1.5, 2.0, 3.0}) {
    const WeightSequence seq = WeightSequence::gevrey(s, 400);
    const AssociatedFunction af(seq);
    double prev = -1.0;
    for (int i = 0; i < 50; ++i) {
      const double lambda = std::pow(10.0, 4.0 * i / 49.0);
      const AssociatedValue got = af.evaluate(lambda);
      // Independent inline maximization; must agree exactly.
      double brute = 0.0;
      for (int p = 1; p <= seq.pmax(); ++p)
        brute = std::max(brute, p * std::log(lambda) - seq.log_value(p));
      brute = std::max(brute, 0.0);
      if (got.value != brute) ok = false;
      if (got.value < prev) ok = false;  // monotone on the sampled grid
      prev = got.value;
      worst = std::max(worst, std::abs(got.value - brute));
    }
    if (af.evaluate(1.0).value != 0.0 || af.evaluate(0.5).value != 0.0)
      ok = false;
  }
  r.pass = ok;
  r.detail["max_deviation"] = worst;
  return r;
}

SuiteResult suite_calibration(double epsilon) {
  SuiteResult r{"calibration", false, false, {}};
  const GridSpec grid = GridSpec::parse("n=4096,dx=0.00390625");
  const FreqLattice lat = FreqLattice::of(grid);
  const NormBackend b = NormBackend::sobolev(0.0);
  const RadiusSchedule sched = RadiusSchedule::dyadic(4, lat.nyquist());
  const Cone cone = Cone::half_line(+1);

  std::vector<cplx> flat(lat.count(), cplx(1.0, 0.0));
  std::vector<cplx> smooth(lat.count());
  for (std::size_t k = 0; k < smooth.size(); ++k) {
    const double xi = lat.xi(k)[0];
    smooth[k] = std::exp(-xi * xi / 800.0);
  }
  const MembershipScore flat_ms =
      membership_score(flat, cone, b, sched, epsilon, lat);
  const MembershipScore smooth_ms =
      membership_score(smooth, cone, b, sched, epsilon, lat);
  r.detail["flat_decision"] = to_string(flat_ms.decision);
  r.detail["flat_tail"] = flat_ms.tail_ratio;
  r.detail["smooth_decision"] = to_string(smooth_ms.decision);
  r.detail["smooth_tail"] = smooth_ms.tail_ratio;
  if (flat_ms.degenerate_epsilon || smooth_ms.degenerate_epsilon) {
    r.flagged = true;
    r.detail["flag"] = "degenerate tolerance: epsilon <= 0 decides nothing";
    r.pass = false;
    return r;
  }
  r.pass = flat_ms.decision == Decision::singular &&
           smooth_ms.decision == Decision::regular;
  return r;
}

}  // namespace

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    std::vector<SuiteResult> suites;
    suites.push_back(suite_stft_closed_form(cfg.inject_phase_bug));
    suites.push_back(suite_solidity());
    suites.push_back(suite_associated_function());
    suites.push_back(suite_calibration(cfg.epsilon));

    bool all = true;
    nlohmann::ordered_json j;
    auto arr = nlohmann::ordered_json::array();
    for (const SuiteResult& s : suites) {
      nlohmann::ordered_json sj;
      sj["name"] = s.name;
      sj["pass"] = s.pass;
      if (s.flagged) sj["flagged"] = true;
      sj["detail"] = s.detail;
      arr.push_back(sj);
      all = all && s.pass;
    }
    j["suites"] = arr;
    j["all_pass"] = all;
    const std::string text = j.dump(2) + "\n";
    out << text;
    if (cfg.out) write_text(*cfg.out, text);
    return all ? 0 : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.command == "synth") return cmd_synth(cfg, out, err);
  if (cfg.command == "detect") return cmd_detect(cfg, out, err);
  if (cfg.command == "sweep") return cmd_sweep(cfg, out, err);
  if (cfg.command == "sigma") return cmd_sigma(cfg, out, err);
  if (cfg.command == "weights-check") return cmd_weights_check(cfg, out, err);
  if (cfg.command == "validate") return cmd_validate(cfg, out, err);
  err << "error: unknown command '" << cfg.command << "'\n";
  return 2;
}

}  // namespace wf::cli
