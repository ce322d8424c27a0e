// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <map>
#include <string>
#include <vector>

namespace wf {

// Parser for the "name:key=value,key=value" spec strings used in config
// files and on the command line (windows, backends, cones, signals, grids).
struct SpecString {
  std::string name;
  std::map<std::string, std::string> kv;

  // Throws ErrorKind::invalid_argument on malformed input, duplicate keys,
  // or (after the getters below ran) via require_consumed on unknown keys.
  static SpecString parse(const std::string& text);

  bool has(const std::string& key) const;
  double get_real(const std::string& key);
  double get_real(const std::string& key, double fallback);
  int get_int(const std::string& key);
  int get_int(const std::string& key, int fallback);
  std::string get_str(const std::string& key);
  // Accepts "v" or "vxw" (e.g. shape "256x256"); returns 1 or 2 entries.
  std::vector<double> get_reals(const std::string& key);
  std::vector<int> get_ints(const std::string& key);

  // Errors out if any key was never consumed by a getter.
  void require_consumed(const std::string& context) const;

 private:
  mutable std::map<std::string, bool> consumed_;
};

// Shortest decimal form that round-trips through double; used everywhere a
// numeric value ends up in a canonical spec string or CSV cell.
std::string format_double(double v);

}  // namespace wf
