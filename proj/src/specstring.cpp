// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "wf/specstring.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "wf/error.hpp"

namespace wf {

SpecString SpecString::parse(const std::string& text) {
  SpecString out;
  auto colon = text.find(':');
  out.name = text.substr(0, colon);
  if (out.name.empty())
    fail(ErrorKind::invalid_argument, "empty spec string");
  if (colon == std::string::npos) return out;

  std::string rest = text.substr(colon + 1);
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      fail(ErrorKind::invalid_argument,
           "expected key=value in spec '" + text + "', got '" + item + "'");
    std::string key = item.substr(0, eq);
    if (out.kv.count(key))
      fail(ErrorKind::invalid_argument,
           "duplicate key '" + key + "' in spec '" + text + "'");
    out.kv[key] = item.substr(eq + 1);
  }
  return out;
}

bool SpecString::has(const std::string& key) const { return kv.count(key) > 0; }

static double to_real(const std::string& key, const std::string& v) {
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0' || !std::isfinite(x))
    fail(ErrorKind::invalid_argument,
         "value '" + v + "' for key '" + key + "' is not a finite number");
  return x;
}

double SpecString::get_real(const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end())
    fail(ErrorKind::invalid_argument, "missing key '" + key + "' in spec");
  consumed_[key] = true;
  return to_real(key, it->second);
}

double SpecString::get_real(const std::string& key, double fallback) {
  if (!has(key)) return fallback;
  return get_real(key);
}

int SpecString::get_int(const std::string& key) {
  double x = get_real(key);
  int i = static_cast<int>(std::llround(x));
  if (static_cast<double>(i) != x)
    fail(ErrorKind::invalid_argument, "key '" + key + "' must be an integer");
  return i;
}

int SpecString::get_int(const std::string& key, int fallback) {
  if (!has(key)) return fallback;
  return get_int(key);
}

std::string SpecString::get_str(const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end())
    fail(ErrorKind::invalid_argument, "missing key '" + key + "' in spec");
  consumed_[key] = true;
  return it->second;
}

std::vector<double> SpecString::get_reals(const std::string& key) {
  std::string raw = get_str(key);
  std::vector<double> out;
  std::stringstream ss(raw);
  std::string part;
  while (std::getline(ss, part, 'x')) out.push_back(to_real(key, part));
  if (out.empty() || out.size() > 2)
    fail(ErrorKind::invalid_argument,
         "key '" + key + "' must hold one or two values");
  return out;
}

std::vector<int> SpecString::get_ints(const std::string& key) {
  std::vector<int> out;
  for (double x : get_reals(key)) {
    int i = static_cast<int>(std::llround(x));
    if (static_cast<double>(i) != x)
      fail(ErrorKind::invalid_argument, "key '" + key + "' must be integer");
    out.push_back(i);
  }
  return out;
}

void SpecString::require_consumed(const std::string& context) const {
  for (const auto& [key, value] : kv)
    if (!consumed_.count(key))
      fail(ErrorKind::invalid_argument,
           "unknown key '" + key + "' in " + context + " spec");
}

std::string format_double(double v) {
  char buf[64];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

}  // namespace wf
