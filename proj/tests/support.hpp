// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

namespace wftest {

// Deterministic uniform doubles in [0,1); identical across platforms since
// only the raw mt19937_64 stream is used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return (gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int index(int n) { return static_cast<int>(gen_() % n); }

 private:
  std::mt19937_64 gen_;
};

inline std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("wfdetect_test_" + name))
      .string();
}

}  // namespace wftest
