// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Compares the OpenMP fast paths against the serial references on a
// mid-size workload and reports timings, speedups, and the deviation
// between the paths (which must be zero for the sweep).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wf/detector.hpp"
#include "wf/signals.hpp"
#include "wf/stft.hpp"

using namespace wf;

namespace {

double time_once(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) best = std::min(best, time_once(fn));
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif
  std::printf("wfbench: %d thread(s), best of %d\n\n", threads, reps);

  // STFT volume: 128 centers on a 4096-node line.
  {
    const GridSpec g = GridSpec::parse("n=4096,dx=0.00390625");
    const Window w = bump_window(0.1, 2.0, g);
    const SampledField f = synth(AnalyticSignal::parse("chirp:rate=200"), g);
    std::vector<Vec2> centers;
    for (int i = -64; i < 64; ++i) centers.push_back({i * 0.05, 0.0});

    StftVolume out;
    const double t_ref =
        best_of(reps, [&] { out = compute_stft_reference(f, w, centers); });
    const double t_one = best_of(
        reps, [&] { out = compute_stft(f, w, centers, StftOptions{1, true}); });
    const double t_par = best_of(
        reps, [&] { out = compute_stft(f, w, centers, StftOptions{0, true}); });
    std::printf("stft 1-d, 128 centers x 4096 bins\n");
    std::printf("  direct reference (serial)    %8.3f s\n", t_ref);
    std::printf("  fft path, 1 thread           %8.3f s   (%5.1fx vs ref)\n",
                t_one, t_ref / t_one);
    std::printf("  fft path, %d thread(s)       %8.3f s   (%5.2fx vs 1t)\n\n",
                threads, t_par, t_one / t_par);
  }

  // Detector sweep: the half-plane workload of the acceptance gate.
  {
    const GridSpec g = GridSpec::parse("n=256x256,dx=0.00390625");
    const SampledField f =
        synth(AnalyticSignal::parse("half_plane:nx=1,ny=0,b=0"), g);
    SweepConfig cfg;
    cfg.stride = 32;
    cfg.directions = 16;
    cfg.window = WindowParams{0.1, 2.0};
    cfg.backend = NormBackend::sobolev(1.0);

    WavefrontReport fast, ref;
    cfg.threads = 1;
    const double t_one = best_of(reps, [&] { fast = sweep(f, cfg); });
    cfg.threads = 0;
    const double t_par = best_of(reps, [&] { fast = sweep(f, cfg); });
    const double t_ref = best_of(reps, [&] { ref = sweep_reference(f, cfg); });

    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < fast.cells.size(); ++i)
      if (fast.cells[i].score != ref.cells[i].score ||
          fast.cells[i].decision != ref.cells[i].decision)
        ++mismatches;

    std::printf("sweep 2-d, %zu cells (256^2 grid, 16 directions)\n",
                fast.cells.size());
    std::printf("  per-cell reference (serial)  %8.3f s\n", t_ref);
    std::printf("  table path, 1 thread         %8.3f s   (%5.1fx vs ref)\n",
                t_one, t_ref / t_one);
    std::printf("  table path, %d thread(s)     %8.3f s   (%5.2fx vs 1t)\n",
                threads, t_par, t_one / t_par);
    std::printf("  fast-vs-reference mismatched cells: %zu\n", mismatches);
    return mismatches == 0 ? 0 : 1;
  }
}
