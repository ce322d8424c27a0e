// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "support.hpp"
#include "wf/error.hpp"
#include "wf/oracle.hpp"
#include "wf/signals.hpp"

using namespace wf;

namespace {

// Quadrature oracle for Sobolev membership of a flat spectrum: partial
// integrals of (1+xi^2)^s over growing intervals. Divergence shows as
// unbounded growth of the increments.
double sobolev_partial(double s, double upper) {
  const int n = 200000;
  double acc = 0.0;
  const double h = upper / n;
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) * h;
    acc += std::pow(1.0 + x * x, s) * h;
  }
  return acc;
}

}  // namespace

TEST_CASE("grid spec parse, canonical form, validation") {
  const GridSpec g = GridSpec::parse("n=4096,dx=0.00390625");
  CHECK(g.dim == 1);
  CHECK(g.shape[0] == 4096);
  CHECK(g.origin[0] == doctest::Approx(-8.0).epsilon(1e-15));
  CHECK(GridSpec::parse(g.canonical()) == g);

  const GridSpec g2 = GridSpec::parse("n=256x128,dx=0.0078125,origin=-1x-0.5");
  CHECK(g2.dim == 2);
  CHECK(g2.shape[1] == 128);
  CHECK(GridSpec::parse(g2.canonical()) == g2);

  CHECK_THROWS_AS(GridSpec::parse("n=100,dx=0.1"), Error);  // not a power of 2
  CHECK_THROWS_AS(GridSpec::parse("n=4,dx=0.1"), Error);    // below 8
  CHECK_THROWS_AS(GridSpec::parse("n=16,dx=-1"), Error);
  CHECK_THROWS_AS(GridSpec::parse("n=16,dx=0.1,bogus=3"), Error);
}

TEST_CASE("synth zero and delta") {
  const GridSpec g = GridSpec::parse("n=4096,dx=0.00390625");
  const SampledField z = synth(AnalyticSignal::parse("zero"), g);
  for (const cplx& v : z.samples()) CHECK(v == cplx(0.0, 0.0));

  const SampledField d = synth(AnalyticSignal::parse("delta:x0=0"), g);
  const std::size_t node = 2048;  // coordinate 0
  CHECK(d.at(node).real() == 256.0);
  double mass = 0.0;
  for (const cplx& v : d.samples()) mass += v.real();
  CHECK(mass * g.spacing == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("synth gaussian symmetry and Riemann mass") {
  const GridSpec g = GridSpec::make(1, {-4.0, 0.0}, 8.0 / 4096, {4096, 1});
  const SampledField f =
      synth(AnalyticSignal::parse("gaussian:center=0,width=0.1"), g);
  const int c = g.nearest_index(0, 0.0);
  for (int k = 1; k < 100; ++k)
    CHECK(f.at(c + k) == f.at(c - k));  // exact even symmetry on the lattice
  double mass = 0.0;
  for (const cplx& v : f.samples()) mass += v.real();
  const double expect = std::sqrt(2.0 * 3.14159265358979323846) * 0.1;
  CHECK(mass * g.spacing == doctest::Approx(expect).epsilon(1e-3));
}

TEST_CASE("synth jump interfaces carry the half-sample convention") {
  const GridSpec g = GridSpec::parse("n=256,dx=0.0078125");
  const SampledField f = synth(AnalyticSignal::parse("heaviside:x0=0"), g);
  const int c = g.nearest_index(0, 0.0);
  CHECK(f.at(c).real() == 0.5);
  CHECK(f.at(c - 1).real() == 0.0);
  CHECK(f.at(c + 1).real() == 1.0);

  const GridSpec g2 = GridSpec::parse("n=64x64,dx=0.015625");
  const SampledField hp =
      synth(AnalyticSignal::parse("half_plane:nx=1,ny=0,b=0"), g2);
  const int cx = g2.nearest_index(0, 0.0);
  CHECK(hp.at(g2.lin(cx, 10)).real() == 0.5);
  CHECK(hp.at(g2.lin(cx - 1, 10)).real() == 0.0);
  CHECK(hp.at(g2.lin(cx + 1, 10)).real() == 1.0);
}

TEST_CASE("synth is deterministic") {
  const GridSpec g = GridSpec::parse("n=512,dx=0.0078125");
  const AnalyticSignal e = AnalyticSignal::parse("chirp:rate=40");
  const SampledField a = synth(e, g);
  const SampledField b = synth(e, g);
  CHECK(std::memcmp(a.samples().data(), b.samples().data(),
                    a.samples().size() * sizeof(cplx)) == 0);
}

TEST_CASE("synthesis preconditions") {
  const GridSpec g = GridSpec::parse("n=256,dx=0.0078125");
  CHECK_THROWS_AS(synth(AnalyticSignal::parse("delta:x0=5"), g), Error);
  CHECK_THROWS_AS(synth(AnalyticSignal::parse("delta:x0=-0.999"), g), Error);
  CHECK_THROWS_AS(synth(AnalyticSignal::parse("half_plane:nx=1,ny=0,b=0"), g),
                  Error);  // dim mismatch
  CHECK_THROWS_AS(AnalyticSignal::parse("wiggle:x0=0"), Error);
  CHECK_THROWS_AS(AnalyticSignal::parse("gaussian:center=0,width=-1"), Error);
}

TEST_CASE("field file round-trip is bit exact") {
  const GridSpec g = GridSpec::parse("n=128,dx=0.0078125");
  const SampledField f =
      synth(AnalyticSignal::parse("plane_wave:eta=12.5"), g);
  const std::string path = wftest::temp_path("roundtrip.bin");
  save_field(f, path);
  const SampledField back = load_field(path);
  CHECK(back.grid() == f.grid());
  CHECK(std::memcmp(back.samples().data(), f.samples().data(),
                    f.samples().size() * sizeof(cplx)) == 0);
  std::filesystem::remove(path);
}

TEST_CASE("field file error paths") {
  const GridSpec g = GridSpec::parse("n=128,dx=0.0078125");
  const SampledField f = synth(AnalyticSignal::parse("zero"), g);
  const std::string path = wftest::temp_path("truncated.bin");
  save_field(f, path);

  // Truncate the payload.
  const auto size = std::filesystem::file_size(path);
  std::filesystem::resize_file(path, size - 16);
  CHECK_THROWS_AS(load_field(path), Error);

  // Unsupported dimension in the header.
  std::ofstream bad(path, std::ios::binary);
  bad << R"({"dim":3,"origin":[0,0,0],"spacing":0.1,"shape":[8,8,8],)"
      << R"("dtype":"complex128-le"})" << "\n";
  bad.close();
  CHECK_THROWS_AS(load_field(path), Error);

  std::ofstream garbage(path, std::ios::binary);
  garbage << "not json\n";
  garbage.close();
  CHECK_THROWS_AS(load_field(path), Error);
  std::filesystem::remove(path);
}

TEST_CASE("csv import reconstructs the grid") {
  const GridSpec g = GridSpec::make(1, {-0.5, 0.0}, 0.125, {8, 1});
  const SampledField f =
      synth(AnalyticSignal::parse("plane_wave:eta=3"), g);
  const std::string path = wftest::temp_path("field.csv");
  {
    std::ofstream out(path);
    out << "x,re,im\n";
    out.precision(17);
    for (std::size_t i = 0; i < f.samples().size(); ++i)
      out << g.coord(0, static_cast<int>(i)) << "," << f.at(i).real() << ","
          << f.at(i).imag() << "\n";
  }
  const SampledField back = load_field_csv(path);
  CHECK(back.grid().shape[0] == 8);
  CHECK(back.grid().spacing == doctest::Approx(0.125).epsilon(1e-12));
  for (std::size_t i = 0; i < back.samples().size(); ++i) {
    CHECK(back.at(i).real() == doctest::Approx(f.at(i).real()).epsilon(1e-15));
    CHECK(back.at(i).imag() == doctest::Approx(f.at(i).imag()).epsilon(1e-15));
  }
  std::filesystem::remove(path);
}

TEST_CASE("bump cutoff localizes a field") {
  const GridSpec g = GridSpec::parse("n=256,dx=0.0078125");
  const SampledField ones = synth(AnalyticSignal::parse("heaviside:x0=-0.9"),
                                  g);  // 1 on most of the grid
  const SampledField cut = apply_bump_cutoff(ones, {0.0, 0.0}, 0.25, 2.0);
  CHECK(cut.at(g.nearest_index(0, 0.0)).real() ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cut.at(g.nearest_index(0, 0.5)).real() == 0.0);
  CHECK(cut.at(g.nearest_index(0, -0.5)).real() == 0.0);
}

TEST_CASE("analytic wavefront oracle: delta thresholds") {
  const AnalyticSignal delta = AnalyticSignal::parse("delta:x0=0");
  const WavefrontOracle sing =
      analytic_wavefront(delta, NormBackend::sobolev(0.0), 1);
  REQUIRE_FALSE(sing.empty);
  CHECK(sing.all_directions);
  CHECK(sing.point[0] == 0.0);
  CHECK(analytic_wavefront(delta, NormBackend::sobolev(-1.0), 1).empty);
  // Boundary order -1/2 is singular (the integral just diverges).
  CHECK_FALSE(analytic_wavefront(delta, NormBackend::sobolev(-0.5), 1).empty);
  CHECK(analytic_wavefront(delta, NormBackend::sobolev(-0.51), 1).empty);

  // Quadrature cross-check: increments of int (1+xi^2)^s dxi.
  const double inc0 = sobolev_partial(0.0, 2e4) - sobolev_partial(0.0, 1e4);
  CHECK(inc0 > 1.0);  // diverges at s=0
  const double inc1 = sobolev_partial(-1.0, 2e4) - sobolev_partial(-1.0, 1e4);
  CHECK(inc1 < 1e-3);  // converges at s=-1
}

TEST_CASE("analytic wavefront oracle: jumps, smooth entries, availability") {
  const AnalyticSignal hp = AnalyticSignal::parse("half_plane:nx=1,ny=0,b=0");
  const WavefrontOracle o =
      analytic_wavefront(hp, NormBackend::sobolev(1.0), 2);
  REQUIRE_FALSE(o.empty);
  REQUIRE(o.directions.size() == 2);
  CHECK(o.directions[0][0] == 1.0);
  CHECK(o.directions[1][0] == -1.0);
  CHECK(analytic_wavefront(hp, NormBackend::sobolev(0.0), 2).empty);

  const AnalyticSignal h = AnalyticSignal::parse("heaviside:x0=0.5");
  CHECK_FALSE(analytic_wavefront(h, NormBackend::sobolev(0.5), 1).empty);
  CHECK(analytic_wavefront(h, NormBackend::sobolev(0.49), 1).empty);

  for (const char* smooth : {"gaussian:center=0,width=0.1", "zero"}) {
    CHECK(analytic_wavefront(AnalyticSignal::parse(smooth),
                             NormBackend::parse("ultra:q=2,s=2,h=1,t=1"), 1)
              .empty);
    CHECK(analytic_wavefront(AnalyticSignal::parse(smooth),
                             NormBackend::sobolev(3.0), 1)
              .empty);
  }
  CHECK(analytic_wavefront(AnalyticSignal::parse("plane_wave:eta=10"),
                           NormBackend::sobolev(0.0), 1)
            .empty);
  CHECK(analytic_wavefront(AnalyticSignal::parse("chirp:rate=40"),
                           NormBackend::sobolev(0.0), 1)
            .empty);
  CHECK_THROWS_AS(analytic_wavefront(AnalyticSignal::parse("plane_wave:eta=1"),
                                     NormBackend::parse("ultra:q=2,s=2,h=1,t=1"),
                                     1),
                  Error);
  CHECK_THROWS_AS(analytic_wavefront(hp,
                                     NormBackend::parse("ultra:q=2,s=2,h=1,t=1"),
                                     2),
                  Error);
}

TEST_CASE("delta oracle against ultra backends") {
  const AnalyticSignal delta = AnalyticSignal::parse("delta:x0=0");
  CHECK_FALSE(analytic_wavefront(delta,
                                 NormBackend::parse("ultra:q=2,s=2,h=1,t=1"), 1)
                  .empty);
  CHECK(analytic_wavefront(delta,
                           NormBackend::parse("ultra:q=2,s=2,h=1,t=-1"), 1)
            .empty);
  CHECK_FALSE(analytic_wavefront(delta,
                                 NormBackend::parse("ultra:q=2,s=2,h=1,t=0"), 1)
                  .empty);
  CHECK(analytic_wavefront(delta,
                           NormBackend::parse("ultra:q=inf,s=2,h=1,t=0"), 1)
            .empty);
}
