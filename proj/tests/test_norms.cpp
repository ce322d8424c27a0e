// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <cmath>
#include <functional>

#include "support.hpp"
#include "wf/error.hpp"
#include "wf/norms.hpp"

using namespace wf;

namespace {

// Adaptive Simpson quadrature, the test-side oracle for lattice norms.
double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb, double whole, double tol,
               int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

FreqLattice fine_lattice() {
  // 65536 nodes at dx = 1/32: dxi ~ 3.07e-3, Nyquist ~ 100.5.
  return FreqLattice::of(GridSpec::make(1, {-1024.0, 0.0}, 0.03125,
                                        {65536, 1}));
}

}  // namespace

TEST_CASE("backend spec strings round-trip") {
  CHECK(NormBackend::parse("sobolev:s=0").canonical() == "sobolev:s=0");
  CHECK(NormBackend::parse("flq:q=3,s=-0.5").canonical() == "flq:q=3,s=-0.5");
  CHECK(NormBackend::parse("flq:q=inf,s=1").canonical() == "flq:q=inf,s=1");
  CHECK(NormBackend::parse("ultra:q=2,s=2,h=0.5,t=1").canonical() ==
        "ultra:q=2,s=2,h=0.5,t=1");
  CHECK(NormBackend::parse("flq:q=inf,s=1").is_linf());
  CHECK_THROWS_AS(NormBackend::parse("sobolev:s=0,q=3"), Error);
  CHECK_THROWS_AS(NormBackend::parse("l2:s=0"), Error);
  CHECK_THROWS_AS(NormBackend::parse("flq:q=0.5,s=0"), Error);
  CHECK_THROWS_AS(NormBackend::parse("ultra:q=2,s=1,h=1,t=1"), Error);
}

TEST_CASE("backend norm of zero and the half-line integral example") {
  const FreqLattice lat = fine_lattice();
  const Cone cone = Cone::half_line(+1);
  const NormBackend b = NormBackend::sobolev(0.0);

  std::vector<cplx> zero(lat.count(), cplx(0.0, 0.0));
  CHECK(backend_norm(zero, cone, b, lat.nyquist(), lat) == 0.0);

  std::vector<cplx> g(lat.count());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double xi = lat.xi(k)[0];
    g[k] = 1.0 / (1.0 + xi * xi);
  }
  const double got = backend_norm(g, cone, b, lat.nyquist(), lat);
  // Oracle: adaptive quadrature of (1+xi^2)^-2 over the half line.
  const double oracle = integrate(
      [](double x) { return std::pow(1.0 + x * x, -2.0); }, 0.0,
      lat.nyquist(), 1e-12);
  CHECK(got == doctest::Approx(std::sqrt(oracle)).epsilon(2e-3));
  CHECK(got == doctest::Approx(std::sqrt(3.14159265358979323846 / 4.0))
                   .epsilon(2e-3));
}

TEST_CASE("solidity is exact for dominated pairs") {
  const FreqLattice lat =
      FreqLattice::of(GridSpec::make(1, {-16.0, 0.0}, 0.03125, {1024, 1}));
  wftest::Rng rng(0x501d);
  const std::vector<std::string> specs = {
      "sobolev:s=0", "sobolev:s=-1.5", "flq:q=1,s=1", "flq:q=inf,s=0.5",
      "ultra:q=2,s=2,h=0.5,t=1"};
  for (const auto& spec : specs) {
    const NormBackend b = NormBackend::parse(spec);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<cplx> g2(lat.count()), g1(lat.count());
      for (std::size_t k = 0; k < g2.size(); ++k) {
        g2[k] = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        g1[k] = g2[k] * rng.uniform();
      }
      const Cone cone = Cone::half_line(trial % 2 ? +1 : -1);
      const double r = lat.nyquist() * rng.uniform(0.1, 1.0);
      CHECK(backend_norm(g1, cone, b, r, lat) <=
            backend_norm(g2, cone, b, r, lat));
    }
  }
}

TEST_CASE("norm monotonicity in radius and cone") {
  const FreqLattice lat =
      FreqLattice::of(GridSpec::make(2, {-1.0, -1.0}, 0.015625, {128, 128}));
  wftest::Rng rng(0xbeef);
  std::vector<cplx> g(lat.count());
  for (auto& v : g) v = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  const NormBackend b = NormBackend::sobolev(0.5);
  const Cone narrow = Cone::circular(0.3, 0.2);
  const Cone wide = Cone::circular(0.3, 0.5);
  const double ny = lat.nyquist();
  CHECK(backend_norm(g, narrow, b, 0.3 * ny, lat) <=
        backend_norm(g, narrow, b, 0.8 * ny, lat));
  CHECK(backend_norm(g, narrow, b, 0.8 * ny, lat) <=
        backend_norm(g, wide, b, 0.8 * ny, lat));
}

TEST_CASE("sobolev s=0 backend is the plain cone-restricted L2 norm") {
  const FreqLattice lat =
      FreqLattice::of(GridSpec::make(1, {-16.0, 0.0}, 0.03125, {1024, 1}));
  wftest::Rng rng(0x11e);
  std::vector<cplx> g(lat.count());
  for (auto& v : g) v = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  const Cone cone = Cone::half_line(+1);
  double acc = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (lat.xi(k)[0] <= 0.0) continue;
    const double a = std::abs(g[k]);
    acc += a * a;
  }
  const double plain = std::sqrt(lat.cell_measure() * acc);
  CHECK(backend_norm(g, cone, NormBackend::sobolev(0.0), lat.nyquist(), lat) ==
        plain);
}

TEST_CASE("q=inf uses the lattice max") {
  const FreqLattice lat =
      FreqLattice::of(GridSpec::make(1, {-16.0, 0.0}, 0.03125, {1024, 1}));
  std::vector<cplx> g(lat.count(), cplx(0.0, 0.0));
  g[700] = cplx(0.0, -3.0);  // some positive-frequency bin
  const NormBackend b = NormBackend::parse("flq:q=inf,s=0");
  CHECK(backend_norm(g, Cone::half_line(+1), b, lat.nyquist(), lat) == 3.0);
}

TEST_CASE("non-finite data is rejected") {
  const FreqLattice lat =
      FreqLattice::of(GridSpec::make(1, {-16.0, 0.0}, 0.03125, {1024, 1}));
  std::vector<cplx> g(lat.count(), cplx(1.0, 0.0));
  g[3] = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK_THROWS_AS(backend_norm(g, Cone::half_line(+1),
                               NormBackend::sobolev(0.0), lat.nyquist(), lat),
                  Error);
}

TEST_CASE("membership: compact support, flat tails, weighted decay") {
  const FreqLattice lat =
      FreqLattice::of(GridSpec::parse("n=4096,dx=0.00390625"));
  const RadiusSchedule sched = RadiusSchedule::dyadic(4, lat.nyquist());
  const Cone cone = Cone::half_line(+1);
  const NormBackend s0 = NormBackend::sobolev(0.0);

  // Compact frequency support inside R_1: tail ratio exactly zero.
  std::vector<cplx> compact(lat.count(), cplx(0.0, 0.0));
  for (std::size_t k = 0; k < lat.count(); ++k)
    if (lat.xi_norm(k) < sched.radii[0] * 0.5 && lat.xi(k)[0] > 0.0)
      compact[k] = 1.0;
  const MembershipScore ms0 =
      membership_score(compact, cone, s0, sched, 0.05, lat);
  CHECK(ms0.tail_ratio == 0.0);
  CHECK(ms0.decision == Decision::regular);

  // Flat modulus: N(R) ~ sqrt(R), tail -> 1 - 1/sqrt(2).
  std::vector<cplx> flat(lat.count(), cplx(1.0, 0.0));
  const MembershipScore ms1 =
      membership_score(flat, cone, s0, sched, 0.05, lat);
  CHECK(ms1.decision == Decision::singular);
  CHECK(ms1.tail_ratio ==
        doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(0.02));
  for (std::size_t j = 1; j < ms1.partial_norms.size(); ++j)
    CHECK(ms1.partial_norms[j] >= ms1.partial_norms[j - 1]);

  // e^{-|xi|} against a growing ultra weight: decay wins.
  const NormBackend ub = NormBackend::parse("ultra:q=2,s=2,h=0.25,t=1");
  std::vector<cplx> decay(lat.count());
  for (std::size_t k = 0; k < lat.count(); ++k)
    decay[k] = std::exp(-lat.xi_norm(k));
  const MembershipScore ms2 =
      membership_score(decay, cone, ub, sched, 0.05, lat);
  CHECK(ms2.decision == Decision::regular);

  // Independent recomputation of the partial norms for the ultra case.
  for (std::size_t j = 0; j < sched.radii.size(); ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < lat.count(); ++k) {
      const double r = lat.xi_norm(k);
      if (lat.xi(k)[0] <= 0.0 || r > sched.radii[j]) continue;
      const double w = ub.weight(r);
      const double term = w * std::abs(decay[k]);
      acc += term * term;
    }
    CHECK(ms2.partial_norms[j] ==
          doctest::Approx(std::sqrt(lat.cell_measure() * acc))
              .epsilon(1e-12));
  }
}

TEST_CASE("membership schedule validation") {
  const FreqLattice lat =
      FreqLattice::of(GridSpec::parse("n=4096,dx=0.00390625"));
  std::vector<cplx> g(lat.count(), cplx(1.0, 0.0));
  const Cone cone = Cone::half_line(+1);
  const NormBackend b = NormBackend::sobolev(0.0);
  CHECK_THROWS_AS(membership_score(g, cone, b, RadiusSchedule{{10, 20, 40}},
                                   0.05, lat),
                  Error);
  CHECK_THROWS_AS(membership_score(g, cone, b,
                                   RadiusSchedule{{10, 20, 40, 70}}, 0.05,
                                   lat),
                  Error);
  CHECK_THROWS_AS(membership_score(g, cone, b,
                                   RadiusSchedule{{100, 200, 400, 800}}, 0.05,
                                   lat),
                  Error);  // beyond the guard band
}

TEST_CASE("noise floor forces regular; degenerate epsilon is inconclusive") {
  const FreqLattice lat =
      FreqLattice::of(GridSpec::parse("n=4096,dx=0.00390625"));
  const RadiusSchedule sched = RadiusSchedule::dyadic(4, lat.nyquist());
  const Cone cone = Cone::half_line(+1);
  const NormBackend b = NormBackend::sobolev(0.0);

  // A far off-cone peak sets the scale; the in-cone 1e-25 band is noise.
  std::vector<cplx> noise(lat.count(), cplx(0.0, 0.0));
  for (std::size_t k = 0; k < lat.count(); ++k)
    if (lat.xi(k)[0] > 0.0) noise[k] = cplx(1e-25, 0.0);
  noise[10] = cplx(1.0, 0.0);  // a far negative-frequency peak
  const MembershipScore ms =
      membership_score(noise, cone, b, sched, 0.05, lat);
  CHECK(ms.below_noise_floor);
  CHECK(ms.decision == Decision::regular);

  std::vector<cplx> flat(lat.count(), cplx(1.0, 0.0));
  const MembershipScore degenerate =
      membership_score(flat, cone, b, sched, 0.0, lat);
  CHECK(degenerate.degenerate_epsilon);
  CHECK(degenerate.decision == Decision::inconclusive);
}

TEST_CASE("weight growth: identity, Peetre bound, ultra domination") {
  const FreqLattice lat =
      FreqLattice::of(GridSpec::make(1, {-16.0, 0.0}, 0.03125, {1024, 1}));
  const NormBackend poly = NormBackend::parse("flq:q=2,s=1.5");
  CHECK(weight_growth(poly, {0.0, 0.0}, lat) == 1.0);
  for (double eta : {1.0, 10.0, 50.0}) {
    const double growth = weight_growth(poly, {eta, 0.0}, lat);
    const double peetre =
        std::pow(1.0 + eta * eta, 0.75) * std::pow(2.0, 0.75);
    CHECK(growth <= peetre * (1.0 + 1e-12));
    CHECK(growth >= 1.0);
  }

  const NormBackend ub = NormBackend::parse("ultra:q=2,s=2,h=0.5,t=1");
  const AssociatedFunction af(WeightSequence::gevrey(2.0, 400));
  bool dominated_by_some_tau = false;
  for (double tau : {0.5, 1.0, 2.0, 4.0}) {
    bool ok = true;
    for (double eta : {2.0, 10.0, 40.0, 90.0}) {
      const double growth = weight_growth(ub, {eta, 0.0}, lat);
      if (growth > 2.0 * std::exp(af.value(tau * eta))) ok = false;
    }
    dominated_by_some_tau = dominated_by_some_tau || ok;
  }
  CHECK(dominated_by_some_tau);
  CHECK_THROWS_AS(weight_growth(poly, {1e9, 0.0}, lat), Error);
}

TEST_CASE("dyadic schedule construction") {
  const FreqLattice lat =
      FreqLattice::of(GridSpec::parse("n=4096,dx=0.00390625"));
  const RadiusSchedule s = RadiusSchedule::dyadic(4, lat.nyquist());
  REQUIRE(s.radii.size() == 4);
  CHECK(s.radii[3] == doctest::Approx(0.45 * lat.nyquist()).epsilon(1e-12));
  CHECK(s.radii[0] == doctest::Approx(s.radii[3] / 8.0).epsilon(1e-12));
  s.validate(lat);
  CHECK_THROWS_AS(RadiusSchedule::dyadic(3, lat.nyquist()), Error);
}
