// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <cmath>
#include <vector>

#include "wf/error.hpp"
#include "wf/weights.hpp"

using namespace wf;

TEST_CASE("gevrey sequence small values match the direct formula") {
  const WeightSequence seq = WeightSequence::gevrey(2.0, 3);
  CHECK(seq.value(0) == 1.0);
  CHECK(seq.value(1) == 1.0);
  CHECK(seq.value(2) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(seq.value(3) == doctest::Approx(36.0).epsilon(1e-12));
}

TEST_CASE("gevrey prefix satisfies every stored invariant") {
  const WeightSequence seq = WeightSequence::gevrey(2.0, 100);
  const auto& L = seq.log_values();
  CHECK(L[0] == 0.0);
  CHECK(L[1] == 0.0);
  for (int p = 1; p < 100; ++p) {
    CHECK(2.0 * L[p] <= L[p - 1] + L[p + 1] + 1e-12);  // (M.1)
    const double a = L[p] - std::lgamma(p + 1.0);
    const double lo = L[p - 1] - std::lgamma(static_cast<double>(p));
    const double hi = L[p + 1] - std::lgamma(p + 2.0);
    CHECK(2.0 * a <= lo + hi + 1e-12);  // (M.4)
  }
}

TEST_CASE("invalid order and size are rejected") {
  CHECK_THROWS_AS(WeightSequence::gevrey(1.0, 10), Error);
  CHECK_THROWS_AS(WeightSequence::gevrey(0.5, 10), Error);
  CHECK_THROWS_AS(WeightSequence::gevrey(2.0, 1), Error);
  CHECK_THROWS_AS(WeightSequence::from_values({1.0, 2.0, 3.0}), Error);
  CHECK_THROWS_AS(WeightSequence::from_values({1.0, 1.0, -3.0}), Error);
}

TEST_CASE("verify_conditions on gevrey s=2: c0=1, H=4") {
  const WeightSequence seq = WeightSequence::gevrey(2.0, 50);
  const ConditionReport rep = verify_conditions(seq);
  CHECK(rep.m1_ok);
  CHECK(rep.m4_ok);
  REQUIRE(rep.m2.has_value());
  CHECK(rep.m2->c0 == 1.0);
  CHECK(rep.m2->H == 4.0);
  REQUIRE(rep.m3.has_value());
  CHECK(rep.m3->c0_prime >= 1.0);

  // Independent re-check of the reported (M.2) constants on the prefix.
  const auto& L = seq.log_values();
  const double lc0 = std::log(rep.m2->c0);
  const double lH = std::log(rep.m2->H);
  for (int p = 0; p <= seq.pmax(); ++p) {
    double split = 1e300;
    for (int q = 0; q <= p; ++q) split = std::min(split, L[q] + L[p - q]);
    CHECK(L[p] <= lc0 + p * lH + split + 1e-9);
  }
  // And of the (M.3) surrogate constant.
  for (int p = 1; p < seq.pmax(); ++p) {
    double tail = 0.0;
    for (int q = p + 1; q <= seq.pmax(); ++q)
      tail += std::exp(L[q - 1] - L[q]);
    CHECK(tail <= rep.m3->c0_prime * p * std::exp(L[p] - L[p + 1]) + 1e-9);
  }
}

TEST_CASE("constructed log-convexity violation is reported, not thrown") {
  const WeightSequence seq =
      WeightSequence::from_values({1.0, 1.0, 1.0, 6.0, 1.0});
  const ConditionReport rep = verify_conditions(seq);
  CHECK_FALSE(rep.m1_ok);
}

TEST_CASE("conditions hold across orders and prefix lengths") {
  for (double s : {1.5, 2.0, 3.0})
    for (int pmax : {10, 100, 300}) {
      const ConditionReport rep =
          verify_conditions(WeightSequence::gevrey(s, pmax));
      CAPTURE(s);
      CAPTURE(pmax);
      CHECK(rep.m1_ok);
      CHECK(rep.m4_ok);
    }
  CHECK(verify_conditions(WeightSequence::gevrey(3.0, 50)).m4_ok);
}

TEST_CASE("associated function: zeros, frozen value, cross-check") {
  const AssociatedFunction af(WeightSequence::gevrey(2.0, 200));
  CHECK(af.evaluate(1.0).value == 0.0);
  CHECK(af.evaluate(0.25).value == 0.0);
  CHECK_THROWS_AS(af.evaluate(0.0), Error);
  CHECK_THROWS_AS(af.evaluate(-1.0), Error);

  // M(10) for s=2 is attained at p=3: 3 ln 10 - 2 ln 6.
  const double frozen = 3.0 * std::log(10.0) - 2.0 * std::log(6.0);
  CHECK(af.evaluate(10.0).value == doctest::Approx(frozen).epsilon(1e-13));

  // Extended-precision independent maximization.
  for (double lambda : {3.0, 10.0, 55.0, 400.0}) {
    long double best = 0.0L;
    for (int p = 1; p <= 200; ++p) {
      const long double term =
          p * std::log(static_cast<long double>(lambda)) -
          2.0L * std::lgamma(static_cast<long double>(p) + 1.0L);
      if (term > best) best = term;
    }
    CHECK(af.evaluate(lambda).value ==
          doctest::Approx(static_cast<double>(best)).epsilon(1e-12));
  }

  CHECK(af.evaluate(4.0).value >= af.evaluate(2.0).value);
  CHECK(af.value(10.0) == af.evaluate(10.0).value);  // cache agrees
}

TEST_CASE("associated function flags truncation at the prefix boundary") {
  const AssociatedFunction af(WeightSequence::gevrey(2.0, 5));
  CHECK(af.evaluate(1000.0).truncated);
  CHECK_FALSE(af.evaluate(2.0).truncated);
  const AssociatedFunction wide(WeightSequence::gevrey(2.0, 200));
  CHECK_FALSE(wide.evaluate(1000.0).truncated);
}

TEST_CASE("associated function is nondecreasing and convex in ln lambda") {
  const AssociatedFunction af(WeightSequence::gevrey(2.0, 400));
  std::vector<double> vals;
  for (int i = 0; i <= 60; ++i)
    vals.push_back(af.evaluate(std::pow(10.0, 4.0 * i / 60.0)).value);
  for (std::size_t i = 1; i < vals.size(); ++i)
    CHECK(vals[i] >= vals[i - 1] - 1e-12);
  for (std::size_t i = 1; i + 1 < vals.size(); ++i)
    CHECK(vals[i + 1] - 2.0 * vals[i] + vals[i - 1] >= -1e-9);
}

TEST_CASE("M(2 lambda)/M(lambda) approaches 2^(1/s)") {
  for (double s : {1.5, 2.0, 3.0}) {
    const AssociatedFunction af(WeightSequence::gevrey(s, 1024));
    for (double lambda : {1e3, 1e4}) {
      const AssociatedValue a = af.evaluate(lambda);
      const AssociatedValue b = af.evaluate(2.0 * lambda);
      REQUIRE_FALSE(a.truncated);
      REQUIRE_FALSE(b.truncated);
      const double target = std::pow(2.0, 1.0 / s);
      CHECK(b.value / a.value == doctest::Approx(target).epsilon(0.1));
    }
  }
}

TEST_CASE("ultra weight") {
  const AssociatedFunction af(WeightSequence::gevrey(2.0, 200));
  CHECK(ultra_weight(af, 1.0, 1.0, 0.0) == 1.0);
  CHECK(ultra_weight(af, 1.0, 0.0, 123.0) == 1.0);
  CHECK(ultra_weight(af, 1.0, 1.0, 10.0) ==
        doctest::Approx(std::exp(af.value(10.0))).epsilon(1e-13));
  CHECK(ultra_weight(af, 0.5, -2.0, 10.0) ==
        doctest::Approx(std::exp(-2.0 * af.value(5.0))).epsilon(1e-13));
  CHECK_THROWS_AS(ultra_weight(af, 0.0, 1.0, 1.0), Error);
}

TEST_CASE("weight spec strings round-trip") {
  const WeightSequence seq = parse_weight_spec("gevrey:s=2,pmax=100");
  CHECK(seq.pmax() == 100);
  CHECK(seq.gevrey_order() == 2.0);
  CHECK(weight_spec_string(seq) == "gevrey:s=2,pmax=100");
  CHECK_THROWS_AS(parse_weight_spec("poisson:s=2"), Error);
  CHECK_THROWS_AS(parse_weight_spec("gevrey:s=2,bogus=1"), Error);
}
