// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "wf/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wf/error.hpp"
#include "wf/specstring.hpp"

namespace wf {

namespace {
// Slack for log-space comparisons of analytically tight inequalities.
constexpr double kLogTol = 1e-12;
}  // namespace

WeightSequence WeightSequence::gevrey(double order_s, int pmax) {
  if (!(order_s > 1.0))
    fail(ErrorKind::invalid_argument,
         "gevrey order must exceed 1 (quasi-analytic regime excluded), got " +
             format_double(order_s));
  if (pmax < 2)
    fail(ErrorKind::invalid_argument, "pmax must be at least 2");
  std::vector<double> log_m(pmax + 1);
  for (int p = 0; p <= pmax; ++p)
    log_m[p] = order_s * std::lgamma(static_cast<double>(p) + 1.0);
  log_m[0] = 0.0;
  log_m[1] = 0.0;
  return WeightSequence(std::move(log_m), order_s);
}

WeightSequence WeightSequence::from_values(const std::vector<double>& values) {
  if (values.size() < 3)
    fail(ErrorKind::invalid_argument,
         "need at least M_0..M_2 (pmax >= 2), got " +
             std::to_string(values.size()) + " values");
  if (values[0] != 1.0 || values[1] != 1.0)
    fail(ErrorKind::invalid_argument, "M_0 and M_1 must equal 1 exactly");
  std::vector<double> log_m(values.size());
  for (size_t p = 0; p < values.size(); ++p) {
    if (!(values[p] > 0.0) || !std::isfinite(values[p]))
      fail(ErrorKind::invalid_argument,
           "M_" + std::to_string(p) + " must be a positive finite number");
    log_m[p] = std::log(values[p]);
  }
  log_m[0] = 0.0;
  log_m[1] = 0.0;
  return WeightSequence(std::move(log_m), 0.0);
}

double WeightSequence::value(int p) const { return std::exp(log_value(p)); }

ConditionReport verify_conditions(const WeightSequence& seq) {
  const auto& L = seq.log_values();
  const int pmax = seq.pmax();
  ConditionReport rep;

  // (M.1) log-convexity and (M.4) strong log-convexity of M_p / p!.
  rep.m1_ok = true;
  rep.m4_ok = true;
  for (int p = 1; p < pmax; ++p) {
    if (2.0 * L[p] > L[p - 1] + L[p + 1] + kLogTol) rep.m1_ok = false;
    const double lp = L[p] - std::lgamma(p + 1.0);
    const double lm = L[p - 1] - std::lgamma(static_cast<double>(p));
    const double lq = L[p + 1] - std::lgamma(p + 2.0);
    if (2.0 * lp > lm + lq + kLogTol) rep.m4_ok = false;
  }

  // (M.2): smallest H = 2^k whose minimal constant
  //   c0(H) = max_p M_p / (H^p min_q M_q M_{p-q})
  // is attained strictly inside the prefix. Attainment at p = pmax means the
  // required constant is still growing, so the prefix cannot vouch for H.
  std::vector<double> min_split(pmax + 1);
  for (int p = 0; p <= pmax; ++p) {
    double m = std::numeric_limits<double>::infinity();
    for (int q = 0; q <= p; ++q) m = std::min(m, L[q] + L[p - q]);
    min_split[p] = m;
  }
  for (int k = 0; k <= 60 && !rep.m2; ++k) {
    const double log_h = k * std::log(2.0);
    double best = -std::numeric_limits<double>::infinity();
    int best_p = -1;
    for (int p = 0; p <= pmax; ++p) {
      const double a = L[p] - p * log_h - min_split[p];
      if (a > best) {
        best = a;
        best_p = p;
      }
    }
    if (best_p < pmax) {
      rep.m2 = ConditionReport::M2{std::max(1.0, std::exp(best)),
                                   std::exp(log_h)};
    }
  }

  // (M.3) surrogate: tail sums truncated at pmax.
  if (pmax >= 2) {
    double tail = 0.0;  // sum_{q=p+1}^{pmax} M_{q-1}/M_q, built backwards
    double worst = 1.0;
    bool finite = true;
    for (int p = pmax - 1; p >= 1; --p) {
      tail += std::exp(L[p] - L[p + 1]);
      const double rhs = p * std::exp(L[p] - L[p + 1]);
      const double ratio = tail / rhs;
      if (!std::isfinite(ratio)) finite = false;
      worst = std::max(worst, ratio);
    }
    if (finite) rep.m3 = ConditionReport::M3{worst};
  }
  return rep;
}

AssociatedValue AssociatedFunction::evaluate(double lambda) const {
  if (!(lambda > 0.0))
    fail(ErrorKind::invalid_argument,
         "associated function requires lambda > 0");
  const auto& L = seq_.log_values();
  const double log_lambda = std::log(lambda);
  double best = 0.0;  // p = 0 term is ln+(1/M_0) = 0
  int best_p = 0;
  for (int p = 1; p < static_cast<int>(L.size()); ++p) {
    const double term = p * log_lambda - L[p];
    if (term > best) {
      best = term;
      best_p = p;
    }
  }
  return AssociatedValue{best, best > 0.0 && best_p == seq_.pmax()};
}

double AssociatedFunction::value(double lambda) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(lambda);
    if (it != cache_.end()) return it->second;
  }
  const double v = evaluate(lambda).value;
  std::lock_guard<std::mutex> lock(mu_);
  cache_.emplace(lambda, v);
  return v;
}

double ultra_weight(const AssociatedFunction& af, double h, double t,
                    double xi_norm) {
  if (!(h > 0.0))
    fail(ErrorKind::invalid_argument, "ultra weight requires h > 0");
  const double lambda = h * std::abs(xi_norm);
  if (lambda == 0.0 || t == 0.0) return 1.0;
  return std::exp(t * af.value(lambda));
}

WeightSequence parse_weight_spec(const std::string& spec) {
  SpecString s = SpecString::parse(spec);
  if (s.name != "gevrey")
    fail(ErrorKind::invalid_argument,
         "unknown weight sequence kind '" + s.name + "'");
  const double order = s.get_real("s");
  const int pmax = s.get_int("pmax", 256);
  s.require_consumed("weight");
  return WeightSequence::gevrey(order, pmax);
}

std::string weight_spec_string(const WeightSequence& seq) {
  return "gevrey:s=" + format_double(seq.gevrey_order()) +
         ",pmax=" + std::to_string(seq.pmax());
}

}  // namespace wf
