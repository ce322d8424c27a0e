// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace wf {

// Finite prefix M_0..M_pmax of a weight sequence, stored as ln M_p so that
// Gevrey sequences (p!)^s stay representable for prefixes of hundreds of
// terms. M_0 = M_1 = 1 is enforced at construction; the growth conditions
// are diagnosed by verify_conditions, not enforced here.
class WeightSequence {
 public:
  // M_p = (p!)^s computed through lgamma. order_s must exceed 1, pmax >= 2.
  static WeightSequence gevrey(double order_s, int pmax);
  // Direct value list (values[0..pmax]); all entries positive, first two 1.
  static WeightSequence from_values(const std::vector<double>& values);

  int pmax() const { return static_cast<int>(log_m_.size()) - 1; }
  double gevrey_order() const { return order_s_; }  // 0 for direct lists
  double log_value(int p) const { return log_m_.at(p); }
  double value(int p) const;
  const std::vector<double>& log_values() const { return log_m_; }

 private:
  WeightSequence(std::vector<double> log_m, double order_s)
      : log_m_(std::move(log_m)), order_s_(order_s) {}
  std::vector<double> log_m_;
  double order_s_ = 0.0;
};

// Diagnosis of the growth conditions on the stored prefix. (M.2)/(M.3)
// report fitted constants or absence; (M.3) is a truncated-tail surrogate.
struct ConditionReport {
  bool m1_ok = false;
  struct M2 {
    double c0;  // minimal constant for the reported H, clamped to >= 1
    double H;   // smallest power of two accepted by the prefix rule
  };
  std::optional<M2> m2;
  struct M3 {
    double c0_prime;  // finite-prefix surrogate constant
  };
  std::optional<M3> m3;
  bool m4_ok = false;
};

ConditionReport verify_conditions(const WeightSequence& seq);

struct AssociatedValue {
  double value = 0.0;
  // True when the positive supremum is attained at p = pmax, i.e. the prefix
  // cannot certify that the full supremum over all p was reached.
  bool truncated = false;
};

// M(lambda) = max over 0 <= p <= pmax of max(0, p ln(lambda) - ln M_p).
// The brute-force maximization over the prefix IS the implementation; it
// doubles as its own oracle and is cross-checked in tests.
class AssociatedFunction {
 public:
  explicit AssociatedFunction(WeightSequence seq) : seq_(std::move(seq)) {}

  // Uncached evaluation; lambda must be positive.
  AssociatedValue evaluate(double lambda) const;
  // Cached evaluation (value only); thread-safe.
  double value(double lambda) const;

  const WeightSequence& sequence() const { return seq_; }

 private:
  WeightSequence seq_;
  mutable std::mutex mu_;
  mutable std::unordered_map<double, double> cache_;
};

// exp(t * M(h|xi|)). t > 0 grows (membership demands decay of the paired
// transform), t < 0 decays. |xi| = 0 is the flat region: weight 1.
double ultra_weight(const AssociatedFunction& af, double h, double t,
                    double xi_norm);

// "gevrey:s=<real>,pmax=<int>" -> sequence; canonical form round-trips.
WeightSequence parse_weight_spec(const std::string& spec);
std::string weight_spec_string(const WeightSequence& seq);

}  // namespace wf
