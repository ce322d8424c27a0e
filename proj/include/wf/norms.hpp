// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wf/geometry.hpp"
#include "wf/signals.hpp"
#include "wf/weights.hpp"

namespace wf {

enum class WeightKind { polynomial, ultra };

// Solid weighted-L^q norm evaluator on the frequency lattice. Weights are
// radial: (1+|xi|^2)^(s/2) or exp(t M(h |xi|)); solidity constant is 1 by
// construction (the norm only sees |g|).
class NormBackend {
 public:
  static NormBackend sobolev(double s);         // q = 2, polynomial
  static NormBackend fl_q(double q, double s);  // polynomial weight
  static NormBackend ultra(double q, double gevrey_order, double h, double t,
                           int pmax_hint = 64);

  // "sobolev:s=<r>" | "flq:q=<r|inf>,s=<r>" | "ultra:q=<r|inf>,s=<r>,h=<r>,t=<r>"
  static NormBackend parse(const std::string& spec);
  std::string canonical() const;

  double q() const { return q_; }
  bool is_linf() const;
  WeightKind kind() const { return kind_; }
  double s() const { return s_; }
  double h() const { return h_; }
  double t() const { return t_; }
  double gevrey_order() const { return gevrey_order_; }

  // w(|xi|). Ultra weights are evaluated on a sequence prefix that grows
  // on demand until the supremum is attained strictly inside it, so the
  // returned value never depends on evaluation order.
  double weight(double xi_norm) const;
  // Current sequence snapshot (ultra backends only).
  std::shared_ptr<const WeightSequence> sequence() const;

 private:
  NormBackend() = default;
  struct UltraState;
  WeightKind kind_ = WeightKind::polynomial;
  double q_ = 2.0;
  double s_ = 0.0;
  double h_ = 1.0;
  double t_ = 0.0;
  double gevrey_order_ = 0.0;
  std::shared_ptr<UltraState> ultra_;
};

// Dyadic radius schedule R_1 < ... < R_K with R_{j+1} = 2 R_j, K >= 4,
// R_K at most 0.9x the lattice Nyquist radius (top decade is a guard band).
struct RadiusSchedule {
  std::vector<double> radii;

  // {E/2^count, ..., E/2} with E = 0.9 * nyquist.
  static RadiusSchedule dyadic(int count, double nyquist);
  void validate(const FreqLattice& lat) const;
};

enum class Decision { regular, singular, inconclusive };
const char* to_string(Decision d);

struct MembershipScore {
  std::vector<double> partial_norms;  // nondecreasing over the schedule
  double tail_ratio = 0.0;            // (N_K - N_{K/2}) / N_K, in [0,1]
  Decision decision = Decision::inconclusive;
  bool below_noise_floor = false;
  bool degenerate_epsilon = false;
};

// Discretized || theta_cone . theta_{|xi|<=R} . w . g ||_{L^q}; max over the
// restricted lattice for q = inf.
double backend_norm(std::span<const cplx> g, const Cone& cone,
                    const NormBackend& backend, double radius,
                    const FreqLattice& lat);

struct WeightTable {
  std::vector<double> w;  // per lattice point
};
WeightTable build_weight_table(const NormBackend& backend,
                               const FreqLattice& lat);

// Tail-convergence membership surrogate: partial norms over the dyadic
// schedule, decided by the hysteresis rule
//   regular      tail <= eps (or below the noise floor),
//   singular     tail >= 4 eps and above the noise floor,
//   inconclusive otherwise (always, when eps <= 0: degenerate tolerance).
MembershipScore membership_score(std::span<const cplx> g, const Cone& cone,
                                 const NormBackend& backend,
                                 const RadiusSchedule& schedule, double eps,
                                 const FreqLattice& lat,
                                 const WeightTable* table = nullptr);

// Lattice surrogate of the translation-operator norm on the backend:
// sup over lattice xi of w(xi) / w(xi - eta).
double weight_growth(const NormBackend& backend, const Vec2& eta,
                     const FreqLattice& lat);

namespace normdetail {
// Shared arithmetic between membership_score and the sweep fast path; the
// two must produce bit-identical numbers.
double power_term(double w, double amp, double q);
double partial_from_power(double cum_power, double cell_measure, double q);
double noise_floor_scale(const FreqLattice& lat, double q);

struct TailDecision {
  double tail = 0.0;
  Decision decision = Decision::inconclusive;
  bool below_floor = false;
  bool degenerate = false;
};
TailDecision decide_tail(std::span<const double> partial_norms,
                         double peak_abs, double floor_scale, double eps);
}  // namespace normdetail

}  // namespace wf
