// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "wf/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "wf/error.hpp"
#include "wf/specstring.hpp"

namespace wf {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNoiseFloorFactor = 1e-10;
}  // namespace

struct NormBackend::UltraState {
  std::mutex mu;
  std::shared_ptr<const WeightSequence> seq;
  std::shared_ptr<const AssociatedFunction> af;
};

NormBackend NormBackend::sobolev(double s) { return fl_q(2.0, s); }

NormBackend NormBackend::fl_q(double q, double s) {
  if (!(q >= 1.0))
    fail(ErrorKind::invalid_argument, "backend q must lie in [1, inf]");
  NormBackend b;
  b.kind_ = WeightKind::polynomial;
  b.q_ = q;
  b.s_ = s;
  return b;
}

NormBackend NormBackend::ultra(double q, double gevrey_order, double h,
                               double t, int pmax_hint) {
  if (!(q >= 1.0))
    fail(ErrorKind::invalid_argument, "backend q must lie in [1, inf]");
  if (!(h > 0.0))
    fail(ErrorKind::invalid_argument, "ultra backend requires h > 0");
  NormBackend b;
  b.kind_ = WeightKind::ultra;
  b.q_ = q;
  b.h_ = h;
  b.t_ = t;
  b.gevrey_order_ = gevrey_order;
  b.ultra_ = std::make_shared<UltraState>();
  auto seq = std::make_shared<const WeightSequence>(
      WeightSequence::gevrey(gevrey_order, std::max(2, pmax_hint)));
  b.ultra_->seq = seq;
  b.ultra_->af = std::make_shared<const AssociatedFunction>(*seq);
  return b;
}

bool NormBackend::is_linf() const { return std::isinf(q_); }

double NormBackend::weight(double xi_norm) const {
  const double r = std::abs(xi_norm);
  if (kind_ == WeightKind::polynomial)
    return std::pow(1.0 + r * r, 0.5 * s_);
  const double lambda = h_ * r;
  if (lambda == 0.0 || t_ == 0.0) return 1.0;
  std::lock_guard<std::mutex> lock(ultra_->mu);
  AssociatedValue v = ultra_->af->evaluate(lambda);
  while (v.truncated) {
    const int needed = static_cast<int>(
        std::ceil(std::pow(lambda, 1.0 / gevrey_order_))) + 8;
    const int next = std::max(2 * ultra_->seq->pmax(), needed);
    auto seq = std::make_shared<const WeightSequence>(
        WeightSequence::gevrey(gevrey_order_, next));
    ultra_->seq = seq;
    ultra_->af = std::make_shared<const AssociatedFunction>(*seq);
    v = ultra_->af->evaluate(lambda);
  }
  return std::exp(t_ * v.value);
}

std::shared_ptr<const WeightSequence> NormBackend::sequence() const {
  if (!ultra_) return nullptr;
  std::lock_guard<std::mutex> lock(ultra_->mu);
  return ultra_->seq;
}

namespace {
double parse_q(SpecString& s) {
  const std::string raw = s.get_str("q");
  if (raw == "inf" || raw == "Inf" || raw == "INF") return kInf;
  char* end = nullptr;
  const double q = std::strtod(raw.c_str(), &end);
  if (end == raw.c_str() || *end != '\0')
    fail(ErrorKind::invalid_argument, "bad backend q '" + raw + "'");
  return q;
}
}  // namespace

NormBackend NormBackend::parse(const std::string& spec) {
  SpecString s = SpecString::parse(spec);
  if (s.name == "sobolev") {
    const double sv = s.get_real("s");
    s.require_consumed("backend");
    return sobolev(sv);
  }
  if (s.name == "flq") {
    const double q = parse_q(s);
    const double sv = s.get_real("s");
    s.require_consumed("backend");
    return fl_q(q, sv);
  }
  if (s.name == "ultra") {
    const double q = parse_q(s);
    const double order = s.get_real("s");
    const double h = s.get_real("h");
    const double t = s.get_real("t");
    s.require_consumed("backend");
    return ultra(q, order, h, t);
  }
  fail(ErrorKind::invalid_argument, "unknown backend kind '" + s.name + "'");
}

std::string NormBackend::canonical() const {
  const std::string qs = is_linf() ? "inf" : format_double(q_);
  if (kind_ == WeightKind::polynomial) {
    if (q_ == 2.0) return "sobolev:s=" + format_double(s_);
    return "flq:q=" + qs + ",s=" + format_double(s_);
  }
  return "ultra:q=" + qs + ",s=" + format_double(gevrey_order_) +
         ",h=" + format_double(h_) + ",t=" + format_double(t_);
}

RadiusSchedule RadiusSchedule::dyadic(int count, double nyquist) {
  if (count < 4)
    fail(ErrorKind::schedule, "schedule needs at least 4 dyadic radii");
  RadiusSchedule s;
  const double top = 0.9 * nyquist;
  for (int j = count; j >= 1; --j) s.radii.push_back(top / std::exp2(j));
  return s;
}

void RadiusSchedule::validate(const FreqLattice& lat) const {
  if (radii.size() < 4)
    fail(ErrorKind::schedule, "schedule needs at least 4 dyadic radii");
  for (std::size_t j = 0; j < radii.size(); ++j) {
    if (!(radii[j] > 0.0))
      fail(ErrorKind::schedule, "schedule radii must be positive");
    if (j > 0 && std::abs(radii[j] - 2.0 * radii[j - 1]) >
                     1e-9 * radii[j])
      fail(ErrorKind::schedule, "schedule radii must be dyadic (ratio 2)");
  }
  if (radii.back() > 0.9 * lat.nyquist() * (1.0 + 1e-12))
    fail(ErrorKind::schedule,
         "schedule must end at most at 0.9x the lattice Nyquist radius "
         "(guard band)");
}

const char* to_string(Decision d) {
  switch (d) {
    case Decision::regular: return "regular";
    case Decision::singular: return "singular";
    case Decision::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace normdetail {

double power_term(double w, double amp, double q) {
  const double x = w * amp;
  if (q == 2.0) return x * x;
  if (q == 1.0) return x;
  return std::pow(x, q);
}

double partial_from_power(double cum_power, double cell_measure, double q) {
  if (q == 2.0) return std::sqrt(cell_measure * cum_power);
  if (q == 1.0) return cell_measure * cum_power;
  return std::pow(cell_measure * cum_power, 1.0 / q);
}

double noise_floor_scale(const FreqLattice& lat, double q) {
  if (std::isinf(q)) return 1.0;
  return std::pow(lat.cell_measure() * static_cast<double>(lat.count()),
                  1.0 / q);
}

TailDecision decide_tail(std::span<const double> partial_norms,
                         double peak_abs, double floor_scale, double eps) {
  TailDecision out;
  const double nk = partial_norms.back();
  const double nk_half = partial_norms[partial_norms.size() - 2];
  out.tail = nk > 0.0 ? (nk - nk_half) / nk : 0.0;
  if (!(eps > 0.0)) {
    out.degenerate = true;
    out.decision = Decision::inconclusive;
    return out;
  }
  const double floor = kNoiseFloorFactor * peak_abs * floor_scale;
  if (nk < floor) {
    out.below_floor = true;
    out.decision = Decision::regular;
    return out;
  }
  if (out.tail <= eps)
    out.decision = Decision::regular;
  else if (out.tail >= 4.0 * eps)
    out.decision = Decision::singular;
  else
    out.decision = Decision::inconclusive;
  return out;
}

}  // namespace normdetail

namespace {

void check_finite(std::span<const cplx> g) {
  for (const cplx& z : g)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      fail(ErrorKind::data, "non-finite frequency samples");
}

}  // namespace

double backend_norm(std::span<const cplx> g, const Cone& cone,
                    const NormBackend& backend, double radius,
                    const FreqLattice& lat) {
  if (g.size() != lat.count())
    fail(ErrorKind::data, "sample count does not match the lattice");
  if (!(radius > 0.0) || radius > lat.nyquist() * (1.0 + 1e-12))
    fail(ErrorKind::invalid_argument,
         "norm radius must lie inside the frequency extent");
  check_finite(g);
  const double q = backend.q();
  if (backend.is_linf()) {
    double m = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (lat.xi_norm(k) > radius) continue;
      if (!cone.contains(lat.xi(k))) continue;
      m = std::max(m, backend.weight(lat.xi_norm(k)) * std::abs(g[k]));
    }
    return m;
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (lat.xi_norm(k) > radius) continue;
    if (!cone.contains(lat.xi(k))) continue;
    acc += normdetail::power_term(backend.weight(lat.xi_norm(k)),
                                  std::abs(g[k]), q);
  }
  return normdetail::partial_from_power(acc, lat.cell_measure(), q);
}

WeightTable build_weight_table(const NormBackend& backend,
                               const FreqLattice& lat) {
  WeightTable t;
  t.w.resize(lat.count());
  for (std::size_t k = 0; k < t.w.size(); ++k)
    t.w[k] = backend.weight(lat.xi_norm(k));
  return t;
}

MembershipScore membership_score(std::span<const cplx> g, const Cone& cone,
                                 const NormBackend& backend,
                                 const RadiusSchedule& schedule, double eps,
                                 const FreqLattice& lat,
                                 const WeightTable* table) {
  if (g.size() != lat.count())
    fail(ErrorKind::data, "sample count does not match the lattice");
  schedule.validate(lat);
  check_finite(g);

  const double q = backend.q();
  const std::size_t nr = schedule.radii.size();
  std::vector<double> bucket(nr, 0.0);
  double peak = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double amp = std::abs(g[k]);
    peak = std::max(peak, amp);
    const double r = lat.xi_norm(k);
    if (r > schedule.radii.back()) continue;
    if (!cone.contains(lat.xi(k))) continue;
    std::size_t b = 0;
    while (r > schedule.radii[b]) ++b;
    const double w = table ? table->w[k] : backend.weight(r);
    if (backend.is_linf())
      bucket[b] = std::max(bucket[b], w * amp);
    else
      bucket[b] += normdetail::power_term(w, amp, q);
  }

  MembershipScore score;
  score.partial_norms.resize(nr);
  if (backend.is_linf()) {
    double run = 0.0;
    for (std::size_t b = 0; b < nr; ++b) {
      run = std::max(run, bucket[b]);
      score.partial_norms[b] = run;
    }
  } else {
    double run = 0.0;
    for (std::size_t b = 0; b < nr; ++b) {
      run += bucket[b];
      score.partial_norms[b] =
          normdetail::partial_from_power(run, lat.cell_measure(), q);
    }
  }
  const auto d = normdetail::decide_tail(
      score.partial_norms, peak, normdetail::noise_floor_scale(lat, q), eps);
  score.tail_ratio = d.tail;
  score.decision = d.decision;
  score.below_noise_floor = d.below_floor;
  score.degenerate_epsilon = d.degenerate;
  return score;
}

double weight_growth(const NormBackend& backend, const Vec2& eta,
                     const FreqLattice& lat) {
  for (int axis = 0; axis < lat.dim; ++axis)
    if (std::abs(eta[axis]) > lat.nyquist() * (1.0 + 1e-12))
      fail(ErrorKind::invalid_argument,
           "translation eta must lie inside the frequency extent");
  double sup = 0.0;
  for (std::size_t k = 0; k < lat.count(); ++k) {
    const Vec2 xi = lat.xi(k);
    const double num = backend.weight(lat.xi_norm(k));
    const Vec2 shifted{xi[0] - eta[0], lat.dim == 2 ? xi[1] - eta[1] : 0.0};
    const double den = backend.weight(vec_norm(lat.dim, shifted));
    sup = std::max(sup, num / den);
  }
  return sup;
}

}  // namespace wf
