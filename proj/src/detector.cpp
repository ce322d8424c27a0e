// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "wf/detector.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wf/error.hpp"

namespace wf {

namespace {

int resolve_threads(int requested) {
#ifdef _OPENMP
  return requested > 0 ? requested : omp_get_max_threads();
#else
  (void)requested;
  return 1;
#endif
}

double default_k_radius(double requested, const GridSpec& g) {
  const double k = requested > 0.0 ? requested : 8.0 * g.spacing;
  if (k < 2.0 * g.spacing)
    fail(ErrorKind::config, "K radius must be at least 2 grid spacings");
  return k;
}

RadiusSchedule resolve_schedule(const RadiusSchedule& requested,
                                const FreqLattice& lat) {
  RadiusSchedule s = requested.radii.empty()
                         ? RadiusSchedule::dyadic(4, lat.nyquist())
                         : requested;
  s.validate(lat);
  return s;
}

// Node offsets of the center_count points spanning [-K, K] per axis.
std::vector<int> center_offsets(double k_radius, int center_count,
                                double spacing) {
  if (center_count < 3 || center_count % 2 == 0)
    fail(ErrorKind::config, "center count must be an odd integer >= 3");
  std::vector<int> off;
  for (int i = 0; i < center_count; ++i) {
    const double x = -k_radius + 2.0 * k_radius * i / (center_count - 1);
    const int node = static_cast<int>(std::llround(x / spacing));
    if (off.empty() || off.back() != node) off.push_back(node);
  }
  return off;
}

struct CellVerdict {
  double score = 0.0;
  Decision decision = Decision::inconclusive;
};

// Worst-case aggregation over the K centers: regular only if every center
// is regular, singular as soon as one is; inconclusive stays sticky.
class Aggregator {
 public:
  void add(double tail, Decision d) {
    score_ = std::max(score_, tail);
    if (d == Decision::singular) any_singular_ = true;
    if (d != Decision::regular) all_regular_ = false;
  }
  CellVerdict verdict() const {
    CellVerdict v;
    v.score = score_;
    v.decision = any_singular_   ? Decision::singular
                 : all_regular_ ? Decision::regular
                                : Decision::inconclusive;
    return v;
  }

 private:
  double score_ = 0.0;
  bool any_singular_ = false;
  bool all_regular_ = true;
};

// Direct evaluation of one cell from freshly computed slices; the reference
// path and the refine retry both use it.
struct DirectCellResult {
  CellVerdict verdict;
  std::vector<CenterDetail> centers;
};

DirectCellResult evaluate_cell_direct(const SampledField& f, const Window& w,
                                      std::span<const Vec2> centers,
                                      const Cone& cone,
                                      const NormBackend& backend,
                                      const RadiusSchedule& schedule,
                                      double epsilon) {
  const StftVolume vol = compute_stft(f, w, centers, StftOptions{1, true});
  DirectCellResult out;
  Aggregator agg;
  for (std::size_t c = 0; c < vol.centers.size(); ++c) {
    const MembershipScore ms = membership_score(
        vol.slice(c), cone, backend, schedule, epsilon, vol.lattice);
    agg.add(ms.tail_ratio, ms.decision);
    out.centers.push_back(
        CenterDetail{vol.centers[c], ms.tail_ratio, ms.decision});
  }
  out.verdict = agg.verdict();
  return out;
}

std::vector<Vec2> centers_around(const GridSpec& g,
                                 const std::array<int, 2>& node,
                                 std::span<const int> offsets) {
  std::vector<Vec2> centers;
  if (g.dim == 1) {
    for (int o : offsets)
      centers.push_back({g.coord(0, node[0] + o), 0.0});
  } else {
    for (int o0 : offsets)
      for (int o1 : offsets)
        centers.push_back(
            {g.coord(0, node[0] + o0), g.coord(1, node[1] + o1)});
  }
  return centers;
}

void check_query_fits(const GridSpec& g, const Window& w,
                      const std::array<int, 2>& node, int max_offset) {
  for (int axis = 0; axis < g.dim; ++axis) {
    const int margin = w.halfwidth + max_offset;
    if (node[axis] - margin < 0 || node[axis] + margin > g.shape[axis] - 1)
      fail(ErrorKind::config,
           "window support plus K neighbourhood leaves the grid extent");
  }
}

}  // namespace

PointResult test_point(const SampledField& f, const RegularityQuery& query) {
  const GridSpec& g = f.grid();
  const FreqLattice lat = FreqLattice::of(g);
  const Window w = bump_window(query.window.support_radius,
                               query.window.flat_order, g);
  const double k = default_k_radius(query.k_radius, g);
  const RadiusSchedule schedule = resolve_schedule(query.schedule, lat);
  const auto offsets = center_offsets(k, query.center_count, g.spacing);

  std::array<int, 2> node{g.nearest_index(0, query.x0[0]),
                          g.dim == 2 ? g.nearest_index(1, query.x0[1]) : 0};
  check_query_fits(g, w, node, std::abs(offsets.back()));

  const Cone cone = Cone::around(g.dim, query.direction, query.half_angle);
  const auto centers = centers_around(g, node, offsets);

  DirectCellResult r = evaluate_cell_direct(f, w, centers, cone,
                                            query.backend, schedule,
                                            query.epsilon);
  PointResult out;
  out.centers = std::move(r.centers);
  CellVerdict v = r.verdict;
  if (query.refine && v.decision == Decision::singular && g.dim == 2) {
    const Cone narrow =
        Cone::around(g.dim, query.direction, 0.5 * query.half_angle);
    DirectCellResult rr = evaluate_cell_direct(f, w, centers, narrow,
                                               query.backend, schedule,
                                               query.epsilon);
    v = rr.verdict;
    out.centers = std::move(rr.centers);
    out.refined = true;
  }
  out.cell.x = {g.coord(0, node[0]), g.dim == 2 ? g.coord(1, node[1]) : 0.0};
  out.cell.direction = query.direction;
  out.cell.score = v.score;
  out.cell.decision = v.decision;
  return out;
}

namespace {

struct SweepFrame {
  Window window;
  FreqLattice lat;
  RadiusSchedule schedule;
  std::vector<int> offsets;             // center offsets per axis
  std::vector<std::array<int, 2>> positions;  // x nodes, row-major
  DirectionGrid dirs;
};

SweepFrame prepare_sweep(const SampledField& f, const SweepConfig& cfg) {
  const GridSpec& g = f.grid();
  SweepFrame fr;
  fr.window = bump_window(cfg.window.support_radius, cfg.window.flat_order, g);
  fr.lat = FreqLattice::of(g);
  fr.schedule = resolve_schedule(cfg.schedule, fr.lat);
  const double k = default_k_radius(cfg.k_radius, g);
  fr.offsets = center_offsets(k, cfg.center_count, g.spacing);
  fr.dirs = direction_grid(g.dim, cfg.directions);
  if (cfg.stride < 1) fail(ErrorKind::config, "stride must be positive");

  const int max_off = std::abs(fr.offsets.back());
  const int margin = fr.window.halfwidth + max_off;
  std::array<std::vector<int>, 2> axis_nodes;
  for (int axis = 0; axis < g.dim; ++axis) {
    const int lo = margin;
    const int hi = g.shape[axis] - 1 - margin;
    if (lo > hi)
      fail(ErrorKind::config,
           "empty safe interior: window plus K margins exceed the grid");
    // Anchor the strided grid at the node nearest coordinate 0 so lattice
    // translations of the field translate the report.
    const int anchor = g.nearest_index(axis, 0.0);
    const int rem = ((anchor - lo) % cfg.stride + cfg.stride) % cfg.stride;
    for (int j = lo + rem; j <= hi; j += cfg.stride)
      axis_nodes[axis].push_back(j);
    if (axis_nodes[axis].empty())
      fail(ErrorKind::config, "empty safe interior: stride skips every node");
  }
  if (g.dim == 1) {
    for (int j : axis_nodes[0]) fr.positions.push_back({j, 0});
  } else {
    for (int j0 : axis_nodes[0])
      for (int j1 : axis_nodes[1]) fr.positions.push_back({j0, j1});
  }
  return fr;
}

// Per-center reduction: partial power sums (or maxes for q = inf) per
// (direction, schedule bucket), plus the slice peak for the noise floor.
struct CenterTable {
  std::vector<double> power;  // [dir][bucket]
  double peak = 0.0;
};

struct LatticeGeometry {
  std::vector<double> angle;   // dim 2: atan2 of each nonzero lattice point
  std::vector<double> radius;  // |xi|
  std::vector<int> bucket;     // schedule bucket or -1
  std::vector<signed char> sign1d;  // dim 1: -1, 0, +1 of xi
};

LatticeGeometry lattice_geometry(const FreqLattice& lat,
                                 const RadiusSchedule& schedule) {
  LatticeGeometry geo;
  const std::size_t n = lat.count();
  geo.angle.resize(n, 0.0);
  geo.radius.resize(n, 0.0);
  geo.bucket.resize(n, -1);
  geo.sign1d.resize(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 xi = lat.xi(k);
    const double r = lat.xi_norm(k);
    geo.radius[k] = r;
    if (lat.dim == 1)
      geo.sign1d[k] = xi[0] > 0.0 ? 1 : xi[0] < 0.0 ? -1 : 0;
    else if (xi[0] != 0.0 || xi[1] != 0.0)
      geo.angle[k] = angle_of(xi);
    if (r <= schedule.radii.back()) {
      int b = 0;
      while (r > schedule.radii[b]) ++b;
      geo.bucket[k] = b;
    }
  }
  return geo;
}

CenterTable reduce_center(std::span<const cplx> slice,
                          const LatticeGeometry& geo, const FreqLattice& lat,
                          const std::vector<Cone>& cones,
                          const WeightTable& wt, double q, bool linf,
                          std::size_t nbuckets) {
  CenterTable t;
  t.power.assign(cones.size() * nbuckets, 0.0);
  for (std::size_t k = 0; k < slice.size(); ++k) {
    // Finiteness is guaranteed upstream (field and window are validated);
    // no throwing inside the parallel region.
    const double amp = std::abs(slice[k]);
    t.peak = std::max(t.peak, amp);
    const int b = geo.bucket[k];
    if (b < 0) continue;
    for (std::size_t d = 0; d < cones.size(); ++d) {
      const bool inside = lat.dim == 1
                              ? geo.sign1d[k] == cones[d].axis_sign()
                              : (geo.radius[k] > 0.0 &&
                                 cones[d].contains_angle(geo.angle[k]));
      if (!inside) continue;
      double& slot = t.power[d * nbuckets + b];
      if (linf)
        slot = std::max(slot, wt.w[k] * amp);
      else
        slot += normdetail::power_term(wt.w[k], amp, q);
    }
  }
  return t;
}

WavefrontReport assemble_report(const SampledField& f, const SweepConfig& cfg,
                                const SweepFrame& fr,
                                std::vector<WavefrontCell> cells) {
  WavefrontReport rep;
  rep.dim = f.grid().dim;
  rep.directions = fr.dirs;
  rep.x_nodes = fr.positions;
  for (const auto& node : fr.positions)
    rep.x_positions.push_back(
        {f.grid().coord(0, node[0]),
         f.grid().dim == 2 ? f.grid().coord(1, node[1]) : 0.0});
  rep.cells = std::move(cells);
  rep.sing_supp = sing_supp(rep);
  (void)cfg;
  return rep;
}

}  // namespace

WavefrontReport sweep(const SampledField& f, const SweepConfig& cfg) {
  const GridSpec& g = f.grid();
  const SweepFrame fr = prepare_sweep(f, cfg);
  const std::size_t ndir = fr.dirs.directions.size();
  const std::size_t nbuckets = fr.schedule.radii.size();

  // Unique centers across all cells.
  std::vector<std::array<int, 2>> centers;
  for (const auto& pos : fr.positions) {
    if (g.dim == 1) {
      for (int o : fr.offsets) centers.push_back({pos[0] + o, 0});
    } else {
      for (int o0 : fr.offsets)
        for (int o1 : fr.offsets)
          centers.push_back({pos[0] + o0, pos[1] + o1});
    }
  }
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  auto center_index = [&](const std::array<int, 2>& node) {
    return static_cast<std::size_t>(
        std::lower_bound(centers.begin(), centers.end(), node) -
        centers.begin());
  };

  const LatticeGeometry geo = lattice_geometry(fr.lat, fr.schedule);
  const WeightTable wt = build_weight_table(cfg.backend, fr.lat);
  std::vector<Cone> cones;
  for (const Vec2& d : fr.dirs.directions)
    cones.push_back(Cone::around(g.dim, d, cfg.half_angle));

  const double q = cfg.backend.q();
  const bool linf = cfg.backend.is_linf();
  const int nth = resolve_threads(cfg.threads);
  (void)nth;

  std::vector<CenterTable> tables(centers.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nth)
#endif
  for (std::ptrdiff_t ci = 0; ci < static_cast<std::ptrdiff_t>(centers.size());
       ++ci) {
    std::vector<cplx> slice(fr.lat.count());
    stft_center_slice(f, fr.window, centers[ci], true, slice);
    tables[ci] =
        reduce_center(slice, geo, fr.lat, cones, wt, q, linf, nbuckets);
  }

  const double floor_scale = normdetail::noise_floor_scale(fr.lat, q);
  const double cell_meas = fr.lat.cell_measure();
  std::vector<WavefrontCell> cells(fr.positions.size() * ndir);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nth)
#endif
  for (std::ptrdiff_t idx = 0;
       idx < static_cast<std::ptrdiff_t>(cells.size()); ++idx) {
    const std::size_t xi = static_cast<std::size_t>(idx) / ndir;
    const std::size_t di = static_cast<std::size_t>(idx) % ndir;
    Aggregator agg;
    std::vector<double> partials(nbuckets);
    auto eval_center = [&](const std::array<int, 2>& node) {
      const CenterTable& t = tables[center_index(node)];
      const double* row = &t.power[di * nbuckets];
      double run = 0.0;
      for (std::size_t b = 0; b < nbuckets; ++b) {
        if (linf) {
          run = std::max(run, row[b]);
          partials[b] = run;
        } else {
          run += row[b];
          partials[b] = normdetail::partial_from_power(run, cell_meas, q);
        }
      }
      const auto d = normdetail::decide_tail(partials, t.peak, floor_scale,
                                             cfg.epsilon);
      agg.add(d.tail, d.decision);
    };
    const auto& pos = fr.positions[xi];
    if (g.dim == 1) {
      for (int o : fr.offsets) eval_center({pos[0] + o, 0});
    } else {
      for (int o0 : fr.offsets)
        for (int o1 : fr.offsets) eval_center({pos[0] + o0, pos[1] + o1});
    }
    CellVerdict v = agg.verdict();
    if (cfg.refine && v.decision == Decision::singular && g.dim == 2) {
      const Cone narrow =
          Cone::around(g.dim, fr.dirs.directions[di], 0.5 * cfg.half_angle);
      const auto centers_xy = centers_around(g, pos, fr.offsets);
      v = evaluate_cell_direct(f, fr.window, centers_xy, narrow, cfg.backend,
                               fr.schedule, cfg.epsilon)
              .verdict;
    }
    WavefrontCell& cell = cells[idx];
    cell.x_index = static_cast<int>(xi);
    cell.direction_index = static_cast<int>(di);
    cell.x = {g.coord(0, pos[0]), g.dim == 2 ? g.coord(1, pos[1]) : 0.0};
    cell.direction = fr.dirs.directions[di];
    cell.score = v.score;
    cell.decision = v.decision;
  }
  return assemble_report(f, cfg, fr, std::move(cells));
}

WavefrontReport sweep_reference(const SampledField& f,
                                const SweepConfig& cfg) {
  const GridSpec& g = f.grid();
  const SweepFrame fr = prepare_sweep(f, cfg);
  const std::size_t ndir = fr.dirs.directions.size();
  std::vector<WavefrontCell> cells(fr.positions.size() * ndir);
  for (std::size_t xi = 0; xi < fr.positions.size(); ++xi) {
    const auto& pos = fr.positions[xi];
    for (std::size_t di = 0; di < ndir; ++di) {
      RegularityQuery q;
      q.x0 = {g.coord(0, pos[0]), g.dim == 2 ? g.coord(1, pos[1]) : 0.0};
      q.direction = fr.dirs.directions[di];
      q.k_radius = cfg.k_radius;
      q.half_angle = cfg.half_angle;
      q.window = cfg.window;
      q.backend = cfg.backend;
      q.center_count = cfg.center_count;
      q.schedule = fr.schedule;
      q.epsilon = cfg.epsilon;
      q.refine = cfg.refine;
      const PointResult r = test_point(f, q);
      WavefrontCell& cell = cells[xi * ndir + di];
      cell = r.cell;
      cell.x_index = static_cast<int>(xi);
      cell.direction_index = static_cast<int>(di);
    }
  }
  return assemble_report(f, cfg, fr, std::move(cells));
}

std::vector<int> sing_supp(const WavefrontReport& report) {
  std::set<int> idx;
  for (const WavefrontCell& c : report.cells)
    if (c.decision == Decision::singular) idx.insert(c.x_index);
  return std::vector<int>(idx.begin(), idx.end());
}

std::vector<DirectionDecision> sigma_global(const SampledField& f,
                                            const NormBackend& backend,
                                            const DirectionGrid& dirs,
                                            double half_angle,
                                            const RadiusSchedule& schedule,
                                            double epsilon) {
  const GridSpec& g = f.grid();
  if (dirs.dim != g.dim)
    fail(ErrorKind::config, "direction grid dimension mismatch");
  // Compact-support surrogate: relative amplitude <= 1e-12 outside the
  // central half of the grid.
  double peak = 0.0;
  for (const cplx& z : f.samples()) peak = std::max(peak, std::abs(z));
  for (std::size_t i = 0; i < f.samples().size(); ++i) {
    bool outside = false;
    const int i0 = static_cast<int>(i / (g.dim == 2 ? g.shape[1] : 1));
    const int i1 = static_cast<int>(i % (g.dim == 2 ? g.shape[1] : 1));
    const int idx[2] = {i0, g.dim == 2 ? i1 : 0};
    for (int axis = 0; axis < g.dim; ++axis)
      if (idx[axis] < g.shape[axis] / 4 || idx[axis] >= 3 * g.shape[axis] / 4)
        outside = true;
    if (outside && std::abs(f.at(i)) > 1e-12 * peak)
      fail(ErrorKind::data,
           "field is not compactly supported in the central half of the "
           "grid");
  }

  const FreqLattice lat = FreqLattice::of(g);
  const RadiusSchedule sched = resolve_schedule(schedule, lat);
  const std::vector<cplx> spectrum = absolute_spectrum(f);
  const WeightTable wt = build_weight_table(backend, lat);

  std::vector<DirectionDecision> out(dirs.directions.size());
  for (std::size_t d = 0; d < dirs.directions.size(); ++d) {
    const Cone cone = Cone::around(g.dim, dirs.directions[d], half_angle);
    const MembershipScore ms = membership_score(spectrum, cone, backend,
                                                sched, epsilon, lat, &wt);
    out[d] = DirectionDecision{dirs.directions[d], dirs.angles[d],
                               ms.tail_ratio, ms.decision};
  }
  return out;
}

double lipschitz_check(const SampledField& f, const Window& window,
                       const Cone& cone, const NormBackend& backend,
                       const Vec2& x, const Vec2& x_prime, double radius) {
  const GridSpec& g = f.grid();
  const Vec2 centers[2] = {x, x_prime};
  const StftVolume vol =
      compute_stft(f, window, std::span<const Vec2>(centers, 2),
                   StftOptions{1, true});
  const Vec2 a = vol.centers[0];
  const Vec2 b = vol.centers[1];
  const double dist =
      g.dim == 1 ? std::abs(a[0] - b[0]) : std::hypot(a[0] - b[0], a[1] - b[1]);
  if (dist == 0.0)
    fail(ErrorKind::degenerate_input,
         "centers coincide after snapping to the grid");
  if (dist > 4.0 * g.spacing * (1.0 + 1e-12))
    fail(ErrorKind::invalid_argument,
         "lipschitz check requires |x - x'| <= 4 grid spacings");
  std::vector<cplx> diff(vol.lattice.count());
  const auto s0 = vol.slice(0);
  const auto s1 = vol.slice(1);
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = s0[k] - s1[k];
  return backend_norm(diff, cone, backend, radius, vol.lattice) / dist;
}

}  // namespace wf
