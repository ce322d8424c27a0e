// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "wf/stft.hpp"

#include <cmath>
#include <fstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <nlohmann/json.hpp>

#include "wf/error.hpp"
#include "wf/fft.hpp"
#include "wf/specstring.hpp"

namespace wf {

namespace {

double bump_profile(double support_radius, double flat_order, double r) {
  const double u = (r / support_radius) * (r / support_radius);
  if (u >= 1.0) return 0.0;
  return std::exp(flat_order - flat_order / (1.0 - u));
}

int resolve_threads(int requested) {
#ifdef _OPENMP
  return requested > 0 ? requested : omp_get_max_threads();
#else
  (void)requested;
  return 1;
#endif
}

std::array<int, 2> snap_center(const GridSpec& g, const Vec2& x) {
  std::array<int, 2> node{g.nearest_index(0, x[0]),
                          g.dim == 2 ? g.nearest_index(1, x[1]) : 0};
  return node;
}

void check_window_fits(const GridSpec& g, const Window& w,
                       const std::array<int, 2>& node) {
  for (int axis = 0; axis < g.dim; ++axis) {
    if (node[axis] - w.halfwidth < 0 ||
        node[axis] + w.halfwidth > g.shape[axis] - 1)
      fail(ErrorKind::boundary,
           "window support overruns the grid boundary at center node " +
               std::to_string(node[axis]) + " (axis " + std::to_string(axis) +
               "); no silent wrap-around");
  }
}

}  // namespace

double Window::profile(double r) const {
  return bump_profile(support_radius, flat_order, r);
}

double Window::lipschitz() const {
  const int w = 2 * halfwidth + 1;
  double lip = 0.0;
  if (dim == 1) {
    for (int u = -halfwidth; u < halfwidth; ++u)
      lip = std::max(lip, std::abs(at_offset(u + 1, 0) - at_offset(u, 0)));
  } else {
    for (int u0 = -halfwidth; u0 <= halfwidth; ++u0)
      for (int u1 = -halfwidth; u1 <= halfwidth; ++u1) {
        if (u0 + 1 <= halfwidth)
          lip = std::max(
              lip, std::abs(at_offset(u0 + 1, u1) - at_offset(u0, u1)));
        if (u1 + 1 <= halfwidth)
          lip = std::max(
              lip, std::abs(at_offset(u0, u1 + 1) - at_offset(u0, u1)));
      }
  }
  (void)w;
  return lip / spacing;
}

Window bump_window(double support_radius, double flat_order,
                   const GridSpec& grid) {
  if (!(flat_order >= 1.0))
    fail(ErrorKind::invalid_argument, "window flat order must be >= 1");
  if (!(support_radius >= 8.0 * grid.spacing))
    fail(ErrorKind::invalid_argument,
         "window support radius must cover at least 8 grid nodes "
         "(resolution)");
  Window w;
  w.support_radius = support_radius;
  w.flat_order = flat_order;
  w.spacing = grid.spacing;
  w.dim = grid.dim;
  w.halfwidth =
      static_cast<int>(std::ceil(support_radius / grid.spacing)) - 1;
  const int side = 2 * w.halfwidth + 1;
  if (grid.dim == 1) {
    w.samples.resize(side);
    for (int u = -w.halfwidth; u <= w.halfwidth; ++u)
      w.samples[u + w.halfwidth] =
          bump_profile(support_radius, flat_order, std::abs(u) * grid.spacing);
  } else {
    w.samples.resize(static_cast<std::size_t>(side) * side);
    for (int u0 = -w.halfwidth; u0 <= w.halfwidth; ++u0)
      for (int u1 = -w.halfwidth; u1 <= w.halfwidth; ++u1)
        w.samples[static_cast<std::size_t>(u0 + w.halfwidth) * side +
                  (u1 + w.halfwidth)] =
            bump_profile(support_radius, flat_order,
                         std::hypot(u0, u1) * grid.spacing);
  }
  return w;
}

Window parse_window_spec(const std::string& spec, const GridSpec& grid) {
  WindowParams p = WindowParams::parse(spec);
  return bump_window(p.support_radius, p.flat_order, grid);
}

std::string window_spec_string(const Window& w) {
  return "bump:R=" + format_double(w.support_radius) +
         ",a=" + format_double(w.flat_order);
}

WindowParams WindowParams::parse(const std::string& spec) {
  SpecString s = SpecString::parse(spec);
  if (s.name != "bump")
    fail(ErrorKind::invalid_argument,
         "unknown window kind '" + s.name + "' (only bump windows)");
  WindowParams p;
  p.support_radius = s.get_real("R");
  p.flat_order = s.get_real("a", 2.0);
  s.require_consumed("window");
  return p;
}

std::string WindowParams::canonical() const {
  return "bump:R=" + format_double(support_radius) +
         ",a=" + format_double(flat_order);
}

namespace {

// Shared preamble: snap centers, validate fit, fill the volume skeleton.
StftVolume make_volume(const SampledField& f, const Window& w,
                       std::span<const Vec2> centers) {
  const GridSpec& g = f.grid();
  if (w.dim != g.dim || w.spacing != g.spacing)
    fail(ErrorKind::invalid_argument,
         "window was sampled for a different grid");
  StftVolume vol;
  vol.dim = g.dim;
  vol.lattice = FreqLattice::of(g);
  for (const Vec2& c : centers) {
    auto node = snap_center(g, c);
    check_window_fits(g, w, node);
    vol.center_nodes.push_back(node);
    vol.centers.push_back({g.coord(0, node[0]),
                           g.dim == 2 ? g.coord(1, node[1]) : 0.0});
  }
  vol.values.assign(vol.centers.size() * vol.lattice.count(), cplx(0.0, 0.0));
  return vol;
}

}  // namespace

// One center of the fast path: windowed patch -> sign fold -> full-size FFT
// -> absolute-coordinate phase. The windowed slice is built relative to the
// center, so identical neighbourhoods give bit-identical spectra before the
// unit-modulus phase factor.
void stft_center_slice(const SampledField& f, const Window& w,
                       const std::array<int, 2>& node, bool absolute,
                       std::span<cplx> out) {
  const GridSpec& g = f.grid();
  const FreqLattice lat = FreqLattice::of(g);
  if (out.size() != lat.count())
    fail(ErrorKind::invalid_argument, "slice storage size mismatch");
  check_window_fits(g, w, node);
  const Vec2 x{g.coord(0, node[0]), g.dim == 2 ? g.coord(1, node[1]) : 0.0};
  const int n0 = g.shape[0];
  const int n1 = g.dim == 2 ? g.shape[1] : 1;

  std::vector<cplx> buf(static_cast<std::size_t>(n0) * n1, cplx(0.0, 0.0));
  const double meas = std::pow(g.spacing, g.dim);
  for (int u0 = -w.halfwidth; u0 <= w.halfwidth; ++u0) {
    const int j0 = node[0] + u0;
    const int b0 = (u0 % n0 + n0) % n0;
    if (g.dim == 1) {
      const double chi = w.at_offset(u0, 0);
      if (chi == 0.0) continue;
      const double sign = (u0 % 2 != 0) ? -1.0 : 1.0;
      buf[b0] = sign * meas * chi * f.at(static_cast<std::size_t>(j0));
    } else {
      for (int u1 = -w.halfwidth; u1 <= w.halfwidth; ++u1) {
        const double chi = w.at_offset(u0, u1);
        if (chi == 0.0) continue;
        const int j1 = node[1] + u1;
        const int b1 = (u1 % n1 + n1) % n1;
        const double sign = ((u0 + u1) % 2 != 0) ? -1.0 : 1.0;
        buf[static_cast<std::size_t>(b0) * n1 + b1] =
            sign * meas * chi * f.at(g.lin(j0, j1));
      }
    }
  }

  if (g.dim == 1)
    fft::transform(buf, false);
  else
    fft::transform_2d(buf, n0, n1, false);

  for (std::size_t k = 0; k < lat.count(); ++k) {
    const Vec2 xi = lat.xi(k);
    const double phase =
        absolute ? -(x[0] * xi[0] + (g.dim == 2 ? x[1] * xi[1] : 0.0)) : 0.0;
    out[k] = buf[k] * std::polar(1.0, phase);
  }
}

StftVolume compute_stft(const SampledField& f, const Window& window,
                        std::span<const Vec2> centers,
                        const StftOptions& opt) {
  StftVolume vol = make_volume(f, window, centers);
  const std::size_t nc = vol.centers.size();
  const std::size_t stride = vol.lattice.count();
  std::span<cplx> values(vol.values);
  const int nth = resolve_threads(opt.threads);
  (void)nth;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nth)
#endif
  for (std::ptrdiff_t ci = 0; ci < static_cast<std::ptrdiff_t>(nc); ++ci)
    stft_center_slice(f, window, vol.center_nodes[ci], opt.absolute_phase,
                      values.subspan(static_cast<std::size_t>(ci) * stride,
                                     stride));
  return vol;
}

StftVolume compute_stft_reference(const SampledField& f, const Window& window,
                                  std::span<const Vec2> centers) {
  StftVolume vol = make_volume(f, window, centers);
  const GridSpec& g = f.grid();
  const FreqLattice& lat = vol.lattice;
  const double meas = std::pow(g.spacing, g.dim);
  std::size_t w = 0;
  for (std::size_t ci = 0; ci < vol.centers.size(); ++ci) {
    const auto node = vol.center_nodes[ci];
    for (std::size_t k = 0; k < lat.count(); ++k) {
      const Vec2 xi = lat.xi(k);
      cplx acc(0.0, 0.0);
      for (int u0 = -window.halfwidth; u0 <= window.halfwidth; ++u0) {
        if (g.dim == 1) {
          const double chi = window.at_offset(u0, 0);
          if (chi == 0.0) continue;
          const double t = g.coord(0, node[0] + u0);
          acc += f.at(static_cast<std::size_t>(node[0] + u0)) * chi *
                 std::polar(1.0, -t * xi[0]);
        } else {
          for (int u1 = -window.halfwidth; u1 <= window.halfwidth; ++u1) {
            const double chi = window.at_offset(u0, u1);
            if (chi == 0.0) continue;
            const double t0 = g.coord(0, node[0] + u0);
            const double t1 = g.coord(1, node[1] + u1);
            acc += f.at(g.lin(node[0] + u0, node[1] + u1)) * chi *
                   std::polar(1.0, -(t0 * xi[0] + t1 * xi[1]));
          }
        }
      }
      vol.values[w++] = meas * acc;
    }
  }
  return vol;
}

cplx closed_form_stft(const AnalyticSignal& entry, const Window& window,
                      const Vec2& x, const Vec2& xi) {
  using Kind = AnalyticSignal::Kind;
  if (entry.kind == Kind::delta) {
    const double r = window.dim == 1
                         ? std::abs(entry.x0[0] - x[0])
                         : std::hypot(entry.x0[0] - x[0], entry.x0[1] - x[1]);
    const double chi = window.profile(r);
    const double phase =
        -(entry.x0[0] * xi[0] + (window.dim == 2 ? entry.x0[1] * xi[1] : 0.0));
    return std::polar(chi, phase);
  }
  if (entry.kind == Kind::plane_wave) {
    const Vec2 zeta{xi[0] - entry.eta[0],
                    window.dim == 2 ? xi[1] - entry.eta[1] : 0.0};
    double hat = 0.0;
    if (window.dim == 1) {
      // chi real and even: chi_hat(z) = 2 int_0^R cos(z u) chi(u) du,
      // midpoint rule at 16x the grid resolution.
      const double step = window.spacing / 16.0;
      const long nsteps =
          static_cast<long>(std::ceil(window.support_radius / step));
      double acc = 0.0;
      for (long k = 0; k < nsteps; ++k) {
        const double u = (k + 0.5) * step;
        acc += std::cos(zeta[0] * u) * window.profile(u);
      }
      hat = 2.0 * step * acc;
    } else {
      const double step = window.spacing / 8.0;
      const long nsteps =
          static_cast<long>(std::ceil(window.support_radius / step));
      double acc = 0.0;
      for (long k0 = -nsteps; k0 < nsteps; ++k0)
        for (long k1 = -nsteps; k1 < nsteps; ++k1) {
          const double u0 = (k0 + 0.5) * step;
          const double u1 = (k1 + 0.5) * step;
          const double chi = window.profile(std::hypot(u0, u1));
          if (chi == 0.0) continue;
          acc += std::cos(zeta[0] * u0 + zeta[1] * u1) * chi;
        }
      hat = step * step * acc;
    }
    const double phase =
        -(zeta[0] * x[0] + (window.dim == 2 ? zeta[1] * x[1] : 0.0));
    return std::polar(1.0, phase) * hat;
  }
  fail(ErrorKind::oracle_unavailable,
       "closed-form STFT exists for delta and plane_wave entries only");
}

std::vector<cplx> absolute_spectrum(const SampledField& f) {
  const GridSpec& g = f.grid();
  const FreqLattice lat = FreqLattice::of(g);
  const int n0 = g.shape[0];
  const int n1 = g.dim == 2 ? g.shape[1] : 1;
  const double meas = std::pow(g.spacing, g.dim);
  std::vector<cplx> buf(f.samples().begin(), f.samples().end());
  for (int j0 = 0; j0 < n0; ++j0)
    for (int j1 = 0; j1 < n1; ++j1) {
      const double sign = ((j0 + j1) % 2 != 0) ? -1.0 : 1.0;
      buf[static_cast<std::size_t>(j0) * n1 + j1] *= sign * meas;
    }
  if (g.dim == 1)
    fft::transform(buf, false);
  else
    fft::transform_2d(buf, n0, n1, false);
  for (std::size_t k = 0; k < lat.count(); ++k) {
    const Vec2 xi = lat.xi(k);
    const double phase =
        -(g.origin[0] * xi[0] + (g.dim == 2 ? g.origin[1] * xi[1] : 0.0));
    buf[k] *= std::polar(1.0, phase);
  }
  return buf;
}

void save_stft(const StftVolume& v, const std::string& path) {
  nlohmann::ordered_json header;
  header["dim"] = v.dim;
  auto centers = nlohmann::ordered_json::array();
  for (const Vec2& c : v.centers) {
    if (v.dim == 1)
      centers.push_back(std::vector<double>{c[0]});
    else
      centers.push_back(std::vector<double>{c[0], c[1]});
  }
  header["centers"] = centers;
  header["freq_shape"] = v.dim == 2
                             ? std::vector<int>{v.lattice.shape[0],
                                                v.lattice.shape[1]}
                             : std::vector<int>{v.lattice.shape[0]};
  header["freq_spacing"] =
      v.dim == 2 ? std::vector<double>{v.lattice.dxi[0], v.lattice.dxi[1]}
                 : std::vector<double>{v.lattice.dxi[0]};
  header["dtype"] = "complex128-le";
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io, "cannot open '" + path + "' for writing");
  out << header.dump() << "\n";
  out.write(reinterpret_cast<const char*>(v.values.data()),
            static_cast<std::streamsize>(v.values.size() * sizeof(cplx)));
  if (!out) fail(ErrorKind::io, "short write to '" + path + "'");
}

}  // namespace wf
