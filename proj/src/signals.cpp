// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "wf/signals.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wf/error.hpp"
#include "wf/specstring.hpp"

static_assert(std::endian::native == std::endian::little,
              "field files are little-endian; big-endian hosts unsupported");

namespace wf {

namespace {
constexpr double kPi = 3.14159265358979323846;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double bump(double r2_over_R2, double a) {
  // exp(a - a/(1 - u)) with u = (|t|/R)^2, zero outside the support.
  if (r2_over_R2 >= 1.0) return 0.0;
  return std::exp(a - a / (1.0 - r2_over_R2));
}
}  // namespace

GridSpec GridSpec::make(int dim, const Vec2& origin, double spacing,
                        const std::array<int, 2>& shape) {
  if (dim != 1 && dim != 2)
    fail(ErrorKind::unsupported_dimension,
         "grids support dim 1 and 2, got " + std::to_string(dim));
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    fail(ErrorKind::invalid_argument, "grid spacing must be positive");
  GridSpec g;
  g.dim = dim;
  g.origin = origin;
  g.spacing = spacing;
  g.shape = shape;
  if (dim == 1) g.shape[1] = 1;
  for (int axis = 0; axis < dim; ++axis) {
    if (g.shape[axis] < 8 || !power_of_two(g.shape[axis]))
      fail(ErrorKind::invalid_argument,
           "grid shape entries must be powers of two >= 8, got " +
               std::to_string(g.shape[axis]));
  }
  return g;
}

GridSpec GridSpec::parse(const std::string& spec) {
  SpecString s = SpecString::parse("grid:" + spec);
  auto n = s.get_ints("n");
  const double dx = s.get_real("dx");
  const int dim = static_cast<int>(n.size());
  std::array<int, 2> shape{n[0], dim == 2 ? n[1] : 1};
  Vec2 origin{-0.5 * shape[0] * dx, dim == 2 ? -0.5 * shape[1] * dx : 0.0};
  if (s.has("origin")) {
    auto o = s.get_reals("origin");
    if (static_cast<int>(o.size()) != dim)
      fail(ErrorKind::invalid_argument, "grid origin arity must match n");
    origin[0] = o[0];
    if (dim == 2) origin[1] = o[1];
  }
  s.require_consumed("grid");
  return make(dim, origin, dx, shape);
}

std::string GridSpec::canonical() const {
  std::string n = std::to_string(shape[0]);
  std::string o = format_double(origin[0]);
  if (dim == 2) {
    n += "x" + std::to_string(shape[1]);
    o += "x" + format_double(origin[1]);
  }
  return "n=" + n + ",dx=" + format_double(spacing) + ",origin=" + o;
}

Vec2 GridSpec::node_coord(std::size_t lin) const {
  if (dim == 1) return {coord(0, static_cast<int>(lin)), 0.0};
  const int i0 = static_cast<int>(lin / shape[1]);
  const int i1 = static_cast<int>(lin % shape[1]);
  return {coord(0, i0), coord(1, i1)};
}

int GridSpec::nearest_index(int axis, double x) const {
  return static_cast<int>(std::llround((x - origin[axis]) / spacing));
}

FreqLattice FreqLattice::of(const GridSpec& grid) {
  FreqLattice f;
  f.dim = grid.dim;
  f.shape = grid.shape;
  for (int axis = 0; axis < grid.dim; ++axis)
    f.dxi[axis] = 2.0 * kPi / (grid.shape[axis] * grid.spacing);
  if (grid.dim == 1) {
    f.shape[1] = 1;
    f.dxi[1] = 0.0;
  }
  return f;
}

Vec2 FreqLattice::xi(std::size_t lin) const {
  if (dim == 1)
    return {(static_cast<int>(lin) - shape[0] / 2) * dxi[0], 0.0};
  const int k0 = static_cast<int>(lin / shape[1]);
  const int k1 = static_cast<int>(lin % shape[1]);
  return {(k0 - shape[0] / 2) * dxi[0], (k1 - shape[1] / 2) * dxi[1]};
}

double FreqLattice::xi_norm(std::size_t lin) const {
  const Vec2 v = xi(lin);
  return dim == 1 ? std::abs(v[0]) : std::hypot(v[0], v[1]);
}

SampledField::SampledField(GridSpec grid, std::vector<cplx> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != grid_.count())
    fail(ErrorKind::data, "sample count does not match grid shape");
  for (const cplx& z : samples_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      fail(ErrorKind::data, "field contains non-finite samples");
}

AnalyticSignal AnalyticSignal::parse(const std::string& spec) {
  SpecString s = SpecString::parse(spec);
  AnalyticSignal e;
  auto read_vec = [&](const char* key, Vec2& out) {
    auto v = s.get_reals(key);
    out[0] = v[0];
    out[1] = v.size() == 2 ? v[1] : 0.0;
  };
  if (s.name == "zero") {
    e.kind = Kind::zero;
  } else if (s.name == "delta") {
    e.kind = Kind::delta;
    read_vec("x0", e.x0);
  } else if (s.name == "heaviside") {
    e.kind = Kind::heaviside;
    read_vec("x0", e.x0);
  } else if (s.name == "half_plane") {
    e.kind = Kind::half_plane;
    e.normal = {s.get_real("nx"), s.get_real("ny")};
    const double n = std::hypot(e.normal[0], e.normal[1]);
    if (!(n > 0.0))
      fail(ErrorKind::invalid_argument, "half_plane normal must be nonzero");
    e.normal[0] /= n;
    e.normal[1] /= n;
    e.offset = s.get_real("b", 0.0);
  } else if (s.name == "gaussian") {
    e.kind = Kind::gaussian;
    read_vec("center", e.x0);
    e.width = s.get_real("width");
    if (!(e.width > 0.0))
      fail(ErrorKind::invalid_argument, "gaussian width must be positive");
  } else if (s.name == "plane_wave") {
    e.kind = Kind::plane_wave;
    read_vec("eta", e.eta);
  } else if (s.name == "chirp") {
    e.kind = Kind::chirp;
    e.rate = s.get_real("rate");
  } else {
    fail(ErrorKind::invalid_argument, "unknown signal kind '" + s.name + "'");
  }
  s.require_consumed("signal");
  return e;
}

std::string AnalyticSignal::canonical() const {
  auto vec = [](const Vec2& v, int dim) {
    std::string out = format_double(v[0]);
    if (dim == 2) out += "x" + format_double(v[1]);
    return out;
  };
  switch (kind) {
    case Kind::zero:
      return "zero";
    case Kind::delta:
      return "delta:x0=" + vec(x0, x0[1] != 0.0 ? 2 : 1);
    case Kind::heaviside:
      return "heaviside:x0=" + format_double(x0[0]);
    case Kind::half_plane:
      return "half_plane:nx=" + format_double(normal[0]) +
             ",ny=" + format_double(normal[1]) + ",b=" + format_double(offset);
    case Kind::gaussian:
      return "gaussian:center=" + vec(x0, x0[1] != 0.0 ? 2 : 1) +
             ",width=" + format_double(width);
    case Kind::plane_wave:
      return "plane_wave:eta=" + vec(eta, eta[1] != 0.0 ? 2 : 1);
    case Kind::chirp:
      return "chirp:rate=" + format_double(rate);
  }
  return "zero";
}

namespace {

void check_inside(const GridSpec& g, const Vec2& p, const char* what) {
  const double margin = 10.0 * g.spacing;
  for (int axis = 0; axis < g.dim; ++axis) {
    if (p[axis] < g.extent_min(axis) + margin ||
        p[axis] > g.extent_max(axis) - margin)
      fail(ErrorKind::synthesis,
           std::string(what) + " lies outside the grid extent (10-node "
                               "margin required)");
  }
}

}  // namespace

SampledField synth(const AnalyticSignal& entry, const GridSpec& grid) {
  using Kind = AnalyticSignal::Kind;
  std::vector<cplx> v(grid.count(), cplx(0.0, 0.0));

  switch (entry.kind) {
    case Kind::zero:
      break;
    case Kind::delta: {
      check_inside(grid, entry.x0, "delta location");
      const int i0 = grid.nearest_index(0, entry.x0[0]);
      const int i1 = grid.dim == 2 ? grid.nearest_index(1, entry.x0[1]) : 0;
      const double height = std::pow(grid.spacing, -grid.dim);
      v[grid.lin(i0, i1)] = cplx(height, 0.0);
      break;
    }
    case Kind::heaviside: {
      if (grid.dim != 1)
        fail(ErrorKind::synthesis, "heaviside is a dim-1 catalog entry");
      check_inside(grid, entry.x0, "heaviside location");
      for (std::size_t i = 0; i < v.size(); ++i) {
        const double d = grid.coord(0, static_cast<int>(i)) - entry.x0[0];
        if (std::abs(d) < 0.5 * grid.spacing)
          v[i] = 0.5;
        else if (d > 0.0)
          v[i] = 1.0;
      }
      break;
    }
    case Kind::half_plane: {
      if (grid.dim != 2)
        fail(ErrorKind::synthesis, "half_plane is a dim-2 catalog entry");
      // The interface line must cross the grid interior with margin.
      double lo = 1e300, hi = -1e300;
      for (int cx = 0; cx < 2; ++cx)
        for (int cy = 0; cy < 2; ++cy) {
          const double px = cx ? grid.extent_max(0) : grid.extent_min(0);
          const double py = cy ? grid.extent_max(1) : grid.extent_min(1);
          const double proj = px * entry.normal[0] + py * entry.normal[1];
          lo = std::min(lo, proj);
          hi = std::max(hi, proj);
        }
      if (entry.offset < lo + 10.0 * grid.spacing ||
          entry.offset > hi - 10.0 * grid.spacing)
        fail(ErrorKind::synthesis,
             "half_plane interface misses the grid interior");
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 x = grid.node_coord(i);
        const double d =
            x[0] * entry.normal[0] + x[1] * entry.normal[1] - entry.offset;
        if (std::abs(d) < 0.5 * grid.spacing)
          v[i] = 0.5;
        else if (d > 0.0)
          v[i] = 1.0;
      }
      break;
    }
    case Kind::gaussian: {
      check_inside(grid, entry.x0, "gaussian center");
      const double inv = 1.0 / (2.0 * entry.width * entry.width);
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 x = grid.node_coord(i);
        const double dx = x[0] - entry.x0[0];
        const double dy = grid.dim == 2 ? x[1] - entry.x0[1] : 0.0;
        v[i] = std::exp(-(dx * dx + dy * dy) * inv);
      }
      break;
    }
    case Kind::plane_wave: {
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 x = grid.node_coord(i);
        const double phase =
            x[0] * entry.eta[0] + (grid.dim == 2 ? x[1] * entry.eta[1] : 0.0);
        v[i] = std::polar(1.0, phase);
      }
      break;
    }
    case Kind::chirp: {
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 x = grid.node_coord(i);
        const double r2 =
            x[0] * x[0] + (grid.dim == 2 ? x[1] * x[1] : 0.0);
        v[i] = std::polar(1.0, 0.5 * entry.rate * r2);
      }
      break;
    }
  }
  return SampledField(grid, std::move(v));
}

SampledField apply_bump_cutoff(const SampledField& f, const Vec2& center,
                               double support_radius, double flat_order) {
  if (!(support_radius > 0.0) || !(flat_order >= 1.0))
    fail(ErrorKind::invalid_argument, "cutoff needs R > 0 and a >= 1");
  const GridSpec& g = f.grid();
  std::vector<cplx> v(f.samples().begin(), f.samples().end());
  const double inv_r2 = 1.0 / (support_radius * support_radius);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 x = g.node_coord(i);
    const double dx = x[0] - center[0];
    const double dy = g.dim == 2 ? x[1] - center[1] : 0.0;
    v[i] *= bump((dx * dx + dy * dy) * inv_r2, flat_order);
  }
  return SampledField(g, std::move(v));
}

void save_field(const SampledField& f, const std::string& path) {
  nlohmann::ordered_json header;
  const GridSpec& g = f.grid();
  header["dim"] = g.dim;
  header["origin"] = g.dim == 2
                         ? std::vector<double>{g.origin[0], g.origin[1]}
                         : std::vector<double>{g.origin[0]};
  header["spacing"] = g.spacing;
  header["shape"] = g.dim == 2 ? std::vector<int>{g.shape[0], g.shape[1]}
                               : std::vector<int>{g.shape[0]};
  header["dtype"] = "complex128-le";

  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io, "cannot open '" + path + "' for writing");
  out << header.dump() << "\n";
  out.write(reinterpret_cast<const char*>(f.samples().data()),
            static_cast<std::streamsize>(f.samples().size() * sizeof(cplx)));
  if (!out) fail(ErrorKind::io, "short write to '" + path + "'");
}

SampledField load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::io, "missing field header");
  nlohmann::json header = nlohmann::json::parse(line, nullptr, false);
  if (header.is_discarded() || !header.is_object())
    fail(ErrorKind::io, "malformed field header");
  for (auto it = header.begin(); it != header.end(); ++it) {
    const std::string& k = it.key();
    if (k != "dim" && k != "origin" && k != "spacing" && k != "shape" &&
        k != "dtype")
      fail(ErrorKind::io, "unknown field header key '" + k + "'");
  }
  if (!header.contains("dim") || !header.contains("origin") ||
      !header.contains("spacing") || !header.contains("shape") ||
      !header.contains("dtype"))
    fail(ErrorKind::io, "field header missing required keys");
  if (header["dtype"] != "complex128-le")
    fail(ErrorKind::io, "unsupported field dtype");
  const int dim = header["dim"].get<int>();
  if (dim != 1 && dim != 2)
    fail(ErrorKind::unsupported_dimension,
         "field files support dim 1 and 2, got " + std::to_string(dim));
  auto origin = header["origin"].get<std::vector<double>>();
  auto shape = header["shape"].get<std::vector<int>>();
  if (static_cast<int>(origin.size()) != dim ||
      static_cast<int>(shape.size()) != dim)
    fail(ErrorKind::io, "field header arity mismatch");
  GridSpec grid = GridSpec::make(
      dim, {origin[0], dim == 2 ? origin[1] : 0.0},
      header["spacing"].get<double>(), {shape[0], dim == 2 ? shape[1] : 1});

  std::vector<cplx> samples(grid.count());
  in.read(reinterpret_cast<char*>(samples.data()),
          static_cast<std::streamsize>(samples.size() * sizeof(cplx)));
  if (static_cast<std::size_t>(in.gcount()) != samples.size() * sizeof(cplx))
    fail(ErrorKind::io, "field payload size mismatch (truncated file?)");
  char extra;
  if (in.read(&extra, 1))
    fail(ErrorKind::io, "field payload size mismatch (trailing bytes)");
  return SampledField(grid, std::move(samples));
}

SampledField load_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open '" + path + "' for reading");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double x = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        numeric = false;
        break;
      }
      row.push_back(x);
    }
    if (!numeric) {
      if (rows.empty()) continue;  // header line
      fail(ErrorKind::io, "non-numeric CSV row: " + line);
    }
    if (row.size() != 3 && row.size() != 4)
      fail(ErrorKind::io, "CSV rows need x[,y],re,im");
    if (!rows.empty() && rows.back().size() != row.size())
      fail(ErrorKind::io, "inconsistent CSV row arity");
    rows.push_back(std::move(row));
  }
  if (rows.size() < 8) fail(ErrorKind::io, "CSV field too small");
  const int dim = rows[0].size() == 3 ? 1 : 2;

  // Row-major: the last axis varies fastest.
  const double spacing = dim == 1 ? rows[1][0] - rows[0][0]
                                  : rows[1][1] - rows[0][1];
  if (!(spacing > 0.0)) fail(ErrorKind::io, "CSV coordinates not increasing");
  int n1 = 1;
  if (dim == 2) {
    while (n1 < static_cast<int>(rows.size()) && rows[n1][0] == rows[0][0])
      ++n1;
    if (rows.size() % n1 != 0) fail(ErrorKind::io, "ragged CSV grid");
  }
  const int n0 = static_cast<int>(rows.size()) / n1;
  GridSpec grid = GridSpec::make(dim, {rows[0][0], dim == 2 ? rows[0][1] : 0.0},
                                 spacing, {n0, dim == 2 ? n1 : 1});
  std::vector<cplx> samples(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Vec2 expect = grid.node_coord(i);
    if (std::abs(rows[i][0] - expect[0]) > 1e-9 * spacing ||
        (dim == 2 && std::abs(rows[i][1] - expect[1]) > 1e-9 * spacing))
      fail(ErrorKind::io, "CSV coordinates do not form a uniform grid");
    samples[i] = cplx(rows[i][dim], rows[i][dim + 1]);
  }
  return SampledField(grid, std::move(samples));
}

}  // namespace wf
