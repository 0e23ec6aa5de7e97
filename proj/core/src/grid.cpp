#include "morlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace morlab {

double GridSpec::cell_volume() const { return std::pow(spacing(), dim); }

double GridSpec::box_volume() const { return std::pow(2.0 * half_width, dim); }

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(points_per_axis);
  return n;
}

Index GridSpec::unravel(std::size_t flat) const {
  Index idx{0, 0, 0};
  const auto m = static_cast<std::size_t>(points_per_axis);
  for (int a = dim - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % m);
    flat /= m;
  }
  return idx;
}

std::size_t GridSpec::ravel(const Index& idx) const {
  std::size_t flat = 0;
  const auto m = static_cast<std::size_t>(points_per_axis);
  for (int a = 0; a < dim; ++a) flat = flat * m + static_cast<std::size_t>(idx[a]);
  return flat;
}

Point GridSpec::point(std::size_t flat) const {
  const Index idx = unravel(flat);
  Point x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) x[a] = coord(idx[a]);
  return x;
}

int GridSpec::nearest(double x) const {
  const int i = static_cast<int>(std::lround((x + half_width) / spacing()));
  return std::clamp(i, 0, points_per_axis - 1);
}

GridSpec make_grid(int dim, double half_width, int points_per_axis,
                   bool periodic) {
  if (dim < 1 || dim > 3) {
    throw DomainError("grid dimension must lie in {1,2,3}, got " +
                      std::to_string(dim));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw DomainError("grid half_width must be positive and finite");
  }
  if (points_per_axis < 4) {
    throw DomainError("grid points_per_axis must be >= 4, got " +
                      std::to_string(points_per_axis));
  }
  return GridSpec{dim, half_width, points_per_axis, periodic};
}

SampledFunction::SampledFunction(const GridSpec& g, std::vector<double> v)
    : grid(g), values(std::move(v)), weight(g.cell_volume()) {
  if (values.size() != grid.size()) {
    throw DomainError("sample count " + std::to_string(values.size()) +
                      " does not match grid point count " +
                      std::to_string(grid.size()));
  }
}

double SampledFunction::integral() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * weight;
}

double SampledFunction::abs_integral() const {
  double s = 0.0;
  for (double v : values) s += std::abs(v);
  return s * weight;
}

double SampledFunction::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

namespace {

void check_finite(const std::vector<double>& values, const GridSpec& grid) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      const Index idx = grid.unravel(i);
      const Point x = grid.point(i);
      std::ostringstream os;
      os << "non-finite sample at node (";
      for (int a = 0; a < grid.dim; ++a) os << (a ? "," : "") << idx[a];
      os << ") x = (";
      for (int a = 0; a < grid.dim; ++a) os << (a ? "," : "") << x[a];
      os << ")";
      throw DomainError(os.str());
    }
  }
}

}  // namespace

SampledFunction sample(const ScalarField& fn, const GridSpec& grid) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = fn(grid.point(i));
  check_finite(values, grid);
  return SampledFunction(grid, std::move(values));
}

SampledFunction sample_table(std::vector<double> values, const GridSpec& grid) {
  check_finite(values, grid);
  return SampledFunction(grid, std::move(values));
}

SampledFunction zeros(const GridSpec& grid) {
  return SampledFunction(grid, std::vector<double>(grid.size(), 0.0));
}

std::size_t Cube::cell_count(int dim) const {
  std::size_t n = 1;
  for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(side);
  return n;
}

double Cube::measure(const GridSpec& g) const {
  return std::pow(side_length(g), g.dim);
}

Point Cube::center(const GridSpec& g) const {
  Point c{0.0, 0.0, 0.0};
  const double h = g.spacing();
  for (int a = 0; a < g.dim; ++a) {
    c[a] = g.coord(lo[a]) - 0.5 * h + 0.5 * side * h;
  }
  return c;
}

bool Cube::contains(const Index& idx, int dim) const {
  for (int a = 0; a < dim; ++a) {
    if (idx[a] < lo[a] || idx[a] >= lo[a] + side) return false;
  }
  return true;
}

bool Cube::inside(const GridSpec& g) const {
  if (side < 1) return false;
  for (int a = 0; a < g.dim; ++a) {
    if (lo[a] < 0 || lo[a] + side > g.points_per_axis) return false;
  }
  return true;
}

namespace {

// Appends every cube of the given side whose lower corners lie on the lattice
// offset + k*side, one offset per axis.
void add_lattice(const GridSpec& g, int side, const Index& offset,
                 std::vector<Cube>& out) {
  const int m = g.points_per_axis;
  Index count{1, 1, 1};
  for (int a = 0; a < g.dim; ++a) {
    count[a] = offset[a] + side <= m ? (m - offset[a] - side) / side + 1 : 0;
    if (count[a] == 0) return;
  }
  Index k{0, 0, 0};
  for (;;) {
    Cube q;
    q.side = side;
    for (int a = 0; a < g.dim; ++a) q.lo[a] = offset[a] + k[a] * side;
    out.push_back(q);
    int a = g.dim - 1;
    while (a >= 0 && ++k[a] == count[a]) {
      k[a] = 0;
      --a;
    }
    if (a < 0) break;
  }
}

}  // namespace

CubeFamily enumerate_cubes(const GridSpec& grid, int max_scales,
                           int translations_per_scale) {
  if (max_scales < 3) {
    throw DomainError("enumerate_cubes requires max_scales >= 3, got " +
                      std::to_string(max_scales));
  }
  if (translations_per_scale < 0) {
    throw DomainError("translations_per_scale must be non-negative");
  }
  CubeFamily fam;
  const int m = grid.points_per_axis;
  int side = m;
  for (int s = 0; s < max_scales && side >= 1; ++s) {
    fam.scales.push_back(side);
    const int t = translations_per_scale;
    // Offsets per axis: 0 plus the distinct nonzero shifts.
    std::vector<int> shifts{0};
    for (int j = 1; j <= t; ++j) {
      const int o = side * j / (t + 1);
      if (o > 0 && std::find(shifts.begin(), shifts.end(), o) == shifts.end()) {
        shifts.push_back(o);
      }
    }
    const int ns = static_cast<int>(shifts.size());
    int combos = 1;
    for (int a = 0; a < grid.dim; ++a) combos *= ns;
    for (int c = 0; c < combos; ++c) {
      Index off{0, 0, 0};
      int r = c;
      for (int a = 0; a < grid.dim; ++a) {
        off[a] = shifts[r % ns];
        r /= ns;
      }
      add_lattice(grid, side, off, fam.cubes);
    }
    if (side % 2 != 0) break;
    side /= 2;
  }
  return fam;
}

CubeFamily enumerate_all_scales(const GridSpec& grid,
                                int translations_per_scale) {
  int scales = 1;
  for (int side = grid.points_per_axis; side % 2 == 0; side /= 2) ++scales;
  return enumerate_cubes(grid, std::max(scales, 3), translations_per_scale);
}

void restrict_to(const SampledFunction& f, const Cube& q,
                 std::vector<double>& out) {
  const GridSpec& g = f.grid;
  out.clear();
  out.reserve(q.cell_count(g.dim));
  const std::size_t m = static_cast<std::size_t>(g.points_per_axis);
  if (g.dim == 1) {
    for (int i = 0; i < q.side; ++i) out.push_back(f.values[q.lo[0] + i]);
  } else if (g.dim == 2) {
    for (int i = 0; i < q.side; ++i) {
      const double* row = f.values.data() + (q.lo[0] + i) * m + q.lo[1];
      out.insert(out.end(), row, row + q.side);
    }
  } else {
    for (int i = 0; i < q.side; ++i) {
      for (int j = 0; j < q.side; ++j) {
        const double* row =
            f.values.data() + ((q.lo[0] + i) * m + (q.lo[1] + j)) * m + q.lo[2];
        out.insert(out.end(), row, row + q.side);
      }
    }
  }
}

std::vector<double> restrict_to(const SampledFunction& f, const Cube& q) {
  std::vector<double> out;
  restrict_to(f, q, out);
  return out;
}

PrefixSum::PrefixSum(const SampledFunction& f, bool absolute)
    : dim_(f.grid.dim), m_(f.grid.points_per_axis) {
  const int m1 = m_ + 1;
  const int ny = dim_ >= 2 ? m1 : 1;
  const int nz = dim_ >= 3 ? m1 : 1;
  table_.assign(static_cast<std::size_t>(m1) * ny * nz, 0.0);
  auto T = [&](int i, int j, int k) -> double& {
    return table_[(static_cast<std::size_t>(i) * ny + j) * nz + k];
  };
  const int mx = m_;
  const int my = dim_ >= 2 ? m_ : 0;
  const int mz = dim_ >= 3 ? m_ : 0;
  for (int i = 1; i <= mx; ++i) {
    for (int j = (dim_ >= 2 ? 1 : 0); j <= my; ++j) {
      for (int k = (dim_ >= 3 ? 1 : 0); k <= mz; ++k) {
        Index idx{i - 1, dim_ >= 2 ? j - 1 : 0, dim_ >= 3 ? k - 1 : 0};
        double v = f.values[f.grid.ravel(idx)];
        if (absolute) v = std::abs(v);
        double s = v + T(i - 1, j, k);
        if (dim_ >= 2) s += T(i, j - 1, k) - T(i - 1, j - 1, k);
        if (dim_ >= 3) {
          s += T(i, j, k - 1) - T(i - 1, j, k - 1) - T(i, j - 1, k - 1) +
               T(i - 1, j - 1, k - 1);
        }
        T(i, j, k) = s;
      }
    }
  }
}

double PrefixSum::at(int i, int j, int k) const {
  const int m1 = m_ + 1;
  const int ny = dim_ >= 2 ? m1 : 1;
  const int nz = dim_ >= 3 ? m1 : 1;
  return table_[(static_cast<std::size_t>(i) * ny + j) * nz + k];
}

double PrefixSum::sum(const Cube& q) const {
  const int x0 = q.lo[0], x1 = q.lo[0] + q.side;
  if (dim_ == 1) return at(x1, 0, 0) - at(x0, 0, 0);
  const int y0 = q.lo[1], y1 = q.lo[1] + q.side;
  if (dim_ == 2) {
    return at(x1, y1, 0) - at(x0, y1, 0) - at(x1, y0, 0) + at(x0, y0, 0);
  }
  const int z0 = q.lo[2], z1 = q.lo[2] + q.side;
  return at(x1, y1, z1) - at(x0, y1, z1) - at(x1, y0, z1) - at(x1, y1, z0) +
         at(x0, y0, z1) + at(x0, y1, z0) + at(x1, y0, z0) - at(x0, y0, z0);
}

}  // namespace morlab

namespace morlab {

SampledFunction dilate(const SampledFunction& f, double gamma) {
  const GridSpec& g = f.grid;
  const int m = g.points_per_axis;
  if (m % 2 != 0) throw DomainError("dilate needs an even points_per_axis");
  SampledFunction out = zeros(g);
  if (gamma == 0.5) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Index idx = g.unravel(i);
      bool upper = false;
      for (int a = 0; a < g.dim; ++a) upper = upper || idx[a] >= m / 2;
      if (upper && f.values[i] != 0.0) {
        throw DomainError("dilate(1/2): f must vanish outside the lower half box");
      }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      Index idx = g.unravel(i);
      for (int a = 0; a < g.dim; ++a) idx[a] /= 2;
      out.values[i] = f.values[g.ravel(idx)];
    }
    return out;
  }
  if (gamma == 2.0) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      Index idx = g.unravel(i);
      for (int a = 0; a < g.dim; ++a) idx[a] -= idx[a] % 2;
      if (f.values[i] != f.values[g.ravel(idx)]) {
        throw DomainError("dilate(2): f must be constant on 2-cell blocks");
      }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      Index idx = g.unravel(i);
      bool inside = true;
      for (int a = 0; a < g.dim; ++a) {
        idx[a] *= 2;
        inside = inside && idx[a] < m;
      }
      if (inside) out.values[i] = f.values[g.ravel(idx)];
    }
    return out;
  }
  throw DomainError("dilate supports gamma in {1/2, 2}");
}

}  // namespace morlab
