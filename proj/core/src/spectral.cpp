#include "morlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "morlab/potential.hpp"

namespace morlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_periodic_boundary(const GridSpec& g) {
  if (!g.periodic) throw DomainError("spectral operators need a periodic grid");
  if (g.dim > 2) throw DomainError("boundary grids have dimension 1 or 2");
}

std::vector<int> dims_of(const GridSpec& g) {
  return std::vector<int>(g.dim, g.points_per_axis);
}

int folded(int k, int m) { return k <= m / 2 ? k : k - m; }

SpectralField make_field(const SampledFunction& f,
                         const std::vector<double>& heights) {
  SpectralField out;
  out.boundary = f.grid;
  out.heights = heights;
  out.modes.resize(heights.size());
  return out;
}

void check_mean(const SampledFunction& f, ZeroModePolicy policy) {
  if (policy != ZeroModePolicy::strict_reject) return;
  const double mu = mean(f);
  if (std::abs(mu) > 1e-12 * std::max(f.max_abs(), 1e-300)) {
    std::ostringstream os;
    os << "N needs mean-zero data under the strict zero-mode policy; mean = "
       << mu;
    throw DomainError(os.str());
  }
}

}  // namespace

Frequencies frequencies(const GridSpec& g) {
  require_periodic_boundary(g);
  Frequencies fr;
  const std::size_t n = g.size();
  fr.xi.resize(n);
  fr.norm.resize(n);
  fr.nyquist.resize(n);
  const int m = g.points_per_axis;
  const double period = 2.0 * g.half_width;
  for (std::size_t i = 0; i < n; ++i) {
    const Index idx = g.unravel(i);
    std::array<double, 2> xi{0.0, 0.0};
    std::array<bool, 2> ny{false, false};
    for (int a = 0; a < g.dim; ++a) {
      xi[a] = folded(idx[a], m) / period;
      ny[a] = (m % 2 == 0) && idx[a] == m / 2;
    }
    fr.xi[i] = xi;
    fr.norm[i] = std::hypot(xi[0], xi[1]);
    fr.nyquist[i] = ny;
  }
  return fr;
}

std::vector<Complex> to_modes(const SampledFunction& f) {
  std::vector<Complex> c(f.values.begin(), f.values.end());
  fft_inplace(c, dims_of(f.grid), false);
  const double scale = 1.0 / static_cast<double>(c.size());
  for (auto& v : c) v *= scale;
  return c;
}

SampledFunction from_modes(const GridSpec& grid, std::vector<Complex> modes) {
  fft_inplace(modes, dims_of(grid), true);
  std::vector<double> v(modes.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = modes[i].real();
  return SampledFunction(grid, std::move(v));
}

SampledFunction SpectralField::materialize(std::size_t height_index) const {
  return from_modes(boundary, modes.at(height_index));
}

double SpectralField::hermitian_defect() const {
  double worst = 0.0;
  const int m = boundary.points_per_axis;
  for (const auto& c : modes) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      Index idx = boundary.unravel(i);
      for (int a = 0; a < boundary.dim; ++a) idx[a] = (m - idx[a]) % m;
      const std::size_t j = boundary.ravel(idx);
      worst = std::max(worst, std::abs(c[i] - std::conj(c[j])));
    }
  }
  return worst;
}

double mean(const SampledFunction& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return s / static_cast<double>(f.size());
}

SampledFunction subtract_mean(const SampledFunction& f) {
  SampledFunction out = f;
  const double mu = mean(f);
  for (auto& v : out.values) v -= mu;
  return out;
}

SampledFunction truncate_two_thirds(const SampledFunction& f) {
  require_periodic_boundary(f.grid);
  std::vector<Complex> c = to_modes(f);
  const int m = f.grid.points_per_axis;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Index idx = f.grid.unravel(i);
    for (int a = 0; a < f.grid.dim; ++a) {
      if (3 * std::abs(folded(idx[a], m)) > m) {
        c[i] = 0.0;
        break;
      }
    }
  }
  return from_modes(f.grid, std::move(c));
}

SampledFunction riesz_transform_spectral(const SampledFunction& f, int j) {
  require_periodic_boundary(f.grid);
  if (j < 1 || j > f.grid.dim) {
    throw DomainError("Riesz transform index j must lie in {1,...," +
                      std::to_string(f.grid.dim) + "}, got " + std::to_string(j));
  }
  const Frequencies fr = frequencies(f.grid);
  std::vector<Complex> c = to_modes(f);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (fr.norm[i] == 0.0 || fr.nyquist[i][j - 1]) {
      c[i] = 0.0;
    } else {
      c[i] *= Complex(0.0, fr.xi[i][j - 1] / fr.norm[i]);
    }
  }
  return from_modes(f.grid, std::move(c));
}

SampledFunction riesz_transform(const SampledFunction& f, int j,
                                TransformMethod method) {
  return method == TransformMethod::spectral ? riesz_transform_spectral(f, j)
                                             : riesz_transform_pv(f, j);
}

SpectralField single_layer_D(const SampledFunction& f,
                             const std::vector<double>& heights) {
  require_periodic_boundary(f.grid);
  for (double t : heights) {
    if (!(t > 0.0)) throw DomainError("D needs positive heights x_n > 0");
  }
  const Frequencies fr = frequencies(f.grid);
  const std::vector<Complex> c = to_modes(f);
  SpectralField out = make_field(f, heights);
  for (std::size_t h = 0; h < heights.size(); ++h) {
    auto& mh = out.modes[h];
    mh.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      mh[i] = c[i] * std::exp(-kTwoPi * fr.norm[i] * heights[h]);
    }
  }
  return out;
}

SpectralField neumann_layer_N(const SampledFunction& f,
                              const std::vector<double>& heights,
                              ZeroModePolicy policy) {
  require_periodic_boundary(f.grid);
  for (double t : heights) {
    if (!(t >= 0.0)) throw DomainError("N needs non-negative heights");
  }
  check_mean(f, policy);
  const Frequencies fr = frequencies(f.grid);
  const std::vector<Complex> c = to_modes(f);
  SpectralField out = make_field(f, heights);
  for (std::size_t h = 0; h < heights.size(); ++h) {
    auto& mh = out.modes[h];
    mh.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double k = fr.norm[i];
      mh[i] = k == 0.0 ? Complex(0.0, 0.0)
                       : c[i] * (std::exp(-kTwoPi * k * heights[h]) / (kTwoPi * k));
    }
  }
  return out;
}

SampledFunction boundary_trace_N(const SampledFunction& f,
                                 ZeroModePolicy policy) {
  return neumann_layer_N(f, {0.0}, policy).materialize(0);
}

std::vector<SpectralField> grad_N(const SampledFunction& f,
                                  const std::vector<double>& heights,
                                  ZeroModePolicy policy) {
  require_periodic_boundary(f.grid);
  for (double t : heights) {
    if (!(t >= 0.0)) throw DomainError("grad N needs non-negative heights");
  }
  check_mean(f, policy);
  const Frequencies fr = frequencies(f.grid);
  const std::vector<Complex> c = to_modes(f);
  const int d = f.grid.dim;
  std::vector<SpectralField> out(d + 1, make_field(f, heights));
  for (std::size_t h = 0; h < heights.size(); ++h) {
    for (int a = 0; a <= d; ++a) out[a].modes[h].assign(c.size(), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double k = fr.norm[i];
      if (k == 0.0) continue;
      const Complex damped = c[i] * std::exp(-kTwoPi * k * heights[h]);
      for (int a = 0; a < d; ++a) {
        if (!fr.nyquist[i][a]) {
          out[a].modes[h][i] = damped * Complex(0.0, fr.xi[i][a] / k);
        }
      }
      out[d].modes[h][i] = -damped;
    }
  }
  return out;
}

SampledFunction neumann_data_of_N(const SampledFunction& f,
                                  ZeroModePolicy policy) {
  auto g = grad_N(f, {0.0}, policy);
  auto c = std::move(g.back().modes[0]);
  for (auto& v : c) v = -v;
  return from_modes(f.grid, std::move(c));
}

double max_fd_laplacian(const SpectralField& field) {
  const GridSpec& g = field.boundary;
  const std::size_t nh = field.heights.size();
  if (nh < 3) throw DomainError("max_fd_laplacian needs at least 3 heights");
  const double dz = field.heights[1] - field.heights[0];
  for (std::size_t k = 1; k < nh; ++k) {
    if (std::abs(field.heights[k] - field.heights[k - 1] - dz) > 1e-12 * dz) {
      throw DomainError("max_fd_laplacian needs equally spaced heights");
    }
  }
  std::vector<SampledFunction> layers;
  layers.reserve(nh);
  for (std::size_t k = 0; k < nh; ++k) layers.push_back(field.materialize(k));
  const double h = g.spacing();
  const int m = g.points_per_axis;
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < nh; ++k) {
    const auto& u = layers[k].values;
    for (std::size_t i = 0; i < u.size(); ++i) {
      double lap = (layers[k + 1].values[i] - 2.0 * u[i] + layers[k - 1].values[i]) / (dz * dz);
      const Index idx = g.unravel(i);
      for (int a = 0; a < g.dim; ++a) {
        Index lo = idx, hi = idx;
        lo[a] = (idx[a] + m - 1) % m;
        hi[a] = (idx[a] + 1) % m;
        lap += (u[g.ravel(hi)] - 2.0 * u[i] + u[g.ravel(lo)]) / (h * h);
      }
      worst = std::max(worst, std::abs(lap));
    }
  }
  return worst;
}

}  // namespace morlab
