#include "morlab/potential.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "morlab/quadrature.hpp"

namespace morlab {

RieszConstant riesz_constant(int n, double alpha) {
  if (n < 1 || n > 3) throw DomainError("riesz_constant: n must lie in {1,2,3}");
  if (!(alpha > 0.0 && alpha < n)) {
    throw DomainError("Riesz potential needs 0 < alpha < n (alpha = " +
                      std::to_string(alpha) + ", n = " + std::to_string(n) + ")");
  }
  const double c = std::tgamma((n - alpha) / 2.0) /
                   (std::pow(2.0, alpha) * std::pow(std::numbers::pi, n / 2.0) *
                    std::tgamma(alpha / 2.0));
  return {n, alpha, c};
}

Convolver::Convolver(const GridSpec& grid,
                     const std::function<double(const Index&)>& w)
    : grid_(grid) {
  const int m = grid.points_per_axis;
  const int p = 2 * m;
  dims_.assign(grid.dim, p);
  std::size_t total = 1;
  for (int a = 0; a < grid.dim; ++a) total *= p;
  kernel_hat_.assign(total, Complex(0.0, 0.0));
  Index o{0, 0, 0};
  const int lo = -(m - 1), hi = m - 1;
  for (int a = 0; a < grid.dim; ++a) o[a] = lo;
  for (;;) {
    std::size_t flat = 0;
    for (int a = 0; a < grid.dim; ++a) flat = flat * p + ((o[a] + p) % p);
    kernel_hat_[flat] = w(o);
    int a = grid.dim - 1;
    while (a >= 0 && ++o[a] > hi) {
      o[a] = lo;
      --a;
    }
    if (a < 0) break;
  }
  fft_inplace(kernel_hat_, dims_, false);
}

SampledFunction Convolver::apply(const SampledFunction& f) const {
  const int m = grid_.points_per_axis;
  const int p = 2 * m;
  std::vector<Complex> buf(kernel_hat_.size(), Complex(0.0, 0.0));
  auto padded = [&](std::size_t flat) {
    const Index idx = grid_.unravel(flat);
    std::size_t q = 0;
    for (int a = 0; a < grid_.dim; ++a) q = q * p + idx[a];
    return q;
  };
  for (std::size_t i = 0; i < f.size(); ++i) buf[padded(i)] = f.values[i];
  fft_inplace(buf, dims_, false);
  for (std::size_t k = 0; k < buf.size(); ++k) buf[k] *= kernel_hat_[k];
  fft_inplace(buf, dims_, true);
  const double scale = 1.0 / static_cast<double>(buf.size());
  SampledFunction out = zeros(f.grid);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.values[i] = buf[padded(i)].real() * scale;
  }
  return out;
}

double cell_integral(const std::function<double(const Point&)>& k,
                     const Point& center, double h, int dim, int subdiv,
                     int order) {
  const GaussRule& r = gauss_legendre(order);
  const double panel = h / subdiv;
  const int per_axis = subdiv * order;
  int total = 1;
  for (int a = 0; a < dim; ++a) total *= per_axis;
  double sum = 0.0;
  for (int t = 0; t < total; ++t) {
    int rem = t;
    Point x{0.0, 0.0, 0.0};
    double w = 1.0;
    for (int a = 0; a < dim; ++a) {
      const int idx = rem % per_axis;
      rem /= per_axis;
      const int s = idx / order, q = idx % order;
      x[a] = center[a] - 0.5 * h + (s + 0.5) * panel + 0.5 * panel * r.nodes[q];
      w *= 0.5 * panel * r.weights[q];
    }
    sum += w * k(x);
  }
  return sum;
}

double self_cell_integral(int n, double alpha, double h) {
  const double a = 0.5 * h;
  if (n == 1) return 2.0 * std::pow(a, alpha) / alpha;
  // 2n faces, each contributing (a/alpha) int_face rho^{alpha-n} dS with
  // rho^2 = a^2 + |s|^2. The integrand is smooth; high-order panels suffice.
  auto face = [&](const Point& s) {
    const double rho2 = a * a + s[0] * s[0] + s[1] * s[1];
    return std::pow(rho2, 0.5 * (alpha - n));
  };
  const double face_integral = cell_integral(face, Point{0.0, 0.0, 0.0}, h, n - 1, 4, 16);
  return 2.0 * n * (a / alpha) * face_integral;
}

namespace {

double offset_norm(const Index& o, int dim, double h) {
  double r2 = 0.0;
  for (int a = 0; a < dim; ++a) r2 += static_cast<double>(o[a]) * o[a];
  return std::sqrt(r2) * h;
}

bool is_zero(const Index& o, int dim) {
  for (int a = 0; a < dim; ++a) {
    if (o[a] != 0) return false;
  }
  return true;
}

int chebyshev(const Index& o, int dim) {
  int c = 0;
  for (int a = 0; a < dim; ++a) c = std::max(c, std::abs(o[a]));
  return c;
}

void check_riesz_input(const SampledFunction& f, double alpha) {
  if (f.grid.periodic) {
    throw DomainError("riesz_potential needs a non-periodic grid (compact support)");
  }
  riesz_constant(f.grid.dim, alpha);
}

}  // namespace

SampledFunction riesz_potential(const SampledFunction& f, double alpha,
                                const RieszOptions& options) {
  check_riesz_input(f, alpha);
  const int n = f.grid.dim;
  const double h = f.grid.spacing();
  const double c = riesz_constant(n, alpha).c;
  const double self = self_cell_integral(n, alpha, h);
  const double cell = f.grid.cell_volume();
  const bool split = options.method == RieszMethod::hedberg_split;
  const double radius = options.near_radius > 0.0 ? options.near_radius : 4.0 * h;
  auto kernel = [&](const Point& y) {
    double r2 = 0.0;
    for (int a = 0; a < n; ++a) r2 += y[a] * y[a];
    return std::pow(r2, 0.5 * (alpha - n));
  };
  const Convolver conv(f.grid, [&](const Index& o) {
    if (is_zero(o, n)) return c * self;
    const double r = offset_norm(o, n, h);
    if (split && r < radius) {
      const Point center{o[0] * h, o[1] * h, o[2] * h};
      const int sub = chebyshev(o, n) <= 2 ? 4 : 1;
      return c * cell_integral(kernel, center, h, n, sub, 8);
    }
    return c * cell * std::pow(r, alpha - n);
  });
  return conv.apply(f);
}

double riesz_potential_at(const SampledFunction& f, double alpha,
                          std::size_t node) {
  check_riesz_input(f, alpha);
  const int n = f.grid.dim;
  const double h = f.grid.spacing();
  const double c = riesz_constant(n, alpha).c;
  const Index x = f.grid.unravel(node);
  double sum = f.values[node] * self_cell_integral(n, alpha, h);
  const double cell = f.grid.cell_volume();
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (j == node || f.values[j] == 0.0) continue;
    const Index y = f.grid.unravel(j);
    Index o{0, 0, 0};
    for (int a = 0; a < n; ++a) o[a] = x[a] - y[a];
    sum += f.values[j] * cell * std::pow(offset_norm(o, n, h), alpha - n);
  }
  return c * sum;
}

SampledFunction riesz_transform_pv(const SampledFunction& f, int j) {
  const int d = f.grid.dim;
  if (j < 1 || j > d) {
    throw DomainError("Riesz transform index j must lie in {1,...," +
                      std::to_string(d) + "}, got " + std::to_string(j));
  }
  const double h = f.grid.spacing();
  const double cd = std::tgamma((d + 1) / 2.0) / std::pow(std::numbers::pi, (d + 1) / 2.0);
  auto kernel = [&](const Point& z) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) r2 += z[a] * z[a];
    return -cd * z[j - 1] / std::pow(r2, 0.5 * (d + 1));
  };
  const Convolver conv(f.grid, [&](const Index& o) {
    if (is_zero(o, d)) return 0.0;
    const Point center{o[0] * h, o[1] * h, o[2] * h};
    const int cheb = chebyshev(o, d);
    const int sub = cheb <= 2 ? 4 : (cheb <= 8 ? 2 : 1);
    return cell_integral(kernel, center, h, d, sub, cheb <= 8 ? 8 : 2);
  });
  return conv.apply(f);
}

}  // namespace morlab
