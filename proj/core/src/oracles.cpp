#include "morlab/oracles.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <string>

namespace morlab {

namespace {

template <class T>
T bubble_eval(int n, double eps, const Point& x0, const std::array<T, 3>& x) {
  T r2 = T(0.0);
  for (int a = 0; a + 1 < n; ++a) r2 += (x[a] - x0[a]) * (x[a] - x0[a]);
  const T z = x[n - 1] + x0[n - 1];
  r2 += z * z;
  return std::pow(eps / r2, 0.5 * (n - 2));
}

}  // namespace

BubbleOracle::BubbleOracle(int n, double b, const Point& x0)
    : n_(n), b_(b), x0_(x0) {
  if (n < 3) throw DomainError("bubble oracle needs n >= 3");
  if (n > 3) throw DomainError("bubble oracle is implemented for n = 3");
  if (!(b > 0.0)) throw DomainError("bubble oracle needs b > 0");
  if (!(x0[n - 1] > 0.0)) {
    throw DomainError("bubble singularity at x_n = -x0n must lie below the "
                      "boundary: x0n > 0 required, got " +
                      std::to_string(x0[n - 1]));
  }
  eps_ = (n - 2) * x0[n - 1] / b;
}

double BubbleOracle::operator()(const Point& x) const {
  return bubble_eval<double>(n_, eps_, x0_, x);
}

double BubbleOracle::derivative(const Point& x, int a) const {
  using C = std::complex<double>;
  constexpr double step = 1e-30;
  std::array<C, 3> z{C(x[0]), C(x[1]), C(x[2])};
  z[a] += C(0.0, step);
  return bubble_eval<C>(n_, eps_, x0_, z).imag() / step;
}

double BubbleOracle::fd_laplacian(const Point& x, double s) const {
  const double u0 = (*this)(x);
  double lap = 0.0;
  for (int a = 0; a < n_; ++a) {
    Point p1 = x, m1 = x, p2 = x, m2 = x;
    p1[a] += s;
    m1[a] -= s;
    p2[a] += 2 * s;
    m2[a] -= 2 * s;
    lap += (-(*this)(p2) + 16.0 * (*this)(p1) - 30.0 * u0 + 16.0 * (*this)(m1) -
            (*this)(m2)) /
           (12.0 * s * s);
  }
  return lap;
}

double BubbleOracle::fd_hessian_scale(const Point& x, double s) const {
  const double u0 = (*this)(x);
  double scale = 0.0;
  for (int a = 0; a < n_; ++a) {
    Point p1 = x, m1 = x, p2 = x, m2 = x;
    p1[a] += s;
    m1[a] -= s;
    p2[a] += 2 * s;
    m2[a] -= 2 * s;
    scale += std::abs((-(*this)(p2) + 16.0 * (*this)(p1) - 30.0 * u0 +
                       16.0 * (*this)(m1) - (*this)(m2)) /
                      (12.0 * s * s));
  }
  return scale;
}

double BubbleOracle::boundary_relative_residual(const Point& xb) const {
  Point x = xb;
  x[n_ - 1] = 0.0;
  const double lhs = -derivative(x, n_ - 1);
  const double rhs = b_ * std::pow((*this)(x), rho());
  return std::abs(lhs - rhs) / std::abs(rhs);
}

double BubbleOracle::interior_relative_residual(const Point& x, double s) const {
  if (!(x[n_ - 1] > 2.0 * s)) {
    throw DomainError("interior collocation point too close to the boundary");
  }
  return std::abs(fd_laplacian(x, s)) / fd_hessian_scale(x, s);
}

LinearOracle::LinearOracle(double A_, double b_, double rho_)
    : A(A_), b(b_), rho(rho_) {
  if (!(A > 0.0)) throw DomainError("linear oracle needs A > 0");
  if (!(b < 0.0)) throw DomainError("linear oracle needs b < 0");
  if (!(rho > 1.0)) throw DomainError("linear oracle needs rho > 1");
}

double LinearOracle::operator()(const Point& x, int n) const {
  return slope() * x[n - 1] + A;
}

double LinearOracle::boundary_residual() const {
  // -d_n u = -slope = b A^rho; u(x', 0) = A.
  return std::abs(-slope() - b * std::pow(A, rho));
}

double LinearOracle::fd_laplacian(const Point& x, int n, double s) const {
  double lap = 0.0;
  const double u0 = (*this)(x, n);
  for (int a = 0; a < n; ++a) {
    Point p = x, m = x;
    p[a] += s;
    m[a] -= s;
    lap += ((*this)(p, n) - 2.0 * u0 + (*this)(m, n)) / (s * s);
  }
  return lap;
}

std::vector<Point> collocation_points(int n, int count, double w, double z_lo,
                                      double z_hi, bool boundary,
                                      unsigned seed) {
  std::mt19937_64 rng(seed);
  auto unit = [&]() { return std::ldexp(static_cast<double>(rng() >> 11), -53); };
  std::vector<Point> pts;
  for (int k = 0; k < count; ++k) {
    Point p{0.0, 0.0, 0.0};
    for (int a = 0; a + 1 < n; ++a) p[a] = -w + 2.0 * w * unit();
    p[n - 1] = boundary ? 0.0 : z_lo + (z_hi - z_lo) * unit();
    pts.push_back(p);
  }
  return pts;
}

}  // namespace morlab
