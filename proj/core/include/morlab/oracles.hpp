#pragma once

#include <cmath>
#include <vector>

#include "morlab/grid.hpp"

namespace morlab {

// u(x', x_n) = (eps / (|x' - x0'|^2 + (x_n + x0n)^2))^{(n-2)/2},
// eps = (n-2) x0n / b. The singularity sits at (x0', -x0n), outside the
// closed upper half-space. Solves Delta u = 0 in x_n > 0 with
// -d_n u = b u^{n/(n-2)} on x_n = 0.
class BubbleOracle {
 public:
  // x0 holds x0' in its first n-1 entries and x0n > 0 in entry n-1.
  BubbleOracle(int n, double b, const Point& x0);

  int dim() const { return n_; }
  double eps() const { return eps_; }
  double rho() const { return n_ / (n_ - 2.0); }
  double operator()(const Point& x) const;
  // d/dx_a by complex step.
  double derivative(const Point& x, int a) const;
  // Fourth-order central difference Laplacian with step s.
  double fd_laplacian(const Point& x, double s) const;
  // Sum of |d^2 u/dx_a^2| from the same stencil, the scale for relative
  // interior residuals.
  double fd_hessian_scale(const Point& x, double s) const;

  // |-d_n u - b u^{n/(n-2)}| / |b u^{n/(n-2)}| at (x', 0).
  double boundary_relative_residual(const Point& x_boundary) const;
  // |Delta_s u| / scale at an interior point.
  double interior_relative_residual(const Point& x, double s) const;

 private:
  int n_;
  double b_;
  Point x0_;
  double eps_;
};

// u(x', x_n) = -b A^rho x_n + A for A > 0, b < 0, rho > 1.
struct LinearOracle {
  double A, b, rho;

  LinearOracle(double A, double b, double rho);
  double operator()(const Point& x, int n) const;
  double slope() const { return -b * std::pow(A, rho); }
  // |-d_n u(x',0) - b u(x',0)^rho|, exact in floating point up to rounding.
  double boundary_residual() const;
  // Second-order difference Laplacian; zero up to rounding for affine u.
  double fd_laplacian(const Point& x, int n, double s) const;
};

// Deterministic collocation points: count points with x' in [-w, w]^{n-1}
// and x_n in [z_lo, z_hi] (x_n = 0 when boundary is true).
std::vector<Point> collocation_points(int n, int count, double w, double z_lo,
                                      double z_hi, bool boundary,
                                      unsigned seed);

}  // namespace morlab
