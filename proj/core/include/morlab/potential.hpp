#pragma once

#include <functional>
#include <vector>

#include "morlab/fft.hpp"
#include "morlab/grid.hpp"

namespace morlab {

// c_{n alpha} = Gamma((n - alpha)/2) / (2^alpha pi^{n/2} Gamma(alpha/2)).
struct RieszConstant {
  int n;
  double alpha;
  double c;
};
RieszConstant riesz_constant(int n, double alpha);

// Offset-indexed kernel weights applied as a zero-padded (aperiodic) discrete
// convolution: out(x_i) = sum_j w(i - j) f(x_j).
class Convolver {
 public:
  Convolver(const GridSpec& grid, const std::function<double(const Index&)>& w);
  SampledFunction apply(const SampledFunction& f) const;
  const GridSpec& grid() const { return grid_; }

 private:
  GridSpec grid_;
  std::vector<int> dims_;
  std::vector<Complex> kernel_hat_;
};

// int over the cell of side h centred at `center` of k, by composite
// Gauss-Legendre (subdiv^dim panels of order^dim points).
double cell_integral(const std::function<double(const Point&)>& k,
                     const Point& center, double h, int dim, int subdiv,
                     int order);

// Exact int over [-h/2, h/2]^n of |y|^{alpha - n}, reduced in polar form to a
// smooth integral over one face.
double self_cell_integral(int n, double alpha, double h);

enum class RieszMethod { quadrature, hedberg_split };

struct RieszOptions {
  RieszMethod method = RieszMethod::quadrature;
  // hedberg_split only: cells with centre closer than this use exact cell
  // integrals; the rest use the midpoint value. Defaults to 4h when <= 0.
  double near_radius = 0.0;
};

// I_alpha f = c_{n alpha} int f(y) |x - y|^{alpha - n} dy on a non-periodic
// grid. The self cell is always integrated exactly.
SampledFunction riesz_potential(const SampledFunction& f, double alpha,
                                const RieszOptions& options = {});

// Single node of the quadrature variant, by direct summation.
double riesz_potential_at(const SampledFunction& f, double alpha,
                          std::size_t node);

// Tangential Riesz transform with symbol i xi_j/|xi| realised in physical
// space: c_d p.v. int (y_j - x_j)/|x - y|^{d+1} f(y) dy, c_d =
// Gamma((d+1)/2)/pi^{(d+1)/2}, d = grid dim. Kernel weights are exact cell
// integrals; the singular cell cancels by symmetry. j is 1-based.
SampledFunction riesz_transform_pv(const SampledFunction& f, int j);

}  // namespace morlab
