#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "morlab/grid.hpp"
#include "morlab/potential.hpp"

namespace morlab {

// Neumann extension for n = 3 in free space: data g on a 2D boundary box,
// zero outside, u = N g with
//   N g(x', t) = int g(y) / (2 pi sqrt(|x' - y|^2 + t^2)) dy.
// Evaluated by zero-padded convolution with cell-integrated kernel weights,
// so g is read as constant on each cell. Positive kernel: g >= 0 gives
// u >= 0 at every evaluated point.
class FreeSpaceNeumann {
 public:
  explicit FreeSpaceNeumann(const GridSpec& boundary);

  const GridSpec& boundary() const { return grid_; }
  // N g at height t >= 0.
  SampledFunction at_height(const SampledFunction& g, double t) const;
  SampledFunction trace(const SampledFunction& g) const { return at_height(g, 0.0); }
  // d/dx_1, d/dx_2, d/dx_3 of N g at height t. At t = 0 the tangential
  // parts are principal values and the normal part is -g (jump relation).
  std::array<SampledFunction, 3> gradient(const SampledFunction& g, double t) const;

 private:
  struct Kernels {
    std::unique_ptr<Convolver> potential;
    std::array<std::unique_ptr<Convolver>, 3> grad;
  };
  const Kernels& kernels(double t, bool with_grad) const;

  GridSpec grid_;
  mutable std::mutex mu_;
  mutable std::map<double, Kernels> cache_;
};

}  // namespace morlab
