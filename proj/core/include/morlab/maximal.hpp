#pragma once

#include <cstddef>
#include <vector>

#include "morlab/grid.hpp"

namespace morlab {

struct MaximalResult {
  SampledFunction values;
  // Index into the cube family of the maximizing cube per node (optional).
  std::vector<std::size_t> argmax_cube;
};

// (M_alpha f)(x) = max over family cubes Q containing x of
// |Q|^{alpha/n} (1/|Q|) int_Q |f|. Uncentred. alpha = 0 gives M_0. The
// family must contain single-cell cubes so every node is covered.
MaximalResult fractional_maximal(const SampledFunction& f, double alpha,
                                 const CubeFamily& cubes,
                                 bool record_argmax = false);

// f#(x) = max over family cubes Q containing x of (1/|Q|) int_Q |f - f_Q|.
MaximalResult sharp_maximal(const SampledFunction& f, const CubeFamily& cubes);

// Global max of f#.
double bmo_norm(const SampledFunction& f, const CubeFamily& cubes);

struct HedbergResult {
  double rho_opt;  // (M_alpha f / M_0 f)^{1/alpha}
  double lhs;      // |I_delta f(x)|
  double rhs;      // [M_alpha f]^{delta/alpha} [M_0 f]^{1 - delta/alpha}
  double m_alpha;
  double m_zero;
};

// Pointwise Hedberg split at the node x. Needs 0 < delta < alpha < n and
// M_0 f(x) > 0.
HedbergResult hedberg_split(const SampledFunction& f, double delta,
                            double alpha, std::size_t node,
                            const CubeFamily& cubes);

}  // namespace morlab
