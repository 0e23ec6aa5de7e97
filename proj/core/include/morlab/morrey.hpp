#pragma once

#include <cstddef>

#include "morlab/grid.hpp"
#include "morlab/lorentz.hpp"

namespace morlab {

// M^lambda_{p kappa}: local Lorentz exponents (p, kappa), global exponent
// lambda.
struct MorreyParams {
  double p = 1.0;
  double kappa = kInf;
  double lambda = 2.0;
};

// Throws unless 1 <= p <= lambda < inf and kappa >= 1.
void validate(const MorreyParams& params);

struct MorreyResult {
  double value = 0.0;
  Cube argmax;
  std::size_t argmax_index = 0;
};

// max over the family of |Q|^{1/lambda - 1/p} ||f|_Q||*_{p kappa}. A finite
// family gives a lower bound for the supremum over all cubes.
MorreyResult morrey_lorentz_norm(const SampledFunction& f,
                                 const MorreyParams& params,
                                 const CubeFamily& cubes);

// kappa = inf.
MorreyResult weak_morrey_norm(const SampledFunction& f, double p,
                              double lambda, const CubeFamily& cubes);

// Weak-type quantity for any 0 < p <= lambda. Used where exponent relations
// push p below 1 and the triangle-free quasinorm is still meaningful.
MorreyResult weak_morrey_quasinorm(const SampledFunction& f, double p,
                                   double lambda, const CubeFamily& cubes);

struct MorreyExponents {
  double q, d, mu;
};

struct WeakHolderResult {
  double lhs;            // ||fg|| in M^{mu3}_{q3 d3}
  double rhs_without_c;  // ||f|| ||g||
  double ratio;          // lhs / rhs_without_c, 0 when both vanish
};

// Requires 1/q3 = 1/q1 + 1/q2, 1/mu3 = 1/mu1 + 1/mu2 and
// 1/d3 <= 1/d1 + 1/d2.
WeakHolderResult weak_holder_check(const SampledFunction& f,
                                   const SampledFunction& g,
                                   const MorreyExponents& e1,
                                   const MorreyExponents& e2,
                                   const MorreyExponents& e3,
                                   const CubeFamily& cubes);

}  // namespace morlab
