#pragma once

#include <vector>

namespace morlab {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre rule with `order` points (cached).
const GaussRule& gauss_legendre(int order);

}  // namespace morlab
