#pragma once

#include <cstdint>
#include <vector>

#include "morlab/grid.hpp"
#include "morlab/lorentz.hpp"

namespace morlab {

// Root in (0,1) of (2/(1-delta))^{1/mu} (1-delta)^{1/r} = 1. Needs 1 < r < mu.
double solve_delta(double r, double mu);

// Where the gap of R-2 child units sits along each axis. middle keeps the
// two children apart; random_slot draws first/middle/last per axis from the
// seed, which can make children touch and lifts the Morrey norm of the
// indicator above the closed-form sup.
enum class CantorPlacement { middle, random_slot };

// Nested cube construction on the grid [0, R^N)^n in cell units,
// R = 2/(1-delta). Every cube of stage d splits along each axis into
// R units of the child side: two children and one gap of R-2 units. The gap
// product is the deleted middle P.
struct CantorFamily {
  int n = 2;
  int depth = 1;
  double delta = 0.5;
  int ratio = 4;  // R, an integer
  std::uint64_t seed = 0;
  CantorPlacement placement = CantorPlacement::middle;
  // stages[d]: the 2^{nd} cubes Q_{d,j}, d = 0..N.
  std::vector<std::vector<Cube>> stages;
  // middles[d]: the 2^{nd} cubes P_{d,j} deleted from Q_{d,j}, d = 0..N-1.
  std::vector<std::vector<Cube>> middles;

  // Grid with unit spacing that resolves every stage exactly.
  GridSpec grid() const;
  // Side of Q_{d,j} in cells.
  int side(int d) const;
  // chi of E_d and of F_d on grid().
  SampledFunction indicator_E(int d) const;
  SampledFunction indicator_F(int d) const;
  // Every Q_{l,j} plus the dyadic family of grid() with one half shift.
  CubeFamily norm_family() const;
};

// Requires n in {1,2}, delta with 2/(1-delta) an integer >= 3, and at most
// 2^24 cells.
CantorFamily build_cantor(int n, int depth, double delta, std::uint64_t seed,
                          CantorPlacement placement = CantorPlacement::middle);

struct IndicatorNorm {
  double analytic;  // sup over l <= d of the closed form
  double grid;      // Morrey-Lorentz norm of |Q_d|^{-1/lambda} chi_{E_d}
};

// Norm of g = |Q_{d,j}|^{-1/lambda} chi_{E_d} in M^lambda_{p kappa}.
IndicatorNorm indicator_norm(const CantorFamily& fam, int d, double p,
                             double kappa, double lambda);

// Closed form 1 + B 2^{nN} (1 - (1-delta)^{n(N-1)}) with
// B = delta^{n/mu} (1-delta)^n / (1 - (1-delta)^n).
double closed_form_bound(int n, int depth, double delta, double mu);

struct MinorantReport {
  SampledFunction minorant;  // chi_{E_N} + sum_l c^{n(N-l)} chi_{F_l}
  SampledFunction maximal;   // M_alpha chi_{E_N} on grid()
  double worst_gap;          // min over nodes of maximal - minorant
  double closed_form;
};

// c = (2/(1-delta))^{1/mu} (1-delta). The pointwise minorant needs
// alpha/n >= 1/mu and alpha < n.
MinorantReport maximal_lower_bound(const CantorFamily& fam, double alpha,
                                   double mu);

struct DivergenceRow {
  int depth;
  double g_norm;       // grid Morrey-Lorentz norm of g_N
  double g_analytic;   // closed-form sup
  double measured;     // ||M_alpha chi_{E_N}|| in M^mu_{r nu}
  double lower_bound;  // closed_form_bound
  double ratio;        // measured / g_norm
};

struct DivergenceOptions {
  double alpha = 0.0;  // <= 0 picks n/mu
  double kappa = kInf;
  double nu = kInf;
  std::uint64_t seed = 1;
  CantorPlacement placement = CantorPlacement::middle;
  int n = 2;
};

// One row per depth in [depth_lo, depth_hi]. Needs r/mu > p/lambda.
std::vector<DivergenceRow> divergence_report(double r, double mu, double p,
                                             double lambda, int depth_lo,
                                             int depth_hi,
                                             const DivergenceOptions& opt = {});

}  // namespace morlab
