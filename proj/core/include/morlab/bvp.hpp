#pragma once

#include <array>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "morlab/free_space.hpp"
#include "morlab/grid.hpp"

namespace morlab {

// Exponent web of the nonlinear Neumann problem in R^n_+:
//   omega = (n-1)(rho-1)/rho, lambda = (n-1)(rho-1),
//   1/r = (n-1)/omega - (n-1)/mu, p = omega r/mu, q = lambda r/mu.
struct BvpExponents {
  int n = 3;
  double rho = 3.0;
  double omega = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double r = 0.0;
  double p = 0.0;
  double q = 0.0;
  double l1 = 2.0;  // V in weak M^{n-1}_{l1}
  double l2 = 2.0;  // b in weak M^{n-1}_{l2}
};

// Throws naming the violated relation: (n-1)/(n-2) < rho, mu < lambda,
// 1 < r < mu, 1 < l1, l2 <= n-1.
BvpExponents bvp_exponents(int n, double rho, double mu, double l1 = 0.0,
                           double l2 = 0.0);

struct BVProblem {
  BvpExponents exponents;
  SampledFunction f, V, b;  // boundary data on one 2D grid
  double rho() const { return exponents.rho; }
};

BVProblem make_problem(double rho, double mu, SampledFunction f,
                       SampledFunction V, SampledFunction b);

enum class LayerKind { periodic, free_space };

// The Neumann extension u = N g of boundary data g, n = 3.
class LayerModel {
 public:
  virtual ~LayerModel() = default;
  virtual LayerKind kind() const = 0;
  virtual const GridSpec& boundary() const = 0;
  // What the model can extend: identity in free space; on the torus the
  // mean is removed (and modes past 2/3 dropped when dealiasing). The
  // removed mean goes to *adjustment when given.
  virtual SampledFunction project(const SampledFunction& g,
                                  double* adjustment = nullptr) const = 0;
  // N g at height t >= 0 for projected g.
  virtual SampledFunction at_height(const SampledFunction& g, double t) const = 0;
  SampledFunction trace(const SampledFunction& g) const { return at_height(g, 0.0); }
  // (d_1, d_2, d_n) N g at height t.
  virtual std::array<SampledFunction, 3> gradient(const SampledFunction& g,
                                                  double t) const = 0;
};

std::unique_ptr<LayerModel> make_layer(LayerKind kind, const GridSpec& boundary,
                                       bool dealias = true);

// Boundary cubes of all scales (translations per scale as given) and their
// slab lifts Q' x [0, side) used by the A-norm.
struct ANormGeometry {
  GridSpec slab;            // 3D grid; axis 2 holds heights (k + 1/2) h
  std::vector<double> heights;
  CubeFamily boundary_cubes;
  CubeFamily slab_cubes;
};
ANormGeometry a_norm_geometry(const GridSpec& boundary, int translations = 1);

struct ANorm {
  double grad_part = 0.0;   // weak Morrey M^mu_{r inf} of |grad u| on the slab
  double trace_part = 0.0;  // weak Morrey M^lambda_{q inf} of u(x', 0)
  double total = 0.0;
};

// A-norm of u = N g. g must already be projected.
ANorm a_norm(const LayerModel& model, const SampledFunction& g,
             const BvpExponents& e, const ANormGeometry& geo);

struct Certificate {
  double L = 0.0;
  double M = 0.0;
  double rho = 2.0;
  double eps_max = 0.0;  // +inf when M = 0
  bool feasible = false;
  double factor() const { return 0.5 * (1.0 + L); }
};

// Largest eps with L + M 2^rho (eps/(1-L))^{rho-1} < (1+L)/2:
// eps_max = (1-L) ((1-L)/(2^{rho+1} M))^{1/(rho-1)}. L >= 1 is infeasible.
Certificate contraction_certificate(double L, double M, double rho);

struct PicardOptions {
  int max_iter = 100;
  double tol = 1e-8;
  int translations = 1;
  bool keep_iterates = true;
};

struct PicardState {
  int iterations = 0;
  bool converged = false;
  std::vector<double> a_norms;      // ||u_k||_A
  std::vector<double> differences;  // ||u_{k+1} - u_k||_A
  std::vector<double> adjustments;  // |mean removed| per step (torus)
  std::vector<SampledFunction> traces;  // u_k(x', 0) when kept
};

struct PicardResult {
  SampledFunction trace;  // u(x', 0)
  SampledFunction data;   // g with u = N g
  PicardState state;
};

class PicardDivergence : public std::runtime_error {
 public:
  PicardDivergence(const std::string& what, PicardState state)
      : std::runtime_error(what), state_(std::move(state)) {}
  const PicardState& state() const { return state_; }

 private:
  PicardState state_;
};

// f + V u + b |u|^{rho-1} u, projected by the model.
SampledFunction picard_rhs(const BVProblem& pb, const LayerModel& model,
                           const SampledFunction& u, double* adjustment = nullptr);

// u_1 = N f, u_{k+1} = N f + N(V u_k) + N(b |u_k|^{rho-1} u_k), iterated on
// the boundary. Stops when the A-norm of the step drops below tol; throws
// PicardDivergence after three consecutive increases.
PicardResult picard_solve(const BVProblem& pb, const LayerModel& model,
                          const PicardOptions& opt = {});

struct Calibration {
  double L = 0.0;     // 1.25 x max ||N(V w)||_A / ||N g_w||_A
  double M = 0.0;     // 1.25 x max nonlinear quotient
  double eps = 0.0;   // ||N f||_A
  double C_data = 0.0;  // 1.25 x max ||N g||_A / ||g|| in weak M^omega_p
  Certificate certificate;
};

// Empirical constants from power iteration plus fixed probe directions.
Calibration calibrate(const BVProblem& pb, const LayerModel& model,
                      const ANormGeometry& geo, int power_steps = 6);

struct Residual {
  double interior = 0.0;  // max |Delta_h u| over near-boundary interior nodes
  double boundary = 0.0;  // max |-d_n u - projected rhs(u)|
};

// g is the Neumann data of the candidate (u = N g). -d_n u comes from the
// jump relation (free space) or the spectral symbol of the trace (torus).
Residual residual(const BVProblem& pb, const LayerModel& model,
                  const SampledFunction& g, int layers = 5);

struct EnergyTerms {
  double dirichlet = 0.0;  // int |grad u|^2 = int u (-d_n u) dx'
  double potential = 0.0;  // int V u^2
  double nonlinear = 0.0;  // int b |u|^{rho+1}
  double source = 0.0;     // int u f
  double total = 0.0;      // dirichlet/2 - potential/2 - nonlinear/(rho+1) + source
};

// Boundary integrals are truncated to the box. The Dirichlet term uses
// Green's identity for the decaying harmonic extension.
EnergyTerms energy(const LayerModel& model, const SampledFunction& g,
                   const SampledFunction& V, const SampledFunction& b,
                   const SampledFunction& f, double rho);

// 2/(rho-1) + 2 - n.
double energy_scaling_exponent(int n, double rho);

enum class BoundaryMap { rotate90, reflect_x1 };

// (u o T)(x') for the grid-compatible map T; needs an even point count so
// the origin is a node.
SampledFunction apply_map(const SampledFunction& u, BoundaryMap map);

struct SymmetryDefects {
  double symmetric = 0.0;      // max |u o T - u|
  double antisymmetric = 0.0;  // max |u o T + u|
};
SymmetryDefects symmetry_check(const SampledFunction& u, BoundaryMap map);

struct PositivityReport {
  double min_iterate = 0.0;     // min over stored traces
  double min_limit_on_support = 0.0;  // min of the limit where N f > tol
  bool iterates_ok = false;     // min_iterate >= -5 tol
  bool limit_positive = false;
};
PositivityReport positivity_check(const BVProblem& pb, const LayerModel& model,
                                  const PicardResult& run, double tol);

struct StabilityReport {
  double solution_gap = 0.0;  // ||u_1 - u_2||_A
  double data_gap = 0.0;      // ||f_1 - f_2|| in weak M^omega_p
  double ratio = 0.0;         // 0 when the data coincide
};
StabilityReport stability_check(const BVProblem& pb, const LayerModel& model,
                                const SampledFunction& f1,
                                const SampledFunction& f2,
                                const PicardOptions& opt = {});

// max over pairs of sample points of |u(x) - u(y)| / |x - y|^alpha. Samples
// sit on the boundary nodes whose offset from the lower corner is a
// multiple of `stride` (physical length) at each listed height, so the same
// physical points are used under refinement.
double holder_quotient(const LayerModel& model, const SampledFunction& g,
                       double alpha, double stride,
                       const std::vector<double>& heights);

// Cell averages of c/|x'| on the boundary grid; the origin cell uses the
// exact average.
SampledFunction inverse_distance_potential(const GridSpec& boundary, double c);

}  // namespace morlab
