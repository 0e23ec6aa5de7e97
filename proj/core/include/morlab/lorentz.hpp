#pragma once

#include <limits>
#include <span>
#include <vector>

#include "morlab/grid.hpp"

namespace morlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Primary exponent p and secondary exponent d of L^{pd}.
struct LorentzParams {
  double p = 2.0;
  double d = 2.0;
};

// Throws DomainError unless p >= 1, d >= 1 and (p < inf or d = inf).
void validate(const LorentzParams& params);

// Piecewise-constant function: levels[i] holds on [breakpoints[i],
// breakpoints[i+1]) and the function vanishes past the last breakpoint.
struct StepFunction {
  std::vector<double> breakpoints;
  std::vector<double> levels;

  double operator()(double x) const;
};

// d_f(s) = |{|f| > s}|, exact for the cell measure. Right-continuous.
StepFunction distribution_function(const SampledFunction& f);

// f*(t) = inf{s : d_f(s) <= t}, built by a weighted sort of |f|.
StepFunction decreasing_rearrangement(const SampledFunction& f);

// Sorted |values| with the cell weight and the measure of the ambient set.
// Building one is the only O(N log N) step; every norm below is a linear pass.
class Rearrangement {
 public:
  Rearrangement(std::span<const double> values, double weight);
  explicit Rearrangement(const SampledFunction& f);

  // ||f||*_{pd}, integrated in closed form over each step of f*.
  double quasinorm(const LorentzParams& params) const;
  // The same quantity computed from d_f instead of f*.
  double quasinorm_via_distribution(const LorentzParams& params) const;
  // ||f||^natural_{pd}: the (p,d) functional applied to f^natural(t) =
  // (1/t) int_0^t f*, integrated over (0, |domain|). Requires p > 1.
  double natural_norm(const LorentzParams& params) const;
  // sup_t t^{1/p} f*(t) for any p > 0; no range check on p.
  double weak_quasinorm(double p) const;

  double domain_measure() const { return weight_ * sorted_.size(); }
  double l1() const;
  const std::vector<double>& sorted() const { return sorted_; }
  double weight() const { return weight_; }

 private:
  std::vector<double> sorted_;  // |f| in non-increasing order
  double weight_;
};

double lorentz_quasinorm(const SampledFunction& f, const LorentzParams& params);
double lorentz_quasinorm(std::span<const double> values, double weight,
                         const LorentzParams& params);
double lorentz_norm_natural(const SampledFunction& f,
                            const LorentzParams& params);

struct HolderExponents {
  double p1, z1, p2, z2, r, s;
};

struct HolderResult {
  double lhs;  // ||fg||*_{rs}
  double rhs;  // r/(r-1) ||f||*_{p1 z1} ||g||*_{p2 z2}
  bool pass;
};

// Checks 1/r = 1/p1 + 1/p2, r > 1, 1/z1 + 1/z2 >= 1/s first and names the
// failed relation otherwise.
void validate(const HolderExponents& e);
HolderResult holder_check(const SampledFunction& f, const SampledFunction& g,
                          const HolderExponents& e);

// |A|^{1/p-1} int_A |f| for the set A carrying `values`.
double embedding_lhs(std::span<const double> values, double weight, double p);
// (p/(p-1))^{1/k'} with 1/k + 1/k' = 1.
double embedding_constant(double p, double k);

}  // namespace morlab
