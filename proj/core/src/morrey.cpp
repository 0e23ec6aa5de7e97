#include "morlab/morrey.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "morlab/parallel.hpp"

namespace morlab {

void validate(const MorreyParams& params) {
  if (!(params.p >= 1.0)) {
    throw DomainError("Morrey relation 1 <= p violated (p = " +
                      std::to_string(params.p) + ")");
  }
  if (!(params.p <= params.lambda)) {
    throw DomainError("Morrey relation p <= lambda violated (p = " +
                      std::to_string(params.p) +
                      ", lambda = " + std::to_string(params.lambda) + ")");
  }
  if (!std::isfinite(params.lambda)) {
    throw DomainError("Morrey relation lambda < inf violated");
  }
  if (!(params.kappa >= 1.0)) {
    throw DomainError("Morrey relation kappa >= 1 violated");
  }
}

namespace {

MorreyResult morrey_sup(const SampledFunction& f, double p, double kappa,
                        double lambda, const CubeFamily& cubes) {
  if (cubes.empty()) throw DomainError("Morrey norm over an empty cube family");
  for (const Cube& q : cubes.cubes) {
    if (!q.inside(f.grid)) throw DomainError("cube family leaves the grid box");
  }
  std::vector<double> per_cube(cubes.size(), 0.0);
  const double expo = 1.0 / lambda - 1.0 / p;
  const bool weak = std::isinf(kappa);
  parallel_for(cubes.size(), [&](std::size_t b, std::size_t e, int) {
    std::vector<double> buf;
    for (std::size_t c = b; c < e; ++c) {
      const Cube& q = cubes.cubes[c];
      restrict_to(f, q, buf);
      const Rearrangement r(buf, f.weight);
      const double local = weak ? r.weak_quasinorm(p) : r.quasinorm({p, kappa});
      per_cube[c] = std::pow(q.measure(f.grid), expo) * local;
    }
  });
  MorreyResult res;
  for (std::size_t c = 0; c < per_cube.size(); ++c) {
    if (per_cube[c] > res.value || c == 0) {
      res.value = per_cube[c];
      res.argmax = cubes.cubes[c];
      res.argmax_index = c;
    }
  }
  return res;
}

double inv(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }

}  // namespace

MorreyResult morrey_lorentz_norm(const SampledFunction& f,
                                 const MorreyParams& params,
                                 const CubeFamily& cubes) {
  validate(params);
  return morrey_sup(f, params.p, params.kappa, params.lambda, cubes);
}

MorreyResult weak_morrey_norm(const SampledFunction& f, double p,
                              double lambda, const CubeFamily& cubes) {
  return morrey_lorentz_norm(f, {p, kInf, lambda}, cubes);
}

MorreyResult weak_morrey_quasinorm(const SampledFunction& f, double p,
                                   double lambda, const CubeFamily& cubes) {
  if (!(p > 0.0) || !(p <= lambda) || !std::isfinite(lambda)) {
    throw DomainError("weak Morrey quasinorm needs 0 < p <= lambda < inf");
  }
  return morrey_sup(f, p, kInf, lambda, cubes);
}

WeakHolderResult weak_holder_check(const SampledFunction& f,
                                   const SampledFunction& g,
                                   const MorreyExponents& e1,
                                   const MorreyExponents& e2,
                                   const MorreyExponents& e3,
                                   const CubeFamily& cubes) {
  if (std::abs(inv(e3.q) - inv(e1.q) - inv(e2.q)) > 1e-12) {
    throw DomainError("weak Hoelder relation 1/q3 = 1/q1 + 1/q2 violated");
  }
  if (std::abs(inv(e3.mu) - inv(e1.mu) - inv(e2.mu)) > 1e-12) {
    throw DomainError("weak Hoelder relation 1/mu3 = 1/mu1 + 1/mu2 violated");
  }
  if (inv(e3.d) > inv(e1.d) + inv(e2.d) + 1e-12) {
    throw DomainError("weak Hoelder relation 1/d3 <= 1/d1 + 1/d2 violated");
  }
  if (!(f.grid == g.grid)) throw DomainError("weak_holder_check: grids differ");
  SampledFunction fg = f;
  for (std::size_t i = 0; i < fg.size(); ++i) fg.values[i] *= g.values[i];
  const double lhs = morrey_lorentz_norm(fg, {e3.q, e3.d, e3.mu}, cubes).value;
  const double nf = morrey_lorentz_norm(f, {e1.q, e1.d, e1.mu}, cubes).value;
  const double ng = morrey_lorentz_norm(g, {e2.q, e2.d, e2.mu}, cubes).value;
  const double rhs = nf * ng;
  return {lhs, rhs, rhs > 0.0 ? lhs / rhs : 0.0};
}

}  // namespace morlab
