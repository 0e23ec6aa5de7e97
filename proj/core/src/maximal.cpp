#include "morlab/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "morlab/parallel.hpp"
#include "morlab/potential.hpp"

namespace morlab {

namespace {

void require_point_scale(const CubeFamily& cubes) {
  if (cubes.empty()) throw DomainError("maximal operator over an empty cube family");
  for (const Cube& q : cubes.cubes) {
    if (q.side == 1) return;
  }
  throw DomainError("maximal operators need single-cell cubes in the family");
}

// Scatters per-cube values to every node of the cube, keeping the max.
MaximalResult scatter_max(const SampledFunction& f, const CubeFamily& cubes,
                          const std::vector<double>& per_cube, bool record) {
  MaximalResult res{zeros(f.grid), {}};
  if (record) res.argmax_cube.assign(f.size(), 0);
  std::vector<double>& out = res.values.values;
  std::fill(out.begin(), out.end(), -1.0);
  const GridSpec& g = f.grid;
  const std::size_t m = g.points_per_axis;
  for (std::size_t c = 0; c < cubes.size(); ++c) {
    const Cube& q = cubes.cubes[c];
    const double v = per_cube[c];
    auto visit = [&](std::size_t flat) {
      if (v > out[flat]) {
        out[flat] = v;
        if (record) res.argmax_cube[flat] = c;
      }
    };
    if (g.dim == 1) {
      for (int i = 0; i < q.side; ++i) visit(q.lo[0] + i);
    } else if (g.dim == 2) {
      for (int i = 0; i < q.side; ++i) {
        for (int j = 0; j < q.side; ++j) visit((q.lo[0] + i) * m + q.lo[1] + j);
      }
    } else {
      for (int i = 0; i < q.side; ++i) {
        for (int j = 0; j < q.side; ++j) {
          for (int k = 0; k < q.side; ++k) {
            visit(((q.lo[0] + i) * m + q.lo[1] + j) * m + q.lo[2] + k);
          }
        }
      }
    }
  }
  return res;
}

}  // namespace

MaximalResult fractional_maximal(const SampledFunction& f, double alpha,
                                 const CubeFamily& cubes, bool record_argmax) {
  const int n = f.grid.dim;
  if (!(alpha >= 0.0 && alpha < n)) {
    throw DomainError("fractional maximal needs 0 <= alpha < n (alpha = " +
                      std::to_string(alpha) + ", n = " + std::to_string(n) + ")");
  }
  require_point_scale(cubes);
  std::vector<double> per_cube(cubes.size());
  parallel_for(cubes.size(), [&](std::size_t b, std::size_t e, int) {
    std::vector<double> buf;
    for (std::size_t c = b; c < e; ++c) {
      const Cube& q = cubes.cubes[c];
      restrict_to(f, q, buf);
      double s = 0.0;
      for (double v : buf) s += std::abs(v);
      const double avg = s / static_cast<double>(buf.size());
      per_cube[c] = std::pow(q.measure(f.grid), alpha / n) * avg;
    }
  });
  return scatter_max(f, cubes, per_cube, record_argmax);
}

MaximalResult sharp_maximal(const SampledFunction& f, const CubeFamily& cubes) {
  require_point_scale(cubes);
  std::vector<double> per_cube(cubes.size());
  parallel_for(cubes.size(), [&](std::size_t b, std::size_t e, int) {
    std::vector<double> buf;
    for (std::size_t c = b; c < e; ++c) {
      restrict_to(f, cubes.cubes[c], buf);
      double s = 0.0;
      for (double v : buf) s += v;
      const double avg = s / static_cast<double>(buf.size());
      double osc = 0.0;
      for (double v : buf) osc += std::abs(v - avg);
      per_cube[c] = osc / static_cast<double>(buf.size());
    }
  });
  return scatter_max(f, cubes, per_cube, false);
}

double bmo_norm(const SampledFunction& f, const CubeFamily& cubes) {
  const MaximalResult r = sharp_maximal(f, cubes);
  return *std::max_element(r.values.values.begin(), r.values.values.end());
}

HedbergResult hedberg_split(const SampledFunction& f, double delta,
                            double alpha, std::size_t node,
                            const CubeFamily& cubes) {
  const int n = f.grid.dim;
  if (!(delta > 0.0 && delta < alpha && alpha < n)) {
    throw DomainError("Hedberg split needs 0 < delta < alpha < n");
  }
  const Index x = f.grid.unravel(node);
  double m_alpha = 0.0, m_zero = 0.0;
  std::vector<double> buf;
  for (const Cube& q : cubes.cubes) {
    if (!q.contains(x, n)) continue;
    restrict_to(f, q, buf);
    double s = 0.0;
    for (double v : buf) s += std::abs(v);
    const double avg = s / static_cast<double>(buf.size());
    m_zero = std::max(m_zero, avg);
    m_alpha = std::max(m_alpha, std::pow(q.measure(f.grid), alpha / n) * avg);
  }
  if (!(m_zero > 0.0)) {
    throw DomainError("Hedberg split undefined where M_0 f(x) = 0");
  }
  HedbergResult r;
  r.m_alpha = m_alpha;
  r.m_zero = m_zero;
  r.rho_opt = std::pow(m_alpha / m_zero, 1.0 / alpha);
  r.lhs = std::abs(riesz_potential_at(f, delta, node));
  r.rhs = std::pow(m_alpha, delta / alpha) * std::pow(m_zero, 1.0 - delta / alpha);
  return r;
}

}  // namespace morlab
