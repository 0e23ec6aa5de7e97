#include "morlab/free_space.hpp"

#include <cmath>
#include <numbers>

namespace morlab {

namespace {

constexpr double kInvTwoPi = 0.5 / std::numbers::pi;

// Panel count and order by distance from the kernel singularity, measured
// in cells.
struct Rule {
  int subdiv, order;
  bool midpoint;
};

Rule rule_for(double dist_cells) {
  if (dist_cells < 3.0) return {4, 8, false};
  if (dist_cells < 8.0) return {1, 6, false};
  if (dist_cells < 20.0) return {1, 2, false};
  return {1, 1, true};
}

}  // namespace

FreeSpaceNeumann::FreeSpaceNeumann(const GridSpec& boundary) : grid_(boundary) {
  if (boundary.dim != 2) {
    throw DomainError("free-space Neumann layer needs a 2D boundary grid (n = 3)");
  }
  grid_.periodic = false;
}

const FreeSpaceNeumann::Kernels& FreeSpaceNeumann::kernels(double t,
                                                          bool with_grad) const {
  std::lock_guard lock(mu_);
  Kernels& k = cache_[t];
  const double h = grid_.spacing();
  auto weights = [&](auto&& kernel) {
    return [&, kernel](const Index& o) {
      const double ox = o[0] * h, oy = o[1] * h;
      const double dist = std::sqrt(ox * ox + oy * oy + t * t) / h;
      const Rule r = rule_for(dist);
      if (r.midpoint) return h * h * kernel(Point{ox, oy, 0.0});
      return cell_integral(kernel, Point{ox, oy, 0.0}, h, 2, r.subdiv, r.order);
    };
  };
  if (!k.potential) {
    auto pot = [t](const Point& y) {
      return kInvTwoPi / std::sqrt(y[0] * y[0] + y[1] * y[1] + t * t);
    };
    if (t == 0.0) {
      const double self = kInvTwoPi * self_cell_integral(2, 1.0, h);
      auto w = weights(pot);
      k.potential = std::make_unique<Convolver>(grid_, [&](const Index& o) {
        return (o[0] == 0 && o[1] == 0) ? self : w(o);
      });
    } else {
      k.potential = std::make_unique<Convolver>(grid_, weights(pot));
    }
  }
  if (with_grad && !k.grad[0]) {
    if (t == 0.0) throw DomainError("free-space gradient kernels need t > 0");
    for (int a = 0; a < 2; ++a) {
      auto tang = [t, a](const Point& y) {
        const double R2 = y[0] * y[0] + y[1] * y[1] + t * t;
        return -kInvTwoPi * y[a] / (R2 * std::sqrt(R2));
      };
      k.grad[a] = std::make_unique<Convolver>(grid_, weights(tang));
    }
    auto normal = [t](const Point& y) {
      const double R2 = y[0] * y[0] + y[1] * y[1] + t * t;
      return -kInvTwoPi * t / (R2 * std::sqrt(R2));
    };
    k.grad[2] = std::make_unique<Convolver>(grid_, weights(normal));
  }
  return k;
}

SampledFunction FreeSpaceNeumann::at_height(const SampledFunction& g,
                                            double t) const {
  if (!(t >= 0.0)) throw DomainError("free-space N needs heights t >= 0");
  if (g.grid.dim != 2 || g.grid.points_per_axis != grid_.points_per_axis) {
    throw DomainError("free-space N: data grid does not match the layer grid");
  }
  SampledFunction out = kernels(t, false).potential->apply(g);
  out.grid = g.grid;
  return out;
}

std::array<SampledFunction, 3> FreeSpaceNeumann::gradient(const SampledFunction& g,
                                                          double t) const {
  if (!(t >= 0.0)) throw DomainError("free-space grad N needs heights t >= 0");
  if (t == 0.0) {
    SampledFunction gx = riesz_transform_pv(sample_table(g.values, grid_), 1);
    SampledFunction gy = riesz_transform_pv(sample_table(g.values, grid_), 2);
    SampledFunction gn = g;
    for (double& v : gn.values) v = -v;
    gx.grid = gy.grid = g.grid;
    return {std::move(gx), std::move(gy), std::move(gn)};
  }
  const Kernels& k = kernels(t, true);
  std::array<SampledFunction, 3> out{k.grad[0]->apply(g), k.grad[1]->apply(g),
                                     k.grad[2]->apply(g)};
  for (auto& c : out) c.grid = g.grid;
  return out;
}

}  // namespace morlab
