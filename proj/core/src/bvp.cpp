#include "morlab/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "morlab/lorentz.hpp"
#include "morlab/morrey.hpp"
#include "morlab/potential.hpp"
#include "morlab/spectral.hpp"

namespace morlab {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

BvpExponents bvp_exponents(int n, double rho, double mu, double l1, double l2) {
  if (n < 3) throw DomainError("the boundary problem needs n >= 3");
  if (!(rho > (n - 1.0) / (n - 2.0))) {
    throw DomainError("relation (n-1)/(n-2) < rho violated (rho = " + num(rho) + ")");
  }
  BvpExponents e;
  e.n = n;
  e.rho = rho;
  e.omega = (n - 1) * (rho - 1) / rho;
  e.lambda = (n - 1) * (rho - 1);
  e.mu = mu;
  if (!(mu < e.lambda)) {
    throw DomainError("relation mu < lambda violated (mu = " + num(mu) +
                      ", lambda = " + num(e.lambda) + ")");
  }
  const double inv_r = (n - 1) / e.omega - (n - 1) / mu;
  e.r = 1.0 / inv_r;
  if (!(inv_r > 0.0 && e.r > 1.0)) {
    throw DomainError("relation r > 1 violated (1/r = " + num(inv_r) + ")");
  }
  if (!(e.r < mu)) {
    throw DomainError("relation r < mu violated (r = " + num(e.r) + ", mu = " + num(mu) + ")");
  }
  e.p = e.omega * e.r / mu;
  e.q = e.lambda * e.r / mu;
  e.l1 = l1 > 0.0 ? l1 : n - 1.0;
  e.l2 = l2 > 0.0 ? l2 : n - 1.0;
  for (double l : {e.l1, e.l2}) {
    if (!(l > 1.0 && l <= n - 1.0)) {
      throw DomainError("relation 1 < l <= n-1 violated (l = " + num(l) + ")");
    }
  }
  return e;
}

BVProblem make_problem(double rho, double mu, SampledFunction f,
                       SampledFunction V, SampledFunction b) {
  if (f.grid.dim != 2) throw DomainError("boundary data must live on a 2D grid (n = 3)");
  if (!(f.grid == V.grid) || !(f.grid == b.grid)) {
    throw DomainError("f, V and b must share one boundary grid");
  }
  BVProblem pb;
  pb.exponents = bvp_exponents(3, rho, mu);
  pb.f = std::move(f);
  pb.V = std::move(V);
  pb.b = std::move(b);
  return pb;
}

namespace {

SampledFunction regrid(const SampledFunction& g, const GridSpec& grid) {
  SampledFunction out(grid, g.values);
  return out;
}

class PeriodicLayer final : public LayerModel {
 public:
  PeriodicLayer(const GridSpec& boundary, bool dealias) : grid_(boundary), dealias_(dealias) {
    grid_.periodic = true;
    if (grid_.dim != 2) throw DomainError("periodic layer needs a 2D boundary grid");
  }
  LayerKind kind() const override { return LayerKind::periodic; }
  const GridSpec& boundary() const override { return grid_; }

  SampledFunction project(const SampledFunction& g, double* adjustment) const override {
    SampledFunction h = regrid(g, grid_);
    if (adjustment) *adjustment = std::abs(mean(h));
    h = subtract_mean(h);
    if (dealias_) h = truncate_two_thirds(h);
    h.grid = g.grid;
    return h;
  }

  SampledFunction at_height(const SampledFunction& g, double t) const override {
    SampledFunction u =
        neumann_layer_N(regrid(g, grid_), {t}, ZeroModePolicy::drop).materialize(0);
    u.grid = g.grid;
    return u;
  }

  std::array<SampledFunction, 3> gradient(const SampledFunction& g, double t) const override {
    auto comps = grad_N(regrid(g, grid_), {t}, ZeroModePolicy::drop);
    std::array<SampledFunction, 3> out;
    for (int a = 0; a < 3; ++a) {
      out[a] = comps[a].materialize(0);
      out[a].grid = g.grid;
    }
    return out;
  }

 private:
  GridSpec grid_;
  bool dealias_;
};

class FreeLayer final : public LayerModel {
 public:
  explicit FreeLayer(const GridSpec& boundary) : n_(boundary) {}
  LayerKind kind() const override { return LayerKind::free_space; }
  const GridSpec& boundary() const override { return n_.boundary(); }

  SampledFunction project(const SampledFunction& g, double* adjustment) const override {
    if (adjustment) *adjustment = 0.0;
    return g;
  }
  SampledFunction at_height(const SampledFunction& g, double t) const override {
    return n_.at_height(g, t);
  }
  std::array<SampledFunction, 3> gradient(const SampledFunction& g, double t) const override {
    return n_.gradient(g, t);
  }

 private:
  FreeSpaceNeumann n_;
};

}  // namespace

std::unique_ptr<LayerModel> make_layer(LayerKind kind, const GridSpec& boundary,
                                       bool dealias) {
  if (kind == LayerKind::periodic) return std::make_unique<PeriodicLayer>(boundary, dealias);
  return std::make_unique<FreeLayer>(boundary);
}

ANormGeometry a_norm_geometry(const GridSpec& boundary, int translations) {
  if (boundary.dim != 2) throw DomainError("A-norm geometry needs a 2D boundary grid");
  ANormGeometry geo;
  const int m = boundary.points_per_axis;
  const double h = boundary.spacing();
  geo.slab = make_grid(3, boundary.half_width, m, false);
  for (int k = 0; k < m; ++k) geo.heights.push_back((k + 0.5) * h);
  geo.boundary_cubes = enumerate_all_scales(boundary, translations);
  geo.slab_cubes.scales = geo.boundary_cubes.scales;
  for (const Cube& q : geo.boundary_cubes.cubes) {
    geo.slab_cubes.cubes.push_back(Cube{{q.lo[0], q.lo[1], 0}, q.side});
  }
  return geo;
}

ANorm a_norm(const LayerModel& model, const SampledFunction& g,
             const BvpExponents& e, const ANormGeometry& geo) {
  if (geo.heights.empty()) throw DomainError("A-norm needs a non-empty height list");
  const std::size_t m = static_cast<std::size_t>(g.grid.points_per_axis);
  if (geo.heights.size() != m) throw DomainError("A-norm geometry does not match the grid");
  ANorm out;
  bool zero = true;
  for (double v : g.values) zero = zero && v == 0.0;
  if (zero) return out;

  SampledFunction slab = zeros(geo.slab);
  for (std::size_t k = 0; k < m; ++k) {
    const auto grad = model.gradient(g, geo.heights[k]);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double gx = grad[0].values[i], gy = grad[1].values[i], gz = grad[2].values[i];
      slab.values[i * m + k] = std::sqrt(gx * gx + gy * gy + gz * gz);
    }
  }
  out.grad_part = weak_morrey_quasinorm(slab, e.r, e.mu, geo.slab_cubes).value;
  SampledFunction u = model.trace(g);
  u.grid = g.grid;
  out.trace_part = weak_morrey_quasinorm(u, e.q, e.lambda, geo.boundary_cubes).value;
  out.total = out.grad_part + out.trace_part;
  return out;
}

Certificate contraction_certificate(double L, double M, double rho) {
  Certificate c;
  c.L = L;
  c.M = M;
  c.rho = rho;
  if (!(rho > 1.0)) throw DomainError("certificate needs rho > 1");
  if (!(M >= 0.0) || !(L >= 0.0)) throw DomainError("certificate needs L, M >= 0");
  if (!(L < 1.0)) {
    c.feasible = false;
    c.eps_max = 0.0;
    return c;
  }
  c.feasible = true;
  if (M == 0.0) {
    c.eps_max = kInf;
    return c;
  }
  c.eps_max = (1.0 - L) * std::pow((1.0 - L) / (std::pow(2.0, rho + 1.0) * M),
                                   1.0 / (rho - 1.0));
  return c;
}

namespace {

double odd_power(double u, double rho) {
  return std::copysign(std::pow(std::abs(u), rho), u);
}

SampledFunction difference(const SampledFunction& a, const SampledFunction& b) {
  SampledFunction d = a;
  for (std::size_t i = 0; i < d.size(); ++i) d.values[i] -= b.values[i];
  return d;
}

SampledFunction scaled(const SampledFunction& a, double s) {
  SampledFunction d = a;
  for (double& v : d.values) v *= s;
  return d;
}

}  // namespace

SampledFunction picard_rhs(const BVProblem& pb, const LayerModel& model,
                           const SampledFunction& u, double* adjustment) {
  SampledFunction g = pb.f;
  const double rho = pb.rho();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double ui = u.values[i];
    g.values[i] += pb.V.values[i] * ui + pb.b.values[i] * odd_power(ui, rho);
  }
  return model.project(g, adjustment);
}

PicardResult picard_solve(const BVProblem& pb, const LayerModel& model,
                          const PicardOptions& opt) {
  if (opt.max_iter < 1) throw DomainError("picard_solve needs max_iter >= 1");
  const ANormGeometry geo = a_norm_geometry(pb.f.grid, opt.translations);
  PicardResult res;
  PicardState& st = res.state;
  double adj = 0.0;
  SampledFunction g = model.project(pb.f, &adj);
  SampledFunction u = model.trace(g);
  st.adjustments.push_back(adj);
  st.a_norms.push_back(a_norm(model, g, pb.exponents, geo).total);
  if (opt.keep_iterates) st.traces.push_back(u);
  int rises = 0;
  for (int k = 1; k < opt.max_iter; ++k) {
    SampledFunction g_next = picard_rhs(pb, model, u, &adj);
    const double diff = a_norm(model, difference(g_next, g), pb.exponents, geo).total;
    g = std::move(g_next);
    u = model.trace(g);
    st.adjustments.push_back(adj);
    st.differences.push_back(diff);
    st.a_norms.push_back(a_norm(model, g, pb.exponents, geo).total);
    if (opt.keep_iterates) st.traces.push_back(u);
    st.iterations = k;
    if (diff < opt.tol) {
      st.converged = true;
      break;
    }
    const std::size_t n = st.differences.size();
    rises = (n >= 2 && st.differences[n - 1] > st.differences[n - 2]) ? rises + 1 : 0;
    if (rises >= 3) {
      throw PicardDivergence("Picard iteration diverged: the step grew three times in a row "
                             "(last step " + num(diff) + ")",
                             st);
    }
  }
  res.trace = std::move(u);
  res.data = std::move(g);
  return res;
}

namespace {

SampledFunction gaussian(const GridSpec& grid, double sigma, double cx, double cy) {
  return sample([&](const Point& x) {
    const double dx = x[0] - cx, dy = x[1] - cy;
    return std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
  }, grid);
}

SampledFunction band_limited(const GridSpec& grid, unsigned seed) {
  std::mt19937_64 rng(seed);
  auto unit = [&]() { return std::ldexp(static_cast<double>(rng() >> 11), -53); };
  const double L = 2.0 * grid.half_width;
  std::vector<std::array<double, 4>> terms;
  for (int k = 0; k < 6; ++k) {
    terms.push_back({static_cast<double>(1 + rng() % 3), static_cast<double>(rng() % 3),
                     2.0 * std::numbers::pi * unit(), unit() - 0.5});
  }
  SampledFunction f = sample([&](const Point& x) {
    double s = 0.0;
    for (const auto& t : terms) {
      s += t[3] * std::cos(2.0 * std::numbers::pi * (t[0] * x[0] + t[1] * x[1]) / L + t[2]);
    }
    // Window keeps free-space probes compactly supported.
    const double w = std::exp(-(x[0] * x[0] + x[1] * x[1]) / (0.18 * L * L));
    return s * w;
  }, grid);
  return f;
}

}  // namespace

Calibration calibrate(const BVProblem& pb, const LayerModel& model,
                      const ANormGeometry& geo, int power_steps) {
  const BvpExponents& e = pb.exponents;
  const GridSpec& grid = pb.f.grid;
  const double W = grid.half_width;
  std::vector<SampledFunction> probes;
  probes.push_back(model.project(gaussian(grid, W / 8, 0.0, 0.0)));
  probes.push_back(model.project(gaussian(grid, W / 4, 0.1 * W, -0.05 * W)));
  probes.push_back(model.project(band_limited(grid, 7)));
  const SampledFunction pf = model.project(pb.f);
  bool f_zero = true;
  for (double v : pf.values) f_zero = f_zero && v == 0.0;
  if (!f_zero) probes.push_back(pf);

  auto A = [&](const SampledFunction& g) { return a_norm(model, g, e, geo).total; };
  auto multiply = [&](const SampledFunction& w, const SampledFunction& by) {
    SampledFunction out = w;
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] *= by.values[i];
    return model.project(out);
  };

  Calibration cal;
  bool v_zero = true;
  for (double v : pb.V.values) v_zero = v_zero && v == 0.0;
  double L = 0.0;
  if (!v_zero) {
    std::vector<SampledFunction> dirs = probes;
    SampledFunction g = probes.front();
    for (int s = 0; s < power_steps; ++s) {
      const double ag = A(g);
      if (!(ag > 0.0)) break;
      g = scaled(multiply(model.trace(g), pb.V), 1.0 / ag);
      dirs.push_back(g);
    }
    for (const auto& d : dirs) {
      const double ad = A(d);
      if (!(ad > 0.0)) continue;
      L = std::max(L, A(multiply(model.trace(d), pb.V)) / ad);
    }
  }
  cal.L = 1.25 * L;

  bool b_zero = true;
  for (double v : pb.b.values) b_zero = b_zero && v == 0.0;
  double M = 0.0;
  if (!b_zero) {
    const double rho = pb.rho();
    auto B = [&](const SampledFunction& u) {
      SampledFunction out = u;
      for (std::size_t i = 0; i < out.size(); ++i) {
        out.values[i] = pb.b.values[i] * odd_power(u.values[i], rho);
      }
      return out;
    };
    std::vector<std::pair<SampledFunction, SampledFunction>> pairs;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      pairs.emplace_back(probes[i], zeros(grid));
      pairs.emplace_back(probes[i], scaled(probes[i], 0.5));
      pairs.emplace_back(probes[i], probes[(i + 1) % probes.size()]);
    }
    for (auto& [ga, gb] : pairs) {
      const SampledFunction ua = model.trace(ga), ub = model.trace(gb);
      const double au = A(ga), av = A(gb);
      const double aduv = A(difference(ga, gb));
      const double denom = aduv * (std::pow(au, rho - 1) + std::pow(av, rho - 1));
      if (!(denom > 0.0)) continue;
      const SampledFunction img = model.project(difference(B(ua), B(ub)));
      M = std::max(M, A(img) / denom);
    }
  }
  cal.M = 1.25 * M;
  cal.eps = f_zero ? 0.0 : A(pf);
  double C = 0.0;
  for (const auto& d : probes) {
    const double dn = weak_morrey_quasinorm(d, e.p, e.omega, geo.boundary_cubes).value;
    if (dn > 0.0) C = std::max(C, A(d) / dn);
  }
  cal.C_data = 1.25 * C;
  cal.certificate = contraction_certificate(cal.L, cal.M, pb.rho());
  return cal;
}

Residual residual(const BVProblem& pb, const LayerModel& model,
                  const SampledFunction& g, int layers) {
  if (layers < 3) throw DomainError("residual needs at least 3 near-boundary layers");
  const GridSpec& grid = g.grid;
  const int m = grid.points_per_axis;
  const double h = grid.spacing();
  const bool periodic = model.kind() == LayerKind::periodic;
  std::vector<SampledFunction> u;
  for (int k = 0; k < layers; ++k) u.push_back(model.at_height(g, k * h));

  Residual r;
  for (int k = 1; k + 1 < layers; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (!periodic && (i == 0 || j == 0 || i == m - 1 || j == m - 1)) continue;
        const std::size_t c = grid.ravel({i, j, 0});
        const std::size_t xp = grid.ravel({(i + 1) % m, j, 0});
        const std::size_t xm = grid.ravel({(i + m - 1) % m, j, 0});
        const std::size_t yp = grid.ravel({i, (j + 1) % m, 0});
        const std::size_t ym = grid.ravel({i, (j + m - 1) % m, 0});
        const auto& w = u[k].values;
        const double lap = (w[xp] + w[xm] + w[yp] + w[ym] - 4.0 * w[c]) / (h * h) +
                           (u[k + 1].values[c] - 2.0 * w[c] + u[k - 1].values[c]) / (h * h);
        r.interior = std::max(r.interior, std::abs(lap));
      }
    }
  }

  // -d_n u at x_n = 0.
  SampledFunction neumann;
  if (periodic) {
    GridSpec pg = grid;
    pg.periodic = true;
    const SampledFunction trace(pg, u[0].values);
    const Frequencies fr = frequencies(pg);
    std::vector<Complex> c = to_modes(trace);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= 2.0 * std::numbers::pi * fr.norm[i];
    neumann = from_modes(pg, std::move(c));
    neumann.grid = grid;
  } else {
    neumann = g;  // jump relation of the single layer
  }
  const SampledFunction rhs = picard_rhs(pb, model, u[0]);
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    r.boundary = std::max(r.boundary, std::abs(neumann.values[i] - rhs.values[i]));
  }
  return r;
}

EnergyTerms energy(const LayerModel& model, const SampledFunction& g,
                   const SampledFunction& V, const SampledFunction& b,
                   const SampledFunction& f, double rho) {
  const SampledFunction u = model.trace(g);
  const double w = g.weight;
  EnergyTerms e;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double ui = u.values[i];
    e.dirichlet += ui * g.values[i];
    e.potential += V.values[i] * ui * ui;
    e.nonlinear += b.values[i] * std::pow(std::abs(ui), rho + 1.0);
    e.source += ui * f.values[i];
  }
  e.dirichlet *= w;
  e.potential *= w;
  e.nonlinear *= w;
  e.source *= w;
  e.total = 0.5 * e.dirichlet - 0.5 * e.potential - e.nonlinear / (rho + 1.0) + e.source;
  return e;
}

double energy_scaling_exponent(int n, double rho) { return 2.0 / (rho - 1.0) + 2.0 - n; }

SampledFunction apply_map(const SampledFunction& u, BoundaryMap map) {
  const GridSpec& g = u.grid;
  if (g.dim != 2) throw DomainError("boundary maps act on 2D grids");
  const int m = g.points_per_axis;
  if (m % 2 != 0) {
    throw DomainError("rotation/reflection needs an even point count so the origin is a node");
  }
  SampledFunction out = zeros(g);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      // (x, y) -> (-y, x) or (-x, y).
      const Index src = map == BoundaryMap::rotate90 ? Index{(m - j) % m, i, 0}
                                                     : Index{(m - i) % m, j, 0};
      out.values[g.ravel({i, j, 0})] = u.values[g.ravel(src)];
    }
  }
  return out;
}

SymmetryDefects symmetry_check(const SampledFunction& u, BoundaryMap map) {
  const SampledFunction t = apply_map(u, map);
  const GridSpec& g = u.grid;
  const int m = g.points_per_axis;
  SymmetryDefects d;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      // Off the torus the first row and column have no mirror node.
      if (!g.periodic && (i == 0 || j == 0)) continue;
      const std::size_t k = g.ravel({i, j, 0});
      d.symmetric = std::max(d.symmetric, std::abs(t.values[k] - u.values[k]));
      d.antisymmetric = std::max(d.antisymmetric, std::abs(t.values[k] + u.values[k]));
    }
  }
  return d;
}

PositivityReport positivity_check(const BVProblem& pb, const LayerModel& model,
                                  const PicardResult& run, double tol) {
  PositivityReport rep;
  rep.min_iterate = kInf;
  for (const auto& t : run.state.traces) {
    for (double v : t.values) rep.min_iterate = std::min(rep.min_iterate, v);
  }
  for (double v : run.trace.values) rep.min_iterate = std::min(rep.min_iterate, v);
  rep.iterates_ok = rep.min_iterate >= -5.0 * tol;
  const SampledFunction nf = model.trace(model.project(pb.f));
  rep.min_limit_on_support = kInf;
  for (std::size_t i = 0; i < nf.size(); ++i) {
    if (nf.values[i] > tol) {
      rep.min_limit_on_support = std::min(rep.min_limit_on_support, run.trace.values[i]);
    }
  }
  rep.limit_positive = rep.min_limit_on_support > 0.0;
  return rep;
}

StabilityReport stability_check(const BVProblem& pb, const LayerModel& model,
                                const SampledFunction& f1, const SampledFunction& f2,
                                const PicardOptions& opt) {
  StabilityReport rep;
  const SampledFunction df = difference(f1, f2);
  bool same = true;
  for (double v : df.values) same = same && v == 0.0;
  if (same) return rep;
  BVProblem p1 = pb, p2 = pb;
  p1.f = f1;
  p2.f = f2;
  const PicardResult r1 = picard_solve(p1, model, opt);
  const PicardResult r2 = picard_solve(p2, model, opt);
  const ANormGeometry geo = a_norm_geometry(pb.f.grid, opt.translations);
  rep.solution_gap = a_norm(model, difference(r1.data, r2.data), pb.exponents, geo).total;
  rep.data_gap = weak_morrey_quasinorm(df, pb.exponents.p, pb.exponents.omega,
                                       geo.boundary_cubes).value;
  rep.ratio = rep.data_gap > 0.0 ? rep.solution_gap / rep.data_gap : 0.0;
  return rep;
}

double holder_quotient(const LayerModel& model, const SampledFunction& g,
                       double alpha, double stride,
                       const std::vector<double>& heights) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("Hoelder exponent must lie in (0,1), got " + num(alpha));
  }
  if (heights.empty()) throw DomainError("holder_quotient needs at least one height");
  const GridSpec& grid = g.grid;
  const double h = grid.spacing();
  const double ratio = stride / h;
  const int step = static_cast<int>(std::lround(ratio));
  if (step < 1 || std::abs(ratio - step) > 1e-9 * ratio) {
    throw DomainError("holder_quotient: stride must be a multiple of the grid spacing");
  }
  std::vector<Point> pts;
  std::vector<double> vals;
  for (double t : heights) {
    const SampledFunction u = model.at_height(g, t);
    for (int i = 0; i < grid.points_per_axis; i += step) {
      for (int j = 0; j < grid.points_per_axis; j += step) {
        pts.push_back({grid.coord(i), grid.coord(j), t});
        vals.push_back(u.values[grid.ravel({i, j, 0})]);
      }
    }
  }
  double best = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      const double dx = pts[a][0] - pts[b][0], dy = pts[a][1] - pts[b][1],
                   dz = pts[a][2] - pts[b][2];
      const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
      best = std::max(best, std::abs(vals[a] - vals[b]) / std::pow(d, alpha));
    }
  }
  return best;
}

SampledFunction inverse_distance_potential(const GridSpec& boundary, double c) {
  if (boundary.dim != 2) throw DomainError("inverse_distance_potential needs a 2D grid");
  if (boundary.points_per_axis % 2 != 0) {
    throw DomainError("inverse_distance_potential needs the origin as a node (even m)");
  }
  const double h = boundary.spacing();
  const double area = h * h;
  auto k = [](const Point& y) { return 1.0 / std::sqrt(y[0] * y[0] + y[1] * y[1]); };
  SampledFunction out = zeros(boundary);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Point x = boundary.point(i);
    const bool origin = std::abs(x[0]) < 0.5 * h && std::abs(x[1]) < 0.5 * h;
    out.values[i] = c * (origin ? self_cell_integral(2, 1.0, h)
                                : cell_integral(k, x, h, 2, 2, 4)) / area;
  }
  return out;
}

}  // namespace morlab
