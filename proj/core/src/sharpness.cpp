#include "morlab/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "morlab/maximal.hpp"
#include "morlab/morrey.hpp"

namespace morlab {

double solve_delta(double r, double mu) {
  if (!(r > 1.0 && r < mu && std::isfinite(mu))) {
    std::ostringstream os;
    os << "solve_delta needs 1 < r < mu < inf (r = " << r << ", mu = " << mu << ")";
    throw DomainError(os.str());
  }
  // log form: phi(delta) = (1/mu) log(2/(1-delta)) + (1/r) log(1-delta).
  // With t = 1-delta, phi = log2/mu + (1/r - 1/mu) log t, increasing in t.
  auto phi = [&](double delta) {
    const double t = 1.0 - delta;
    return std::log(2.0 / t) / mu + std::log(t) / r;
  };
  double lo = 0.0, hi = 1.0 - 1e-300;
  // phi(0) = log2/mu > 0 and phi -> -inf as delta -> 1.
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (phi(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

GridSpec CantorFamily::grid() const {
  const int m = side(0);
  return make_grid(n, 0.5 * m, m, false);
}

int CantorFamily::side(int d) const {
  int s = 1;
  for (int k = d; k < depth; ++k) s *= ratio;
  return s;
}

namespace {

void paint(SampledFunction& f, const Cube& q) {
  const GridSpec& g = f.grid;
  const std::size_t m = g.points_per_axis;
  if (g.dim == 1) {
    for (int i = 0; i < q.side; ++i) f.values[q.lo[0] + i] = 1.0;
    return;
  }
  for (int i = 0; i < q.side; ++i) {
    for (int j = 0; j < q.side; ++j) f.values[(q.lo[0] + i) * m + q.lo[1] + j] = 1.0;
  }
}

}  // namespace

SampledFunction CantorFamily::indicator_E(int d) const {
  SampledFunction f = zeros(grid());
  for (const Cube& q : stages.at(d)) paint(f, q);
  return f;
}

SampledFunction CantorFamily::indicator_F(int d) const {
  SampledFunction f = zeros(grid());
  for (const Cube& q : middles.at(d)) paint(f, q);
  return f;
}

CubeFamily CantorFamily::norm_family() const {
  CubeFamily fam = enumerate_all_scales(grid(), 1);
  auto key = [](const Cube& q) { return std::array<int, 4>{q.lo[0], q.lo[1], q.lo[2], q.side}; };
  std::set<std::array<int, 4>> seen;
  for (const Cube& q : fam.cubes) seen.insert(key(q));
  for (const auto& st : stages) {
    for (const Cube& q : st) {
      if (seen.insert(key(q)).second) fam.cubes.push_back(q);
    }
  }
  return fam;
}

CantorFamily build_cantor(int n, int depth, double delta, std::uint64_t seed,
                          CantorPlacement placement) {
  if (n != 1 && n != 2) throw DomainError("build_cantor supports n in {1,2}");
  if (depth < 1) throw DomainError("build_cantor needs depth >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("build_cantor needs 0 < delta < 1");
  const double R = 2.0 / (1.0 - delta);
  const int ratio = static_cast<int>(std::lround(R));
  if (std::abs(R - ratio) > 1e-9 * R || ratio < 3) {
    std::ostringstream os;
    os << "build_cantor needs 2/(1-delta) to be an integer >= 3 so every stage "
          "is grid-resolvable; got 2/(1-delta) = " << R;
    throw DomainError(os.str());
  }
  double cells = 1.0;
  for (int k = 0; k < depth * n; ++k) cells *= ratio;
  if (cells > static_cast<double>(1 << 24)) {
    throw DomainError("build_cantor: R^{nN} exceeds 2^24 cells");
  }

  CantorFamily fam;
  fam.n = n;
  fam.depth = depth;
  fam.delta = delta;
  fam.ratio = ratio;
  fam.seed = seed;
  fam.placement = placement;
  std::mt19937_64 rng(seed);
  const int gap = ratio - 2;

  fam.stages.push_back({Cube{{0, 0, 0}, fam.side(0)}});
  for (int d = 0; d < depth; ++d) {
    const int cs = fam.side(d + 1);
    std::vector<Cube> next, mids;
    for (const Cube& parent : fam.stages[d]) {
      // Per axis: child offsets (in child units) and the gap offset.
      std::array<std::array<int, 2>, 3> child{};
      std::array<int, 3> gap_at{};
      for (int a = 0; a < n; ++a) {
        switch (placement == CantorPlacement::middle ? 1 : rng() % 3) {
          case 0: gap_at[a] = 0; child[a] = {gap, gap + 1}; break;
          case 1: gap_at[a] = 1; child[a] = {0, gap + 1}; break;
          default: gap_at[a] = 2; child[a] = {0, 1}; break;
        }
      }
      Cube p{parent.lo, gap * cs};
      for (int a = 0; a < n; ++a) p.lo[a] += gap_at[a] * cs;
      mids.push_back(p);
      for (int c = 0; c < (1 << n); ++c) {
        Cube q{parent.lo, cs};
        for (int a = 0; a < n; ++a) q.lo[a] += child[a][(c >> a) & 1] * cs;
        next.push_back(q);
      }
    }
    fam.stages.push_back(std::move(next));
    fam.middles.push_back(std::move(mids));
  }
  return fam;
}

IndicatorNorm indicator_norm(const CantorFamily& fam, int d, double p,
                             double kappa, double lambda) {
  if (d < 0 || d > fam.depth) throw DomainError("indicator_norm: stage out of range");
  const double base = std::pow(static_cast<double>(fam.ratio), 1.0 / lambda) *
                      std::pow(1.0 - fam.delta, 1.0 / p);
  double analytic = 0.0;
  for (int l = 0; l <= d; ++l) analytic = std::max(analytic, std::pow(base, fam.n * (d - l)));

  SampledFunction g = fam.indicator_E(d);
  const double qd = std::pow(static_cast<double>(fam.side(d)), fam.n);
  const double scale = std::pow(qd, -1.0 / lambda);
  for (double& v : g.values) v *= scale;
  const double grid = morrey_lorentz_norm(g, {p, kappa, lambda}, fam.norm_family()).value;
  return {analytic, grid};
}

double closed_form_bound(int n, int depth, double delta, double mu) {
  const double t = std::pow(1.0 - delta, n);
  const double B = std::pow(delta, n / mu) * t / (1.0 - t);
  return 1.0 + B * std::pow(2.0, n * depth) * (1.0 - std::pow(t, depth - 1));
}

MinorantReport maximal_lower_bound(const CantorFamily& fam, double alpha,
                                   double mu) {
  const int n = fam.n;
  if (!(alpha / n >= 1.0 / mu - 1e-12 && alpha < n)) {
    std::ostringstream os;
    os << "maximal_lower_bound needs 1/mu <= alpha/n < 1 (alpha = " << alpha
       << ", n = " << n << ", mu = " << mu << ")";
    throw DomainError(os.str());
  }
  const int N = fam.depth;
  const double c = std::pow(static_cast<double>(fam.ratio), 1.0 / mu) * (1.0 - fam.delta);
  MinorantReport rep;
  rep.minorant = fam.indicator_E(N);
  for (int l = 0; l < N; ++l) {
    const double w = std::pow(c, n * (N - l));
    const SampledFunction F = fam.indicator_F(l);
    for (std::size_t i = 0; i < F.size(); ++i) rep.minorant.values[i] += w * F.values[i];
  }
  rep.maximal = fractional_maximal(fam.indicator_E(N), alpha, fam.norm_family()).values;
  rep.worst_gap = kInf;
  for (std::size_t i = 0; i < rep.maximal.size(); ++i) {
    rep.worst_gap = std::min(rep.worst_gap, rep.maximal.values[i] - rep.minorant.values[i]);
  }
  rep.closed_form = closed_form_bound(n, N, fam.delta, mu);
  return rep;
}

std::vector<DivergenceRow> divergence_report(double r, double mu, double p,
                                             double lambda, int depth_lo,
                                             int depth_hi,
                                             const DivergenceOptions& opt) {
  if (!(r / mu > p / lambda)) {
    std::ostringstream os;
    os << "divergence_report needs r/mu > p/lambda (r/mu = " << r / mu
       << ", p/lambda = " << p / lambda
       << "); for r/mu <= p/lambda M_alpha is bounded and nothing diverges";
    throw DomainError(os.str());
  }
  if (!(p > 1.0 && p < lambda)) throw DomainError("divergence_report needs 1 < p < lambda");
  if (depth_lo < 1 || depth_hi < depth_lo) throw DomainError("divergence_report: bad depth range");
  const double delta = solve_delta(r, mu);
  const double alpha = opt.alpha > 0.0 ? opt.alpha : opt.n / mu;
  std::vector<DivergenceRow> rows;
  for (int N = depth_lo; N <= depth_hi; ++N) {
    const CantorFamily fam = build_cantor(opt.n, N, delta, opt.seed, opt.placement);
    const CubeFamily cubes = fam.norm_family();
    const IndicatorNorm g = indicator_norm(fam, N, p, opt.kappa, lambda);
    const SampledFunction chi = fam.indicator_E(N);
    const SampledFunction M = fractional_maximal(chi, alpha, cubes).values;
    const double measured = morrey_lorentz_norm(M, {r, opt.nu, mu}, cubes).value;
    DivergenceRow row;
    row.depth = N;
    row.g_norm = g.grid;
    row.g_analytic = g.analytic;
    row.measured = measured;
    row.lower_bound = closed_form_bound(opt.n, N, delta, mu);
    row.ratio = g.grid > 0.0 ? measured / g.grid : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace morlab
