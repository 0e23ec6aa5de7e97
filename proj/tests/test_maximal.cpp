#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "morlab/corpus.hpp"
#include "morlab/maximal.hpp"
#include "morlab/morrey.hpp"
#include "morlab/potential.hpp"

using namespace morlab;

namespace {

SampledFunction disk(int m, double W) {
  const GridSpec g = make_grid(2, W, m, false);
  return sample([](const Point& x) { return std::hypot(x[0], x[1]) < 1.0 ? 1.0 : 0.0; }, g);
}

// Area of [-s, s]^2 intersected with the unit disk.
double square_disk_area(double s) {
  if (s <= 1.0 / std::sqrt(2.0)) return 4 * s * s;
  const double c = std::min(s, 1.0);
  // quarter: int_0^c min(s, sqrt(1 - x^2)) dx
  const double a = std::sqrt(std::max(0.0, 1.0 - s * s));
  auto F = [](double x) { return 0.5 * (x * std::sqrt(1 - x * x) + std::asin(x)); };
  return 4 * (s * a + F(c) - F(a));
}

}  // namespace

TEST(Maximal, ConstantIsFixed) {
  const GridSpec g = make_grid(2, 1.0, 16, false);
  const SampledFunction c = sample([](const Point&) { return 2.5; }, g);
  const CubeFamily fam = enumerate_all_scales(g, 1);
  for (double v : fractional_maximal(c, 0.0, fam).values.values) EXPECT_NEAR(v, 2.5, 1e-12);
  for (double v : sharp_maximal(c, fam).values.values) EXPECT_NEAR(v, 0.0, 1e-12);
  EXPECT_NEAR(bmo_norm(c, fam), 0.0, 1e-12);
}

TEST(Maximal, Preconditions) {
  const GridSpec g = make_grid(2, 1.0, 16, false);
  const SampledFunction f = zeros(g);
  EXPECT_THROW(fractional_maximal(f, 2.0, enumerate_all_scales(g, 0)), DomainError);
  EXPECT_THROW(fractional_maximal(f, -0.1, enumerate_all_scales(g, 0)), DomainError);
  EXPECT_THROW(fractional_maximal(f, 0.5, enumerate_cubes(g, 3, 0)), DomainError);
  EXPECT_THROW(fractional_maximal(f, 0.5, CubeFamily{}), DomainError);
}

TEST(Maximal, HardyLittlewoodDominatesModulus) {
  for (const auto& e : build_corpus({2, 32, 1.0})) {
    const CubeFamily fam = enumerate_all_scales(e.f.grid, 1);
    const SampledFunction m0 = fractional_maximal(e.f, 0.0, fam).values;
    for (std::size_t i = 0; i < m0.size(); ++i) EXPECT_GE(m0.values[i], std::abs(e.f.values[i]) - 1e-15);
  }
}

// Cube oracle at the centre of the unit disk: |Q ∩ B| / (2s) over centred
// squares of half side s. Cubes stand in for balls, so every value sits
// below sqrt(pi); the family only has dyadic sides 4, 2, 1, ...
TEST(Maximal, DiskCentreAgainstSquareOracle) {
  double any_side = 0.0, dyadic = 0.0;
  for (double s = 0.01; s < 3.0; s += 1e-4) any_side = std::max(any_side, square_disk_area(s) / (2 * s));
  for (double s = 2.0; s > 0.01; s /= 2) dyadic = std::max(dyadic, square_disk_area(s) / (2 * s));
  const SampledFunction f = disk(64, 2.0);
  const CubeFamily fam = enumerate_all_scales(f.grid, 7);
  const MaximalResult r = fractional_maximal(f, 1.0, fam, true);
  const double v = r.values.values[f.grid.ravel({32, 32, 0})];
  EXPECT_NEAR(v, dyadic, 0.03 * dyadic);
  EXPECT_LE(v, any_side * 1.03);
  EXPECT_LT(any_side, std::sqrt(std::numbers::pi));
  EXPECT_EQ(r.argmax_cube.size(), f.size());
}

TEST(Maximal, SharpOfSign) {
  const GridSpec g = make_grid(1, 1.0, 256, false);
  const SampledFunction f = sample([](const Point& x) { return x[0] > 0 ? 1.0 : (x[0] < 0 ? -1.0 : 0.0); }, g);
  const CubeFamily fam = enumerate_all_scales(g, 1);
  const SampledFunction s = sharp_maximal(f, fam).values;
  EXPECT_NEAR(s.values[128], 1.0, g.spacing());
  EXPECT_NEAR(bmo_norm(f, fam), 1.0, g.spacing());
}

TEST(Maximal, SharpOfIndicatorBoundedByOne) {
  const GridSpec g = make_grid(1, 2.0, 256, false);
  const SampledFunction f = sample([](const Point& x) { return x[0] >= 0 && x[0] < 1 ? 1.0 : 0.0; }, g);
  for (double v : sharp_maximal(f, enumerate_all_scales(g, 3)).values.values) EXPECT_LE(v, 1.0);
}

// sup_x M_{n/lambda} f = ||f|| in M^lambda_1 over one family.
TEST(Maximal, EndpointIdentity) {
  for (const auto& e : build_corpus({2, 32, 1.0})) {
    const CubeFamily fam = enumerate_all_scales(e.f.grid, 1);
    for (double lambda : {1.5, 2.0, 4.0}) {
      const double sup = fractional_maximal(e.f, 2.0 / lambda, fam).values.max_abs();
      const double norm = morrey_lorentz_norm(e.f, {1.0, 1.0, lambda}, fam).value;
      EXPECT_NEAR(sup, norm, 1e-12 * norm) << e.name;
    }
  }
}

// ||I_{n/lambda} f||_BMO against ||f|| in M^lambda_1: the ratio bracket over
// the corpus holds still under refinement.
TEST(Maximal, BmoOfEndpointPotential) {
  auto bracket = [](int m) {
    double lo = kInf, hi = 0.0;
    for (const auto& e : build_corpus({2, m, 1.0})) {
      const CubeFamily fam = enumerate_all_scales(e.f.grid, 1);
      const double r = bmo_norm(riesz_potential(e.f, 0.5), fam) /
                       morrey_lorentz_norm(e.f, {1.0, 1.0, 4.0}, fam).value;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    return std::pair{lo, hi};
  };
  const auto [lo, hi] = bracket(64);
  const auto [lo2, hi2] = bracket(128);
  EXPECT_GT(lo, 0.0);
  EXPECT_NEAR(lo2 / lo, 1.0, 0.10);
  EXPECT_NEAR(hi2 / hi, 1.0, 0.10);
}

TEST(Maximal, HedbergAtDiskCentre) {
  auto ratio = [](int m) {
    const SampledFunction f = disk(m, 2.0);
    const HedbergResult r = hedberg_split(f, 0.5, 1.0, f.grid.ravel({m / 2, m / 2, 0}),
                                          enumerate_all_scales(f.grid, 1));
    EXPECT_NEAR(r.rho_opt, r.m_alpha / r.m_zero, 1e-12);
    return r.lhs / r.rhs;
  };
  const double base = ratio(64), fine = ratio(128);
  EXPECT_LT(base, 1.0);
  EXPECT_NEAR(fine / base, 1.0, 0.10);
}

TEST(Maximal, HedbergAwayFromSupport) {
  const GridSpec g = make_grid(2, 2.0, 64, false);
  const SampledFunction f = sample([](const Point& x) { return std::hypot(x[0] - 1.5, x[1] - 1.5) < 0.2 ? 1.0 : 0.0; }, g);
  const HedbergResult r = hedberg_split(f, 0.5, 1.0, g.ravel({4, 4, 0}), enumerate_all_scales(g, 1));
  EXPECT_GT(r.rhs, 0.0);
  EXPECT_LT(r.lhs, r.rhs);
  EXPECT_THROW(hedberg_split(f, 1.0, 0.5, 0, enumerate_all_scales(g, 1)), DomainError);
  EXPECT_THROW(hedberg_split(zeros(g), 0.5, 1.0, 0, enumerate_all_scales(g, 1)), DomainError);
}

// f(x/2) doubles the optimal radius at corresponding nodes.
TEST(Maximal, HedbergRadiusScales) {
  const int m = 64;
  const GridSpec g = make_grid(2, 2.0, m, false);
  const SampledFunction f = sample([](const Point& x) { return std::hypot(x[0] + 1.0, x[1] + 1.0) < 0.6 ? 1.0 : 0.0; }, g);
  const SampledFunction wide = dilate(f, 0.5);
  const CubeFamily fam = enumerate_all_scales(g, 1);
  for (Index x : {Index{16, 16, 0}, Index{10, 20, 0}, Index{24, 12, 0}}) {
    const Index x2{2 * x[0], 2 * x[1], 0};
    const double r1 = hedberg_split(f, 0.5, 1.0, g.ravel(x), fam).rho_opt;
    const double r2 = hedberg_split(wide, 0.5, 1.0, g.ravel(x2), fam).rho_opt;
    EXPECT_NEAR(r2 / r1, 2.0, 0.1);
  }
}
