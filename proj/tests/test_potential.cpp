#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "morlab/free_space.hpp"
#include "morlab/potential.hpp"
#include "morlab/spectral.hpp"

using namespace morlab;

namespace {

constexpr double kPi = std::numbers::pi;

// Unit torus: mode k has frequency k.
GridSpec torus(int m = 32) { return make_grid(2, 0.5, m, true); }

SampledFunction wave(const GridSpec& g, int k1, int k2, bool sine = false) {
  return sample([=](const Point& x) {
    const double a = 2 * kPi * (k1 * x[0] + k2 * x[1]);
    return sine ? std::sin(a) : std::cos(a);
  }, g);
}

double max_diff(const SampledFunction& a, const SampledFunction& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

SampledFunction scaled(SampledFunction f, double c) {
  for (auto& v : f.values) v *= c;
  return f;
}

SampledFunction bump(const GridSpec& g, double x0, double y0, double s) {
  return sample([=](const Point& x) {
    const double r2 = ((x[0] - x0) * (x[0] - x0) + (x[1] - y0) * (x[1] - y0)) / (s * s);
    return r2 < 1 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
  }, g);
}

}  // namespace

TEST(Potential, RieszConstant) {
  EXPECT_NEAR(riesz_constant(2, 1.0).c, 1.0 / (2 * kPi), 1e-15);
  // n = 3, alpha = 2: the Newtonian kernel 1/(4 pi |x|).
  EXPECT_NEAR(riesz_constant(3, 2.0).c, 1.0 / (4 * kPi), 1e-15);
  EXPECT_THROW(riesz_constant(2, 2.0), DomainError);
  EXPECT_THROW(riesz_constant(2, 0.0), DomainError);
}

TEST(Potential, SelfCellIntegral) {
  // 1D: int_{-h/2}^{h/2} |y|^{alpha-1} dy = 2 (h/2)^alpha / alpha.
  EXPECT_NEAR(self_cell_integral(1, 0.5, 0.1), 2 * std::pow(0.05, 0.5) / 0.5, 1e-12);
  // Homogeneity of degree alpha.
  const double a = self_cell_integral(2, 1.0, 0.2), b = self_cell_integral(2, 1.0, 0.1);
  EXPECT_NEAR(a / b, 2.0, 1e-12);
}

TEST(Potential, DiskAtCentre) {
  const GridSpec g = make_grid(2, 1.25, 128, false);
  const SampledFunction f = sample([](const Point& x) { return std::hypot(x[0], x[1]) < 1 ? 1.0 : 0.0; }, g);
  EXPECT_NEAR(riesz_potential_at(f, 1.0, g.ravel({64, 64, 0})), 1.0, 0.01);
}

TEST(Potential, ZeroAndTranslation) {
  const GridSpec g = make_grid(2, 1.0, 32, false);
  for (double v : riesz_potential(zeros(g), 0.7).values) EXPECT_EQ(v, 0.0);
  const SampledFunction f = bump(g, -0.3, -0.2, 0.4);
  const SampledFunction moved = bump(g, -0.3 + 4 * g.spacing(), -0.2 + 2 * g.spacing(), 0.4);
  const SampledFunction a = riesz_potential(f, 0.7), b = riesz_potential(moved, 0.7);
  for (int i = 0; i < 28; ++i) {
    for (int j = 0; j < 30; ++j) {
      EXPECT_NEAR(b.values[g.ravel({i + 4, j + 2, 0})], a.values[g.ravel({i, j, 0})], 1e-10);
    }
  }
}

// Midpoint and cell-integrated near fields differ at first order in h.
TEST(Potential, MethodsAgreeOnSmoothData) {
  auto gap = [](int m) {
    const GridSpec g = make_grid(2, 1.0, m, false);
    const SampledFunction f = bump(g, 0.1, -0.1, 0.6);
    const SampledFunction a = riesz_potential(f, 1.0);
    const SampledFunction b = riesz_potential(f, 1.0, {RieszMethod::hedberg_split, 0.0});
    EXPECT_NEAR(riesz_potential_at(f, 1.0, 300), a.values[300], 1e-12);
    return max_diff(a, b) / a.max_abs();
  };
  const double coarse = gap(32), fine = gap(64);
  EXPECT_LE(coarse, 0.01);
  EXPECT_GE(coarse / fine, 1.8);
  EXPECT_THROW(riesz_potential(sample([](const Point&) { return 1.0; }, torus()), 1.0), DomainError);
}

TEST(Spectral, RieszTransformSingleModes) {
  const GridSpec g = torus();
  EXPECT_LE(max_diff(riesz_transform_spectral(wave(g, 1, 0), 1), scaled(wave(g, 1, 0, true), -1)), 1e-12);
  EXPECT_LE(max_diff(riesz_transform_spectral(wave(g, 3, 4), 1), scaled(wave(g, 3, 4, true), -0.6)), 1e-12);
  EXPECT_THROW(riesz_transform_spectral(wave(g, 1, 0), 3), DomainError);
}

TEST(Spectral, RieszTransformsSquareToMinusOne) {
  std::mt19937 rng(11);
  std::normal_distribution<double> nd;
  const GridSpec g = torus();
  SampledFunction f = zeros(g);
  for (auto& v : f.values) v = nd(rng);
  f = subtract_mean(truncate_two_thirds(f));
  SampledFunction sum = zeros(g);
  for (int j : {1, 2}) {
    const SampledFunction s = riesz_transform_spectral(riesz_transform_spectral(f, j), j);
    for (std::size_t i = 0; i < f.size(); ++i) sum.values[i] += s.values[i];
  }
  EXPECT_LE(max_diff(sum, scaled(f, -1)), 1e-10);
}

// Box 4x the support; the torus images show up near the box edge, so the
// comparison runs over the inner half.
TEST(Spectral, PrincipalValueMatchesSymbol) {
  const GridSpec per = make_grid(2, 2.0, 512, true);
  GridSpec open = per;
  open.periodic = false;
  const SampledFunction fp = bump(per, 0.0, 0.0, 0.5);
  SampledFunction fo = fp;
  fo.grid = open;
  const SampledFunction a = riesz_transform(fp, 1, TransformMethod::spectral);
  const SampledFunction b = riesz_transform(fo, 1, TransformMethod::pv_quadrature);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Index ix = per.unravel(i);
    if (std::abs(per.coord(ix[0])) <= 1.0 && std::abs(per.coord(ix[1])) <= 1.0) {
      worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    }
  }
  EXPECT_LE(worst, 0.02 * a.max_abs());
}

TEST(Spectral, DoubleLayerExamples) {
  const GridSpec g = torus();
  const SpectralField d = single_layer_D(wave(g, 1, 0), {1.0});
  EXPECT_LE(max_diff(d.materialize(0), scaled(wave(g, 1, 0), std::exp(-2 * kPi))), 1e-15);
  EXPECT_NEAR(std::exp(-2 * kPi), 1.8674e-3, 1e-7);
  const SampledFunction one = sample([](const Point&) { return 1.0; }, g);
  for (double v : single_layer_D(one, {0.3}).materialize(0).values) EXPECT_NEAR(v, 1.0, 1e-14);
  EXPECT_THROW(single_layer_D(one, {0.0}), DomainError);
  // x_n -> 0+ recovers f.
  const SampledFunction f = subtract_mean(wave(g, 2, 1));
  EXPECT_LE(max_diff(single_layer_D(f, {1e-9}).materialize(0), f), 1e-7);
}

TEST(Spectral, NeumannLayerExamples) {
  const GridSpec g = torus();
  const SampledFunction f = wave(g, 1, 0);
  EXPECT_LE(max_diff(boundary_trace_N(f), scaled(f, 1 / (2 * kPi))), 1e-15);
  EXPECT_LE(max_diff(neumann_data_of_N(f), f), 1e-14);
  const SampledFunction shifted = sample([](const Point& x) { return 0.5 + std::cos(2 * kPi * x[0]); }, g);
  try {
    neumann_layer_N(shifted, {0.0});
    FAIL() << "expected a DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("mean"), std::string::npos) << e.what();
  }
  EXPECT_LE(max_diff(boundary_trace_N(shifted, ZeroModePolicy::drop), boundary_trace_N(f)), 1e-14);
  for (double v : boundary_trace_N(zeros(g)).values) EXPECT_EQ(v, 0.0);
}

TEST(Spectral, TangentialGradientOfN) {
  const GridSpec g = torus();
  const double t = 0.15;
  const auto grad = grad_N(wave(g, 1, 0), {t});
  ASSERT_EQ(grad.size(), 3u);
  EXPECT_LE(max_diff(grad[0].materialize(0), scaled(wave(g, 1, 0, true), -std::exp(-2 * kPi * t))), 1e-14);
  EXPECT_LE(grad[1].materialize(0).max_abs(), 1e-14);
  EXPECT_LE(max_diff(grad[2].materialize(0), scaled(wave(g, 1, 0), -std::exp(-2 * kPi * t))), 1e-14);
  EXPECT_LE(grad[0].hermitian_defect(), 1e-14);
}

TEST(FreeSpace, UniformDiskOracle) {
  // N chi_{|y|<a} on the axis: sqrt(a^2 + t^2) - t.
  const double a = 0.5;
  const GridSpec g = make_grid(2, 1.0, 128, false);
  const SampledFunction f = sample([=](const Point& x) { return std::hypot(x[0], x[1]) < a ? 1.0 : 0.0; }, g);
  const FreeSpaceNeumann layer(g);
  const std::size_t c = g.ravel({64, 64, 0});
  for (double t : {0.0, 0.1, 0.4}) {
    EXPECT_NEAR(layer.at_height(f, t).values[c], std::sqrt(a * a + t * t) - t, 0.01) << t;
  }
  const auto grad = layer.gradient(f, 0.1);
  EXPECT_NEAR(grad[2].values[c], 0.1 / std::sqrt(a * a + 0.01) - 1.0, 0.01);
  EXPECT_NEAR(grad[0].values[c], 0.0, 1e-12);
}

TEST(FreeSpace, TraceIsTheBoundaryPotential) {
  const GridSpec g = make_grid(2, 2.0, 64, false);
  const SampledFunction f = bump(g, 0.2, -0.1, 0.5);
  const FreeSpaceNeumann layer(g);
  const SampledFunction a = layer.trace(f), b = riesz_potential(f, 1.0);
  EXPECT_LE(max_diff(a, b), 0.03 * b.max_abs());
  for (double v : layer.at_height(f, 0.2).values) EXPECT_GT(v, 0.0);
  EXPECT_THROW(layer.at_height(f, -0.1), DomainError);
}
