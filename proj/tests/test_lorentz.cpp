#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "morlab/corpus.hpp"
#include "morlab/lorentz.hpp"

using namespace morlab;

namespace {

// chi_[0,1) on [-2, 2).
SampledFunction unit_indicator(int m = 64) {
  const GridSpec g = make_grid(1, 2.0, m, false);
  return sample([](const Point& x) { return x[0] >= 0.0 && x[0] < 1.0 ? 1.0 : 0.0; }, g);
}

// t^{-1/2} at the right cell ends t_i = (i + 1) h of (0, 1).
SampledFunction inverse_sqrt(int m) {
  const GridSpec g = make_grid(1, 0.5, m, false);
  const double h = g.spacing();
  return sample([h](const Point& x) { return 1.0 / std::sqrt(x[0] + 0.5 + h); }, g);
}

}  // namespace

TEST(Lorentz, ValidatesExponents) {
  EXPECT_NO_THROW(validate(LorentzParams{2.0, kInf}));
  EXPECT_NO_THROW(validate(LorentzParams{kInf, kInf}));
  EXPECT_THROW(validate(LorentzParams{0.5, 2.0}), DomainError);
  EXPECT_THROW(validate(LorentzParams{2.0, 0.5}), DomainError);
  EXPECT_THROW(validate(LorentzParams{kInf, 3.0}), DomainError);
}

TEST(Lorentz, DistributionOfIndicator) {
  const StepFunction d = distribution_function(unit_indicator());
  EXPECT_DOUBLE_EQ(d(0.0), 1.0);
  EXPECT_DOUBLE_EQ(d(0.999), 1.0);
  EXPECT_DOUBLE_EQ(d(1.0), 0.0);
  EXPECT_DOUBLE_EQ(d(3.0), 0.0);
}

TEST(Lorentz, DistributionOfLinearProfile) {
  const GridSpec g = make_grid(1, 1.0, 512, false);
  const SampledFunction f = sample([](const Point& x) { return x[0] + 1.0; }, g);
  const StepFunction d = distribution_function(f);
  for (double s = 0.05; s < 2.0; s += 0.1) EXPECT_NEAR(d(s), 2.0 - s, g.spacing());
}

TEST(Lorentz, PowerProfileAgainstLevelSets) {
  const int m = 4096;
  const SampledFunction f = inverse_sqrt(m);
  const double h = f.grid.spacing();
  const StepFunction d = distribution_function(f);
  for (double s = 0.5; s < 20.0; s *= 1.37) EXPECT_NEAR(d(s), std::min(1.0, 1.0 / (s * s)), 2 * h);
  const StepFunction r = decreasing_rearrangement(f);
  // f* jumps by O(h^{-1/2}) near t = h, so the sup error is taken from h^{1/3}.
  double worst = 0.0;
  for (double t = std::cbrt(h); t < 1.0; t += 0.37 * h) worst = std::max(worst, std::abs(r(t) - 1.0 / std::sqrt(t)));
  EXPECT_LE(worst, 2 * std::sqrt(h));
}

TEST(Lorentz, RearrangementIsEquimeasurable) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-3, 3);
  const GridSpec g = make_grid(2, 1.0, 16, false);
  SampledFunction f = zeros(g);
  for (auto& v : f.values) v = std::round(u(rng));
  const Rearrangement R(f);
  EXPECT_NEAR(R.l1(), f.abs_integral(), 1e-12);
  EXPECT_DOUBLE_EQ(R.domain_measure(), g.box_volume());
  // Shuffling the ties leaves every norm unchanged.
  SampledFunction s = f;
  std::shuffle(s.values.begin(), s.values.end(), rng);
  for (double p : {1.0, 2.0, 3.5}) {
    for (double d : {1.0, 2.0, kInf}) {
      EXPECT_DOUBLE_EQ(lorentz_quasinorm(s, {p, d}), lorentz_quasinorm(f, {p, d}));
    }
  }
}

TEST(Lorentz, IndicatorHasUnitNorm) {
  const SampledFunction f = unit_indicator();
  for (double p : {1.0, 1.5, 2.0, 4.0}) {
    for (double d : {1.0, 2.0, p, 7.0, kInf}) {
      EXPECT_NEAR(lorentz_quasinorm(f, {p, d}), 1.0, 1e-12) << p << " " << d;
    }
  }
  EXPECT_NEAR(lorentz_quasinorm(f, {kInf, kInf}), 1.0, 1e-15);
}

TEST(Lorentz, WeakNormOfInverseSqrt) {
  const int m = 4096;
  const SampledFunction f = inverse_sqrt(m);
  EXPECT_NEAR(lorentz_quasinorm(f, {2.0, kInf}), 1.0, 3 * std::sqrt(f.grid.spacing()));
}

TEST(Lorentz, DistributionRouteAgrees) {
  std::mt19937 rng(8);
  std::exponential_distribution<double> ex(1.0);
  const GridSpec g = make_grid(1, 1.0, 200, false);
  SampledFunction f = zeros(g);
  for (auto& v : f.values) v = ex(rng);
  const Rearrangement R(f);
  for (double p : {1.0, 1.5, 3.0}) {
    for (double d : {1.0, 2.5, kInf}) {
      const double a = R.quasinorm({p, d}), b = R.quasinorm_via_distribution({p, d});
      EXPECT_NEAR(a, b, 1e-10 * a);
    }
  }
}

TEST(Lorentz, DilationScaling) {
  const GridSpec g = make_grid(1, 1.0, 256, false);
  // Vanishes on the upper half box so it can be stretched by 2.
  const SampledFunction f = sample([](const Point& x) {
    return x[0] < 0.0 ? std::exp(-8 * (x[0] + 0.5) * (x[0] + 0.5)) + 0.2 * (x[0] < -0.6) : 0.0;
  }, g);
  const SampledFunction wide = dilate(f, 0.5);  // f(x/2)
  for (double p : {1.0, 2.0, 3.0}) {
    for (double d : {1.0, 2.0, kInf}) {
      const double ratio = lorentz_quasinorm(wide, {p, d}) / lorentz_quasinorm(f, {p, d});
      EXPECT_NEAR(ratio * std::pow(0.5, 1.0 / p), 1.0, 1e-6);
    }
  }
}

TEST(Lorentz, NaturalNorm) {
  const SampledFunction f = unit_indicator();
  for (double p : {1.5, 2.0, 5.0}) EXPECT_NEAR(lorentz_norm_natural(f, {p, kInf}), 1.0, 1e-12);
  EXPECT_EQ(lorentz_norm_natural(zeros(f.grid), {2.0, 2.0}), 0.0);
  EXPECT_THROW(lorentz_norm_natural(f, {1.0, 2.0}), DomainError);
}

TEST(Lorentz, HolderIndicatorExample) {
  const SampledFunction f = unit_indicator();
  const HolderResult r = holder_check(f, f, {4, 4, 4, 4, 2, 2});
  EXPECT_NEAR(r.lhs, 1.0, 1e-12);
  EXPECT_NEAR(r.rhs, 2.0, 1e-12);
  EXPECT_TRUE(r.pass);
  EXPECT_THROW(holder_check(f, f, {2, kInf, 2, kInf, 1, kInf}), DomainError);
  EXPECT_THROW(holder_check(f, f, {4, 4, 4, 4, 3, 2}), DomainError);
  EXPECT_THROW(holder_check(f, f, {4, 8, 4, 8, 2, 2}), DomainError);
}

TEST(Lorentz, EmbeddingConstant) {
  EXPECT_DOUBLE_EQ(embedding_constant(2.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(embedding_constant(2.0, kInf), 2.0);
  EXPECT_NEAR(embedding_constant(3.0, 2.0), std::sqrt(1.5), 1e-15);
  EXPECT_THROW(embedding_constant(1.0, 2.0), DomainError);
}

// The natural norm is a norm, so a discrete kernel sum obeys Minkowski.
TEST(Lorentz, MinkowskiForSmoothKernel) {
  const GridSpec g = make_grid(1, 1.0, 128, false);
  const SampledFunction f = sample([](const Point& x) { return std::cos(3 * x[0]) * (x[0] > -0.7); }, g);
  const double w = g.cell_volume();
  auto kernel = [](double x, double y) { return std::exp(-4 * (x - y) * (x - y)) * (1 + x * y); };
  for (double p : {1.5, 2.0, 4.0}) {
    for (double d : {1.0, 2.0, kInf}) {
      SampledFunction lhs_f = zeros(g);
      double rhs = 0.0;
      for (std::size_t j = 0; j < g.size(); ++j) {
        SampledFunction kj = zeros(g);
        for (std::size_t i = 0; i < g.size(); ++i) {
          kj.values[i] = kernel(g.coord(i), g.coord(j));
          lhs_f.values[i] += kj.values[i] * f.values[j] * w;
        }
        rhs += lorentz_norm_natural(kj, {p, d}) * std::abs(f.values[j]) * w;
      }
      EXPECT_LE(lorentz_norm_natural(lhs_f, {p, d}), rhs + 1e-8) << p << " " << d;
    }
  }
}

// ||f||_{p d2} <= C ||f||_{p d1} for d1 <= p <= d2; C over the corpus is
// stable under refinement.
TEST(Lorentz, InclusionConstantStable) {
  auto constant = [](int m) {
    double c = 0.0;
    for (const auto& e : build_corpus({2, m, 1.0})) {
      const Rearrangement R(e.f);
      c = std::max(c, R.quasinorm({2.0, 4.0}) / R.quasinorm({2.0, 1.5}));
    }
    return c;
  };
  const double base = constant(64), fine = constant(128);
  EXPECT_LE(base, 1.0 + 1e-12);
  EXPECT_NEAR(fine / base, 1.0, 0.10);
}
