#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "morlab/corpus.hpp"
#include "morlab/morrey.hpp"

using namespace morlab;

namespace {

// chi of [0,1)^2 in cell terms on [-1,1)^2.
SampledFunction quadrant(int m = 16) {
  const GridSpec g = make_grid(2, 1.0, m, false);
  return sample([](const Point& x) { return x[0] >= 0 && x[1] >= 0 ? 1.0 : 0.0; }, g);
}

CubeFamily single(const Cube& q) {
  CubeFamily f;
  f.cubes.push_back(q);
  f.scales.push_back(q.side);
  return f;
}

}  // namespace

TEST(Morrey, ValidatesParams) {
  EXPECT_NO_THROW(validate(MorreyParams{1.0, 1.0, 1.0}));
  EXPECT_THROW(validate(MorreyParams{0.5, 2.0, 3.0}), DomainError);
  EXPECT_THROW(validate(MorreyParams{4.0, 2.0, 3.0}), DomainError);
  EXPECT_THROW(validate(MorreyParams{2.0, 0.5, 3.0}), DomainError);
  EXPECT_THROW(validate(MorreyParams{2.0, 2.0, kInf}), DomainError);
}

TEST(Morrey, IndicatorOfUnitCube) {
  const SampledFunction f = quadrant();
  const CubeFamily fam = enumerate_all_scales(f.grid, 1);
  for (auto [p, kappa, lambda] : {std::tuple{1.0, 1.0, 2.0}, {2.0, 2.0, 4.0}, {1.5, kInf, 3.0}}) {
    const MorreyResult r = morrey_lorentz_norm(f, {p, kappa, lambda}, fam);
    EXPECT_NEAR(r.value, 1.0, 1e-12);
    EXPECT_EQ(r.argmax, (Cube{{8, 8, 0}, 8}));
    EXPECT_NEAR(weak_morrey_norm(f, p, lambda, fam).value, r.value, 1e-12);
  }
  EXPECT_EQ(morrey_lorentz_norm(zeros(f.grid), {2, 2, 4}, fam).value, 0.0);
  EXPECT_THROW(morrey_lorentz_norm(f, {2, 2, 4}, CubeFamily{}), DomainError);
}

TEST(Morrey, PowerTailIsScaleInvariant) {
  // |x|^{-n/lambda}, n = 2, lambda = 4, p = 2 on origin-centred cubes.
  const CorpusEntry e = load_corpus_entry("power-tail-λ4", {2, 128, 1.0});
  const int m = 128;
  std::vector<double> vals;
  for (int s : {128, 64, 32}) {
    const Cube q{{m / 2 - s / 2, m / 2 - s / 2, 0}, s};
    vals.push_back(morrey_lorentz_norm(e.f, {2.0, 2.0, 4.0}, single(q)).value);
  }
  EXPECT_TRUE(std::isfinite(vals[0]));
  EXPECT_NEAR(vals[1] / vals[0], 1.0, 0.05);
  EXPECT_NEAR(vals[2] / vals[0], 1.0, 0.05);
}

TEST(Morrey, WeakBelowStrong) {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> u(0, 1);
  const GridSpec g = make_grid(2, 1.0, 16, false);
  const CubeFamily fam = enumerate_all_scales(g, 1);
  for (int t = 0; t < 20; ++t) {
    SampledFunction f = zeros(g);
    for (auto& v : f.values) v = u(rng) < 0.5 ? 0.0 : std::pow(u(rng), 3) * 5;
    EXPECT_LE(weak_morrey_norm(f, 2.0, 3.0, fam).value,
              morrey_lorentz_norm(f, {2.0, 2.0, 3.0}, fam).value * (1 + 1e-12));
  }
}

// f = sum_k k chi_{I_k}, |I_k| = 2^{-k}: the weak norm sits well below the
// strong one.
TEST(Morrey, WeakStrongGapWitness) {
  const int m = 1024;
  const GridSpec g = make_grid(1, 0.5, m, false);
  SampledFunction f = zeros(g);
  int start = 0;
  for (int k = 1; k <= 8; ++k) {
    const int len = m >> k;
    for (int i = start; i < start + len; ++i) f.values[i] = k;
    start += len;
  }
  const CubeFamily fam = enumerate_all_scales(g, 1);
  const double weak = weak_morrey_norm(f, 2.0, 3.0, fam).value;
  const double strong = morrey_lorentz_norm(f, {2.0, 2.0, 3.0}, fam).value;
  EXPECT_LE(weak, 0.95 * strong);
}

TEST(Morrey, WeakHolder) {
  const SampledFunction f = quadrant();
  const CubeFamily fam = enumerate_all_scales(f.grid, 1);
  const MorreyExponents e1{2, 2, 4}, e2{2, 2, 4}, e3{1, 1, 2};
  const WeakHolderResult r = weak_holder_check(f, f, e1, e2, e3, fam);
  EXPECT_NEAR(r.ratio, 1.0, 1e-12);
  const WeakHolderResult z = weak_holder_check(f, zeros(f.grid), e1, e2, e3, fam);
  EXPECT_EQ(z.lhs, 0.0);
  EXPECT_EQ(z.ratio, 0.0);
  EXPECT_THROW(weak_holder_check(f, f, e1, e2, {1, 1, 3}, fam), DomainError);
  EXPECT_THROW(weak_holder_check(f, f, e1, e2, {1.5, 1, 2}, fam), DomainError);
  EXPECT_THROW(weak_holder_check(f, f, {2, 2, 4}, {2, 2, 4}, {1, 0.5 + 1e-9, 2}, fam), DomainError);
}

TEST(Morrey, WeakHolderConstantStable) {
  auto ratio = [](int m) {
    const auto corpus = build_corpus({2, m, 1.0});
    const CubeFamily fam = enumerate_all_scales(corpus[0].f.grid, 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      for (std::size_t j = i; j < corpus.size(); j += 3) {
        worst = std::max(worst, weak_holder_check(corpus[i].f, corpus[j].f, {2, kInf, 4},
                                                  {4, kInf, 8}, {4.0 / 3, kInf, 8.0 / 3}, fam)
                                    .ratio);
      }
    }
    return worst;
  };
  const double base = ratio(32), fine = ratio(64);
  EXPECT_GT(base, 0.0);
  EXPECT_NEAR(fine / base, 1.0, 0.10);
}

TEST(Morrey, EmbeddingChain) {
  for (const auto& e : build_corpus({2, 32, 1.0})) {
    const CubeFamily fam = enumerate_all_scales(e.f.grid, 1);
    const double omega = 3.0, p = 2.0;
    const double weak = weak_morrey_norm(e.f, p, omega, fam).value;
    const double mid = morrey_lorentz_norm(e.f, {p, p, omega}, fam).value;
    const double top = lorentz_quasinorm(e.f, {omega, omega});
    EXPECT_LE(weak, mid * (1 + 1e-9)) << e.name;
    EXPECT_LE(mid, top * (1 + 1e-9)) << e.name;
  }
}

TEST(Morrey, LargerFamilyNeverLowers) {
  const CorpusEntry e = load_corpus_entry("two-bumps", {2, 64, 1.0});
  const double a = morrey_lorentz_norm(e.f, {2, 2, 4}, enumerate_cubes(e.f.grid, 3, 0)).value;
  const double b = morrey_lorentz_norm(e.f, {2, 2, 4}, enumerate_cubes(e.f.grid, 5, 0)).value;
  const double c = morrey_lorentz_norm(e.f, {2, 2, 4}, enumerate_cubes(e.f.grid, 5, 3)).value;
  EXPECT_LE(a, b);
  EXPECT_LE(b, c);
}

TEST(Morrey, QuasinormAcceptsSmallP) {
  const SampledFunction f = quadrant();
  const CubeFamily fam = enumerate_all_scales(f.grid, 1);
  EXPECT_NEAR(weak_morrey_quasinorm(f, 0.5, 2.0, fam).value, 1.0, 1e-12);
  EXPECT_THROW(weak_morrey_quasinorm(f, 3.0, 2.0, fam), DomainError);
}
