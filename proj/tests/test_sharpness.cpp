#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "morlab/corpus.hpp"
#include "morlab/sharpness.hpp"

using namespace morlab;

namespace {

double mass_in(const SampledFunction& f, const Cube& q) {
  double s = 0.0;
  for (double v : restrict_to(f, q)) s += v;
  return s;
}

}  // namespace

TEST(Sharpness, SolveDelta) {
  EXPECT_NEAR(solve_delta(2.0, 4.0), 0.5, 1e-12);
  EXPECT_NEAR(solve_delta(2.0, 3.0), 0.75, 1e-12);
  const double d = solve_delta(1.7, 5.3);
  EXPECT_LT(std::abs(std::pow(2 / (1 - d), 1 / 5.3) * std::pow(1 - d, 1 / 1.7) - 1.0), 1e-10);
  EXPECT_THROW(solve_delta(4.0, 4.0), DomainError);
  EXPECT_THROW(solve_delta(1.0, 4.0), DomainError);
}

TEST(Sharpness, CantorCountsAndMeasures) {
  const CantorFamily fam = build_cantor(2, 3, 0.5, 7);
  EXPECT_EQ(fam.ratio, 4);
  EXPECT_EQ(fam.side(0), 64);
  EXPECT_EQ(fam.side(3), 1);
  ASSERT_EQ(fam.stages.size(), 4u);
  for (int d = 0; d <= 3; ++d) EXPECT_EQ(fam.stages[d].size(), std::size_t(1) << (2 * d));
  // |E_d ∩ Q_{l,j}| / |Q_{l,j}| = (1 - delta)^{n (d - l)} for every l <= d.
  for (int d = 0; d <= 3; ++d) {
    const SampledFunction e = fam.indicator_E(d);
    for (int l = 0; l <= d; ++l) {
      for (const Cube& q : fam.stages[l]) {
        const double frac = mass_in(e, q) / (double(q.side) * q.side);
        EXPECT_DOUBLE_EQ(frac, std::pow(0.5, 2 * (d - l)));
      }
    }
  }
  // Nesting: each child lies in exactly one parent.
  for (int d = 1; d <= 3; ++d) {
    for (const Cube& c : fam.stages[d]) {
      int parents = 0;
      for (const Cube& q : fam.stages[d - 1]) {
        bool in = true;
        for (int a = 0; a < 2; ++a) in = in && c.lo[a] >= q.lo[a] && c.lo[a] + c.side <= q.lo[a] + q.side;
        parents += in;
      }
      EXPECT_EQ(parents, 1);
    }
  }
  EXPECT_THROW(build_cantor(3, 2, 0.5, 1), DomainError);
  EXPECT_THROW(build_cantor(2, 2, 0.4, 1), DomainError);
}

TEST(Sharpness, SeedsMovePlacementsOnly) {
  const CantorFamily a = build_cantor(2, 3, 0.5, 1, CantorPlacement::random_slot);
  const CantorFamily b = build_cantor(2, 3, 0.5, 2, CantorPlacement::random_slot);
  EXPECT_EQ(a.stages.back().size(), b.stages.back().size());
  EXPECT_DOUBLE_EQ(a.indicator_E(3).integral(), b.indicator_E(3).integral());
  std::set<std::array<int, 3>> pa, pb;
  for (const Cube& q : a.stages.back()) pa.insert(q.lo);
  for (const Cube& q : b.stages.back()) pb.insert(q.lo);
  EXPECT_NE(pa, pb);
  EXPECT_EQ(build_cantor(2, 3, 0.5, 1, CantorPlacement::random_slot).stages.back(), a.stages.back());
}

TEST(Sharpness, IndicatorNormAtMostOne) {
  const CantorFamily fam = build_cantor(2, 3, 0.5, 1);
  for (int d = 0; d <= 3; ++d) {
    const IndicatorNorm v = indicator_norm(fam, d, 2.0, kInf, 8.0);
    EXPECT_NEAR(v.analytic, 1.0, 1e-12);
    EXPECT_LE(v.grid, 1.0 + 1e-9);
    EXPECT_NEAR(v.grid, v.analytic, 0.02);
  }
  // Control: exponents past the ratio condition push the norm above 1.
  EXPECT_GT(indicator_norm(fam, 3, 2.0, kInf, 2.0).analytic, 1.0);
}

TEST(Sharpness, ClosedFormBound) {
  EXPECT_NEAR(closed_form_bound(2, 4, 0.5, 4.0), 60.40, 0.01);
  EXPECT_DOUBLE_EQ(closed_form_bound(2, 1, 0.5, 4.0), 1.0);
}

TEST(Sharpness, MaximalDominatesMinorant) {
  const CantorFamily fam = build_cantor(2, 3, 0.5, 1);
  const MinorantReport rep = maximal_lower_bound(fam, 2.0 / 4.0 + 0.1, 4.0);
  EXPECT_GE(rep.worst_gap, -1e-12);
  EXPECT_THROW(maximal_lower_bound(fam, 0.2, 4.0), DomainError);
  EXPECT_THROW(maximal_lower_bound(fam, 2.0, 4.0), DomainError);
}

TEST(Sharpness, ReportRejectsTheBoundedRegime) {
  try {
    divergence_report(2.0, 4.0, 2.0, 4.0, 1, 2);
    FAIL() << "expected a DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("r/mu > p/lambda"), std::string::npos) << e.what();
  }
}

TEST(Sharpness, ReportRowsShallow) {
  const auto rows = divergence_report(2.0, 4.0, 2.0, 8.0, 1, 2);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_LE(r.g_norm, 1.0 + 1e-9);
    EXPECT_NEAR(r.ratio, r.measured / r.g_norm, 1e-12);
  }
  EXPECT_DOUBLE_EQ(rows[0].lower_bound, 1.0);
}

TEST(Corpus, ListingIsStable) {
  const auto a = build_corpus(), b = build_corpus();
  ASSERT_GE(a.size(), 12u);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_EQ(a[i].hash, b[i].hash);
    EXPECT_EQ(a[i].hash, hash_values(a[i].f.values));
  }
  EXPECT_NO_THROW(verify_manifest(a, kCorpusVersion));
}

TEST(Corpus, LoadByName) {
  const CorpusEntry e = load_corpus_entry("power-tail-λ4");
  EXPECT_EQ(e.family, "power-tail");
  EXPECT_FALSE(e.params.empty());
  EXPECT_TRUE(std::isfinite(e.f.max_abs()));
  EXPECT_THROW(load_corpus_entry("no-such-entry"), CorpusError);
}

TEST(Corpus, ContentChangeWithoutBumpIsAnError) {
  auto entries = build_corpus();
  entries[3].f.values[5] += 1e-6;
  entries[3].hash = hash_values(entries[3].f.values);
  EXPECT_THROW(verify_manifest(entries, kCorpusVersion), CorpusError);
  EXPECT_THROW(build_corpus({}, kCorpusVersion + 1), CorpusError);
  EXPECT_EQ(hash_hex(0x1234), "0000000000001234");
}
