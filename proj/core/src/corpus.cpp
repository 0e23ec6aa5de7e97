#include "morlab/corpus.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "morlab/potential.hpp"
#include "morlab/sharpness.hpp"

namespace morlab {

std::uint64_t hash_values(const std::vector<double>& values) {
  std::uint64_t h = 1469598103934665603ULL;
  char buf[64];
  for (double v : values) {
    const int len = std::snprintf(buf, sizeof buf, "%.12e\n", v);
    for (int i = 0; i < len; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

void check_version(int version) {
  if (version != kCorpusVersion) {
    throw CorpusError("corpus version " + std::to_string(version) +
                      " requested; this build provides version " +
                      std::to_string(kCorpusVersion));
  }
}

double norm(const Point& x, int dim) {
  double s = 0.0;
  for (int a = 0; a < dim; ++a) s += x[a] * x[a];
  return std::sqrt(s);
}

// |x|^{-s} as cell averages at the origin cell, point values elsewhere.
SampledFunction power_tail(const GridSpec& g, double s) {
  const double h = g.spacing();
  SampledFunction f = zeros(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Point x = g.point(i);
    const double r = norm(x, g.dim);
    if (r < 0.5 * h) {
      // int_cell |y|^{-s} = int |y|^{alpha - n} with alpha = n - s.
      f.values[i] = self_cell_integral(g.dim, g.dim - s, h) / g.cell_volume();
    } else {
      f.values[i] = std::pow(r, -s);
    }
  }
  return f;
}

SampledFunction band_limited(const GridSpec& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  auto unit = [&]() { return std::ldexp(static_cast<double>(rng() >> 11), -53); };
  struct Term {
    std::array<int, 3> k;
    double phase, amp;
  };
  std::vector<Term> terms;
  for (int t = 0; t < 8; ++t) {
    Term term{{0, 0, 0}, 2.0 * std::numbers::pi * unit(), unit() - 0.5};
    for (int a = 0; a < g.dim; ++a) term.k[a] = static_cast<int>(rng() % 5) - 2;
    terms.push_back(term);
  }
  const double L = 2.0 * g.half_width;
  return sample([&](const Point& x) {
    double s = 0.0;
    for (const Term& t : terms) {
      double arg = t.phase;
      for (int a = 0; a < g.dim; ++a) arg += 2.0 * std::numbers::pi * t.k[a] * x[a] / L;
      s += t.amp * std::cos(arg);
    }
    return s;
  }, g);
}

// Cantor indicator at the largest depth whose side 4^d divides m, blown up
// by the remaining factor.
SampledFunction cantor(const GridSpec& g, int depth_cap, std::uint64_t seed) {
  const int m = g.points_per_axis;
  int depth = 0, side = 1;
  while (depth < depth_cap && m % (side * 4) == 0) {
    side *= 4;
    ++depth;
  }
  if (depth == 0) return zeros(g);
  const CantorFamily fam = build_cantor(g.dim, depth, 0.5, seed, CantorPlacement::random_slot);
  const SampledFunction e = fam.indicator_E(depth);
  const int blow = m / side;
  SampledFunction f = zeros(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    Index idx = g.unravel(i);
    for (int a = 0; a < g.dim; ++a) idx[a] /= blow;
    f.values[i] = e.values[e.grid.ravel(idx)];
  }
  return f;
}

}  // namespace

std::vector<CorpusEntry> build_corpus(const CorpusSpec& spec, int version) {
  check_version(version);
  if (spec.dim < 1 || spec.dim > 3) throw DomainError("corpus dim must lie in {1,2,3}");
  const GridSpec g = make_grid(spec.dim, spec.half_width, spec.points_per_axis, false);
  const int n = spec.dim;
  const double W = spec.half_width;
  std::vector<CorpusEntry> out;
  auto add = [&](std::string name, std::string family, std::string params,
                 SampledFunction f) {
    CorpusEntry e{std::move(name), std::move(family), std::move(params), std::move(f), 0};
    e.hash = hash_values(e.f.values);
    out.push_back(std::move(e));
  };

  add("indicator-ball", "indicator", "radius 0.5W centred at 0",
      sample([&](const Point& x) { return norm(x, n) < 0.5 * W ? 1.0 : 0.0; }, g));
  add("indicator-cube", "indicator", "[-0.25W, 0.5W)^n",
      sample([&](const Point& x) {
        for (int a = 0; a < n; ++a) {
          if (x[a] < -0.25 * W || x[a] >= 0.5 * W) return 0.0;
        }
        return 1.0;
      }, g));
  add("indicator-annulus", "indicator", "0.3W <= |x| < 0.6W",
      sample([&](const Point& x) {
        const double r = norm(x, n);
        return (r >= 0.3 * W && r < 0.6 * W) ? 1.0 : 0.0;
      }, g));
  for (double s : {0.1, 0.25}) {
    char name[32];
    std::snprintf(name, sizeof name, "gaussian-s%.2f", s);
    add(name, "gaussian", "exp(-|x|^2/(2 sigma^2)), sigma = " + std::to_string(s) + "W",
        sample([&](const Point& x) {
          const double r = norm(x, n) / (s * W);
          return std::exp(-0.5 * r * r);
        }, g));
  }
  for (int lambda : {4, 8}) {
    add("power-tail-λ" + std::to_string(lambda), "power-tail",
        "|x|^{-n/lambda}, lambda = " + std::to_string(lambda) +
            "; exact cell average at the origin",
        power_tail(g, static_cast<double>(n) / lambda));
  }
  for (unsigned seed : {1u, 2u}) {
    add("band-limited-s" + std::to_string(seed), "band-limited",
        "8 cosines, |k_a| <= 2, seed " + std::to_string(seed), band_limited(g, seed));
  }
  add("smooth-bump", "bump", "(1 - |x|^2/(0.6W)^2)^3 on |x| < 0.6W",
      sample([&](const Point& x) {
        const double t = 1.0 - std::pow(norm(x, n) / (0.6 * W), 2);
        return t > 0.0 ? t * t * t : 0.0;
      }, g));
  add("two-bumps", "gaussian", "sigma 0.08W at +-0.4W e_1, weights 1 and -0.5",
      sample([&](const Point& x) {
        Point a = x, b = x;
        a[0] -= 0.4 * W;
        b[0] += 0.4 * W;
        const double s = 0.08 * W;
        return std::exp(-0.5 * std::pow(norm(a, n) / s, 2)) -
               0.5 * std::exp(-0.5 * std::pow(norm(b, n) / s, 2));
      }, g));
  add("signed-steps", "indicator", "+1 on x_1 < -0.2W, -2 on x_1 >= 0.4W (|x| < 0.8W)",
      sample([&](const Point& x) {
        if (norm(x, n) >= 0.8 * W) return 0.0;
        if (x[0] < -0.2 * W) return 1.0;
        if (x[0] >= 0.4 * W) return -2.0;
        return 0.0;
      }, g));
  if (n <= 2) {
    for (std::uint64_t seed : {3ULL, 4ULL}) {
      add("cantor-seed" + std::to_string(seed), "cantor",
          "delta 1/2, random slots, depth <= 3, seed " + std::to_string(seed),
          cantor(g, 3, seed));
    }
  }
  return out;
}

CorpusEntry load_corpus_entry(const std::string& name, const CorpusSpec& spec, int version) {
  for (auto& e : build_corpus(spec, version)) {
    if (e.name == name) return std::move(e);
  }
  throw CorpusError("no corpus entry named '" + name + "' in version " +
                    std::to_string(version));
}

const std::vector<ManifestRow>& frozen_manifest(int version) {
  static const std::vector<ManifestRow> v1 = {
#include "corpus_manifest_v1.inc"
  };
  check_version(version);
  return v1;
}

void verify_manifest(const std::vector<CorpusEntry>& entries, int version) {
  const auto& rows = frozen_manifest(version);
  if (rows.size() != entries.size()) {
    throw CorpusError("corpus has " + std::to_string(entries.size()) +
                      " entries but the version " + std::to_string(version) +
                      " manifest lists " + std::to_string(rows.size()) +
                      "; bump the corpus version");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].name != entries[i].name || rows[i].hash != entries[i].hash) {
      throw CorpusError("corpus entry '" + entries[i].name + "' hash " +
                        hash_hex(entries[i].hash) + " differs from the frozen " +
                        hash_hex(rows[i].hash) + " of version " +
                        std::to_string(version) + "; bump the corpus version");
    }
  }
}

}  // namespace morlab
