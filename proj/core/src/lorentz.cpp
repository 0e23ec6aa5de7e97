#include "morlab/lorentz.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

namespace morlab {

void validate(const LorentzParams& params) {
  if (!(params.p >= 1.0)) {
    throw DomainError("Lorentz exponent p must satisfy p >= 1, got p = " +
                      std::to_string(params.p));
  }
  if (!(params.d >= 1.0)) {
    throw DomainError("Lorentz exponent d must satisfy d >= 1, got d = " +
                      std::to_string(params.d));
  }
  if (std::isinf(params.p) && !std::isinf(params.d)) {
    throw DomainError("L^{inf,d} = {0} for d < inf: p = inf requires d = inf");
  }
}

double StepFunction::operator()(double x) const {
  if (levels.empty() || x < breakpoints.front() || x >= breakpoints.back()) {
    return 0.0;
  }
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  return levels[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

namespace {

// Distinct positive levels of |f| in decreasing order with the measure of
// {|f| >= level}.
struct LevelGroups {
  std::vector<double> level;
  std::vector<double> measure;
};

LevelGroups group_levels(const std::vector<double>& sorted, double w) {
  LevelGroups g;
  std::size_t i = 0;
  while (i < sorted.size() && sorted[i] > 0.0) {
    const double v = sorted[i];
    while (i < sorted.size() && sorted[i] == v) ++i;
    g.level.push_back(v);
    g.measure.push_back(static_cast<double>(i) * w);
  }
  return g;
}

// t_hi^e - t_lo^e for t = i*w, accurate when i is large.
double power_increment(std::size_t i, double w, double e) {
  const double hi = std::pow(static_cast<double>(i) * w, e);
  if (i == 1) return hi;
  return -hi * std::expm1(e * std::log1p(-1.0 / static_cast<double>(i)));
}

constexpr std::array<double, 8> kGaussNodes{
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
    0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGaussWeights{
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

// int_{t0}^{t1} t^{e-1} (v + a/t)^d dt for t0 > 0, in log variables on
// pieces whose end ratio is at most 2.
double natural_segment(double t0, double t1, double v, double a, double e,
                       double d) {
  if (a == 0.0) return std::pow(v, d) * (std::pow(t1, e) - std::pow(t0, e)) / e;
  if (v == 0.0) {
    return std::pow(a, d) * (std::pow(t1, e - d) - std::pow(t0, e - d)) /
           (e - d);
  }
  const double u0 = std::log(t0), u1 = std::log(t1);
  const int pieces = std::max(1, static_cast<int>(std::ceil((u1 - u0) / std::log(2.0))));
  const double du = (u1 - u0) / pieces;
  double total = 0.0;
  for (int k = 0; k < pieces; ++k) {
    const double mid = u0 + (k + 0.5) * du;
    double s = 0.0;
    for (std::size_t q = 0; q < kGaussNodes.size(); ++q) {
      const double u = mid + 0.5 * du * kGaussNodes[q];
      const double t = std::exp(u);
      s += kGaussWeights[q] * std::pow(t, e) * std::pow(v + a / t, d);
    }
    total += 0.5 * du * s;
  }
  return total;
}

}  // namespace

Rearrangement::Rearrangement(std::span<const double> values, double weight)
    : sorted_(values.size()), weight_(weight) {
  std::transform(values.begin(), values.end(), sorted_.begin(),
                 [](double x) { return std::abs(x); });
  std::sort(sorted_.begin(), sorted_.end(), std::greater<>());
}

Rearrangement::Rearrangement(const SampledFunction& f)
    : Rearrangement(std::span<const double>(f.values), f.weight) {}

double Rearrangement::l1() const {
  double s = 0.0;
  for (double v : sorted_) s += v;
  return s * weight_;
}

double Rearrangement::weak_quasinorm(double p) const {
  if (sorted_.empty() || sorted_.front() == 0.0) return 0.0;
  if (std::isinf(p)) return sorted_.front();
  double best = 0.0;
  const double inv_p = 1.0 / p;
  for (std::size_t i = 0; i < sorted_.size() && sorted_[i] > 0.0; ++i) {
    // Only the last index of a tie run can attain the supremum.
    if (i + 1 < sorted_.size() && sorted_[i + 1] == sorted_[i]) continue;
    best = std::max(best, std::pow(static_cast<double>(i + 1) * weight_, inv_p) *
                              sorted_[i]);
  }
  return best;
}

double Rearrangement::quasinorm(const LorentzParams& params) const {
  validate(params);
  if (std::isinf(params.d)) return weak_quasinorm(params.p);
  const double d = params.d, e = params.d / params.p;
  double s = 0.0;
  for (std::size_t i = 0; i < sorted_.size() && sorted_[i] > 0.0; ++i) {
    s += std::pow(sorted_[i], d) * power_increment(i + 1, weight_, e);
  }
  return std::pow(s, 1.0 / d);
}

double Rearrangement::quasinorm_via_distribution(
    const LorentzParams& params) const {
  validate(params);
  const LevelGroups g = group_levels(sorted_, weight_);
  if (g.level.empty()) return 0.0;
  if (std::isinf(params.d)) {
    if (std::isinf(params.p)) return g.level.front();
    double best = 0.0;
    for (std::size_t j = 0; j < g.level.size(); ++j) {
      best = std::max(best, g.level[j] * std::pow(g.measure[j], 1.0 / params.p));
    }
    return best;
  }
  const double d = params.d, e = params.d / params.p;
  // d * int s^{d-1} d_f(s)^{d/p} ds with d_f = measure[j] on
  // [level[j+1], level[j]).
  double s = 0.0;
  for (std::size_t j = 0; j < g.level.size(); ++j) {
    const double below = j + 1 < g.level.size() ? g.level[j + 1] : 0.0;
    s += std::pow(g.measure[j], e) * (std::pow(g.level[j], d) - std::pow(below, d));
  }
  return std::pow(s, 1.0 / d);
}

double Rearrangement::natural_norm(const LorentzParams& params) const {
  validate(params);
  if (!(params.p > 1.0)) {
    throw DomainError("the natural Lorentz norm requires p > 1, got p = " +
                      std::to_string(params.p));
  }
  if (sorted_.empty() || sorted_.front() == 0.0) return 0.0;
  const double w = weight_;
  const bool weak = std::isinf(params.d);
  if (weak && std::isinf(params.p)) return sorted_.front();
  const double p = params.p, d = params.d;
  const double e = weak ? 0.0 : d / p;

  double acc = 0.0;      // running integral of f* up to t0
  double result = 0.0;   // sup (weak) or integral (strong)
  std::size_t i = 0;
  const std::size_t n = sorted_.size();
  while (i < n) {
    const double v = sorted_[i];
    std::size_t j = i;
    while (j < n && sorted_[j] == v) ++j;
    const double t0 = static_cast<double>(i) * w;
    const double t1 = static_cast<double>(j) * w;
    // On [t0, t1]: f_natural(t) = v + a/t.
    const double a = acc - v * t0;
    if (weak) {
      // t^{1/p}(v + a/t) has no interior maximum, so the endpoints suffice.
      auto val = [&](double t) { return std::pow(t, 1.0 / p) * (v + a / t); };
      double best = val(t1);
      if (t0 > 0.0) best = std::max(best, val(t0));
      result = std::max(result, best);
    } else if (t0 == 0.0) {
      result += std::pow(v, d) * std::pow(t1, e) / e;
    } else {
      result += natural_segment(t0, t1, v, a, e, d);
    }
    acc += v * (t1 - t0);
    i = j;
  }
  if (weak) return result;
  return std::pow(result * d / p, 1.0 / d);
}

StepFunction distribution_function(const SampledFunction& f) {
  const Rearrangement r(f);
  const LevelGroups g = group_levels(r.sorted(), r.weight());
  StepFunction out;
  out.breakpoints.push_back(0.0);
  for (std::size_t k = g.level.size(); k-- > 0;) {
    out.levels.push_back(g.measure[k]);
    out.breakpoints.push_back(g.level[k]);
  }
  return out;
}

StepFunction decreasing_rearrangement(const SampledFunction& f) {
  const Rearrangement r(f);
  const LevelGroups g = group_levels(r.sorted(), r.weight());
  StepFunction out;
  out.breakpoints.push_back(0.0);
  for (std::size_t k = 0; k < g.level.size(); ++k) {
    out.levels.push_back(g.level[k]);
    out.breakpoints.push_back(g.measure[k]);
  }
  return out;
}

double lorentz_quasinorm(const SampledFunction& f, const LorentzParams& params) {
  return Rearrangement(f).quasinorm(params);
}

double lorentz_quasinorm(std::span<const double> values, double weight,
                         const LorentzParams& params) {
  return Rearrangement(values, weight).quasinorm(params);
}

double lorentz_norm_natural(const SampledFunction& f,
                            const LorentzParams& params) {
  return Rearrangement(f).natural_norm(params);
}

namespace {

double inv(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }

}  // namespace

void validate(const HolderExponents& e) {
  for (double x : {e.p1, e.p2, e.z1, e.z2, e.s}) {
    if (!(x >= 1.0)) {
      throw DomainError("Hoelder exponents p1, p2, z1, z2, s must be >= 1");
    }
  }
  if (!(e.r > 1.0)) {
    throw DomainError("Hoelder relation r > 1 violated (r = " +
                      std::to_string(e.r) + ")");
  }
  if (std::abs(inv(e.r) - inv(e.p1) - inv(e.p2)) > 1e-12) {
    throw DomainError("Hoelder relation 1/r = 1/p1 + 1/p2 violated");
  }
  if (inv(e.z1) + inv(e.z2) < inv(e.s) - 1e-12) {
    throw DomainError("Hoelder relation 1/z1 + 1/z2 >= 1/s violated");
  }
}

HolderResult holder_check(const SampledFunction& f, const SampledFunction& g,
                          const HolderExponents& e) {
  validate(e);
  if (!(f.grid == g.grid)) throw DomainError("holder_check: grids differ");
  std::vector<double> fg(f.size());
  for (std::size_t i = 0; i < fg.size(); ++i) fg[i] = f.values[i] * g.values[i];
  const double lhs = Rearrangement(fg, f.weight).quasinorm({e.r, e.s});
  const double nf = Rearrangement(f).quasinorm({e.p1, e.z1});
  const double ng = Rearrangement(g).quasinorm({e.p2, e.z2});
  const double c = std::isinf(e.r) ? 1.0 : e.r / (e.r - 1.0);
  const double rhs = c * nf * ng;
  return {lhs, rhs, lhs <= rhs * (1.0 + 1e-9)};
}

double embedding_lhs(std::span<const double> values, double weight, double p) {
  double s = 0.0;
  for (double v : values) s += std::abs(v);
  const double measure = weight * static_cast<double>(values.size());
  return std::pow(measure, 1.0 / p - 1.0) * s * weight;
}

double embedding_constant(double p, double k) {
  if (!(p > 1.0)) throw DomainError("embedding requires p > 1");
  if (!(k >= 1.0)) throw DomainError("embedding requires k >= 1");
  const double inv_kprime = 1.0 - inv(k);
  return std::pow(p / (p - 1.0), inv_kprime);
}

}  // namespace morlab
