#include "tauber/statlimit.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tauber/error.hpp"
#include "tauber/expr.hpp"

namespace tauber {

namespace {

constexpr int kMinGrid = 32;
constexpr int kGridPerLog = 64;
constexpr int kMaxRefinements = 3;
constexpr double kRootRelTol = 1e-12;
constexpr std::size_t kMonteCarloSamples = 1000000;
constexpr std::size_t kTailSamples = 10000;

struct Level {
  double ell_re, ell_im, eps2;
  const Function& s;
  bool positive(double x) const {
    const Value v = s.eval(x);
    const double dr = v.real() - ell_re, di = v.imag() - ell_im;
    return dr * dr + di * di > eps2;
  }
};

// Grid on [p, q) uniform in log x; the last node sits just below q.
std::vector<double> segment_grid(double p, double q, std::size_t n) {
  const double up = std::log(p), uq = std::log(q);
  const double last = std::nextafter(q, p);
  std::vector<double> xs(n + 1);
  xs[0] = p;
  for (std::size_t i = 1; i < n; ++i) xs[i] = std::clamp(std::exp(up + (uq - up) * i / n), p, last);
  xs[n] = last;
  return xs;
}

std::size_t sign_changes(const std::vector<char>& signs) {
  std::size_t c = 0;
  for (std::size_t i = 1; i < signs.size(); ++i) c += signs[i] != signs[i - 1];
  return c;
}

double bisect_root(const Level& g, double lo, double hi, bool lo_sign) {
  while (hi - lo > kRootRelTol * hi) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    if (g.positive(mid) == lo_sign) lo = mid;
    else hi = mid;
  }
  return lo + 0.5 * (hi - lo);
}

void append_interval(IntervalSet& set, double lo, double hi) {
  if (!(hi > lo)) return;
  if (!set.empty() && set.back().second >= lo) set.back().second = std::max(set.back().second, hi);
  else set.emplace_back(lo, hi);
}

// Positive part of g on [p, q).
void isolate_segment(const Level& g, double p, double q, ExceptionalSet& out) {
  if (auto c = g.s.constant_near(p + 0.5 * (q - p))) {
    const double dr = c->real() - g.ell_re, di = c->imag() - g.ell_im;
    if (dr * dr + di * di > g.eps2) append_interval(out.intervals, p, q);
    return;
  }
  const double du = std::log(q) - std::log(p);
  std::size_t n = static_cast<std::size_t>(std::max<double>(kMinGrid, std::ceil(kGridPerLog * du)));
  auto sample = [&](std::size_t m) {
    auto xs = segment_grid(p, q, m);
    std::vector<char> signs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) signs[i] = g.positive(xs[i]);
    return std::make_pair(std::move(xs), std::move(signs));
  };
  auto coarse = sample(n);
  auto fine = sample(2 * n);
  bool resolved = sign_changes(coarse.second) == sign_changes(fine.second);
  for (int r = 0; r < kMaxRefinements && !resolved; ++r) {
    n *= 2;
    coarse = std::move(fine);
    fine = sample(2 * n);
    resolved = sign_changes(coarse.second) == sign_changes(fine.second);
  }
  const auto& [xs, signs] = fine;
  double run_start = signs[0] ? p : 0.0;
  bool in_run = signs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (signs[i] == signs[i - 1]) continue;
    const double root = bisect_root(g, xs[i - 1], xs[i], signs[i - 1]);
    if (signs[i]) {
      run_start = root;
      in_run = true;
    } else {
      append_interval(out.intervals, run_start, root);
      in_run = false;
    }
  }
  if (in_run) append_interval(out.intervals, run_start, q);
  if (!resolved) {
    out.exact = false;
    out.unresolved.emplace_back(p, q);
  }
}

}  // namespace

ExceptionalSet exceptional_set(const Function& s, Value ell, double eps, double b, double a) {
  if (!(eps > 0)) throw PreconditionError("eps must be positive");
  if (!(a >= 1.0) || !(b > a)) throw PreconditionError("exceptional set needs 1 <= a < b");
  if (std::log(b) > s.log_availability())
    throw HorizonError(s.name() + ": horizon exceeds the represented range");
  const Level g{ell.real(), ell.imag(), eps * eps, s};
  ExceptionalSet out;
  std::vector<double> pts{a};
  for (double p : s.breakpoints(a, b)) pts.push_back(p);
  pts.push_back(b);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) isolate_segment(g, pts[i], pts[i + 1], out);
  return out;
}

double measure_within(const IntervalSet& set, double lo, double hi) {
  double m = 0.0;
  for (const auto& [l, h] : set) {
    if (l >= hi) break;
    const double a = std::max(l, lo), b = std::min(h, hi);
    if (b > a) m += b - a;
  }
  return m;
}

MeasureResult exceptional_measure(const Function& s, Value ell, double eps, double b, double a) {
  const ExceptionalSet set = exceptional_set(s, ell, eps, b, a);
  MeasureResult r;
  r.measure = measure_within(set.intervals, a, b);
  r.exact = set.exact;
  r.lo = r.hi = r.measure;
  if (set.exact) return r;
  for (const auto& [p, q] : set.unresolved) {
    const double inside = measure_within(set.intervals, p, q);
    r.lo -= inside;
    r.hi += (q - p) - inside;
  }
  const Level g{ell.real(), ell.imag(), eps * eps, s};
  std::mt19937_64 rng(0x5eedULL);
  const double width = (b - a) / kMonteCarloSamples;
  std::size_t hits = 0;
  for (std::size_t j = 0; j < kMonteCarloSamples; ++j) {
    const double x = std::min(a + (j + static_cast<double>(rng() >> 11) * 0x1.0p-53) * width, std::nextafter(b, a));
    hits += g.positive(x);
  }
  const double frac = static_cast<double>(hits) / kMonteCarloSamples;
  r.monte_carlo = frac * (b - a);
  r.monte_carlo_radius = 3.0 * std::sqrt(frac * (1 - frac) / kMonteCarloSamples) * (b - a);
  return r;
}

std::string DensityProfile::to_csv() const {
  std::string out = "eps,b,measure,density\n";
  for (std::size_t i = 0; i < epsilons.size(); ++i)
    for (std::size_t j = 0; j < horizons.size(); ++j)
      out += format_number(epsilons[i]) + "," + format_number(horizons[j]) + "," + format_number(measure[i][j]) +
             "," + format_number(density[i][j]) + "\n";
  return out;
}

DensityProfile density_profile(const Function& s, Value ell, const std::vector<double>& epsilons,
                               const std::vector<double>& horizons) {
  if (epsilons.empty() || horizons.empty()) throw PreconditionError("density profile needs epsilons and horizons");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0)) throw PreconditionError("epsilons must be positive");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) throw PreconditionError("epsilons must be decreasing");
  }
  for (std::size_t j = 0; j < horizons.size(); ++j) {
    if (!(horizons[j] > 1.0)) throw PreconditionError("horizons must exceed 1");
    if (j > 0 && !(horizons[j] > horizons[j - 1])) throw PreconditionError("horizons must be increasing");
  }
  DensityProfile p;
  p.ell = ell;
  p.epsilons = epsilons;
  p.horizons = horizons;
  p.measure.assign(epsilons.size(), std::vector<double>(horizons.size()));
  p.density = p.measure;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    const ExceptionalSet set = exceptional_set(s, ell, epsilons[i], horizons.back());
    p.exact = p.exact && set.exact;
    for (std::size_t j = 0; j < horizons.size(); ++j) {
      p.measure[i][j] = measure_within(set.intervals, 1.0, horizons[j]);
      p.density[i][j] = std::clamp(p.measure[i][j] / (horizons[j] - 1.0), 0.0, 1.0);
    }
  }
  return p;
}

std::string to_string(LimitKind kind) {
  switch (kind) {
    case LimitKind::none: return "none";
    case LimitKind::statistical: return "statistical";
    case LimitKind::ordinary: return "ordinary";
    case LimitKind::inconclusive: return "inconclusive";
  }
  return "none";
}

std::vector<double> usable_horizons(const Function& s, std::vector<double> horizons) {
  const double avail = represented_limit(s);
  for (double& h : horizons) {
    if (!(h > 1.0)) throw PreconditionError("horizons must exceed 1");
    h = std::min(h, avail);
  }
  std::sort(horizons.begin(), horizons.end());
  horizons.erase(std::unique(horizons.begin(), horizons.end()), horizons.end());
  if (horizons.size() < 3) throw PreconditionError("need at least 3 distinct horizons within the represented range");
  if (horizons.back() / horizons.front() < 100.0) throw PreconditionError("horizons must span at least 2 decades");
  return horizons;
}

namespace {

std::vector<Value> tail_samples(const Function& s, double lo, double hi, bool with_breakpoints) {
  const double ulo = std::log(lo), uhi = std::log(hi);
  const double last = std::nextafter(hi, lo);
  std::vector<Value> out;
  out.reserve(kTailSamples);
  for (std::size_t i = 0; i < kTailSamples; ++i) {
    double x = std::exp(ulo + (uhi - ulo) * i / (kTailSamples - 1));
    out.push_back(s.eval(std::clamp(x, lo, last)));
  }
  if (with_breakpoints) {
    for (double p : s.breakpoints(lo, hi)) {
      out.push_back(s.eval(p));
      out.push_back(s.eval(std::nextafter(p, lo)));
    }
  }
  return out;
}

double median(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double upper = v[mid];
  return 0.5 * (upper + *std::max_element(v.begin(), v.begin() + mid));
}

}  // namespace

LimitVerdict detect_ordinary_limit(const Function& s, const std::vector<double>& horizons, double tol) {
  LimitVerdict v;
  v.evidence.horizons = usable_horizons(s, horizons);
  const auto& h = v.evidence.horizons;
  v.evidence.tail_lo = h[h.size() - 2];
  v.evidence.tail_hi = h.back();
  const auto samples = tail_samples(s, v.evidence.tail_lo, v.evidence.tail_hi, true);
  double rmin = samples[0].real(), rmax = rmin, imin = samples[0].imag(), imax = imin;
  for (const Value& z : samples) {
    rmin = std::min(rmin, z.real());
    rmax = std::max(rmax, z.real());
    imin = std::min(imin, z.imag());
    imax = std::max(imax, z.imag());
  }
  const double osc = std::hypot(rmax - rmin, imax - imin);
  v.evidence.oscillation = osc;
  v.evidence.tail_min = {rmin, imin};
  v.evidence.tail_max = {rmax, imax};
  v.ell = {0.5 * (rmin + rmax), 0.5 * (imin + imax)};
  if (osc < tol) {
    v.kind = LimitKind::ordinary;
  } else if (osc <= 2 * tol) {
    v.kind = LimitKind::inconclusive;
    v.note = "tail oscillation within [tol, 2 tol]";
  } else {
    v.kind = LimitKind::none;
  }
  return v;
}

LimitVerdict detect_statistical_limit(const Function& s, const std::vector<double>& horizons,
                                      const std::vector<double>& epsilons, const StatOptions& opts) {
  LimitVerdict v;
  v.evidence.horizons = usable_horizons(s, horizons);
  const auto& h = v.evidence.horizons;
  v.evidence.tail_lo = h[h.size() - 2];
  v.evidence.tail_hi = h.back();
  const auto samples = tail_samples(s, v.evidence.tail_lo, v.evidence.tail_hi, false);
  std::vector<double> re(samples.size()), im(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    re[i] = samples[i].real();
    im[i] = samples[i].imag();
  }
  v.ell = {median(re), s.is_complex() ? median(im) : 0.0};

  const DensityProfile profile = density_profile(s, v.ell, epsilons, h);
  v.evidence.profile = profile;
  const std::size_t k = h.size();
  bool decayed = true, monotone = true;
  for (const auto& row : profile.density) {
    decayed = decayed && row[k - 1] < opts.decay_threshold;
    for (std::size_t j = k - 2; j < k; ++j) monotone = monotone && row[j] <= row[j - 1] + opts.monotone_slack;
  }
  if (!decayed) {
    v.kind = LimitKind::none;
    v.note = "density at the last horizon is at or above the decay threshold";
    return v;
  }
  if (!monotone) {
    v.kind = LimitKind::inconclusive;
    v.note = "densities increase across the last three horizons";
    return v;
  }
  v.kind = LimitKind::statistical;
  if (!profile.exact) v.note = "root isolation was inexact on some segment";

  const LimitVerdict ord = detect_ordinary_limit(s, h, opts.ordinary_tol);
  v.evidence.oscillation = ord.evidence.oscillation;
  v.evidence.tail_min = ord.evidence.tail_min;
  v.evidence.tail_max = ord.evidence.tail_max;
  if (ord.kind == LimitKind::ordinary && std::abs(ord.ell - v.ell) <= opts.ordinary_tol) v.kind = LimitKind::ordinary;
  return v;
}

}  // namespace tauber
