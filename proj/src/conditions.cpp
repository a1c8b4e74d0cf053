#include <algorithm>
#include <cmath>
#include <functional>

#include "tauber/conditions.hpp"
#include "tauber/error.hpp"

namespace tauber {

namespace {

constexpr int kPointsPerLog = 200;
constexpr int kGoldenIterations = 60;

struct Extremum {
  double value;
  double u;
};

// Minimum of phi over (x0, horizon]: log grid, breakpoints and the points
// just below them, then golden-section refinement on a smooth neighbourhood.
Extremum minimize_over(const Function& f, double x0, double horizon, const std::function<double(double)>& phi) {
  const double u0 = std::log(x0), u1 = std::log(horizon);
  const auto n = static_cast<std::size_t>(std::max<double>(kPointsPerLog, std::ceil(kPointsPerLog * (u1 - u0))));
  std::vector<double> xs;
  xs.reserve(n + 1);
  for (std::size_t k = 1; k < n; ++k) xs.push_back(std::exp(u0 + (u1 - u0) * k / n));
  xs.push_back(horizon);
  for (double p : f.breakpoints(x0, horizon)) {
    xs.push_back(p);
    const double below = std::nextafter(p, 0.0);
    if (below > x0) xs.push_back(below);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  Extremum best{std::numeric_limits<double>::infinity(), 0.0};
  std::size_t bi = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = phi(xs[i]);
    if (v < best.value) {
      best = {v, std::log(xs[i])};
      bi = i;
    }
  }
  const double a = bi > 0 ? xs[bi - 1] : std::nextafter(x0, INFINITY);
  const double b = bi + 1 < xs.size() ? xs[bi + 1] : horizon;
  if (b > a && f.breakpoints(a, b).empty() && !f.constant_near(xs[bi])) {
    constexpr double kInvPhi = 0.6180339887498949;
    double lo = std::log(a), hi = std::log(b);
    auto g = [&](double u) { return phi(std::clamp(std::exp(u), a, b)); };
    double c = hi - kInvPhi * (hi - lo), d = lo + kInvPhi * (hi - lo);
    double fc = g(c), fd = g(d);
    for (int it = 0; it < kGoldenIterations; ++it) {
      if (fc < best.value) best = {fc, c};
      if (fd < best.value) best = {fd, d};
      if (fc < fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - kInvPhi * (hi - lo);
        fc = g(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + kInvPhi * (hi - lo);
        fd = g(d);
      }
    }
  }
  return best;
}

void check_args(const TauberConstant& c, double horizon) {
  if (!(c.C > 0)) throw PreconditionError("condition constant C must be positive");
  if (!(c.x0 >= 1.0)) throw PreconditionError("condition x0 must be >= 1");
  if (!(horizon > c.x0)) throw PreconditionError("horizon must exceed x0");
  if (!(horizon <= 1e300)) throw PreconditionError("horizon must not exceed 1e300");
}

}  // namespace

ConditionReport check_landau(const Function& f, const TauberConstant& c, double horizon) {
  check_args(c, horizon);
  if (f.is_complex()) throw PreconditionError(f.name() + ": the one-sided condition needs a real-valued integrand");
  const auto m = minimize_over(f, c.x0, horizon, [&](double u) { return u * std::log(u) * f.eval(u).real(); });
  ConditionReport r;
  r.condition = "landau";
  r.extremum = m.value;
  r.witness_u = std::exp(m.u);
  r.constant = c;
  r.horizon = horizon;
  r.passed = m.value >= -c.C - kConditionSlack;
  return r;
}

ConditionReport check_hardy(const Function& f, const TauberConstant& c, double horizon, bool u_weighted) {
  check_args(c, horizon);
  const auto m = minimize_over(f, c.x0, horizon, [&](double u) {
    const double w = u_weighted ? u * std::log(u) : std::log(u);
    return -w * std::abs(f.eval(u));
  });
  ConditionReport r;
  r.condition = "hardy";
  r.extremum = -m.value;
  r.witness_u = std::exp(m.u);
  r.constant = c;
  r.horizon = horizon;
  r.u_weighted = u_weighted;
  r.passed = r.extremum <= c.C + kConditionSlack;
  return r;
}

}  // namespace tauber
