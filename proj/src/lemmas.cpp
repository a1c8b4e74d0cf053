#include "tauber/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tauber/error.hpp"
#include "tauber/expr.hpp"
#include "tauber/logmean.hpp"
#include "tauber/quadrature.hpp"

namespace tauber {

namespace {

// c - s(x), or |c - s(x)|.
class Shifted final : public Function {
 public:
  Shifted(const Function& s, Value c, bool absolute)
      : s_(s), c_(c), absolute_(absolute), name_("shift[" + s.name() + "]") {}

  const std::string& name() const override { return name_; }
  bool is_complex() const override { return !absolute_ && s_.is_complex(); }
  Value eval(double x) const override { return apply(s_.eval(x)); }
  Value eval_log(double log_x) const override { return apply(s_.eval_log(log_x)); }
  std::vector<double> breakpoints(double lo, double hi) const override { return s_.breakpoints(lo, hi); }
  std::optional<Value> constant_near(double x) const override {
    if (auto v = s_.constant_near(x)) return apply(*v);
    return std::nullopt;
  }
  double log_availability() const override { return s_.log_availability(); }

 private:
  Value apply(Value v) const {
    const Value d = c_ - v;
    return absolute_ ? Value{std::abs(d)} : d;
  }
  const Function& s_;
  Value c_;
  bool absolute_;
  std::string name_;
};

Value weighted(const Function& f, double a, double b, double abs_tol) {
  QuadOptions opts;
  opts.abs_tol = abs_tol;
  return integrate(f, a, b, Kernel::logarithmic, opts).value;
}

// Uniform in [0, 1) from the top 53 bits; identical on every platform.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void require_window(const Function& s, LemmaReport& r, WindowMode mode, const LemmaOptions& opts) {
  r.window.eps = 1.0;
  r.window_check = check_window(s, r.window, mode, opts.window_log_horizon, opts.density);
  if (!r.window_check.checked || !r.window_check.passed)
    throw PreconditionError(s.name() + ": window (x0 = " + format_number(r.window.x0) + ", lambda = " +
                            format_number(r.window.lambda) + ", eps = 1) is not valid up to e^" +
                            format_number(opts.window_log_horizon) + " (" + to_string(mode) +
                            " modulus " + format_number(r.window_check.value) + ")");
}

LemmaReport verify_pairs(const Function& s, SlowWindow window, const LemmaOptions& opts, int lemma) {
  const bool two_sided = lemma == 2;
  if (!two_sided && s.is_complex()) throw PreconditionError(s.name() + ": lemma 1 needs a real-valued function");
  LemmaReport r;
  r.lemma = lemma;
  r.window = window;
  require_window(s, r, two_sided ? WindowMode::oscillation : WindowMode::decrease, opts);
  const double lambda = window.lambda, log_lambda = std::log(lambda);
  r.B1 = lemma_b1(lambda);
  r.B2 = lemma_b2(lambda, window.x0);
  r.log_t_max = opts.log_t_max;

  const double v_lo = std::log(std::log(window.x0));
  const double cap = std::log(opts.log_t_max);
  if (!(window.x0 > 1.0) || !(cap - log_lambda > v_lo))
    throw PreconditionError("sampling cap e^" + format_number(opts.log_t_max) + " leaves no pair with x0 <= x < t^{1/lambda}");

  std::mt19937_64 rng(opts.seed);
  r.margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < opts.samples; ++k) {
    const double vx = v_lo + (cap - log_lambda - v_lo) * unit(rng);
    const double lo_t = vx + log_lambda;
    const double vt = cap - (cap - lo_t) * unit(rng);  // (lo_t, cap]
    const double ux = std::exp(vx), ut = std::exp(vt);
    const double ratio = std::log(ut / ux);
    if (!(log_lambda < ratio)) {
      ++r.gate_violations;
      continue;
    }
    const Value d = s.eval_log(ut) - s.eval_log(ux);
    const double rhs = r.B1 * ratio;
    const double margin = two_sided ? rhs - std::abs(d) : d.real() + rhs;
    ++r.samples;
    if (margin < r.margin || (margin == r.margin && ux < r.worst.log_x)) {
      r.margin = margin;
      r.worst = {ux, ut};
    }
  }
  if (r.samples > 0) r.worst_chain = build_chain(r.worst.log_t, r.worst.log_x, lambda);
  r.passed = r.samples > 0 && r.margin >= -kLemmaMarginTol;
  return r;
}

LemmaReport verify_integrals(const Function& s, SlowWindow window, const LemmaOptions& opts, int lemma) {
  const bool absolute = lemma == 4;
  if (!absolute && s.is_complex()) throw PreconditionError(s.name() + ": lemma 3 needs a real-valued function");
  if (!(window.x0 > std::exp(1.0))) throw PreconditionError("lemmas 3 and 4 need x0 > e");
  LemmaReport r;
  r.lemma = lemma;
  r.window = window;
  require_window(s, r, absolute ? WindowMode::oscillation : WindowMode::decrease, opts);
  const double lambda = window.lambda;
  r.B1 = lemma_b1(lambda);
  r.B2 = lemma_b2(lambda, window.x0);
  r.log_t_max = opts.log_t_max;
  const double v_lo = std::log(lambda * std::log(window.x0));
  const double cap = std::log(opts.log_t_max);
  if (!(cap > v_lo)) throw PreconditionError("sampling cap leaves no t > x0^lambda");

  r.margin = std::numeric_limits<double>::infinity();
  const std::size_t n = std::max<std::size_t>(opts.t_samples, 1);
  for (std::size_t k = 1; k <= n; ++k) {
    const double vt = v_lo + (cap - v_lo) * static_cast<double>(k) / n;  // (v_lo, cap]
    const double log_t = std::exp(vt);
    const LemmaIntegral li = lemma_integral(s, window.x0, lambda, log_t, absolute, opts.abs_tol);
    const double margin = absolute ? r.B2 - li.lhs : li.lhs + r.B2;
    ++r.samples;
    if (margin < r.margin) {
      r.margin = margin;
      r.worst = {std::log(window.x0), log_t};
      r.lhs = li.lhs;
      r.lower_part = li.lower_part;
      r.upper_part = li.upper_part;
    }
  }
  r.passed = r.margin >= -kLemmaMarginTol;
  return r;
}

}  // namespace

double GeometricChain::q_bound() const { return std::log(log_t0 / log_x) / std::log(lambda); }

GeometricChain build_chain(double log_t, double log_x, double lambda) {
  if (!(lambda > 1.0)) throw PreconditionError("chain needs lambda > 1");
  if (!(log_x > 0.0)) throw PreconditionError("chain needs x > 1");
  if (!(log_x < log_t / lambda)) throw PreconditionError("chain hypothesis violated: x >= t^{1/lambda}");
  GeometricChain c;
  c.log_t0 = log_t;
  c.lambda = lambda;
  c.log_x = log_x;
  c.log_points.push_back(log_t);
  for (int p = 1;; ++p) {
    const double lp = log_t / std::pow(lambda, p);
    c.log_points.push_back(lp);
    if (lp <= log_x) {
      c.q = p - 1;
      break;
    }
  }
  return c;
}

Value telescoping_sum(const Function& s, const GeometricChain& chain) {
  Value sum{};
  for (int p = 1; p <= chain.q; ++p)
    sum += s.eval_log(chain.log_points[p - 1]) - s.eval_log(chain.log_points[p]);
  return sum + (s.eval_log(chain.log_points[chain.q]) - s.eval_log(chain.log_x));
}

double lemma_b1(double lambda) { return 2.0 / std::log(lambda); }

double lemma_b2(double lambda, double x0) {
  return (lemma_b1(lambda) / lambda) * (std::log(lambda) + std::log(std::log(x0)) + 1.0);
}

LemmaReport verify_lemma1(const Function& s, SlowWindow window, const LemmaOptions& opts) {
  return verify_pairs(s, window, opts, 1);
}

LemmaReport verify_lemma2(const Function& s, SlowWindow window, const LemmaOptions& opts) {
  return verify_pairs(s, window, opts, 2);
}

LemmaReport verify_lemma3(const Function& s, SlowWindow window, const LemmaOptions& opts) {
  return verify_integrals(s, window, opts, 3);
}

LemmaReport verify_lemma4(const Function& s, SlowWindow window, const LemmaOptions& opts) {
  return verify_integrals(s, window, opts, 4);
}

LemmaIntegral lemma_integral(const Function& s, double x0, double lambda, double log_t, bool absolute,
                             double abs_tol) {
  if (!(log_t > lambda * std::log(x0))) throw PreconditionError("lemma integral needs t > x0^lambda");
  if (!(log_t < 700.0)) throw PreconditionError("lemma integral needs t below e^700");
  const double t = std::exp(log_t);
  const double split = std::exp(log_t / lambda);
  const Shifted g(s, s.eval(t), absolute);
  LemmaIntegral li;
  li.lower_part = weighted(g, x0, split, 0.5 * abs_tol * log_t).real() / log_t;
  li.upper_part = weighted(g, split, t, 0.5 * abs_tol * log_t).real() / log_t;
  li.lhs = li.lower_part + li.upper_part;
  return li;
}

BnSequence construct_bn(const Function& s, double ell, double eps, double lambda, double x0, int max_n,
                        double loglog_horizon, int density) {
  if (!(eps > 0) || !(lambda > 1.0) || !(x0 > 1.0) || max_n < 1 || density < 1)
    throw PreconditionError("construct_bn needs eps > 0, lambda > 1, x0 > 1, max_n >= 1, density >= 1");
  constexpr double kGuard = 1e-12;
  BnSequence seq;
  seq.ell = ell;
  seq.eps = eps;
  seq.lambda = lambda;
  seq.x0 = x0;
  seq.loglog_horizon = loglog_horizon;
  seq.density = density;

  const double h = 1.0 / density;
  const double log_lambda = std::log(lambda), half = 0.5 * log_lambda;
  const double v_cap = std::min(loglog_horizon, std::log(s.log_availability()));
  auto v_of = [&](long k) { return static_cast<double>(k) * h; };
  auto near = [&](long k, double& value) {
    value = s.eval_log(std::exp(v_of(k))).real();
    return std::abs(value - ell) <= eps;
  };
  auto first_index_above = [&](double v) {
    long k = static_cast<long>(std::floor(v * density)) + 1;
    while (!(v_of(k) > v + kGuard)) ++k;
    return k;
  };

  // b_1: smallest lattice point >= x0
  long k = static_cast<long>(std::ceil(std::log(std::log(x0)) * density));
  double value = 0.0;
  while (v_of(k) <= v_cap && !near(k, value)) ++k;
  if (v_of(k) > v_cap) {
    seq.status = "no b1 found";
    return seq;
  }
  seq.steps.push_back({std::exp(v_of(k)), 1, value, 0.0, 0.0});

  while (static_cast<int>(seq.steps.size()) < max_n) {
    BnStep& cur = seq.steps.back();
    const double vn = std::log(cur.log_b);
    const double u = cur.log_b;
    cur.log_measure_over_b = (lambda - 1.0) * u + std::log1p(-std::exp((std::sqrt(lambda) - lambda) * u));
    cur.measure_over_right_end = -std::expm1((std::sqrt(lambda) - lambda) * u);

    int kind = 1;
    long j = first_index_above(vn + half);
    bool found = false;
    for (; v_of(j) < vn + log_lambda - kGuard && v_of(j) <= v_cap; ++j) {
      if (near(j, value)) {
        found = true;
        break;
      }
    }
    if (!found) {
      kind = 2;
      j = static_cast<long>(std::ceil((vn + log_lambda - kGuard) * density));
      for (; v_of(j) <= v_cap; ++j) {
        if (near(j, value)) {
          found = true;
          break;
        }
      }
    }
    if (!found) {
      seq.status = "horizon exhausted";
      return seq;
    }
    if (kind == 2) seq.n0 = static_cast<int>(seq.steps.size());
    seq.steps.push_back({std::exp(v_of(j)), kind, value, 0.0, 0.0});
  }
  seq.status = "complete";
  return seq;
}

std::optional<std::string> check_bn(const BnSequence& seq) {
  const double root = std::sqrt(seq.lambda);
  for (std::size_t n = 0; n < seq.steps.size(); ++n) {
    const BnStep& b = seq.steps[n];
    if (!(std::abs(b.value - seq.ell) <= seq.eps))
      return "|s(b_" + std::to_string(n + 1) + ") - ell| > eps";
    if (n + 1 == seq.steps.size()) break;
    const double next = seq.steps[n + 1].log_b;
    if (!(next > root * b.log_b)) return "b_" + std::to_string(n + 2) + " <= b_" + std::to_string(n + 1) + "^{sqrt lambda}";
    if (static_cast<int>(n + 1) > seq.n0 && !(next < seq.lambda * b.log_b))
      return "b_" + std::to_string(n + 2) + " >= b_" + std::to_string(n + 1) + "^lambda beyond n0";
  }
  return std::nullopt;
}

JDecomposition j_decomposition(const Function& s, double x, double t, double x0, double abs_tol) {
  if (!(x0 > std::exp(1.0))) throw PreconditionError("J-decomposition needs x0 > e");
  if (!(x0 <= x) || !(x < t)) throw PreconditionError("J-decomposition needs x0 <= x < t");
  JDecomposition j;
  j.x = x;
  j.t = t;
  j.x0 = x0;
  j.abs_tol = abs_tol;
  const double lx = std::log(x), lt = std::log(t);
  const double delta = 1.0 / lx - 1.0 / lt;
  const Value sx = s.eval(x);
  const double part_tol = 0.5 * abs_tol;
  const Shifted from_sx(s, sx, false);  // s(x) - s(u)
  j.J1 = delta * std::log(x0) * sx;
  j.J2 = -delta * weighted(s, 1.0, x0, part_tol);
  j.J3 = delta * weighted(from_sx, x0, x, part_tol);
  j.J4 = -weighted(from_sx, x, t, part_tol) / lt;
  j.total = log_mean(s, t, part_tol) - log_mean(s, x, part_tol);
  j.residual = std::abs(j.J1 + j.J2 + j.J3 + j.J4 - j.total);
  j.holds = j.residual <= 5.0 * abs_tol;
  return j;
}

LiminfReport check_liminf_s_over_x(const Function& s, SlowWindow window, const std::vector<int>& probe_ps,
                                   double window_log_horizon) {
  if (s.is_complex()) throw PreconditionError(s.name() + ": liminf probe needs a real-valued function");
  LiminfReport r;
  window.eps = 1.0;
  r.window = window;
  const WindowCheck c = check_window(s, window, WindowMode::decrease, window_log_horizon);
  if (!c.checked || !c.passed)
    throw PreconditionError(s.name() + ": window with eps = 1 is not valid at the check horizon");
  const double cap = std::log(1e300);
  const double l0 = std::log(window.x0);
  const double s0 = s.eval(window.x0).real();
  r.passed = true;
  for (int p : probe_ps) {
    if (p < 0) throw PreconditionError("probe indices must be nonnegative");
    const double L = l0 * std::pow(window.lambda, p);
    if (L > cap) {
      r.capped.push_back(p);
      continue;
    }
    const double sx = s.eval_log(L).real();
    const double inv = std::exp(-L);
    LiminfProbe probe{p, L, sx * inv, (s0 - p) * inv, sx - s0 >= -p - kWindowSlack};
    r.passed = r.passed && probe.holds;
    r.probes.push_back(probe);
  }
  return r;
}

}  // namespace tauber
