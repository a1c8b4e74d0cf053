#include <algorithm>
#include <cfloat>
#include <cmath>
#include <deque>
#include <functional>

#include "tauber/conditions.hpp"
#include "tauber/error.hpp"
#include "tauber/expr.hpp"

namespace tauber {

std::string to_string(WindowMode mode) {
  switch (mode) {
    case WindowMode::decrease: return "decrease";
    case WindowMode::increase: return "increase";
    case WindowMode::oscillation: return "oscillation";
  }
  return "decrease";
}

namespace {

constexpr int kGoldenIterations = 60;

struct Node {
  double u;      // log x
  int order;     // 0 just below a breakpoint, 1 otherwise; breaks ties in u
  bool lattice;  // plain lattice node, eligible for refinement
  Value value;
};

double safe_exp(double u) { return u < 709.0 ? std::exp(u) : DBL_MAX; }

bool smooth_between(const Function& s, double ua, double ub) {
  if (!(ub > ua)) return false;
  return s.breakpoints(safe_exp(ua), safe_exp(ub)).empty();
}

std::vector<Node> build_lattice(const Function& s, double u_lo, double u_hi, double u_top, int density) {
  std::vector<Node> nodes;
  const double v_lo = std::log(u_lo), v_top = std::log(u_top);
  const double h = 1.0 / density;
  for (long k = 0;; ++k) {
    const double v = v_lo + k * h;
    if (v >= v_top) break;
    nodes.push_back({std::exp(v), 1, true, {}});
  }
  nodes.push_back({u_lo, 1, true, {}});
  nodes.push_back({u_hi, 1, true, {}});
  nodes.push_back({u_top, 1, true, {}});
  for (auto& n : nodes) n.value = s.eval_log(n.u);
  for (double p : s.breakpoints(safe_exp(u_lo), safe_exp(u_top))) {
    const double below = std::nextafter(p, 0.0);
    nodes.push_back({std::log(below), 0, false, s.eval(below)});
    nodes.push_back({std::log(p), 1, false, s.eval(p)});
  }
  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.order != b.order) return a.order < b.order;
    return a.lattice < b.lattice;
  });
  // Duplicates keep the breakpoint-derived copy, whose value is exact.
  std::vector<Node> out;
  for (const auto& n : nodes) {
    if (!out.empty() && out.back().u == n.u && out.back().order == n.order) continue;
    out.push_back(n);
  }
  return out;
}

// Minimizes r(t) - r(x) with r = sign * Re s over the windows.
struct SignedMin {
  double value;
  Witness witness;
};

double golden_min(const std::function<double(double)>& phi, double a, double b, double& best_arg) {
  constexpr double kInvPhi = 0.6180339887498949;
  double best = phi(a);
  best_arg = a;
  auto consider = [&](double arg, double val) {
    if (val < best) {
      best = val;
      best_arg = arg;
    }
  };
  consider(b, phi(b));
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double fc = phi(c), fd = phi(d);
  consider(c, fc);
  consider(d, fd);
  for (int it = 0; it < kGoldenIterations; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = phi(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = phi(d);
      consider(d, fd);
    }
  }
  return best;
}

class SignedWindowMin {
 public:
  SignedWindowMin(const Function& s, const std::vector<Node>& nodes, double sign, double u_lo, double u_hi)
      : s_(s), nodes_(nodes), sign_(sign), u_lo_(u_lo), u_hi_(u_hi) {
    r_.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) r_[i] = sign * nodes[i].value.real();
  }

  SignedMin run(double lambda) const {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    bool b_edge = false;
    std::deque<std::size_t> window;
    std::size_t next = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const double ux = nodes_[i].u;
      if (ux < u_lo_) continue;
      if (ux > u_hi_) break;
      const double edge = lambda * ux;
      if (next <= i) next = i + 1;
      while (next < nodes_.size() && nodes_[next].u <= edge) {
        while (!window.empty() && r_[window.back()] > r_[next]) window.pop_back();
        window.push_back(next++);
      }
      while (!window.empty() && window.front() <= i) window.pop_front();
      const double r_edge = r(edge);
      bool use_edge = true;
      double m = r_edge;
      if (!window.empty() && r_[window.front()] <= r_edge) {
        m = r_[window.front()];
        use_edge = false;
      }
      const double d = m - r_[i];
      if (d < best) {
        best = d;
        bi = i;
        bj = use_edge ? 0 : window.front();
        b_edge = use_edge;
      }
    }
    SignedMin out{best, {nodes_[bi].u, b_edge ? lambda * nodes_[bi].u : nodes_[bj].u}};
    refine(out, lambda, bi, bj, b_edge);
    return out;
  }

 private:
  double r(double u) const { return sign_ * s_.eval_log(u).real(); }

  void refine(SignedMin& m, double lambda, std::size_t i, std::size_t j, bool edge) const {
    const Node& x = nodes_[i];
    if (edge) {
      if (!x.lattice || i == 0 || i + 1 >= nodes_.size()) return;
      const double a = std::max(nodes_[i - 1].u, u_lo_), b = std::min(nodes_[i + 1].u, u_hi_);
      if (!smooth_between(s_, a, b) || !smooth_between(s_, lambda * a, lambda * b)) return;
      double arg;
      const double v = golden_min([&](double u) { return r(lambda * u) - r(u); }, a, b, arg);
      if (v < m.value) m = {v, {arg, lambda * arg}};
      return;
    }
    const Node& t = nodes_[j];
    double ut = t.u;
    if (t.lattice && j > 0 && j + 1 < nodes_.size()) {
      const double a = std::max(nodes_[j - 1].u, std::nextafter(m.witness.log_x, INFINITY));
      const double b = std::min(nodes_[j + 1].u, lambda * m.witness.log_x);
      if (b > a && smooth_between(s_, a, b)) {
        double arg;
        const double v = golden_min([&](double u) { return r(u); }, a, b, arg) - r(m.witness.log_x);
        if (v < m.value) {
          m = {v, {m.witness.log_x, arg}};
          ut = arg;
        }
      }
    }
    if (x.lattice && i > 0 && i + 1 < nodes_.size()) {
      const double a = std::max({nodes_[i - 1].u, ut / lambda, u_lo_});
      const double b = std::min({nodes_[i + 1].u, std::nextafter(ut, 0.0), u_hi_});
      if (b > a && smooth_between(s_, a, b)) {
        double arg;
        const double rt = r(ut);
        const double v = golden_min([&](double u) { return rt - r(u); }, a, b, arg);
        if (v < m.value) m = {v, {arg, ut}};
      }
    }
  }

  const Function& s_;
  const std::vector<Node>& nodes_;
  double sign_;
  double u_lo_, u_hi_;
  std::vector<double> r_;
};

// sup |s(t) - s(x)| by direct enumeration; used for complex s.
SignedMin complex_oscillation(const Function& s, const std::vector<Node>& nodes, double lambda, double u_lo,
                              double u_hi) {
  double best = -1.0;
  Witness w;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double ux = nodes[i].u;
    if (ux < u_lo) continue;
    if (ux > u_hi) break;
    const double edge = lambda * ux;
    for (std::size_t j = i + 1; j < nodes.size() && nodes[j].u <= edge; ++j) {
      const double d = std::abs(nodes[j].value - nodes[i].value);
      if (d > best) {
        best = d;
        w = {ux, nodes[j].u};
      }
    }
    const double d = std::abs(s.eval_log(edge) - nodes[i].value);
    if (d > best) {
      best = d;
      w = {ux, edge};
    }
  }
  return {best, w};
}

}  // namespace

std::string ModulusCurve::to_csv() const {
  auto coord = [](double u) { return u < 709.0 ? format_number(std::exp(u)) : "e^" + format_number(u); };
  std::string out = "lambda,value,witness_x,witness_t\n";
  for (std::size_t k = 0; k < lambdas.size(); ++k)
    out += format_number(lambdas[k]) + "," + format_number(values[k]) + "," + coord(witnesses[k].log_x) + "," +
           coord(witnesses[k].log_t) + "\n";
  return out;
}

ModulusCurve window_modulus(const Function& s, WindowMode mode, std::vector<double> lambdas, double log_x_lo,
                            double log_x_hi, int density) {
  if (lambdas.empty()) throw PreconditionError("modulus needs at least one lambda");
  for (double l : lambdas)
    if (!(l > 1.0)) throw PreconditionError("every lambda must exceed 1");
  if (!(log_x_lo > 0.0) || !(log_x_hi >= log_x_lo)) throw PreconditionError("x range must satisfy 1 < X_lo <= X_hi");
  if (density < 1) throw PreconditionError("grid density must be positive");
  if (mode != WindowMode::oscillation && s.is_complex())
    throw PreconditionError(s.name() + ": slow decrease needs a real-valued function");

  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
  const double u_top = lambdas.back() * log_x_hi;
  if (!(u_top < s.log_availability()))
    throw HorizonError(s.name() + ": empty window, x^lambda exceeds the represented range e^" +
                       format_number(s.log_availability()));

  const auto nodes = build_lattice(s, log_x_lo, log_x_hi, u_top, density);
  const std::size_t n = lambdas.size();
  std::vector<SignedMin> per(n);

  if (s.is_complex()) {
    for (std::size_t k = 0; k < n; ++k) per[k] = complex_oscillation(s, nodes, lambdas[k], log_x_lo, log_x_hi);
    for (std::size_t k = 1; k < n; ++k)
      if (per[k - 1].value > per[k].value) per[k] = per[k - 1];
  } else {
    auto curve = [&](double sign) {
      const SignedWindowMin solver(s, nodes, sign, log_x_lo, log_x_hi);
      std::vector<SignedMin> c(n);
      for (std::size_t k = 0; k < n; ++k) c[k] = solver.run(lambdas[k]);
      // windows are nested in lambda
      for (std::size_t k = 1; k < n; ++k)
        if (c[k - 1].value < c[k].value) c[k] = c[k - 1];
      return c;
    };
    if (mode == WindowMode::decrease) {
      per = curve(1.0);
    } else if (mode == WindowMode::increase) {
      per = curve(-1.0);
      for (auto& p : per) p.value = -p.value;
    } else {
      const auto dec = curve(1.0);
      const auto inc = curve(-1.0);
      for (std::size_t k = 0; k < n; ++k) per[k] = -dec[k].value >= -inc[k].value ? SignedMin{-dec[k].value, dec[k].witness}
                                                                              : SignedMin{-inc[k].value, inc[k].witness};
    }
  }

  ModulusCurve out;
  out.mode = mode;
  out.log_x_lo = log_x_lo;
  out.log_x_hi = log_x_hi;
  out.density = density;
  for (std::size_t k = n; k-- > 0;) {
    out.lambdas.push_back(lambdas[k]);
    out.values.push_back(per[k].value);
    out.witnesses.push_back(per[k].witness);
  }
  return out;
}

ModulusCurve slow_decrease_modulus(const Function& s, std::vector<double> lambdas, const XHorizon& horizon,
                                   int density) {
  return window_modulus(s, WindowMode::decrease, std::move(lambdas), horizon.log_X, horizon.Lambda * horizon.log_X,
                        density);
}

ModulusCurve slow_oscillation_modulus(const Function& s, std::vector<double> lambdas, const XHorizon& horizon,
                                      int density) {
  return window_modulus(s, WindowMode::oscillation, std::move(lambdas), horizon.log_X,
                        horizon.Lambda * horizon.log_X, density);
}

WindowCheck check_window(const Function& s, const SlowWindow& window, WindowMode mode, double log_horizon,
                         int density) {
  if (!(window.eps > 0) || !(window.x0 > 1.0) || !(window.lambda > 1.0))
    throw PreconditionError("window needs eps > 0, x0 > 1, lambda > 1");
  WindowCheck c;
  const double u_lo = std::log(window.x0);
  // keep x^lambda strictly inside the represented range
  const double u_hi = std::min(log_horizon, std::log(represented_limit(s)) / window.lambda);
  if (!(u_hi > u_lo)) return c;
  const ModulusCurve m = window_modulus(s, mode, {window.lambda}, u_lo, u_hi, density);
  c.checked = true;
  c.value = m.values[0];
  c.witness = m.witnesses[0];
  c.log_x_hi = u_hi;
  c.passed = mode == WindowMode::decrease ? c.value >= -window.eps - kWindowSlack
                                          : c.value <= window.eps + kWindowSlack;
  return c;
}

std::vector<double> default_lambda_schedule() {
  std::vector<double> out;
  for (int k = 0; k <= 7; ++k) out.push_back(1.0 + std::ldexp(1.0, -k));
  return out;
}

std::vector<double> default_x0_schedule() { return {std::exp(1.0), std::exp(2.0), std::exp(4.0), std::exp(8.0), std::exp(16.0)}; }

WindowSearch find_window(const Function& s, double eps, WindowMode mode, int budget, double log_horizon,
                         int density) {
  if (!(eps > 0)) throw PreconditionError("eps must be positive");
  WindowSearch out;
  for (double x0 : default_x0_schedule()) {
    for (double lambda : default_lambda_schedule()) {
      if (out.evaluations >= budget) return out;
      const SlowWindow w{eps, x0, lambda};
      const WindowCheck c = check_window(s, w, mode, log_horizon, density);
      if (!c.checked) continue;
      ++out.evaluations;
      out.attempts.emplace_back(w, c);
      if (c.passed) {
        out.window = w;
        return out;
      }
    }
  }
  return out;
}

}  // namespace tauber
