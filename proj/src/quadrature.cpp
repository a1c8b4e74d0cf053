#include "tauber/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "tauber/error.hpp"

namespace tauber {

namespace {

// Kronrod abscissae; odd indices are the 7-point Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct RuleResult {
  Value value;
  double error;
};

double component_error(double resk, double resg, double resabs, double resasc, double half) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kTiny = std::numeric_limits<double>::min();
  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > kTiny / (50.0 * kEps)) err = std::max(kEps * 50.0 * resabs, err);
  return err;
}

RuleResult gauss_kronrod15(const std::function<Value(double)>& g, double a, double b) {
  const double centr = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double dhalf = std::fabs(half);

  Value fv1[7], fv2[7];
  const Value fc = g(centr);
  Value resg = fc * kWg[3];
  Value resk = fc * kWgk[7];
  double resabs_re = std::fabs(resk.real()), resabs_im = std::fabs(resk.imag());
  for (int j = 0; j < 7; ++j) {
    const double absc = half * kXgk[j];
    fv1[j] = g(centr - absc);
    fv2[j] = g(centr + absc);
    const Value fsum = fv1[j] + fv2[j];
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    resabs_re += kWgk[j] * (std::fabs(fv1[j].real()) + std::fabs(fv2[j].real()));
    resabs_im += kWgk[j] * (std::fabs(fv1[j].imag()) + std::fabs(fv2[j].imag()));
  }
  const Value reskh = resk * 0.5;
  double resasc_re = kWgk[7] * std::fabs(fc.real() - reskh.real());
  double resasc_im = kWgk[7] * std::fabs(fc.imag() - reskh.imag());
  for (int j = 0; j < 7; ++j) {
    resasc_re += kWgk[j] * (std::fabs(fv1[j].real() - reskh.real()) + std::fabs(fv2[j].real() - reskh.real()));
    resasc_im += kWgk[j] * (std::fabs(fv1[j].imag() - reskh.imag()) + std::fabs(fv2[j].imag() - reskh.imag()));
  }
  const double err = component_error(resk.real(), resg.real(), resabs_re * dhalf, resasc_re * dhalf, half) +
                     component_error(resk.imag(), resg.imag(), resabs_im * dhalf, resasc_im * dhalf, half);
  return {resk * half, err};
}

struct Interval {
  double a, b;
  Value value;
  double error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

// Neumaier compensated sum of complex values.
class CompensatedSum {
 public:
  void add(Value v) {
    add_component(sum_re_, c_re_, v.real());
    add_component(sum_im_, c_im_, v.imag());
  }
  Value total() const { return {sum_re_ + c_re_, sum_im_ + c_im_}; }

 private:
  static void add_component(double& sum, double& comp, double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) comp += (sum - t) + v;
    else comp += (v - t) + sum;
    sum = t;
  }
  double sum_re_ = 0, c_re_ = 0, sum_im_ = 0, c_im_ = 0;
};

}  // namespace

QuadResult integrate_segments(const std::function<Value(double)>& g, std::span<const double> cuts,
                              const std::function<std::optional<Value>(std::size_t)>& constant,
                              const QuadOptions& opts) {
  QuadResult out;
  if (cuts.size() < 2) return out;
  CompensatedSum exact;
  std::priority_queue<Interval> heap;
  double total_error = 0.0;
  Value adaptive_part = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (!(b > a)) continue;
    if (constant) {
      if (auto c = constant(i)) {
        exact.add(*c * (b - a));
        ++out.evaluations;
        continue;
      }
    }
    const RuleResult r = gauss_kronrod15(g, a, b);
    out.evaluations += 15;
    heap.push({a, b, r.value, r.error});
    total_error += r.error;
    adaptive_part += r.value;
  }

  std::vector<Interval> frozen;  // cannot be bisected further
  auto tolerance = [&](Value approx) { return std::max(opts.abs_tol, opts.rel_tol * std::abs(approx)); };
  Value approx = exact.total() + adaptive_part;
  std::size_t iterations = 0;
  while (total_error > tolerance(approx) && !heap.empty()) {
    if (heap.size() + frozen.size() >= opts.max_intervals)
      throw QuadratureError("tolerance " + std::to_string(opts.abs_tol) + " not met within " +
                            std::to_string(opts.max_intervals) + " subintervals (estimated error " +
                            std::to_string(total_error) + ")");
    Interval top = heap.top();
    heap.pop();
    const double mid = 0.5 * (top.a + top.b);
    if (!(mid > top.a && mid < top.b)) {
      frozen.push_back(top);
      continue;
    }
    const RuleResult left = gauss_kronrod15(g, top.a, mid);
    const RuleResult right = gauss_kronrod15(g, mid, top.b);
    out.evaluations += 30;
    total_error += left.error + right.error - top.error;
    approx += left.value + right.value - top.value;
    heap.push({top.a, mid, left.value, left.error});
    heap.push({mid, top.b, right.value, right.error});
    if (++iterations % 256 == 0) {
      // resynchronize the running error against accumulated drift
      double e = 0.0;
      auto copy = heap;
      while (!copy.empty()) {
        e += copy.top().error;
        copy.pop();
      }
      for (const auto& f : frozen) e += f.error;
      total_error = e;
    }
  }
  if (total_error > tolerance(approx))
    throw QuadratureError("tolerance not met: subintervals reached machine resolution (estimated error " +
                          std::to_string(total_error) + ")");

  CompensatedSum sum = exact;
  out.intervals = heap.size() + frozen.size();
  while (!heap.empty()) {
    sum.add(heap.top().value);
    heap.pop();
  }
  for (const auto& f : frozen) sum.add(f.value);
  out.value = sum.total();
  out.error = total_error;
  return out;
}

QuadResult integrate(const Function& f, double a, double b, Kernel kernel, const QuadOptions& opts) {
  if (!(a >= 1.0) || !(b >= a)) throw PreconditionError("integration bounds must satisfy 1 <= a <= b");
  if (std::log(b) > f.log_availability())
    throw HorizonError(f.name() + ": integration bound exceeds the represented horizon");
  if (b == a) return {};
  std::vector<double> xs;
  xs.push_back(a);
  for (double p : f.breakpoints(a, b)) xs.push_back(p);
  xs.push_back(b);
  std::vector<double> us(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) us[i] = std::log(xs[i]);

  const auto g = [&](double u) -> Value {
    if (kernel == Kernel::logarithmic) return f.eval_log(u);
    return f.eval_log(u) * std::exp(u);
  };
  const auto constant = [&](std::size_t i) -> std::optional<Value> {
    const double mid = xs[i] + 0.5 * (xs[i + 1] - xs[i]);
    auto c = f.constant_near(mid);
    if (!c) return std::nullopt;
    // integrate_segments multiplies by the u-length
    if (kernel == Kernel::logarithmic) return c;
    return *c * ((xs[i + 1] - xs[i]) / (us[i + 1] - us[i]));
  };
  return integrate_segments(g, us, constant, opts);
}

}  // namespace tauber
