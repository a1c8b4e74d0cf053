#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "tauber/error.hpp"
#include "tauber/funcspec.hpp"
#include "tauber/logmean.hpp"

using namespace tauber;

namespace {

FunctionPtr corpus(const char* name) { return find_corpus_entry(name)->spec; }

// composite Simpson on [a, b] with n (even) panels
template <class G>
double simpson(G g, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = g(a) + g(b);
  for (int i = 1; i < n; ++i) s += g(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

std::vector<double> loglog_grid(double ll_lo, double ll_hi, int n) {
  std::vector<double> t;
  for (int i = 1; i <= n; ++i) t.push_back(std::exp(std::exp(ll_lo + (ll_hi - ll_lo) * i / n)));
  return t;
}

}  // namespace

TEST_CASE("constant input gives the constant back") {
  const FunctionPtr c1 = corpus("C1");
  for (double t : loglog_grid(0.0, std::log(64.0), 50)) CHECK(std::abs(log_mean(*c1, t).real() - 3.5) <= 1e-9);
}

TEST_CASE("sin(log x) against its antiderivative") {
  const FunctionPtr s1 = corpus("S1");
  for (double t : loglog_grid(0.0, 4.0, 200)) {
    const double L = std::log(t);
    CHECK(std::abs(log_mean(*s1, t).real() - (1.0 - std::cos(L)) / L) <= 1e-8);
  }
  CHECK(log_mean(*s1, std::exp(M_PI)).real() == doctest::Approx(2.0 / M_PI).epsilon(1e-10));
}

TEST_CASE("log x and the loglog members against closed forms") {
  const SpecPtr lg = parse_spec("log(x)");
  CHECK(std::abs(log_mean(*lg, std::exp(2.0)).real() - 1.0) <= 1e-9);
  for (double L : {2.0, 10.0, 50.0}) {
    const double t = std::exp(L);
    CHECK(std::abs(log_mean(*corpus("V1"), t).real() - (2.0 + std::log(L) / L)) <= 1e-9);
    CHECK(std::abs(log_mean(*corpus("L1"), t).real() - (L * std::log(L) - L + 1.0) / L) <= 1e-9);
  }
}

TEST_CASE("log mean is linear") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  const auto& c = builtin_corpus();
  for (int trial = 0; trial < 20; ++trial) {
    const auto& f = c[rng() % c.size()];
    const auto& g = c[rng() % c.size()];
    const double a = coef(rng), b = coef(rng);
    const FunctionPtr mix = linear_combination(a, f.spec, b, g.spec);
    const double t = std::exp(std::exp(0.5 + 2.5 * (rng() % 1000) / 1000.0));
    const Value lhs = log_mean(*mix, t);
    const Value rhs = a * log_mean(*f.spec, t) + b * log_mean(*g.spec, t);
    CAPTURE(f.name);
    CAPTURE(g.name);
    CHECK(std::abs(lhs - rhs) <= 3e-9);
  }
}

TEST_CASE("substitution x = e^u turns the mean into an arithmetic mean") {
  const SpecPtr s = parse_spec("log(x) * sin(log(x)) / (1 + log(x))");
  auto g = [](double u) { return u * std::sin(u) / (1.0 + u); };
  for (double L : {1.5, 7.0, 20.0}) {
    const double plain = simpson(g, 0.0, L, 200000) / L;
    CHECK(std::abs(log_mean(*s, std::exp(L)).real() - plain) <= 2e-9);
  }
}

TEST_CASE("mean of a convergent function settles at its limit") {
  const FunctionPtr v1 = corpus("V1");
  const double t_max = std::exp(std::exp(4.0));
  const MeanCurve curve = mean_curve(v1, std::exp(std::exp(2.0)), t_max, 65);
  // tau - 2 = loglog t / log t exactly, 4/e^4 ~ 0.073 at e^(e^4)
  CHECK(std::abs(curve.tau.back().real() - 2.0 - 4.0 * std::exp(-4.0)) <= 1e-9);
  CHECK(std::abs(log_mean(*v1, std::exp(660.0)).real() - 2.0) < 0.01);
  for (std::size_t i = 1; i < curve.tau.size(); ++i) CHECK(curve.tau[i].real() < curve.tau[i - 1].real());
}

TEST_CASE("mean curve invariants") {
  const MeanCurve curve = mean_curve(corpus("C1"), 1.5, std::exp(64.0), 101);
  REQUIRE(curve.grid.size() == 101);
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    CHECK(curve.grid[i] > 1.0);
    if (i) CHECK(curve.grid[i] > curve.grid[i - 1]);
    CHECK(std::abs(curve.tau[i].real() - 3.5) <= curve.abs_tol);
  }
  const std::string csv = curve.to_csv();
  CHECK(csv.rfind("t,log_t,loglog_t,tau_re,tau_im\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 102);
}

TEST_CASE("cumulative integral differences match direct quadrature") {
  for (const char* name : {"S1", "S2", "O1", "V1"}) {
    const FunctionPtr s = corpus(name);
    const double top = std::min(std::exp(20.0), represented_limit(*s));
    const CumulativeIntegral cum(s, cumulative_knots(*s, top), 1e-9);
    std::mt19937_64 rng(3);
    for (int k = 0; k < 30; ++k) {
      const double ua = std::log(top) * (rng() % 10000) / 10000.0;
      const double ub = ua + (std::log(top) - ua) * (rng() % 10000) / 10000.0;
      if (!(ub > ua)) continue;
      const double a = std::exp(ua), b = std::min(std::exp(ub), top);
      if (!(b > a)) continue;
      const Value direct = integrate_weighted(*s, a, b, 1e-9);
      CAPTURE(name);
      CHECK(std::abs(cum.at(b) - cum.at(a) - direct) <= 2e-9 * std::max(1.0, ub));
    }
  }
}

TEST_CASE("interpolated mean reproduces its nodes and estimates its error") {
  const FunctionPtr v1 = corpus("V1");
  const double t_max = std::exp(32.0);
  const MeanCurve curve = mean_curve(v1, std::exp(1.0), t_max, interpolation_points(std::exp(1.0), t_max, 64));
  const MeanInterpolant tau = interpolate_mean_curve(curve, false);
  for (std::size_t i = 0; i < curve.grid.size(); i += 2) CHECK(tau.fn->eval(curve.grid[i]).real() == doctest::Approx(curve.tau[i].real()).epsilon(1e-14));
  CHECK(tau.error_estimate < 1e-4);
  CHECK(tau.error_estimate > 0.0);
  CHECK_THROWS_AS(tau.fn->eval(t_max * 1.5), HorizonError);
}

TEST_CASE("log_mean_function agrees with log_mean") {
  const FunctionPtr tau = log_mean_function(corpus("O1"), 40.0);
  for (double L : {1.2, 5.0, 17.0, 39.0}) CHECK(std::abs(tau->eval(std::exp(L)) - log_mean(*corpus("O1"), std::exp(L))) <= 2e-9);
}

TEST_CASE("plain kernel and preconditions") {
  const SpecPtr x = parse_spec("x");
  CHECK(integrate(*x, 1.0, 3.0, Kernel::plain, QuadOptions{}).value.real() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(log_mean(*x, 1.0), PreconditionError);
  CHECK_THROWS_AS(integrate_weighted(*x, 0.5, 2.0), PreconditionError);
  CHECK_THROWS_AS(mean_curve(x, 3.0, 2.0, 10), PreconditionError);
}
