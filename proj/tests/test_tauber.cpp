#include <cmath>

#include "doctest.h"
#include "tauber/conditions.hpp"
#include "tauber/error.hpp"
#include "tauber/funcspec.hpp"

using namespace tauber;

namespace {

FunctionPtr corpus(const char* name) { return find_corpus_entry(name)->spec; }

std::vector<FunctionPtr> real_corpus() {
  std::vector<FunctionPtr> out;
  for (const auto& e : builtin_corpus())
    if (!e.spec->is_complex()) out.push_back(e.spec);
  return out;
}

// min over a plain grid of Re(s(t) - s(x)), log x in [u_lo, u_hi], log t in [log x, lambda log x];
// t = x stands in for the limit t -> x+
double brute_decrease(const Function& s, double lambda, double u_lo, double u_hi, int nx, int nt) {
  double best = INFINITY;
  for (int i = 0; i <= nx; ++i) {
    const double u = u_lo + (u_hi - u_lo) * i / nx;
    const double sx = s.eval_log(u).real();
    for (int j = 0; j <= nt; ++j) best = std::min(best, s.eval_log(u + (lambda - 1.0) * u * j / nt).real() - sx);
  }
  return best;
}

// x over [X, X^2] with (X^2)^4 inside what the function represents
XHorizon horizon_for(const Function& s) { return {std::min(6.0, s.log_availability() / 9.0), 2.0}; }

}  // namespace

TEST_CASE("loglog drop over (x, x^lambda] is exactly -log(lambda)/log 2") {
  const ModulusCurve m = slow_decrease_modulus(*corpus("L2"), {2.0, 1.5, 1.1, 1.01});
  for (std::size_t i = 0; i < m.lambdas.size(); ++i)
    CHECK(m.values[i] == doctest::Approx(-std::log(m.lambdas[i]) / std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("modulus is no larger than a brute-force grid minimum and close to it") {
  for (const char* name : {"S1", "O1", "V1", "L1"}) {
    const FunctionPtr s = corpus(name);
    for (double lambda : {1.05, 1.5, 3.0}) {
      const ModulusCurve m = window_modulus(*s, WindowMode::decrease, {lambda}, 1.0, 20.0);
      const double brute = brute_decrease(*s, lambda, 1.0, 20.0, 400, 400);
      CAPTURE(name);
      CAPTURE(lambda);
      CHECK(m.values[0] <= brute + 1e-12);
      CHECK(m.values[0] >= brute - 2e-3);
    }
  }
}

TEST_CASE("modulus is monotone in lambda") {
  const std::vector<double> lambdas{4.0, 3.0, 2.0, 1.5, 1.25, 1.1, 1.01};
  for (const auto& s : real_corpus()) {
    const ModulusCurve dec = slow_decrease_modulus(*s, lambdas, horizon_for(*s));
    const ModulusCurve osc = slow_oscillation_modulus(*s, lambdas, horizon_for(*s));
    CAPTURE(s->name());
    for (std::size_t i = 1; i < lambdas.size(); ++i) {
      CHECK(dec.values[i] >= dec.values[i - 1]);
      CHECK(osc.values[i] <= osc.values[i - 1]);
    }
  }
}

TEST_CASE("oscillation is the worse of decrease for s and for -s") {
  const std::vector<double> lambdas{2.0, 1.3, 1.05};
  for (const auto& s : real_corpus()) {
    const ModulusCurve osc = slow_oscillation_modulus(*s, lambdas, horizon_for(*s));
    const ModulusCurve dec = slow_decrease_modulus(*s, lambdas, horizon_for(*s));
    const ModulusCurve neg = slow_decrease_modulus(*negate(s), lambdas, horizon_for(*s));
    for (std::size_t i = 0; i < lambdas.size(); ++i)
      CHECK(std::abs(osc.values[i] - std::max(-dec.values[i], -neg.values[i])) <= 1e-6);
  }
}

TEST_CASE("increase for s is decrease for -s with the sign flipped") {
  const std::vector<double> lambdas{2.0, 1.3, 1.05};
  for (const auto& s : real_corpus()) {
    const ModulusCurve inc = window_modulus(*s, WindowMode::increase, lambdas, 1.0, 2.0 * horizon_for(*s).log_X);
    const ModulusCurve dec = window_modulus(*negate(s), WindowMode::decrease, lambdas, 1.0, 2.0 * horizon_for(*s).log_X);
    for (std::size_t i = 0; i < lambdas.size(); ++i) CHECK(inc.values[i] == -dec.values[i]);
  }
}

TEST_CASE("window checks and searches") {
  // loglog is increasing, any lambda works
  const WindowSearch l1 = find_window(*corpus("L1"), 0.5, WindowMode::decrease);
  REQUIRE(l1.window);
  CHECK(l1.window->lambda == 2.0);
  // |sin(loglog x^lambda) - sin(loglog x)| <= log lambda
  const WindowSearch o1 = find_window(*corpus("O1"), 0.1, WindowMode::oscillation);
  REQUIRE(o1.window);
  CHECK(std::log(o1.window->lambda) <= 0.1);
  // every unit spike drops by 1 inside a window
  CHECK_FALSE(find_window(*corpus("S2"), 0.5, WindowMode::decrease).window);
  const WindowCheck s2 = check_window(*corpus("S2"), {1.0, std::exp(1.0), 2.0}, WindowMode::decrease);
  CHECK(s2.checked);
  CHECK(s2.passed);
  CHECK(s2.value == doctest::Approx(-1.0));
  // on a bounded x range a lambda close to 1 hides sin(log x) at eps 0.5, not at 0.1
  CHECK_FALSE(find_window(*corpus("S1"), 0.1, WindowMode::oscillation).window);
  CHECK_THROWS_AS(slow_decrease_modulus(*parse_spec("complex(1, 0)"), {2.0}), PreconditionError);
}

TEST_CASE("Landau and Hardy bounds against closed forms") {
  const SpecPtr drop = parse_spec("piece [1, e): 0; piece [e, inf): -1 / (x * log(x));");
  const double H = std::exp(40.0);
  CHECK(check_landau(*drop, {1.0, std::exp(1.0)}, H).passed);
  const ConditionReport tight = check_landau(*drop, {0.5, std::exp(1.0)}, H);
  CHECK_FALSE(tight.passed);
  CHECK(tight.extremum == doctest::Approx(-1.0));

  const SpecPtr inv_log = parse_spec("piece [1, e): 0; piece [e, inf): 1 / log(x);");
  const ConditionReport h = check_hardy(*inv_log, {1.0, std::exp(1.0)}, H);
  CHECK(h.passed);
  CHECK(h.extremum == doctest::Approx(1.0));
  CHECK_FALSE(check_hardy(*corpus("C1"), {1.0, std::exp(1.0)}, H).passed);
  CHECK_THROWS_AS(check_landau(*drop, {0.0, 3.0}, H), PreconditionError);
}

TEST_CASE("primitive against its antiderivative") {
  const SpecPtr f = parse_spec("piece [1, e): 0; piece [e, inf): cos(loglog(x)) / (x * log(x));");
  const FunctionPtr F = primitive(f, 64.0);
  for (double L : {1.5, 4.0, 20.0, 60.0}) CHECK(F->eval(std::exp(L)).real() == doctest::Approx(std::sin(std::log(L))).epsilon(1e-8));
}

TEST_CASE("Landau bound makes the primitive slowly decreasing") {
  for (const auto& e : builtin_corpus()) {
    if (e.spec->is_complex()) continue;
    const double H = std::min(std::exp(32.0), represented_limit(*e.spec));
    if (!check_landau(*e.spec, {1.0, 1.0}, H).passed) continue;
    const FunctionPtr F = primitive(e.spec, std::min(64.0, e.spec->log_availability()));
    for (double eps : {1.0, 0.5, 0.1}) {
      CAPTURE(e.name);
      CAPTURE(eps);
      CHECK(find_window(*F, eps, WindowMode::decrease).window.has_value());
    }
  }
}

TEST_CASE("u-weighted Hardy bound makes the primitive slowly oscillating") {
  for (const char* src : {"piece [1, e): 0; piece [e, inf): cos(loglog(x)) / (x * log(x));",
                          "piece [1, e): 0; piece [e, inf): -0.5 / (x * log(x));"}) {
    const SpecPtr f = parse_spec(src);
    REQUIRE(check_hardy(*f, {1.0, std::exp(1.0)}, std::exp(32.0), true).passed);
    const FunctionPtr F = primitive(f, 64.0);
    for (double eps : {1.0, 0.5, 0.1}) CHECK(find_window(*F, eps, WindowMode::oscillation).window.has_value());
  }
}
