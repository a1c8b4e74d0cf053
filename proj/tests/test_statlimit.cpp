#include <cmath>

#include "doctest.h"
#include "tauber/error.hpp"
#include "tauber/funcspec.hpp"
#include "tauber/statlimit.hpp"

using namespace tauber;

namespace {

FunctionPtr corpus(const char* name) { return find_corpus_entry(name)->spec; }

// |{x in (a, b) : s2(x) = 1}|, counting the unit spikes [n^2, n^2+1) directly
double spike_measure(double a, double b) {
  double m = 0.0;
  for (long n = 2; double(n) * n < b; ++n) {
    const double lo = std::max(double(n) * n, a), hi = std::min(double(n) * n + 1.0, b);
    if (hi > lo) m += hi - lo;
  }
  return m;
}

// |{x in (1, b) : |sin(log x)| > eps}| from the level sets of sin
double sine_measure(double eps, double b) {
  const double L = std::log(b), a = std::asin(eps);
  double m = 0.0;
  for (int k = 0; k * M_PI < L; ++k) {
    const double lo = k * M_PI + a, hi = std::min(k * M_PI + M_PI - a, L);
    if (hi > lo) m += std::exp(hi) - std::exp(lo);
  }
  return m;
}

}  // namespace

TEST_CASE("spike densities match the count") {
  const FunctionPtr s2 = corpus("S2");
  for (double b : {100.0, 1000.0, 10000.0, 12345.5, 1e6}) {
    const MeasureResult m = exceptional_measure(*s2, 0.0, 0.5, b);
    CHECK(m.exact);
    CHECK(std::abs(m.measure - spike_measure(1.0, b)) <= 1e-9 * b);
  }
  const DensityProfile p = density_profile(*s2, 0.0, {0.5}, {100.0, 1000.0, 10000.0});
  CHECK(std::abs(p.density[0][0] - 8.0 / 99.0) <= 1e-6);
  CHECK(std::abs(p.density[0][1] - 30.0 / 999.0) <= 1e-6);
  CHECK(std::abs(p.density[0][2] - 98.0 / 9999.0) <= 1e-6);
}

TEST_CASE("level sets of sin(log x) from root isolation") {
  const FunctionPtr s1 = corpus("S1");
  for (double eps : {0.1, 0.5, 0.9}) {
    for (double L : {5.0, 12.0, 30.0}) {
      const double b = std::exp(L);
      const MeasureResult m = exceptional_measure(*s1, 0.0, eps, b);
      CAPTURE(eps);
      CAPTURE(L);
      CHECK(m.exact);
      CHECK(std::abs(m.measure - sine_measure(eps, b)) <= 1e-9 * b);
    }
  }
}

TEST_CASE("measure is additive in the horizon") {
  for (const char* name : {"S1", "S2", "O1", "V1"}) {
    const FunctionPtr s = corpus(name);
    const double ell = name[0] == 'V' ? 2.0 : 0.0;
    for (auto [b1, b2] : {std::pair{50.0, 400.0}, std::pair{1e3, 1e5}, std::pair{1e4, 3e6}}) {
      const double m1 = exceptional_measure(*s, ell, 0.25, b1).measure;
      const double m2 = exceptional_measure(*s, ell, 0.25, b2).measure;
      const ExceptionalSet set = exceptional_set(*s, ell, 0.25, b2);
      CAPTURE(name);
      CHECK(std::abs((m2 - m1) - measure_within(set.intervals, b1, b2)) <= 2e-6 * (b2 - 1.0));
    }
  }
}

TEST_CASE("densities grow as eps shrinks") {
  for (const auto& e : builtin_corpus()) {
    const Value ell = e.expected.stat_limit.value_or(0.0);
    const auto hs = usable_horizons(*e.spec, {1e2, 1e4, 1e6, 1e8});
    const DensityProfile p = density_profile(*e.spec, ell, {0.5, 0.25, 0.1, 0.01}, hs);
    for (std::size_t k = 0; k < hs.size(); ++k)
      for (std::size_t i = 1; i < p.epsilons.size(); ++i) CHECK(p.density[i][k] >= p.density[i - 1][k]);
  }
}

TEST_CASE("left endpoint does not matter") {
  const FunctionPtr s2 = corpus("S2");
  const double head = spike_measure(1.0, 10.0);
  for (double b : {1e2, 1e3, 1e4, 1e5}) {
    const double d1 = exceptional_measure(*s2, 0.0, 0.5, b).measure / (b - 1.0);
    const double d10 = exceptional_measure(*s2, 0.0, 0.5, b, 10.0).measure / (b - 10.0);
    CHECK(std::abs(d1 - d10) <= (10.0 + head) / (b - 10.0));
  }
}

TEST_CASE("detector verdicts on the corpus") {
  const std::vector<double> hs{std::exp(4.0), std::exp(8.0), std::exp(16.0), std::exp(32.0)};
  const LimitVerdict c1 = detect_ordinary_limit(*corpus("C1"), hs);
  CHECK(c1.kind == LimitKind::ordinary);
  CHECK(c1.ell.real() == doctest::Approx(3.5));

  const LimitVerdict s2 = detect_statistical_limit(*corpus("S2"), usable_horizons(*corpus("S2"), hs));
  CHECK(s2.kind == LimitKind::statistical);
  CHECK(std::abs(s2.ell.real()) <= 1e-12);
  CHECK(detect_ordinary_limit(*corpus("S2"), usable_horizons(*corpus("S2"), hs)).kind == LimitKind::none);

  CHECK(detect_statistical_limit(*corpus("S1"), hs).kind == LimitKind::none);
  CHECK(detect_ordinary_limit(*corpus("S1"), hs).kind == LimitKind::none);
  CHECK(detect_statistical_limit(*corpus("L1"), hs).kind == LimitKind::none);

  const LimitVerdict v1 = detect_statistical_limit(*corpus("V1"), hs);
  CHECK(v1.kind == LimitKind::ordinary);
  CHECK(std::abs(v1.ell.real() - 2.0) < 0.05);
}

TEST_CASE("ordinary verdicts imply statistical ones at the same ell") {
  for (double H : {32.0, 64.0}) {
    const std::vector<double> raw{std::exp(H / 8), std::exp(H / 4), std::exp(H / 2), std::exp(H)};
    for (const auto& e : builtin_corpus()) {
      const auto hs = usable_horizons(*e.spec, raw);
      const LimitVerdict o = detect_ordinary_limit(*e.spec, hs);
      if (o.kind != LimitKind::ordinary) continue;
      const LimitVerdict st = detect_statistical_limit(*e.spec, hs);
      CAPTURE(e.name);
      CHECK((st.kind == LimitKind::statistical || st.kind == LimitKind::ordinary));
      CHECK(std::abs(st.ell - o.ell) <= 0.04);
    }
  }
}

TEST_CASE("horizon requirements") {
  CHECK_THROWS_AS(usable_horizons(*corpus("C1"), {10.0, 20.0}), PreconditionError);
  CHECK_THROWS_AS(detect_statistical_limit(*corpus("C1"), {10.0, 20.0, 30.0}), PreconditionError);
  CHECK_THROWS_AS(density_profile(*corpus("C1"), 3.5, {0.1, 0.5}, {10.0, 100.0}), PreconditionError);
}
