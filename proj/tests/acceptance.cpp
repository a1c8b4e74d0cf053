// One line per acceptance criterion; exit status 1 if any line fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "tauber/funcspec.hpp"
#include "tauber/harness.hpp"
#include "tauber/lemmas.hpp"
#include "tauber/logmean.hpp"
#include "tauber/statlimit.hpp"

using namespace tauber;

namespace {

// pinned tolerances and limits
constexpr double kConstTol = 1e-9;
constexpr double kConstSeconds = 1.0;
constexpr double kSineTol = 1e-8;
constexpr double kLogTol = 1e-9;
constexpr double kDensityTol = 1e-6;
constexpr double kEllTol = 0.04;
constexpr double kMarginTol = 1e-7;
constexpr double kLemma1Seconds = 10.0;
constexpr double kTelescopeTol = 1e-10;
constexpr double kJTol = 5e-9;
constexpr double kSuiteSeconds = 300.0;
constexpr int kBnTerms = 20;

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("%s  %2d  %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

FunctionPtr corpus(const char* name) { return find_corpus_entry(name)->spec; }

template <class F>
void guarded(int id, const std::string& what, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    report(id, false, what, std::string("threw: ") + e.what());
  }
}

void constant_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  const FunctionPtr c1 = corpus("C1");
  double worst = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double t = std::exp(std::exp(std::log(64.0) * i / 50.0));  // log-log spaced in (e, e^64]
    worst = std::max(worst, std::abs(log_mean(*c1, t).real() - 3.5));
  }
  const double secs = seconds_since(t0);
  report(1, worst <= kConstTol && secs < kConstSeconds, "constant exactness",
         fmt("max|tau - 3.5| = %.3g (tol %.0e) over 50 t, %.3f s (limit %.0f s)", worst, kConstTol, secs,
             kConstSeconds));
}

void closed_forms() {
  const double t_max = std::exp(std::exp(4.0));
  const MeanCurve curve = mean_curve(corpus("S1"), std::exp(1.0), t_max, 401);
  double worst = 0.0;
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    const double L = std::log(curve.grid[i]);
    worst = std::max(worst, std::abs(curve.tau[i].real() - (1.0 - std::cos(L)) / L));
  }
  const double lg = std::abs(log_mean(*parse_spec("log(x)"), std::exp(2.0)).real() - 1.0);
  report(2, worst <= kSineTol && lg <= kLogTol, "closed-form oracles",
         fmt("S1 max error %.3g (tol %.0e) on 401 points to e^(e^4); log x at e^2 error %.3g (tol %.0e)", worst,
             kSineTol, lg, kLogTol));
}

// unit spikes [n^2, n^2+1), n >= 2, fully inside (1, b)
double spike_density(double b) {
  double m = 0.0;
  for (long n = 2; double(n) * n < b; ++n) m += std::min(double(n) * n + 1.0, b) - double(n) * n;
  return m / (b - 1.0);
}

void statistical_reproduction() {
  const FunctionPtr s2 = corpus("S2");
  const std::vector<double> bs{1e2, 1e3, 1e4};
  const std::vector<double> stated{8.0 / 99.0, 29.0 / 999.0, 98.0 / 9999.0};
  const DensityProfile p = density_profile(*s2, 0.0, {0.5}, bs);
  bool stated_ok = p.exact, oracle_ok = p.exact;
  std::string rows;
  for (std::size_t k = 0; k < bs.size(); ++k) {
    const double d = p.density[0][k];
    stated_ok = stated_ok && std::abs(d - stated[k]) <= kDensityTol;
    oracle_ok = oracle_ok && std::abs(d - spike_density(bs[k])) <= kDensityTol;
    rows += fmt(" b=%.0f: %.10f (stated %.10f, spike count %.10f);", bs[k], d, stated[k], spike_density(bs[k]));
  }
  const LimitVerdict v = detect_statistical_limit(*s2, usable_horizons(*s2, {std::exp(4.0), std::exp(8.0), std::exp(16.0), std::exp(32.0)}));
  const bool verdict_ok = v.kind == LimitKind::statistical && std::abs(v.ell.real()) <= 1e-12;
  report(3, stated_ok && verdict_ok, "statistical limit of S2",
         fmt("exact=%d;%s stated values %s (tol %.0e), spike-count oracle %s; verdict %s, ell=%g", p.exact ? 1 : 0,
             rows.c_str(), stated_ok ? "match" : "DO NOT match", kDensityTol, oracle_ok ? "matches" : "does not match",
             to_string(v.kind).c_str(), v.ell.real()));
}

void implication_ordering() {
  int checked = 0, violations = 0;
  std::string detail;
  for (double H : {32.0, 64.0}) {
    const std::vector<double> raw{std::exp(H / 8), std::exp(H / 4), std::exp(H / 2), std::exp(H)};
    for (const auto& e : builtin_corpus()) {
      const auto hs = usable_horizons(*e.spec, raw);
      const LimitVerdict o = detect_ordinary_limit(*e.spec, hs);
      if (o.kind != LimitKind::ordinary) continue;
      ++checked;
      const LimitVerdict st = detect_statistical_limit(*e.spec, hs);
      const bool ok = (st.kind == LimitKind::statistical || st.kind == LimitKind::ordinary) &&
                      std::abs(st.ell - o.ell) <= kEllTol;
      if (!ok) {
        ++violations;
        detail += " " + e.name;
      }
    }
  }
  report(4, violations == 0 && checked > 0, "ordinary implies statistical",
         fmt("%d ordinary verdicts over 7 members at e^32 and e^64, %d violations (ell tol %.2f)%s", checked,
             violations, kEllTol, detail.c_str()));
}

void lemma1_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  const LemmaReport r = verify_lemma1(*corpus("L2"), {1.0, std::exp(2.0), 2.0});
  const double secs = seconds_since(t0);
  const bool ok = r.samples == 10000 && r.margin >= -kMarginTol && std::abs(r.B1 - 2.8853901) < 1e-7 &&
                  secs < kLemma1Seconds && r.gate_violations == 0;
  report(5, ok, "lemma 1 on L2",
         fmt("%zu pairs, B1 = %.7f, worst margin %.6g (>= -%.0e), gate violations %zu, %.2f s (limit %.0f s)",
             r.samples, r.B1, r.margin, kMarginTol, r.gate_violations, secs, kLemma1Seconds));
}

void lemma34_bounds() {
  const double e2 = std::exp(2.0);
  const std::vector<std::pair<const char*, SlowWindow>> cases{
      {"L1", {1.0, e2, 2.0}}, {"L2", {1.0, e2, 2.0}}, {"O1", {1.0, e2, std::exp(1.0)}}};
  bool ok = true;
  std::string detail;
  for (const auto& [name, w] : cases) {
    const LemmaReport r3 = verify_lemma3(*corpus(name), w);
    const LemmaReport r4 = verify_lemma4(*corpus(name), w);
    ok = ok && r3.passed && r4.passed;
    detail += fmt(" %s: B2=%.4f margins %.4g / %.4g;", name, r3.B2, r3.margin, r4.margin);
  }
  report(6, ok, "lemmas 3 and 4", fmt("256 t per lemma in (x0^lambda, e^64], margin tol %.0e;%s", kMarginTol, detail.c_str()));
}

void telescoping() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& c = builtin_corpus();
  double worst = 0.0;
  int bound_violations = 0, chains = 0;
  while (chains < 100) {
    const FunctionPtr s = c[chains % c.size()].spec;
    const double top = std::min(60.0, s->log_availability() * 0.99);
    const double lambda = 1.05 + 3.0 * unit(rng);
    const double log_t = 2.0 + (top - 2.0) * unit(rng);
    const double log_x = 0.5 + (log_t / lambda - 0.5) * unit(rng);
    if (!(log_x < log_t / lambda)) continue;
    const GeometricChain ch = build_chain(log_t, log_x, lambda);
    worst = std::max(worst, std::abs(telescoping_sum(*s, ch) - (s->eval_log(log_t) - s->eval_log(log_x))));
    if (!(ch.q < ch.q_bound())) ++bound_violations;
    ++chains;
  }
  report(7, worst <= kTelescopeTol && bound_violations == 0, "telescoping identity",
         fmt("100 chains, max error %.3g (tol %.0e), q bound violations %d", worst, kTelescopeTol, bound_violations));
}

void j_identity() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double x0 = std::exp(2.0);
  double worst = 0.0;
  int failed = 0, total = 0;
  for (const auto& e : builtin_corpus()) {
    const double cap = std::min(40.0, std::log(represented_limit(*e.spec)));
    for (int k = 0; k < 50;) {
      const double ux = 2.0 + (cap - 2.0) * unit(rng);
      const double ut = ux + (cap - ux) * unit(rng);
      if (!(ut > ux)) continue;
      const JDecomposition j = j_decomposition(*e.spec, std::exp(ux), std::exp(ut), x0);
      worst = std::max(worst, j.residual);
      if (j.residual > kJTol) ++failed;
      ++total;
      ++k;
    }
  }
  report(8, failed == 0, "J identity", fmt("%d pairs over 7 members, max residual %.3g (tol %.0e)", total, worst, kJTol));
}

void theorem_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t counterexamples = 0, cases = 0, bad_controls = 0;
  for (double H : {32.0, 64.0}) {
    RunConfig c;
    c.log_horizon = H;
    const SuiteReport r = run_suite(c);
    cases += r.cases.size();
    counterexamples += r.count(Outcome::counterexample);
    for (const auto& k : r.cases)
      if ((k.spec == "S1" || k.spec == "S2") &&
          !(k.outcome == Outcome::consistent_control && k.hypothesis == Tri::no && k.conclusion == Tri::no))
        ++bad_controls;
  }
  const double secs = seconds_since(t0);
  report(9, counterexamples == 0 && bad_controls == 0 && secs < kSuiteSeconds, "theorem suite",
         fmt("%zu cases at e^32 and e^64, %zu counterexamples, %zu S1/S2 cases not consistent controls, %.1f s "
             "(limit %.0f s)",
             cases, counterexamples, bad_controls, secs, kSuiteSeconds));
}

void bn_construction() {
  const BnSequence seq = construct_bn(*corpus("V1"), 2.0, 0.1, 2.0, std::exp(1.0), kBnTerms);
  const auto violation = check_bn(seq);
  bool growth = true;
  for (std::size_t i = 1; i < seq.steps.size(); ++i)
    growth = growth && seq.steps[i].log_b > std::sqrt(2.0) * seq.steps[i - 1].log_b;
  const bool ok = static_cast<int>(seq.steps.size()) >= kBnTerms && !violation && growth &&
                  seq.n0 < static_cast<int>(seq.steps.size());
  report(10, ok, "b_n for V1",
         fmt("%zu terms, invariants %s, n0 = %d, b_{n+1} > b_n^sqrt2 %s, log b_last = %.4g", seq.steps.size(),
             violation ? violation->c_str() : "ok", seq.n0, growth ? "holds" : "fails",
             seq.steps.empty() ? 0.0 : seq.steps.back().log_b));
}

}  // namespace

int main() {
  guarded(1, "constant exactness", constant_exactness);
  guarded(2, "closed-form oracles", closed_forms);
  guarded(3, "statistical limit of S2", statistical_reproduction);
  guarded(4, "ordinary implies statistical", implication_ordering);
  guarded(5, "lemma 1 on L2", lemma1_bound);
  guarded(6, "lemmas 3 and 4", lemma34_bounds);
  guarded(7, "telescoping identity", telescoping);
  guarded(8, "J identity", j_identity);
  guarded(9, "theorem suite", theorem_suite);
  guarded(10, "b_n for V1", bn_construction);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures ? 1 : 0;
}
