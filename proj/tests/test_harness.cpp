#include <cmath>
#include <map>

#include "doctest.h"
#include "tauber/error.hpp"
#include "tauber/funcspec.hpp"
#include "tauber/harness.hpp"
#include "tauber/report.hpp"

using namespace tauber;

namespace {

const SuiteReport& suite_at(double log_horizon) {
  static std::map<double, SuiteReport> cache;
  auto it = cache.find(log_horizon);
  if (it == cache.end()) {
    RunConfig c;
    c.log_horizon = log_horizon;
    it = cache.emplace(log_horizon, run_suite(c)).first;
  }
  return it->second;
}

const TheoremCase& find_case(const SuiteReport& r, const std::string& theorem, const std::string& spec) {
  for (const auto& c : r.cases)
    if (c.theorem == theorem && c.spec == spec) return c;
  FAIL("missing case " << theorem << " " << spec);
  throw;
}

SpecEvidence fake_evidence(LimitKind s_ordinary, double s_ell, LimitKind s_stat, double stat_ell, bool windows) {
  SpecEvidence ev;
  ev.name = "F";
  LimitVerdict o;
  o.kind = s_ordinary;
  o.ell = s_ell;
  ev.s_ordinary = o;
  LimitVerdict st;
  st.kind = s_stat;
  st.ell = stat_ell;
  ev.s_statistical = st;
  ev.tau_ordinary = st;
  ev.tau_statistical = st;
  for (double e : RunConfig{}.window_epsilons) {
    WindowSearch w;
    if (windows) w.window = SlowWindow{e, std::exp(1.0), 2.0};
    ev.decrease_windows[e] = w;
    ev.oscillation_windows[e] = w;
    if (!windows) break;
  }
  return ev;
}

}  // namespace

TEST_CASE("case logic") {
  const RunConfig c;
  // hypothesis holds, s converges to the same ell
  CHECK(run_theorem("1", fake_evidence(LimitKind::ordinary, 2.0, LimitKind::statistical, 2.0, true), c)->outcome ==
        Outcome::pass);
  // hypothesis holds, s does not converge: the combination the theorems rule out
  const auto bad = run_theorem("1", fake_evidence(LimitKind::none, 0.0, LimitKind::statistical, 2.0, true), c);
  CHECK(bad->outcome == Outcome::counterexample);
  CHECK(bad->detail == "hypothesis satisfied; conclusion fails");
  // converges, but elsewhere
  CHECK(run_theorem("2", fake_evidence(LimitKind::ordinary, 3.0, LimitKind::statistical, 2.0, true), c)->outcome ==
        Outcome::counterexample);
  // no window: a control whatever s does
  CHECK(run_theorem("A", fake_evidence(LimitKind::none, 0.0, LimitKind::statistical, 0.0, false), c)->outcome ==
        Outcome::consistent_control);
  CHECK(run_theorem("B", fake_evidence(LimitKind::none, 0.0, LimitKind::inconclusive, 0.0, true), c)->outcome ==
        Outcome::inconclusive);
  SpecEvidence complex_ev = fake_evidence(LimitKind::none, 0.0, LimitKind::none, 0.0, true);
  complex_ev.is_complex = true;
  CHECK_FALSE(run_theorem("3", complex_ev, c).has_value());
  CHECK(run_theorem("4", complex_ev, c).has_value());
  CHECK_THROWS_AS(run_theorem("Z", complex_ev, c), PreconditionError);
}

TEST_CASE("examples from the corpus at e^32") {
  const SuiteReport& r = suite_at(32.0);
  CHECK(find_case(r, "A", "V1").outcome == Outcome::pass);
  const TheoremCase& b_s1 = find_case(r, "B", "S1");
  CHECK(b_s1.outcome == Outcome::consistent_control);
  CHECK(b_s1.window_hypothesis == Tri::no);
  CHECK(b_s1.detail == "hypothesis not satisfied; conclusion fails; no contradiction");
  const TheoremCase& one_s2 = find_case(r, "1", "S2");
  CHECK(one_s2.limit_hypothesis == Tri::yes);
  CHECK(one_s2.window_hypothesis == Tri::no);
  CHECK(one_s2.outcome == Outcome::consistent_control);
}

TEST_CASE("no counterexample at e^32 and e^64, same outcomes at both") {
  const SuiteReport& a = suite_at(32.0);
  const SuiteReport& b = suite_at(64.0);
  CHECK(a.count(Outcome::counterexample) == 0);
  CHECK(b.count(Outcome::counterexample) == 0);
  REQUIRE(a.cases.size() == b.cases.size());
  CHECK(a.cases.size() == 6 * 7);
  for (std::size_t i = 0; i < a.cases.size(); ++i) {
    CAPTURE(a.cases[i].theorem);
    CAPTURE(a.cases[i].spec);
    CHECK(a.cases[i].outcome == b.cases[i].outcome);
  }
}

TEST_CASE("passing A/B cases agree on ell") {
  for (double H : {32.0, 64.0})
    for (const auto& c : suite_at(H).cases) {
      if ((c.theorem != "A" && c.theorem != "B") || c.outcome != Outcome::pass) continue;
      REQUIRE(c.hypothesis_ell);
      REQUIRE(c.conclusion_ell);
      CHECK(std::abs(*c.hypothesis_ell - *c.conclusion_ell) <= 2.0 * c.combined_tol);
    }
}

TEST_CASE("halving the horizon does not turn a pass into a counterexample") {
  const SuiteReport& full = suite_at(32.0);
  const SuiteReport& half = suite_at(16.0);
  REQUIRE(full.cases.size() == half.cases.size());
  for (std::size_t i = 0; i < full.cases.size(); ++i) {
    const TheoremCase& f = full.cases[i];
    const TheoremCase& h = half.cases[i];
    if (f.outcome == Outcome::pass) CHECK(h.outcome != Outcome::counterexample);
    if (h.outcome == Outcome::counterexample)
      MESSAGE("e^16: " << h.theorem << " " << h.spec << " reported a counterexample (" << to_string(f.outcome)
                       << " at e^32)");
  }
}

TEST_CASE("extra functions join the suite") {
  RunConfig c;
  c.corpus = {"C1"};
  c.theorems = {"A", "2"};
  const SuiteReport r = run_suite(c, {parse_spec("piece [1, e): 1; piece [e, inf): 1 + 1 / loglog(x + 10);", "extra")});
  CHECK(r.cases.size() == 4);
  CHECK(r.evidence.size() == 2);
  CHECK(r.cases[0].spec == "C1");
  CHECK(r.cases[1].spec == "extra");
}

TEST_CASE("reports do not depend on the worker count") {
  RunConfig c;
  c.corpus = {"C1", "L1", "O1", "V1"};
  c.jobs = 1;
  const std::string one = to_json(run_suite(c)).dump();
  c.jobs = 4;
  const std::string four = to_json(run_suite(c)).dump();
  CHECK(one == four);
}

TEST_CASE("config validation and merging") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  merge_config(c, Json::parse(R"({"log_horizon": 20, "epsilons": [0.3, 0.2, 0.1], "corpus": ["C1"]})"));
  CHECK(c.log_horizon == 20.0);
  CHECK(c.epsilons.size() == 3);
  CHECK(c.horizons().back() == doctest::Approx(std::exp(20.0)));
  CHECK_THROWS_AS(merge_config(c, Json::parse(R"({"abs_tol": -1})")), PreconditionError);
  CHECK_THROWS_AS(merge_config(c, Json::parse(R"({"nonsense": 1})")), PreconditionError);
  RunConfig back;
  merge_config(back, to_json(c));
  CHECK(to_json(back) == to_json(c));
  CHECK_THROWS_AS(run_suite([] {
                    RunConfig bad;
                    bad.corpus = {"Q9"};
                    return bad;
                  }()),
                  PreconditionError);
}
