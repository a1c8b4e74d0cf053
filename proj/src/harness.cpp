#include "tauber/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "tauber/error.hpp"
#include "tauber/funcspec.hpp"

namespace tauber {

std::vector<double> RunConfig::horizons() const {
  std::vector<double> out;
  for (double f : horizon_fractions) out.push_back(std::exp(log_horizon * f));
  return out;
}

void RunConfig::validate() const {
  if (!(log_horizon > 0)) throw PreconditionError("log_horizon must be positive");
  if (horizon_fractions.size() < 3) throw PreconditionError("need at least 3 horizon fractions");
  for (std::size_t i = 0; i < horizon_fractions.size(); ++i) {
    if (!(horizon_fractions[i] > 0)) throw PreconditionError("horizon fractions must be positive");
    if (i > 0 && !(horizon_fractions[i] > horizon_fractions[i - 1]))
      throw PreconditionError("horizon fractions must be increasing");
  }
  for (double t : {abs_tol, ordinary_tol, tau_ordinary_tol, decay_threshold})
    if (!(t > 0)) throw PreconditionError("tolerances must be positive");
  if (epsilons.empty() || window_epsilons.empty()) throw PreconditionError("epsilon lists must not be empty");
  for (double e : epsilons)
    if (!(e > 0)) throw PreconditionError("epsilons must be positive");
  for (double e : window_epsilons)
    if (!(e > 0)) throw PreconditionError("window epsilons must be positive");
  if (grid_density < 1 || search_budget < 1 || mean_points_per_unit < 1)
    throw PreconditionError("densities and budgets must be positive");
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    case Tri::unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::consistent_control: return "consistent_control";
    case Outcome::inconclusive: return "inconclusive";
    case Outcome::counterexample: return "counterexample";
  }
  return "inconclusive";
}

namespace {

template <class F>
void guarded(SpecEvidence& ev, const std::string& what, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    ev.errors.push_back(what + ": " + e.what());
  }
}

void search_windows(const Function& s, WindowMode mode, const RunConfig& c, std::map<double, WindowSearch>& out) {
  std::vector<double> eps = c.window_epsilons;
  std::sort(eps.rbegin(), eps.rend());
  for (double e : eps) {
    WindowSearch w = find_window(s, e, mode, c.search_budget, c.log_horizon, c.grid_density);
    const bool found = w.window.has_value();
    out.emplace(e, std::move(w));
    if (!found) break;  // smaller eps cannot do better
  }
}

}  // namespace

SpecEvidence gather_evidence(const FunctionPtr& s, const RunConfig& config) {
  config.validate();
  SpecEvidence ev;
  ev.name = s->name();
  ev.is_complex = s->is_complex();
  StatOptions s_opts;
  s_opts.decay_threshold = config.decay_threshold;
  s_opts.ordinary_tol = config.ordinary_tol;
  guarded(ev, "horizons", [&] { ev.horizons = usable_horizons(*s, config.horizons()); });
  if (ev.horizons.empty()) return ev;

  guarded(ev, "ordinary limit of s", [&] { ev.s_ordinary = detect_ordinary_limit(*s, ev.horizons, config.ordinary_tol); });
  guarded(ev, "statistical limit of s",
          [&] { ev.s_statistical = detect_statistical_limit(*s, ev.horizons, config.epsilons, s_opts); });

  guarded(ev, "mean curve", [&] {
    const double e = std::exp(1.0);
    const double t_max =
        std::min(std::exp(config.log_horizon), represented_limit(*s));
    const std::size_t n = interpolation_points(e, t_max, config.mean_points_per_unit);
    ev.curve = mean_curve(s, e, t_max, n, config.abs_tol);
    const MeanInterpolant tau = interpolate_mean_curve(*ev.curve, s->is_complex(), "tau[" + s->name() + "]");
    ev.tau_interpolation_error = tau.error_estimate;
    const auto tau_h = usable_horizons(*tau.fn, config.horizons());
    StatOptions t_opts = s_opts;
    t_opts.ordinary_tol = config.tau_ordinary_tol;
    guarded(ev, "ordinary limit of tau",
            [&] { ev.tau_ordinary = detect_ordinary_limit(*tau.fn, tau_h, config.tau_ordinary_tol); });
    guarded(ev, "statistical limit of tau",
            [&] { ev.tau_statistical = detect_statistical_limit(*tau.fn, tau_h, config.epsilons, t_opts); });
  });

  if (!s->is_complex())
    guarded(ev, "decrease windows", [&] { search_windows(*s, WindowMode::decrease, config, ev.decrease_windows); });
  guarded(ev, "oscillation windows",
          [&] { search_windows(*s, WindowMode::oscillation, config, ev.oscillation_windows); });
  return ev;
}

std::optional<TheoremCase> run_theorem(const std::string& theorem, const SpecEvidence& ev, const RunConfig& config) {
  const bool tau_based = theorem == "A" || theorem == "B" || theorem == "3" || theorem == "4";
  const bool decrease = theorem == "A" || theorem == "1" || theorem == "3";
  if (!tau_based && theorem != "1" && theorem != "2") throw PreconditionError("unknown theorem '" + theorem + "'");
  if (decrease && ev.is_complex) return std::nullopt;

  TheoremCase c;
  c.theorem = theorem;
  c.spec = ev.name;
  c.horizons = ev.horizons;
  c.combined_tol = config.ordinary_tol + (tau_based ? config.tau_ordinary_tol : config.ordinary_tol);

  const std::optional<LimitVerdict>& limit = (theorem == "A" || theorem == "B") ? ev.tau_ordinary
                                             : tau_based                        ? ev.tau_statistical
                                                                                : ev.s_statistical;
  if (!limit) {
    c.limit_hypothesis = Tri::unknown;
  } else {
    switch (limit->kind) {
      case LimitKind::ordinary:
      case LimitKind::statistical:
        c.limit_hypothesis = Tri::yes;
        c.hypothesis_ell = limit->ell.real();
        break;
      case LimitKind::inconclusive: c.limit_hypothesis = Tri::unknown; break;
      case LimitKind::none: c.limit_hypothesis = Tri::no; break;
    }
  }

  const auto& windows = decrease ? ev.decrease_windows : ev.oscillation_windows;
  c.window_hypothesis = Tri::yes;
  for (double e : config.window_epsilons) {
    auto it = windows.find(e);
    if (it == windows.end()) {
      // searches stop at the first eps without a window
      const bool failed_earlier = std::any_of(windows.begin(), windows.end(),
                                              [](const auto& kv) { return !kv.second.window.has_value(); });
      c.window_hypothesis = failed_earlier ? Tri::no : Tri::unknown;
      break;
    }
    if (!it->second.window) {
      c.window_hypothesis = Tri::no;
      break;
    }
  }

  if (c.limit_hypothesis == Tri::no || c.window_hypothesis == Tri::no) c.hypothesis = Tri::no;
  else if (c.limit_hypothesis == Tri::unknown || c.window_hypothesis == Tri::unknown) c.hypothesis = Tri::unknown;
  else c.hypothesis = Tri::yes;

  if (!ev.s_ordinary) {
    c.conclusion = Tri::unknown;
  } else {
    switch (ev.s_ordinary->kind) {
      case LimitKind::ordinary:
        c.conclusion_ell = ev.s_ordinary->ell.real();
        c.conclusion = Tri::yes;
        if (c.hypothesis_ell && std::abs(*c.hypothesis_ell - *c.conclusion_ell) > c.combined_tol)
          c.conclusion = Tri::no;
        break;
      case LimitKind::statistical:
      case LimitKind::inconclusive: c.conclusion = Tri::unknown; break;
      case LimitKind::none: c.conclusion = Tri::no; break;
    }
  }

  const std::string concl = c.conclusion == Tri::yes ? "conclusion holds"
                            : c.conclusion == Tri::no ? "conclusion fails"
                                                      : "conclusion undetermined";
  if (c.hypothesis == Tri::no) {
    c.outcome = Outcome::consistent_control;
    c.detail = "hypothesis not satisfied; " + concl + "; no contradiction";
  } else if (c.hypothesis == Tri::unknown) {
    c.outcome = Outcome::inconclusive;
    c.detail = "hypothesis undetermined; " + concl;
  } else if (c.conclusion == Tri::yes) {
    c.outcome = Outcome::pass;
    c.detail = "hypothesis satisfied; conclusion holds at the same limit";
  } else if (c.conclusion == Tri::no) {
    c.outcome = Outcome::counterexample;
    c.detail = "hypothesis satisfied; conclusion fails";
  } else {
    c.outcome = Outcome::inconclusive;
    c.detail = "hypothesis satisfied; conclusion undetermined";
  }
  if (!ev.errors.empty()) c.detail += " (" + std::to_string(ev.errors.size()) + " detector error(s))";
  return c;
}

std::size_t SuiteReport::count(Outcome o) const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [&](const TheoremCase& c) { return c.outcome == o; }));
}

std::vector<FunctionPtr> selected_corpus(const RunConfig& config) {
  std::vector<FunctionPtr> out;
  if (config.corpus.empty()) {
    for (const auto& e : builtin_corpus()) out.push_back(e.spec);
    return out;
  }
  for (const auto& name : config.corpus) {
    const CorpusEntry* e = find_corpus_entry(name);
    if (!e) throw PreconditionError("unknown corpus member '" + name + "'");
    out.push_back(e->spec);
  }
  return out;
}

SuiteReport run_suite(const RunConfig& config, const std::vector<FunctionPtr>& extra) {
  config.validate();
  std::vector<FunctionPtr> specs = selected_corpus(config);
  specs.insert(specs.end(), extra.begin(), extra.end());

  SuiteReport report;
  report.config = config;
  report.evidence.resize(specs.size());
  unsigned jobs = config.jobs ? config.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(specs.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) report.evidence[i] = gather_evidence(specs[i], config);
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (const auto& theorem : config.theorems)
    for (const auto& ev : report.evidence)
      if (auto c = run_theorem(theorem, ev, config)) report.cases.push_back(std::move(*c));
  std::stable_sort(report.cases.begin(), report.cases.end(), [](const TheoremCase& a, const TheoremCase& b) {
    if (a.theorem != b.theorem) return a.theorem < b.theorem;
    return a.spec < b.spec;
  });
  return report;
}

}  // namespace tauber
