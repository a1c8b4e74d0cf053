#include "tauber/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tauber/error.hpp"
#include "tauber/expr.hpp"

namespace tauber {

namespace {

constexpr const char* kToolName = "tauberctl";
constexpr const char* kToolVersion = "0.1.0";

Json tri(Tri t) { return to_string(t); }

Json opt_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json witness_json(const Witness& w) { return Json{{"log_x", w.log_x}, {"log_t", w.log_t}}; }

template <class T>
void read_field(const Json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) out = it->template get<T>();
}

}  // namespace

Json value_json(const Value& v, bool is_complex) {
  if (!is_complex) return v.real();
  return Json{{"re", v.real()}, {"im", v.imag()}};
}

Json to_json(const RunConfig& c) {
  return Json{{"log_horizon", c.log_horizon},
              {"horizon_fractions", c.horizon_fractions},
              {"abs_tol", c.abs_tol},
              {"ordinary_tol", c.ordinary_tol},
              {"tau_ordinary_tol", c.tau_ordinary_tol},
              {"decay_threshold", c.decay_threshold},
              {"epsilons", c.epsilons},
              {"window_epsilons", c.window_epsilons},
              {"grid_density", c.grid_density},
              {"search_budget", c.search_budget},
              {"mean_points_per_unit", c.mean_points_per_unit},
              {"jobs", c.jobs},
              {"seed", c.seed},
              {"out_dir", c.out_dir},
              {"corpus", c.corpus},
              {"theorems", c.theorems}};
}

void merge_config(RunConfig& target, const Json& j) {
  RunConfig c = target;
  if (!j.is_object()) throw PreconditionError("config must be a JSON object");
  static const std::vector<std::string> known{"log_horizon", "horizon_fractions", "abs_tol", "ordinary_tol",
                                              "tau_ordinary_tol", "decay_threshold", "epsilons", "window_epsilons",
                                              "grid_density", "search_budget", "mean_points_per_unit", "jobs",
                                              "seed", "out_dir", "corpus", "theorems"};
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw PreconditionError("unknown config key '" + key + "'");
  try {
    read_field(j, "log_horizon", c.log_horizon);
    read_field(j, "horizon_fractions", c.horizon_fractions);
    read_field(j, "abs_tol", c.abs_tol);
    read_field(j, "ordinary_tol", c.ordinary_tol);
    read_field(j, "tau_ordinary_tol", c.tau_ordinary_tol);
    read_field(j, "decay_threshold", c.decay_threshold);
    read_field(j, "epsilons", c.epsilons);
    read_field(j, "window_epsilons", c.window_epsilons);
    read_field(j, "grid_density", c.grid_density);
    read_field(j, "search_budget", c.search_budget);
    read_field(j, "mean_points_per_unit", c.mean_points_per_unit);
    read_field(j, "jobs", c.jobs);
    read_field(j, "seed", c.seed);
    read_field(j, "out_dir", c.out_dir);
    read_field(j, "corpus", c.corpus);
    read_field(j, "theorems", c.theorems);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("bad config value: ") + e.what());
  }
  c.validate();
  target = std::move(c);
}

RunConfig config_from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read config " + path.string());
  RunConfig c;
  try {
    merge_config(c, Json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw PreconditionError("config " + path.string() + ": " + e.what());
  }
  return c;
}

Json to_json(const DensityProfile& p) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < p.epsilons.size(); ++i)
    for (std::size_t k = 0; k < p.horizons.size(); ++k)
      rows.push_back(Json{{"eps", p.epsilons[i]},
                          {"b", p.horizons[k]},
                          {"measure", p.measure[i][k]},
                          {"density", p.density[i][k]}});
  return Json{{"ell", value_json(p.ell, p.ell.imag() != 0.0)}, {"exact", p.exact}, {"rows", rows}};
}

Json to_json(const LimitVerdict& v, bool is_complex) {
  Json ev{{"horizons", v.evidence.horizons},
          {"tail", Json::array({v.evidence.tail_lo, v.evidence.tail_hi})},
          {"tail_min", value_json(v.evidence.tail_min, is_complex)},
          {"tail_max", value_json(v.evidence.tail_max, is_complex)},
          {"oscillation", opt_number(v.evidence.oscillation)}};
  if (v.evidence.profile) {
    // per-eps densities at the last horizon, the tail the verdict rests on
    const DensityProfile& p = *v.evidence.profile;
    Json tail = Json::object();
    for (std::size_t i = 0; i < p.epsilons.size(); ++i) tail[format_number(p.epsilons[i])] = p.density[i].back();
    ev["tail_densities"] = tail;
    ev["profile"] = to_json(p);
  }
  Json out{{"kind", to_string(v.kind)}, {"ell", value_json(v.ell, is_complex)}, {"evidence", ev}};
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

Json to_json(const SlowWindow& w) { return Json{{"eps", w.eps}, {"x0", w.x0}, {"lambda", w.lambda}}; }

Json to_json(const WindowCheck& w) {
  return Json{{"checked", w.checked},
              {"passed", w.passed},
              {"value", w.value},
              {"witness", witness_json(w.witness)},
              {"log_x_hi", w.log_x_hi}};
}

Json to_json(const WindowSearch& w) {
  Json attempts = Json::array();
  for (const auto& [win, check] : w.attempts) attempts.push_back(Json{{"window", to_json(win)}, {"check", to_json(check)}});
  return Json{{"found", w.window.has_value()},
              {"window", w.window ? to_json(*w.window) : Json(nullptr)},
              {"evaluations", w.evaluations},
              {"attempts", attempts}};
}

Json to_json(const ModulusCurve& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.lambdas.size(); ++i)
    rows.push_back(Json{{"lambda", m.lambdas[i]}, {"value", m.values[i]}, {"witness", witness_json(m.witnesses[i])}});
  return Json{{"mode", to_string(m.mode)},
              {"log_x_lo", m.log_x_lo},
              {"log_x_hi", m.log_x_hi},
              {"density", m.density},
              {"rows", rows}};
}

Json to_json(const ConditionReport& r) {
  return Json{{"condition", r.condition},
              {"passed", r.passed},
              {"extremum", r.extremum},
              {"witness_u", r.witness_u},
              {"C", r.constant.C},
              {"x0", r.constant.x0},
              {"horizon", r.horizon},
              {"u_weighted", r.u_weighted}};
}

Json to_json(const GeometricChain& c) {
  return Json{{"log_t0", c.log_t0},
              {"lambda", c.lambda},
              {"log_x", c.log_x},
              {"q", c.q},
              {"q_bound", c.q_bound()},
              {"log_points", c.log_points}};
}

Json to_json(const LemmaReport& r) {
  Json out{{"lemma", r.lemma},
           {"passed", r.passed},
           {"window", to_json(r.window)},
           {"window_check", to_json(r.window_check)},
           {"B1", r.B1},
           {"B2", r.B2},
           {"margin", r.margin},
           {"margin_tol", kLemmaMarginTol},
           {"worst", witness_json(r.worst)},
           {"samples", r.samples},
           {"gate_violations", r.gate_violations},
           {"log_t_max", r.log_t_max}};
  if (r.lemma >= 3) {
    out["lhs"] = r.lhs;
    out["lower_part"] = r.lower_part;
    out["upper_part"] = r.upper_part;
  }
  if (r.worst_chain) out["worst_chain"] = to_json(*r.worst_chain);
  return out;
}

Json to_json(const BnSequence& b) {
  Json steps = Json::array();
  for (std::size_t i = 0; i < b.steps.size(); ++i) {
    const BnStep& s = b.steps[i];
    steps.push_back(Json{{"n", i + 1},
                         {"log_b", s.log_b},
                         {"case", s.case_kind},
                         {"value", s.value},
                         {"log_measure_over_b", s.log_measure_over_b},
                         {"measure_over_right_end", s.measure_over_right_end}});
  }
  const auto violation = check_bn(b);
  return Json{{"ell", b.ell},
              {"eps", b.eps},
              {"lambda", b.lambda},
              {"x0", b.x0},
              {"loglog_horizon", b.loglog_horizon},
              {"density", b.density},
              {"status", b.status},
              {"n0", b.n0},
              {"invariants", violation ? Json(*violation) : Json("ok")},
              {"steps", steps}};
}

Json to_json(const JDecomposition& j, bool is_complex) {
  return Json{{"x", j.x},
              {"t", j.t},
              {"x0", j.x0},
              {"J1", value_json(j.J1, is_complex)},
              {"J2", value_json(j.J2, is_complex)},
              {"J3", value_json(j.J3, is_complex)},
              {"J4", value_json(j.J4, is_complex)},
              {"total", value_json(j.total, is_complex)},
              {"residual", j.residual},
              {"abs_tol", j.abs_tol},
              {"holds", j.holds}};
}

Json to_json(const LiminfReport& r) {
  Json probes = Json::array();
  for (const auto& p : r.probes)
    probes.push_back(Json{{"p", p.p}, {"log_x", p.log_x}, {"ratio", p.ratio}, {"bound", p.bound}, {"holds", p.holds}});
  return Json{{"window", to_json(r.window)}, {"passed", r.passed}, {"capped", r.capped}, {"probes", probes}};
}

Json to_json(const TheoremCase& c) {
  return Json{{"theorem", c.theorem},
              {"spec", c.spec},
              {"outcome", to_string(c.outcome)},
              {"limit_hypothesis", tri(c.limit_hypothesis)},
              {"window_hypothesis", tri(c.window_hypothesis)},
              {"hypothesis", tri(c.hypothesis)},
              {"conclusion", tri(c.conclusion)},
              {"hypothesis_ell", opt_number(c.hypothesis_ell)},
              {"conclusion_ell", opt_number(c.conclusion_ell)},
              {"combined_tol", c.combined_tol},
              {"horizons", c.horizons},
              {"detail", c.detail}};
}

Json to_json(const SpecEvidence& e) {
  auto verdict = [&](const std::optional<LimitVerdict>& v) { return v ? to_json(*v, e.is_complex) : Json(nullptr); };
  auto windows = [](const std::map<double, WindowSearch>& m) {
    Json out = Json::object();
    for (const auto& [eps, w] : m) out[format_number(eps)] = to_json(w);
    return out;
  };
  return Json{{"spec", e.name},
              {"complex", e.is_complex},
              {"horizons", e.horizons},
              {"tau_interpolation_error", e.tau_interpolation_error},
              {"s_ordinary", verdict(e.s_ordinary)},
              {"s_statistical", verdict(e.s_statistical)},
              {"tau_ordinary", verdict(e.tau_ordinary)},
              {"tau_statistical", verdict(e.tau_statistical)},
              {"decrease_windows", windows(e.decrease_windows)},
              {"oscillation_windows", windows(e.oscillation_windows)},
              {"errors", e.errors}};
}

Json to_json(const SuiteReport& r) {
  Json cases = Json::array();
  for (const auto& c : r.cases) cases.push_back(to_json(c));
  Json summary = Json::object();
  for (Outcome o : {Outcome::pass, Outcome::consistent_control, Outcome::inconclusive, Outcome::counterexample})
    summary[to_string(o)] = r.count(o);
  return Json{{"summary", summary}, {"cases", cases}};
}

Json provenance(const RunConfig& c) {
  return Json{{"tool", kToolName},
              {"version", kToolVersion},
              {"config", to_json(c)},
              {"horizons", c.horizons()},
              {"tolerances",
               {{"abs_tol", c.abs_tol},
                {"ordinary_tol", c.ordinary_tol},
                {"tau_ordinary_tol", c.tau_ordinary_tol},
                {"decay_threshold", c.decay_threshold},
                {"lemma_margin_tol", kLemmaMarginTol},
                {"window_slack", kWindowSlack},
                {"condition_slack", kConditionSlack}}}};
}

Json envelope(const RunConfig& c, const std::string& command, Json result) {
  return Json{{"provenance", provenance(c)}, {"command", command}, {"result", std::move(result)}};
}

std::string suite_table(const SuiteReport& r) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-3s %-6s %-19s %-8s %-8s %-8s %-10s %-10s\n", "thm", "spec", "outcome", "limit",
                "window", "concl", "ell_hyp", "ell_s");
  out << line;
  auto ell = [](const std::optional<double>& v) { return v ? format_number(std::round(*v * 1e6) / 1e6) : std::string("-"); };
  for (const auto& c : r.cases) {
    std::snprintf(line, sizeof line, "%-3s %-6s %-19s %-8s %-8s %-8s %-10s %-10s\n", c.theorem.c_str(),
                  c.spec.c_str(), to_string(c.outcome).c_str(), to_string(c.limit_hypothesis).c_str(),
                  to_string(c.window_hypothesis).c_str(), to_string(c.conclusion).c_str(),
                  ell(c.hypothesis_ell).c_str(), ell(c.conclusion_ell).c_str());
    out << line;
  }
  out << "pass " << r.count(Outcome::pass) << ", consistent_control " << r.count(Outcome::consistent_control)
      << ", inconclusive " << r.count(Outcome::inconclusive) << ", counterexample "
      << r.count(Outcome::counterexample) << "\n";
  return out.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write " + path.string());
  out << text;
}

std::string two_column(const std::string& header, const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw PreconditionError("two_column needs columns of equal length");
  std::string out = "# " + header + "\n";
  for (std::size_t i = 0; i < x.size(); ++i) out += format_number(x[i]) + " " + format_number(y[i]) + "\n";
  return out;
}

void write_evidence_bundle(const SuiteReport& r, const std::filesystem::path& dir) {
  auto windows_csv = [](const std::map<double, WindowSearch>& m) {
    std::string out = "eps,x0,lambda,checked,passed,value,witness_log_x,witness_log_t\n";
    for (const auto& [eps, search] : m)
      for (const auto& [w, c] : search.attempts)
        out += format_number(eps) + "," + format_number(w.x0) + "," + format_number(w.lambda) + "," +
               (c.checked ? "1" : "0") + "," + (c.passed ? "1" : "0") + "," + format_number(c.value) + "," +
               format_number(c.witness.log_x) + "," + format_number(c.witness.log_t) + "\n";
    return out;
  };
  for (const auto& c : r.cases) {
    const auto ev = std::find_if(r.evidence.begin(), r.evidence.end(), [&](const SpecEvidence& e) { return e.name == c.spec; });
    const std::filesystem::path d = dir / (c.theorem + "_" + c.spec);
    write_text(d / "case.json", to_json(c).dump(2) + "\n");
    if (ev == r.evidence.end()) continue;
    if (ev->curve) write_text(d / "mean_curve.csv", ev->curve->to_csv());
    const bool tau_based = c.theorem == "A" || c.theorem == "B" || c.theorem == "3" || c.theorem == "4";
    const auto& hyp = tau_based ? ev->tau_statistical : ev->s_statistical;
    if (hyp && hyp->evidence.profile) write_text(d / "hypothesis_density.csv", hyp->evidence.profile->to_csv());
    const bool decrease = c.theorem == "A" || c.theorem == "1" || c.theorem == "3";
    write_text(d / "windows.csv", windows_csv(decrease ? ev->decrease_windows : ev->oscillation_windows));
  }
  write_text(dir / "suite.json", envelope(r.config, "suite", to_json(r)).dump(2) + "\n");
}

}  // namespace tauber
