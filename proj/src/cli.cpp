#include "tauber/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "tauber/error.hpp"
#include "tauber/expr.hpp"
#include "tauber/funcspec.hpp"
#include "tauber/report.hpp"

namespace tauber {

double parse_number(const std::string& text) {
  const Expression e = parse_expression(text);
  if (e.depends_on_x() || e.depends_on_n()) throw PreconditionError("'" + text + "' is not a constant");
  return e.evaluate(1.0);
}

namespace {

struct Globals {
  std::string config_path;
  std::string out_dir;
  std::string plot_dir;
  unsigned jobs = 0;
  std::uint64_t seed = 1;
  bool jobs_set = false;
  bool seed_set = false;
};

struct FnArgs {
  std::string name;
  std::string file;
};

void add_fn_options(CLI::App* sub, FnArgs& fn) {
  auto* by_name = sub->add_option("--fn", fn.name, "corpus member (see 'corpus list')");
  auto* by_file = sub->add_option("--fn-file", fn.file, "function in the DSL, or its JSON form (*.json)");
  by_name->excludes(by_file);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SpecPtr load_file_spec(const std::string& path) {
  const std::filesystem::path p(path);
  const std::string text = read_file(path);
  if (p.extension() == ".json") return spec_from_json(text);
  return parse_spec(text, p.stem().string());
}

FunctionPtr load_function(const FnArgs& fn) {
  if (!fn.file.empty()) return load_file_spec(fn.file);
  if (fn.name.empty()) throw PreconditionError("one of --fn or --fn-file is required");
  const CorpusEntry* e = find_corpus_entry(fn.name);
  if (!e) throw PreconditionError("unknown corpus member '" + fn.name + "'");
  return e->spec;
}

double number_or(const std::string& text, double fallback) { return text.empty() ? fallback : parse_number(text); }

std::vector<double> numbers(const std::vector<std::string>& texts) {
  std::vector<double> out;
  for (const auto& t : texts) out.push_back(parse_number(t));
  return out;
}

WindowMode parse_mode(const std::string& m) {
  if (m == "decrease") return WindowMode::decrease;
  if (m == "increase") return WindowMode::increase;
  if (m == "oscillation") return WindowMode::oscillation;
  throw PreconditionError("unknown mode '" + m + "'");
}

int verdict_exit(LimitKind k) {
  switch (k) {
    case LimitKind::ordinary:
    case LimitKind::statistical: return kExitOk;
    case LimitKind::none: return kExitFail;
    case LimitKind::inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args);

 private:
  RunConfig config() const;
  void emit_json(const RunConfig& c, const std::string& command, Json result);
  void emit_text(const std::string& file, const std::string& text);
  void plot(const std::string& file, const std::string& text);

  int cmd_mean();
  int cmd_stat_limit();
  int cmd_modulus();
  int cmd_check_condition();
  int cmd_verify_lemma();
  int cmd_witness_theorem1();
  int cmd_j_decomp();
  int cmd_suite();
  int cmd_corpus_list();

  std::ostream& out_;
  std::ostream& err_;
  Globals g_;
  FnArgs fn_;

  // mean
  std::string t_min_, t_max_;
  std::size_t points_ = 1;
  // stat-limit
  std::string ell_, eps_, b_;
  std::vector<std::string> horizons_;
  bool ordinary_ = false;
  // modulus and windows
  std::string mode_ = "decrease";
  std::vector<std::string> lambdas_;
  std::string x_from_, x_power_, lambda_, x0_;
  bool find_ = false;
  // check-condition
  std::string condition_, C_;
  bool u_weighted_ = false, with_primitive_ = false;
  // verify-lemma
  int lemma_ = 1;
  std::size_t samples_ = 0;
  // witness-theorem1
  int max_n_ = 20;
  std::string loglog_horizon_;
  std::vector<int> probes_;
  // j-decomp
  std::string x_, t_;
  int random_ = 0;
  // suite
  std::vector<std::string> extra_files_, corpus_, theorems_;
  std::string log_horizon_;
  bool json_ = false;
};

RunConfig Runner::config() const {
  RunConfig c = g_.config_path.empty() ? RunConfig{} : config_from_file(g_.config_path);
  if (g_.jobs_set) c.jobs = g_.jobs;
  if (g_.seed_set) c.seed = g_.seed;
  if (!g_.out_dir.empty()) c.out_dir = g_.out_dir;
  return c;
}

void Runner::emit_json(const RunConfig& c, const std::string& command, Json result) {
  const std::string text = envelope(c, command, std::move(result)).dump(2) + "\n";
  out_ << text;
  if (!c.out_dir.empty()) write_text(std::filesystem::path(c.out_dir) / (command + ".json"), text);
}

void Runner::emit_text(const std::string& file, const std::string& text) {
  out_ << text;
  if (!g_.out_dir.empty()) write_text(std::filesystem::path(g_.out_dir) / file, text);
}

void Runner::plot(const std::string& file, const std::string& text) {
  if (!g_.plot_dir.empty()) write_text(std::filesystem::path(g_.plot_dir) / file, text);
}

int Runner::cmd_mean() {
  const RunConfig c = config();
  const FunctionPtr s = load_function(fn_);
  const double t_max = parse_number(t_max_);
  if (points_ <= 1) {
    const Value tau = log_mean(*s, t_max, c.abs_tol);
    MeanCurve row;
    row.abs_tol = c.abs_tol;
    row.grid = {t_max};
    row.tau = {tau};
    emit_text("mean.csv", row.to_csv());
    return kExitOk;
  }
  const double t_min = number_or(t_min_, std::exp(1.0));
  const MeanCurve curve = mean_curve(s, t_min, t_max, points_, c.abs_tol);
  emit_text("mean.csv", curve.to_csv());
  std::vector<double> v, re;
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    v.push_back(std::log(std::log(curve.grid[i])));
    re.push_back(curve.tau[i].real());
  }
  plot("mean_" + s->name() + ".dat", two_column("loglog_t tau_re", v, re));
  return kExitOk;
}

int Runner::cmd_stat_limit() {
  const RunConfig c = config();
  const FunctionPtr s = load_function(fn_);
  // config horizons are cut to the represented range; explicit ones are not
  const std::vector<double> hs = horizons_.empty() ? usable_horizons(*s, c.horizons()) : numbers(horizons_);
  Json result = Json::object();
  result["spec"] = s->name();
  int code = kExitOk;

  if (!ell_.empty()) {
    // explicit ell: the raw level-set measurements
    const Value ell{parse_number(ell_), 0.0};
    const DensityProfile p = density_profile(*s, ell, c.epsilons, hs);
    result["profile"] = to_json(p);
    if (!g_.out_dir.empty()) write_text(std::filesystem::path(g_.out_dir) / "density_profile.csv", p.to_csv());
    for (std::size_t i = 0; i < p.epsilons.size(); ++i)
      plot("density_eps" + format_number(p.epsilons[i]) + ".dat", two_column("b density", p.horizons, p.density[i]));
    if (!eps_.empty() && !b_.empty()) {
      const double eps = parse_number(eps_), b = parse_number(b_);
      const ExceptionalSet set = exceptional_set(*s, ell, eps, b);
      const MeasureResult m = exceptional_measure(*s, ell, eps, b);
      Json iv = Json::array();
      for (const auto& [lo, hi] : set.intervals) iv.push_back(Json::array({lo, hi}));
      result["exceptional_set"] = Json{{"eps", eps},
                                       {"b", b},
                                       {"intervals", iv},
                                       {"exact", set.exact},
                                       {"measure", m.measure},
                                       {"bounds", Json::array({m.lo, m.hi})},
                                       {"monte_carlo", m.monte_carlo ? Json(*m.monte_carlo) : Json(nullptr)}};
    }
  } else {
    StatOptions opts;
    opts.decay_threshold = c.decay_threshold;
    opts.ordinary_tol = c.ordinary_tol;
    const LimitVerdict v = detect_statistical_limit(*s, hs, c.epsilons, opts);
    result["statistical"] = to_json(v, s->is_complex());
    code = verdict_exit(v.kind);
    if (ordinary_) {
      const LimitVerdict o = detect_ordinary_limit(*s, hs, c.ordinary_tol);
      result["ordinary"] = to_json(o, s->is_complex());
      code = verdict_exit(o.kind);
    }
  }
  emit_json(c, "stat-limit", std::move(result));
  return code;
}

int Runner::cmd_modulus() {
  const RunConfig c = config();
  const FunctionPtr s = load_function(fn_);
  const WindowMode mode = parse_mode(mode_);
  if (!eps_.empty()) {
    const double eps = parse_number(eps_);
    if (find_) {
      const WindowSearch w = find_window(*s, eps, mode, c.search_budget, c.log_horizon, c.grid_density);
      emit_json(c, "modulus", Json{{"spec", s->name()}, {"mode", to_string(mode)}, {"eps", eps}, {"search", to_json(w)}});
      return w.window ? kExitOk : kExitFail;
    }
    SlowWindow w{eps, number_or(x0_, std::exp(1.0)), number_or(lambda_, 2.0)};
    const WindowCheck check = check_window(*s, w, mode, c.log_horizon, c.grid_density);
    emit_json(c, "modulus",
              Json{{"spec", s->name()}, {"mode", to_string(mode)}, {"window", to_json(w)}, {"check", to_json(check)}});
    if (!check.checked) return kExitInconclusive;
    return check.passed ? kExitOk : kExitFail;
  }
  const std::vector<double> lambdas = lambdas_.empty() ? default_lambda_schedule() : numbers(lambdas_);
  XHorizon h;
  if (!x_from_.empty()) h.log_X = std::log(parse_number(x_from_));
  h.Lambda = number_or(x_power_, h.Lambda);
  const ModulusCurve m = mode == WindowMode::decrease ? slow_decrease_modulus(*s, lambdas, h, c.grid_density)
                         : mode == WindowMode::oscillation
                             ? slow_oscillation_modulus(*s, lambdas, h, c.grid_density)
                             : window_modulus(*s, mode, lambdas, h.log_X, h.Lambda * h.log_X, c.grid_density);
  emit_text("modulus.csv", m.to_csv());
  plot("modulus_" + s->name() + ".dat", two_column("lambda value", m.lambdas, m.values));
  return kExitOk;
}

int Runner::cmd_check_condition() {
  const RunConfig c = config();
  const FunctionPtr f = load_function(fn_);
  const TauberConstant k{number_or(C_, 1.0), number_or(x0_, 1.0)};
  const double horizon = number_or(t_max_, std::exp(c.log_horizon));
  const ConditionReport r = condition_ == "landau" ? check_landau(*f, k, horizon) : check_hardy(*f, k, horizon, u_weighted_);
  Json result{{"spec", f->name()}, {"report", to_json(r)}};
  if (with_primitive_) {
    // the window of the primitive, which the condition is meant to force
    const double log_X = std::min(c.log_horizon, std::log(horizon));
    // x over [X, X^2] and lambda <= 2 reach t = X^4
    const FunctionPtr F = primitive(f, 4.0 * log_X + 1.0, c.abs_tol);
    const XHorizon h{log_X, 2.0};
    const ModulusCurve m = condition_ == "landau"
                               ? slow_decrease_modulus(*F, default_lambda_schedule(), h, c.grid_density)
                               : slow_oscillation_modulus(*F, default_lambda_schedule(), h, c.grid_density);
    result["primitive_modulus"] = to_json(m);
  }
  emit_json(c, "check-condition", std::move(result));
  return r.passed ? kExitOk : kExitFail;
}

int Runner::cmd_verify_lemma() {
  const RunConfig c = config();
  const FunctionPtr s = load_function(fn_);
  SlowWindow w{number_or(eps_, 1.0), number_or(x0_, std::exp(1.0)), number_or(lambda_, 2.0)};
  LemmaOptions opts;
  opts.seed = c.seed;
  opts.abs_tol = c.abs_tol;
  opts.density = c.grid_density;
  opts.window_log_horizon = c.log_horizon;
  if (!t_max_.empty()) opts.log_t_max = std::log(parse_number(t_max_));
  if (samples_ > 0) {
    opts.samples = samples_;
    opts.t_samples = samples_;
  }
  LemmaReport r;
  switch (lemma_) {
    case 1: r = verify_lemma1(*s, w, opts); break;
    case 2: r = verify_lemma2(*s, w, opts); break;
    case 3: r = verify_lemma3(*s, w, opts); break;
    default: r = verify_lemma4(*s, w, opts); break;
  }
  emit_json(c, "verify-lemma", Json{{"spec", s->name()}, {"report", to_json(r)}});
  return r.passed ? kExitOk : kExitFail;
}

int Runner::cmd_witness_theorem1() {
  const RunConfig c = config();
  const FunctionPtr s = load_function(fn_);
  const double ell = parse_number(ell_);
  const double eps = number_or(eps_, 0.1);
  const double lambda = number_or(lambda_, 2.0);
  const double x0 = number_or(x0_, std::exp(1.0));
  const double llh = number_or(loglog_horizon_, 12.0);
  const BnSequence bn = construct_bn(*s, ell, eps, lambda, x0, max_n_, llh, c.grid_density);
  const auto violation = check_bn(bn);
  Json result{{"spec", s->name()}, {"bn", to_json(bn)}};

  bool liminf_ok = true;
  const SlowWindow w{1.0, x0, lambda};
  const WindowCheck wc = check_window(*s, w, WindowMode::decrease, c.log_horizon, c.grid_density);
  if (wc.checked && wc.passed) {
    std::vector<int> ps = probes_;
    if (ps.empty())
      for (int p = 1; p <= 10; ++p) ps.push_back(p);
    const LiminfReport lr = check_liminf_s_over_x(*s, w, ps, c.log_horizon);
    result["liminf"] = to_json(lr);
    liminf_ok = lr.passed;
  } else {
    result["liminf"] = nullptr;
    result["liminf_note"] = "no decrease window with eps 1 at (x0, lambda); probe skipped";
  }
  emit_json(c, "witness-theorem1", std::move(result));
  if (bn.steps.empty()) return kExitInconclusive;
  return !violation && liminf_ok ? kExitOk : kExitFail;
}

int Runner::cmd_j_decomp() {
  const RunConfig c = config();
  const FunctionPtr s = load_function(fn_);
  const double x0 = number_or(x0_, std::exp(2.0));
  std::vector<std::pair<double, double>> pairs;
  if (random_ > 0) {
    const double u0 = std::log(x0);
    const double u_cap = std::min(c.log_horizon, std::log(represented_limit(*s)));
    if (!(u_cap > u0)) throw PreconditionError("no room between x0 and the horizon");
    std::mt19937_64 rng(c.seed);
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < random_; ++i) {
      const double ux = u0 + (u_cap - u0) * unit();
      const double ut = ux + (u_cap - ux) * unit();
      if (!(ut > ux)) continue;
      pairs.emplace_back(std::exp(ux), std::exp(ut));
    }
  } else {
    pairs.emplace_back(parse_number(x_), parse_number(t_));
  }
  Json rows = Json::array();
  bool all = true;
  double worst = 0.0;
  for (const auto& [x, t] : pairs) {
    const JDecomposition j = j_decomposition(*s, x, t, x0, c.abs_tol);
    rows.push_back(to_json(j, s->is_complex()));
    all = all && j.holds;
    worst = std::max(worst, j.residual);
  }
  emit_json(c, "j-decomp", Json{{"spec", s->name()}, {"holds", all}, {"worst_residual", worst}, {"cases", rows}});
  return all ? kExitOk : kExitFail;
}

int Runner::cmd_suite() {
  RunConfig c = config();
  if (!log_horizon_.empty()) c.log_horizon = std::log(parse_number(log_horizon_));
  if (!corpus_.empty()) c.corpus = corpus_;
  if (!theorems_.empty()) c.theorems = theorems_;
  c.validate();
  std::vector<FunctionPtr> extra;
  for (const auto& f : extra_files_) extra.push_back(load_file_spec(f));
  const SuiteReport r = run_suite(c, extra);
  if (json_) out_ << envelope(c, "suite", to_json(r)).dump(2) << "\n";
  else out_ << suite_table(r);
  if (!c.out_dir.empty()) write_evidence_bundle(r, c.out_dir);
  for (const auto& ev : r.evidence) {
    for (const auto& e : ev.errors) err_ << "warning: " << ev.name << ": " << e << "\n";
    if (!ev.curve) continue;
    std::vector<double> v, re;
    for (std::size_t i = 0; i < ev.curve->grid.size(); ++i) {
      v.push_back(std::log(std::log(ev.curve->grid[i])));
      re.push_back(ev.curve->tau[i].real());
    }
    plot("tau_" + ev.name + ".dat", two_column("loglog_t tau_re", v, re));
  }
  return r.has_counterexample() ? kExitFail : kExitOk;
}

int Runner::cmd_corpus_list() {
  if (json_) {
    Json arr = Json::array();
    for (const auto& e : builtin_corpus()) arr.push_back(Json::parse(spec_to_json(*e.spec)));
    out_ << arr.dump(2) << "\n";
    return kExitOk;
  }
  for (const auto& e : builtin_corpus()) {
    out_ << e.name << "  " << (e.spec->is_complex() ? "complex" : "real") << "  " << e.description << "\n";
    out_ << "    " << print_spec(*e.spec) << "\n";
  }
  return kExitOk;
}

int Runner::run(const std::vector<std::string>& args) {
  CLI::App app{"Logarithmic means, statistical limits and Tauberian window checks", "tauberctl"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--config", g_.config_path, "JSON RunConfig merged over the defaults");
  app.add_option("--out", g_.out_dir, "directory for reports and evidence bundles");
  app.add_option("--plot-data", g_.plot_dir, "directory for two-column data files");
  app.add_option("--jobs", g_.jobs, "worker threads (default: available parallelism)");
  app.add_option("--seed", g_.seed, "seed for sampled checks");

  auto* mean = app.add_subcommand("mean", "logarithmic mean tau(t)");
  add_fn_options(mean, fn_);
  mean->add_option("--t-max", t_max_, "largest t; with --points 1 the only t")->required();
  mean->add_option("--t-min", t_min_, "smallest t of the curve (default e)");
  mean->add_option("--points", points_, "points, uniform in log log t");

  auto* stat = app.add_subcommand("stat-limit", "statistical (and ordinary) limit detection");
  add_fn_options(stat, fn_);
  stat->add_option("--horizons", horizons_, "horizons b (default: from the config)")->delimiter(',');
  stat->add_option("--ell", ell_, "measure densities around this value instead of detecting");
  stat->add_option("--eps", eps_, "with --ell and --b: the exceptional set itself");
  stat->add_option("--b", b_);
  stat->add_flag("--ordinary", ordinary_, "also run the ordinary limit detector");

  auto* mod = app.add_subcommand("modulus", "slow decrease / oscillation moduli and windows");
  add_fn_options(mod, fn_);
  mod->add_option("--mode", mode_, "decrease, increase or oscillation")
      ->check(CLI::IsMember({"decrease", "increase", "oscillation"}));
  mod->add_option("--lambdas", lambdas_, "lambda values")->delimiter(',');
  mod->add_option("--x-from", x_from_, "x runs over [X, X^p] (default X = e^32)");
  mod->add_option("--x-power", x_power_, "p (default 4)");
  mod->add_option("--eps", eps_, "check a window (with --x0 --lambda) or search one (--find)");
  mod->add_option("--x0", x0_);
  mod->add_option("--lambda", lambda_);
  mod->add_flag("--find", find_);

  auto* cond = app.add_subcommand("check-condition", "Landau or Hardy integrand bounds");
  cond->add_option("condition", condition_)->required()->check(CLI::IsMember({"landau", "hardy"}));
  add_fn_options(cond, fn_);
  cond->add_option("--C", C_, "constant C");
  cond->add_option("--x0", x0_);
  cond->add_option("--t-max", t_max_, "horizon (default e^log_horizon)");
  cond->add_flag("--u-weighted", u_weighted_, "Hardy bound on u log u |f(u)|");
  cond->add_flag("--primitive", with_primitive_, "also report the window modulus of the primitive");

  auto* lemma = app.add_subcommand("verify-lemma", "sampled check of a lemma bound");
  lemma->add_option("id,--id", lemma_)->required()->check(CLI::Range(1, 4));
  add_fn_options(lemma, fn_);
  lemma->add_option("--lambda", lambda_);
  lemma->add_option("--x0", x0_);
  lemma->add_option("--eps", eps_, "window eps (default 1)");
  lemma->add_option("--t-max", t_max_, "sampling cap for t (default e^64)");
  lemma->add_option("--samples", samples_);

  auto* w1 = app.add_subcommand("witness-theorem1", "b_n construction and the s(x)/x probe");
  add_fn_options(w1, fn_);
  w1->add_option("--ell", ell_)->required();
  w1->add_option("--eps", eps_, "default 0.1");
  w1->add_option("--lambda", lambda_);
  w1->add_option("--x0", x0_);
  w1->add_option("--max-n", max_n_);
  w1->add_option("--loglog-horizon", loglog_horizon_);
  w1->add_option("--probes", probes_)->delimiter(',');

  auto* jd = app.add_subcommand("j-decomp", "four-term decomposition of tau(t) - tau(x)");
  add_fn_options(jd, fn_);
  jd->add_option("--x", x_);
  jd->add_option("--t", t_);
  jd->add_option("--x0", x0_, "default e^2");
  jd->add_option("--random", random_, "random (x, t) pairs instead of --x --t");

  auto* suite = app.add_subcommand("suite", "theorem x function cases");
  suite->add_option("--fn-file", extra_files_, "extra functions");
  suite->add_option("--corpus", corpus_, "corpus subset")->delimiter(',');
  suite->add_option("--theorems", theorems_)->delimiter(',');
  suite->add_option("--horizon", log_horizon_, "largest horizon (default e^32)");
  suite->add_flag("--json", json_, "JSON instead of the table");

  auto* corpus = app.add_subcommand("corpus", "built-in functions");
  auto* list = corpus->add_subcommand("list");
  list->add_flag("--json", json_);
  corpus->require_subcommand(1);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out_, err_);
    return code == 0 ? kExitOk : kExitUsage;
  }
  g_.jobs_set = app.count("--jobs") > 0;
  g_.seed_set = app.count("--seed") > 0;

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (mean->parsed()) return cmd_mean();
    if (stat->parsed()) return cmd_stat_limit();
    if (mod->parsed()) return cmd_modulus();
    if (cond->parsed()) return cmd_check_condition();
    if (lemma->parsed()) return cmd_verify_lemma();
    if (w1->parsed()) return cmd_witness_theorem1();
    if (jd->parsed()) {
      if (random_ <= 0 && (x_.empty() || t_.empty())) throw PreconditionError("j-decomp needs --x and --t, or --random");
      return cmd_j_decomp();
    }
    if (suite->parsed()) return cmd_suite();
    if (list->parsed()) return cmd_corpus_list();
  } catch (const ParseError& e) {
    err_ << "tauberctl " << name << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err_ << "tauberctl " << name << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const HorizonError& e) {
    err_ << "tauberctl " << name << ": beyond a computable horizon: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const QuadratureError& e) {
    err_ << "tauberctl " << name << ": quadrature did not converge: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const Error& e) {
    err_ << "tauberctl " << name << ": " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner r(out, err);
  return r.run(args);
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace tauber
