#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tauber/conditions.hpp"
#include "tauber/function.hpp"

namespace tauber {

// t_0 = t, t_p = t_{p-1}^{1/lambda}, kept as logs: log t_p = log t / lambda^p.
// q is the index with t_{q+1} <= x < t_q.
struct GeometricChain {
  double log_t0 = 0.0;
  double lambda = 2.0;
  double log_x = 0.0;
  std::vector<double> log_points;  // log t_0 .. log t_{q+1}
  int q = 0;

  // (1/log lambda) log(log t_0 / log x), the strict upper bound on q.
  double q_bound() const;
};

// Requires 0 < log_x < log_t / lambda.
GeometricChain build_chain(double log_t, double log_x, double lambda);

// sum_{p=1}^{q} (s(t_{p-1}) - s(t_p)) + (s(t_q) - s(x)).
Value telescoping_sum(const Function& s, const GeometricChain& chain);

double lemma_b1(double lambda);
double lemma_b2(double lambda, double x0);

inline constexpr double kLemmaMarginTol = 1e-7;

struct LemmaOptions {
  std::size_t samples = 10000;   // pairs (lemmas 1, 2)
  std::size_t t_samples = 256;   // t values (lemmas 3, 4)
  std::uint64_t seed = 1;
  double log_t_max = 64.0;        // sampling cap for t
  double window_log_horizon = 32.0;
  double abs_tol = 1e-9;
  int density = kDefaultGridDensity;
};

struct LemmaReport {
  int lemma = 1;
  SlowWindow window;
  WindowCheck window_check;
  double B1 = 0.0;
  double B2 = 0.0;
  // lemmas 1, 3: LHS - RHS; lemmas 2, 4: RHS - LHS; pass iff >= -1e-7
  double margin = 0.0;
  Witness worst;  // logs of the extremal (x, t); x = x0 for lemmas 3, 4
  std::size_t samples = 0;
  std::size_t gate_violations = 0;  // pairs with log lambda >= log(log t / log x)
  std::optional<GeometricChain> worst_chain;
  // lemmas 3, 4 at the worst t: integrals over [x0, t^{1/lambda}] and
  // [t^{1/lambda}, t], each divided by log t
  double lower_part = 0.0;
  double upper_part = 0.0;
  double lhs = 0.0;
  double log_t_max = 0.0;
  bool passed = false;
};

// The window is validated with eps = 1 before sampling; an invalid window
// throws PreconditionError.
LemmaReport verify_lemma1(const Function& s, SlowWindow window, const LemmaOptions& opts = {});
LemmaReport verify_lemma2(const Function& s, SlowWindow window, const LemmaOptions& opts = {});
// Requires x0 > e. t is sampled log-log uniformly in (x0^lambda, e^log_t_max].
LemmaReport verify_lemma3(const Function& s, SlowWindow window, const LemmaOptions& opts = {});
LemmaReport verify_lemma4(const Function& s, SlowWindow window, const LemmaOptions& opts = {});

// Single-t evaluation of the lemma 3/4 left-hand side; `absolute` selects
// |s(t) - s(x)|.
struct LemmaIntegral {
  double lhs = 0.0;
  double lower_part = 0.0;
  double upper_part = 0.0;
};
LemmaIntegral lemma_integral(const Function& s, double x0, double lambda, double log_t, bool absolute,
                             double abs_tol = 1e-9);

struct BnStep {
  double log_b = 0.0;  // log b_n
  int case_kind = 1;   // 1: found in (b^{sqrt lambda}, b^lambda); 2: beyond b^lambda
  double value = 0.0;  // s(b_n)
  // Measure of (b^{sqrt lambda}, b^lambda) relative to b (as a log) and to
  // its right end, for the step that produced b_{n+1}.
  double log_measure_over_b = 0.0;
  double measure_over_right_end = 0.0;
};

struct BnSequence {
  std::vector<BnStep> steps;  // b_1, b_2, ...
  int n0 = 0;                 // last index reached through case (ii); 0 if none
  double ell = 0.0, eps = 0.0, lambda = 0.0, x0 = 0.0;
  double loglog_horizon = 0.0;
  int density = 0;
  std::string status;  // "complete", "horizon exhausted", "no b1 found"
};

// Lattice uniform in log log x (density points per unit) up to
// log log x = loglog_horizon; evaluation in log space.
BnSequence construct_bn(const Function& s, double ell, double eps, double lambda, double x0, int max_n,
                        double loglog_horizon = 12.0, int density = kDefaultGridDensity);

// Invariants of a sequence: |s(b_n) - ell| <= eps, b_{n+1} > b_n^{sqrt lambda},
// b_{n+1} < b_n^lambda beyond n0. Returns the first violation, if any.
std::optional<std::string> check_bn(const BnSequence& seq);

struct JDecomposition {
  double x = 0.0, t = 0.0, x0 = 0.0;
  Value J1, J2, J3, J4;
  Value total;  // tau(t) - tau(x)
  double residual = 0.0;
  double abs_tol = 0.0;
  bool holds = false;  // |J1 + J2 + J3 + J4 - total| <= 5 abs_tol
};

JDecomposition j_decomposition(const Function& s, double x, double t, double x0, double abs_tol = 1e-9);

struct LiminfProbe {
  int p = 0;
  double log_x = 0.0;  // log of x0^{lambda^p}
  double ratio = 0.0;  // s(x)/x
  double bound = 0.0;  // (s(x0) - p)/x
  bool holds = false;
};

struct LiminfReport {
  SlowWindow window;
  std::vector<LiminfProbe> probes;
  std::vector<int> capped;  // probes skipped because x0^{lambda^p} > 1e300
  bool passed = false;
};

LiminfReport check_liminf_s_over_x(const Function& s, SlowWindow window, const std::vector<int>& probe_ps,
                                   double window_log_horizon = 32.0);

}  // namespace tauber
