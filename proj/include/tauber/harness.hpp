#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tauber/conditions.hpp"
#include "tauber/function.hpp"
#include "tauber/logmean.hpp"
#include "tauber/statlimit.hpp"

namespace tauber {

struct RunConfig {
  double log_horizon = 32.0;
  // Detector horizons are e^{log_horizon * f} for each fraction f.
  std::vector<double> horizon_fractions{0.125, 0.25, 0.5, 1.0};
  double abs_tol = 1e-9;
  double ordinary_tol = 0.04;
  double tau_ordinary_tol = 0.08;
  double decay_threshold = 0.02;
  std::vector<double> epsilons{0.5, 0.25, 0.1};
  std::vector<double> window_epsilons{1.0, 0.5, 0.1};
  int grid_density = kDefaultGridDensity;
  int search_budget = 40;
  int mean_points_per_unit = 64;
  unsigned jobs = 0;  // 0: available parallelism
  std::uint64_t seed = 1;
  std::string out_dir;
  std::vector<std::string> corpus;  // empty: every built-in member
  std::vector<std::string> theorems{"A", "B", "1", "2", "3", "4"};

  std::vector<double> horizons() const;
  // Throws PreconditionError on nonpositive tolerances or bad horizons.
  void validate() const;
};

enum class Tri { yes, no, unknown };
std::string to_string(Tri t);

// Detector results for one function, shared by all theorem cases.
struct SpecEvidence {
  std::string name;
  bool is_complex = false;
  std::vector<double> horizons;
  std::optional<MeanCurve> curve;
  double tau_interpolation_error = 0.0;
  std::optional<LimitVerdict> s_ordinary;
  std::optional<LimitVerdict> s_statistical;
  std::optional<LimitVerdict> tau_ordinary;
  std::optional<LimitVerdict> tau_statistical;
  // Window searches by eps; a search stops at the first eps without a window.
  std::map<double, WindowSearch> decrease_windows;
  std::map<double, WindowSearch> oscillation_windows;
  std::vector<std::string> errors;  // detector failures, rendered
};

SpecEvidence gather_evidence(const FunctionPtr& s, const RunConfig& config);

enum class Outcome { pass, consistent_control, inconclusive, counterexample };
std::string to_string(Outcome o);

struct TheoremCase {
  std::string theorem;  // A B 1 2 3 4
  std::string spec;
  Tri limit_hypothesis = Tri::unknown;
  Tri window_hypothesis = Tri::unknown;
  Tri hypothesis = Tri::unknown;
  Tri conclusion = Tri::unknown;
  std::optional<double> hypothesis_ell;  // real part of the limit used
  std::optional<double> conclusion_ell;
  double combined_tol = 0.0;
  std::vector<double> horizons;
  Outcome outcome = Outcome::inconclusive;
  std::string detail;
};

// Hypothesis: limit evidence (tau ordinary for A/B, s statistical for 1/2,
// tau statistical for 3/4) and windows for every window eps (decrease for
// A/1/3, oscillation for B/2/4). Conclusion: ordinary limit of s at the
// same ell within the combined detector tolerance. Returns nullopt when the
// theorem does not apply (decrease windows on a complex function).
std::optional<TheoremCase> run_theorem(const std::string& theorem, const SpecEvidence& ev, const RunConfig& config);

struct SuiteReport {
  RunConfig config;
  std::vector<TheoremCase> cases;  // ordered by (theorem, spec)
  std::vector<SpecEvidence> evidence;
  std::size_t count(Outcome o) const;
  bool has_counterexample() const { return count(Outcome::counterexample) > 0; }
};

// Every applicable theorem x function case (windows of decrease type need a
// real function), evidence gathered in a worker pool.
SuiteReport run_suite(const RunConfig& config, const std::vector<FunctionPtr>& extra = {});

// The built-in members selected by config.corpus.
std::vector<FunctionPtr> selected_corpus(const RunConfig& config);

}  // namespace tauber
