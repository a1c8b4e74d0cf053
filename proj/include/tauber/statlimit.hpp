#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tauber/function.hpp"

namespace tauber {

using IntervalSet = std::vector<std::pair<double, double>>;

struct ExceptionalSet {
  IntervalSet intervals;  // disjoint, ascending
  bool exact = true;      // false when root isolation failed somewhere
  // Cells of the finest grid whose sign could not be resolved; the true
  // set differs from `intervals` only inside them.
  IntervalSet unresolved;
};

// {x in (a, b) : |s(x) - ell| > eps}, by root isolation of
// |s - ell|^2 - eps^2 on each smooth segment.
ExceptionalSet exceptional_set(const Function& s, Value ell, double eps, double b, double a = 1.0);

struct MeasureResult {
  double measure = 0.0;
  bool exact = true;
  // Bounds when isolation failed: the measure lies in [lo, hi].
  double lo = 0.0;
  double hi = 0.0;
  // Stratified Monte Carlo estimate with a 3 sigma radius, only when inexact.
  std::optional<double> monte_carlo;
  double monte_carlo_radius = 0.0;
};

MeasureResult exceptional_measure(const Function& s, Value ell, double eps, double b, double a = 1.0);

// Measure of an interval set intersected with (lo, hi).
double measure_within(const IntervalSet& set, double lo, double hi);

struct DensityProfile {
  Value ell;
  std::vector<double> epsilons;
  std::vector<double> horizons;
  std::vector<std::vector<double>> measure;  // [eps][b]
  std::vector<std::vector<double>> density;  // measure / (b - 1)
  bool exact = true;

  // Columns eps, b, measure, density.
  std::string to_csv() const;
};

DensityProfile density_profile(const Function& s, Value ell, const std::vector<double>& epsilons,
                               const std::vector<double>& horizons);

enum class LimitKind { none, statistical, ordinary, inconclusive };
std::string to_string(LimitKind kind);

struct LimitEvidence {
  std::vector<double> horizons;  // after truncation to availability
  double tail_lo = 0.0;
  double tail_hi = 0.0;
  // Statistical detector.
  std::optional<DensityProfile> profile;
  // Ordinary detector.
  std::optional<double> oscillation;
  Value tail_min;  // componentwise
  Value tail_max;
};

struct LimitVerdict {
  LimitKind kind = LimitKind::none;
  Value ell;
  LimitEvidence evidence;
  std::string note;
};

struct StatOptions {
  double decay_threshold = 0.02;
  double ordinary_tol = 0.04;
  double monotone_slack = 1e-6;
};

inline const std::vector<double> kDefaultEpsilons{0.5, 0.25, 0.1};

// Horizons clipped to the function's availability, deduplicated.
// Requires at least 3 horizons with h_last / h_first >= 100 afterwards.
std::vector<double> usable_horizons(const Function& s, std::vector<double> horizons);

// Finite-horizon heuristic for st-lim s = ell; evidence, not proof.
LimitVerdict detect_statistical_limit(const Function& s, const std::vector<double>& horizons,
                                      const std::vector<double>& epsilons = kDefaultEpsilons,
                                      const StatOptions& opts = {});

// Oscillation of s over the last horizon interval against tol.
LimitVerdict detect_ordinary_limit(const Function& s, const std::vector<double>& horizons, double tol = 0.04);

}  // namespace tauber
