#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tauber/function.hpp"

namespace tauber {

// decrease: inf (s(t) - s(x)); increase: sup (s(t) - s(x));
// oscillation: sup |s(t) - s(x)|; all over x < t <= x^lambda.
enum class WindowMode { decrease, increase, oscillation };
std::string to_string(WindowMode mode);

// Finite stand-in for x -> infinity: x ranges over [X, X^Lambda].
struct XHorizon {
  double log_X = 32.0;
  double Lambda = 4.0;
};

inline constexpr int kDefaultGridDensity = 200;

struct Witness {
  double log_x = 0.0;
  double log_t = 0.0;
};

struct ModulusCurve {
  WindowMode mode = WindowMode::decrease;
  std::vector<double> lambdas;  // descending
  std::vector<double> values;
  std::vector<Witness> witnesses;
  double log_x_lo = 0.0;
  double log_x_hi = 0.0;
  int density = kDefaultGridDensity;

  // Columns lambda, value, witness_x, witness_t.
  std::string to_csv() const;
};

// Extremum over x in [e^log_x_lo, e^log_x_hi] and t in (x, x^lambda], on a
// lattice uniform in log log x with `density` points per unit, plus every
// breakpoint (and the point just below it), the exact window edge x^lambda,
// and local refinement on smooth segments. Throws HorizonError when a
// window leaves the represented range of s.
ModulusCurve window_modulus(const Function& s, WindowMode mode, std::vector<double> lambdas, double log_x_lo,
                            double log_x_hi, int density = kDefaultGridDensity);

// Real s only.
ModulusCurve slow_decrease_modulus(const Function& s, std::vector<double> lambdas, const XHorizon& horizon = {},
                                   int density = kDefaultGridDensity);
ModulusCurve slow_oscillation_modulus(const Function& s, std::vector<double> lambdas,
                                      const XHorizon& horizon = {}, int density = kDefaultGridDensity);

struct SlowWindow {
  double eps = 1.0;
  double x0 = 2.718281828459045;
  double lambda = 2.0;
};

struct WindowCheck {
  bool checked = false;  // false when the represented range leaves no x to test
  bool passed = false;
  double value = 0.0;    // modulus over the checked range
  Witness witness;
  double log_x_hi = 0.0;  // upper end of the x range actually checked
};

inline constexpr double kWindowSlack = 1e-9;

// Checks the window for x in [x0, e^log_horizon], truncated so every window
// stays inside the represented range of s.
WindowCheck check_window(const Function& s, const SlowWindow& window, WindowMode mode, double log_horizon = 32.0,
                         int density = kDefaultGridDensity);

struct WindowSearch {
  std::optional<SlowWindow> window;
  int evaluations = 0;
  std::vector<std::pair<SlowWindow, WindowCheck>> attempts;
};

// lambda = 1 + 2^-k (k = 0..7) from 2 downward, inside x0 = e, e^2, e^4,
// e^8, e^16; first passing pair wins.
WindowSearch find_window(const Function& s, double eps, WindowMode mode, int budget = 40,
                         double log_horizon = 32.0, int density = kDefaultGridDensity);

std::vector<double> default_lambda_schedule();
std::vector<double> default_x0_schedule();

struct TauberConstant {
  double C = 1.0;
  double x0 = 1.0;
};

struct ConditionReport {
  std::string condition;  // "landau" | "hardy"
  bool passed = false;
  double extremum = 0.0;  // min (Landau) or max (Hardy) of the weighted value
  double witness_u = 0.0;
  TauberConstant constant;
  double horizon = 0.0;
  bool u_weighted = false;
};

inline constexpr double kConditionSlack = 1e-9;

// min of u log(u) f(u) over (x0, horizon] against -C.
ConditionReport check_landau(const Function& f, const TauberConstant& c, double horizon);

// max of log(u) |f(u)| (or u log(u) |f(u)| when u_weighted) against C.
ConditionReport check_hardy(const Function& f, const TauberConstant& c, double horizon, bool u_weighted = false);

// s(x) = int_1^x f(u) du on [1, e^log_horizon], backed by a cumulative
// integral with the mean module's tolerance contract.
FunctionPtr primitive(FunctionPtr f, double log_horizon = 64.0, double abs_tol = 1e-9);

}  // namespace tauber
