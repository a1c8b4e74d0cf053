#pragma once

#include <span>
#include <string>
#include <vector>

#include "tauber/function.hpp"
#include "tauber/quadrature.hpp"

namespace tauber {

inline constexpr double kDefaultAbsTol = 1e-9;

// |Q - int_a^b s(x)/x dx| <= abs_tol, splitting at every breakpoint of s.
Value integrate_weighted(const Function& s, double a, double b, double abs_tol = kDefaultAbsTol);

// tau(t) = (1/log t) int_1^t s(x)/x dx, accurate to abs_tol.
Value log_mean(const Function& s, double t, double abs_tol = kDefaultAbsTol);

// Memoized int_1^x of the kernel at a set of knots. Knot i carries the
// integral over [knot i-1, knot i] to abs_tol * (log x_i - log x_{i-1}),
// so the value at any knot is within abs_tol * log x of the truth.
class CumulativeIntegral {
 public:
  CumulativeIntegral(FunctionPtr s, std::vector<double> knots, double abs_tol,
                     Kernel kernel = Kernel::logarithmic);

  const std::vector<double>& breakpoints() const noexcept { return knots_; }
  const std::vector<Value>& partial_values() const noexcept { return values_; }
  double abs_tol() const noexcept { return abs_tol_; }
  double upper() const noexcept { return knots_.back(); }

  // int_1^x for 1 <= x <= upper(): nearest knot below plus a remainder.
  Value at(double x) const;

 private:
  FunctionPtr s_;
  std::vector<double> knots_;
  std::vector<Value> values_;
  double abs_tol_;
  Kernel kernel_;
};

// Knots for a cumulative integral of s up to x_max: eight steps on
// [1, e], then `per_unit` points per unit of log log x, plus every
// breakpoint of s and the extra points given.
std::vector<double> cumulative_knots(const Function& s, double x_max, int per_unit = 64,
                                     std::span<const double> extra = {});

struct MeanCurve {
  std::vector<double> grid;
  std::vector<Value> tau;
  double abs_tol = kDefaultAbsTol;

  // Columns t, log_t, loglog_t, tau_re, tau_im.
  std::string to_csv() const;
};

// Grid uniform in log log t from t_min to t_max, computed in one pass.
MeanCurve mean_curve(FunctionPtr s, double t_min, double t_max, std::size_t n_points,
                     double abs_tol = kDefaultAbsTol);

// tau as a Function of t, piecewise linear in log log t through the
// even-indexed nodes of `curve` (which needs an odd number of points);
// the odd-indexed nodes are held out to estimate the interpolation error.
// Below the first node tau is held at its first value.
struct MeanInterpolant {
  FunctionPtr fn;
  double error_estimate = 0.0;  // max deviation at held-out nodes
};
MeanInterpolant interpolate_mean_curve(const MeanCurve& curve, bool is_complex, std::string name = "tau");

// Points for mean_curve so that interpolate_mean_curve sees `per_unit`
// nodes per unit of log log t: 2 * ceil(per_unit * span) + 1.
std::size_t interpolation_points(double t_min, double t_max, int per_unit);

// tau as a Function on [1, e^log_horizon], backed by a cumulative integral.
// tau(1) is taken as s(1), its limit from the right.
FunctionPtr log_mean_function(FunctionPtr s, double log_horizon, double abs_tol = kDefaultAbsTol);

}  // namespace tauber
