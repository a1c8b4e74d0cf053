#pragma once

#include <complex>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tauber {

using Value = std::complex<double>;

// A locally integrable function on [1, inf), real or complex valued.
//
// Implementations are immutable; every member is safe to call
// concurrently. Analysis code only relies on this interface, so parsed
// specs, primitives, and sampled mean curves are interchangeable.
class Function {
 public:
  virtual ~Function() = default;

  virtual const std::string& name() const = 0;
  virtual bool is_complex() const = 0;

  // Value at x >= 1. Throws DomainError / HorizonError.
  virtual Value eval(double x) const = 0;

  // Value at x = e^log_x; valid past the double range where supported.
  virtual Value eval_log(double log_x) const;

  // Points strictly inside (lo, hi) where the function may be
  // discontinuous or change formula, ascending.
  virtual std::vector<double> breakpoints(double lo, double hi) const;

  // Value if the function is constant on the smooth segment holding x.
  virtual std::optional<Value> constant_near(double x) const;

  // log of the largest x on which the function is represented.
  virtual double log_availability() const;
};

using FunctionPtr = std::shared_ptr<const Function>;

// Largest x safely inside the represented range: e^{log_availability}
// shrunk by a relative 1e-13 to absorb the rounding of exp(log(.)).
double represented_limit(const Function& f);

// -f, sharing breakpoints with f.
FunctionPtr negate(FunctionPtr f);

// a*f + b*g with the union of breakpoints.
FunctionPtr linear_combination(double a, FunctionPtr f, double b, FunctionPtr g);

// Real part of a value, checking that the imaginary part vanishes.
double real_value(const Value& v);

}  // namespace tauber
