#pragma once

#include <functional>
#include <optional>
#include <span>

#include "tauber/function.hpp"

namespace tauber {

struct QuadOptions {
  double abs_tol = 1e-9;
  double rel_tol = 0.0;  // accept when error <= max(abs_tol, rel_tol * |value|)
  std::size_t max_intervals = 200000;
};

struct QuadResult {
  Value value;
  double error = 0.0;  // estimated absolute error
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
};

// Globally adaptive 7/15-point Gauss-Kronrod integration of g over
// [cuts.front(), cuts.back()]. Every cut is a mandatory split; `constant`
// may report a segment as constant, in which case it is integrated exactly.
// Throws QuadratureError when the interval budget is exhausted.
QuadResult integrate_segments(const std::function<Value(double)>& g, std::span<const double> cuts,
                              const std::function<std::optional<Value>(std::size_t)>& constant,
                              const QuadOptions& opts);

enum class Kernel {
  logarithmic,  // s(x)/x dx
  plain,        // f(x) dx
};

// Integral of f against the kernel over [a, b], computed in u = log x with
// splits at every breakpoint of f inside (a, b).
QuadResult integrate(const Function& f, double a, double b, Kernel kernel, const QuadOptions& opts);

}  // namespace tauber
