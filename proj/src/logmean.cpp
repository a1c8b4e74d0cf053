#include "tauber/logmean.hpp"

#include <algorithm>
#include <cmath>

#include "tauber/error.hpp"
#include "tauber/expr.hpp"

namespace tauber {

Value integrate_weighted(const Function& s, double a, double b, double abs_tol) {
  if (!(abs_tol > 0)) throw PreconditionError("abs_tol must be positive");
  if (!(a >= 1.0) || !(b > a)) throw PreconditionError("integrate_weighted needs 1 <= a < b");
  QuadOptions opts;
  opts.abs_tol = abs_tol;
  return integrate(s, a, b, Kernel::logarithmic, opts).value;
}

Value log_mean(const Function& s, double t, double abs_tol) {
  if (!(t > 1.0)) throw PreconditionError("log_mean needs t > 1");
  const double lt = std::log(t);
  return integrate_weighted(s, 1.0, t, abs_tol * lt) / lt;
}

CumulativeIntegral::CumulativeIntegral(FunctionPtr s, std::vector<double> knots, double abs_tol, Kernel kernel)
    : s_(std::move(s)), knots_(std::move(knots)), abs_tol_(abs_tol), kernel_(kernel) {
  if (!(abs_tol > 0)) throw PreconditionError("abs_tol must be positive");
  knots_.push_back(1.0);
  std::sort(knots_.begin(), knots_.end());
  knots_.erase(std::unique(knots_.begin(), knots_.end()), knots_.end());
  if (knots_.front() < 1.0) throw PreconditionError("cumulative integral knots must be >= 1");
  values_.assign(knots_.size(), Value{});
  QuadOptions opts;
  if (kernel_ == Kernel::plain) opts.rel_tol = abs_tol_;
  Value acc{};
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    opts.abs_tol = abs_tol_ * (std::log(knots_[i]) - std::log(knots_[i - 1]));
    if (!(opts.abs_tol > 0)) opts.abs_tol = abs_tol_ * 1e-12;
    acc += integrate(*s_, knots_[i - 1], knots_[i], kernel_, opts).value;
    values_[i] = acc;
  }
}

Value CumulativeIntegral::at(double x) const {
  if (!(x >= 1.0) || x > upper()) throw PreconditionError("cumulative integral queried outside [1, upper]");
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
  if (knots_[i] == x) return values_[i];
  QuadOptions opts;
  opts.abs_tol = abs_tol_ * std::max(std::log(x) - std::log(knots_[i]), 1e-3);
  if (kernel_ == Kernel::plain) opts.rel_tol = abs_tol_;
  return values_[i] + integrate(*s_, knots_[i], x, kernel_, opts).value;
}

std::vector<double> cumulative_knots(const Function& s, double x_max, int per_unit, std::span<const double> extra) {
  if (!(x_max > 1.0)) throw PreconditionError("cumulative knots need x_max > 1");
  const double u_max = std::log(x_max);
  std::vector<double> knots{1.0};
  for (int k = 1; k <= 8 && k / 8.0 < u_max; ++k) knots.push_back(std::exp(k / 8.0));
  for (int j = 1;; ++j) {
    const double u = std::exp(static_cast<double>(j) / per_unit);
    if (u >= u_max) break;
    knots.push_back(std::exp(u));
  }
  knots.push_back(x_max);
  for (double p : s.breakpoints(1.0, x_max)) knots.push_back(p);
  for (double p : extra) {
    if (p >= 1.0 && p <= x_max) knots.push_back(p);
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  return knots;
}

std::string MeanCurve::to_csv() const {
  std::string out = "t,log_t,loglog_t,tau_re,tau_im\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double lt = std::log(grid[i]);
    out += format_number(grid[i]) + "," + format_number(lt) + "," + format_number(std::log(lt)) + "," +
           format_number(tau[i].real()) + "," + format_number(tau[i].imag()) + "\n";
  }
  return out;
}

MeanCurve mean_curve(FunctionPtr s, double t_min, double t_max, std::size_t n_points, double abs_tol) {
  if (!(t_min > 1.0) || !(t_max > t_min)) throw PreconditionError("mean_curve needs 1 < t_min < t_max");
  if (n_points < 2) throw PreconditionError("mean_curve needs at least 2 points");
  MeanCurve curve;
  curve.abs_tol = abs_tol;
  const double ll_min = std::log(std::log(t_min));
  const double ll_max = std::log(std::log(t_max));
  curve.grid.resize(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double ll = ll_min + (ll_max - ll_min) * static_cast<double>(i) / static_cast<double>(n_points - 1);
    curve.grid[i] = std::exp(std::exp(ll));
  }
  curve.grid.front() = t_min;
  curve.grid.back() = t_max;
  for (std::size_t i = 1; i < n_points; ++i) {
    if (!(curve.grid[i] > curve.grid[i - 1]))
      throw PreconditionError("mean_curve grid is not strictly increasing at double resolution");
  }
  const CumulativeIntegral cum(s, cumulative_knots(*s, t_max, 64, curve.grid), abs_tol);
  curve.tau.resize(n_points);
  for (std::size_t i = 0; i < n_points; ++i) curve.tau[i] = cum.at(curve.grid[i]) / std::log(curve.grid[i]);
  return curve;
}

namespace {

class LogMeanFunction final : public Function {
 public:
  LogMeanFunction(FunctionPtr s, double log_horizon, double abs_tol)
      : s_(s),
        name_("tau[" + s->name() + "]"),
        log_horizon_(std::min(log_horizon, s->log_availability())),
        cum_(s, cumulative_knots(*s, std::exp(log_horizon_)), abs_tol) {}

  const std::string& name() const override { return name_; }
  bool is_complex() const override { return s_->is_complex(); }
  Value eval(double x) const override {
    if (!(x >= 1.0)) throw DomainError(name_ + ": argument below 1");
    if (std::log(x) > log_horizon_) throw HorizonError(name_ + ": argument beyond the computed horizon");
    if (x == 1.0) return s_->eval(1.0);
    return cum_.at(x) / std::log(x);
  }
  std::optional<Value> constant_near(double x) const override {
    if (!s_->breakpoints(1.0, x).empty()) return std::nullopt;
    auto c0 = s_->constant_near(1.0);
    auto c = s_->constant_near(x);
    if (c0 && c && *c0 == *c) return c;
    return std::nullopt;
  }
  double log_availability() const override { return log_horizon_; }

 private:
  FunctionPtr s_;
  std::string name_;
  double log_horizon_;
  CumulativeIntegral cum_;
};

class Interpolant final : public Function {
 public:
  Interpolant(std::vector<double> t, std::vector<Value> tau, bool is_complex, std::string name)
      : t_(std::move(t)), tau_(std::move(tau)), complex_(is_complex), name_(std::move(name)) {
    v_.reserve(t_.size());
    for (double x : t_) v_.push_back(std::log(std::log(x)));
  }

  const std::string& name() const override { return name_; }
  bool is_complex() const override { return complex_; }
  Value eval(double x) const override {
    if (!(x >= 1.0)) throw DomainError(name_ + ": argument below 1");
    if (x > t_.back()) throw HorizonError(name_ + ": argument beyond the sampled curve");
    if (x <= t_.front()) return tau_.front();
    const double v = std::log(std::log(x));
    const auto it = std::upper_bound(v_.begin(), v_.end(), v);
    if (it == v_.end()) return tau_.back();
    const std::size_t i = static_cast<std::size_t>(it - v_.begin());
    const double w = (v - v_[i - 1]) / (v_[i] - v_[i - 1]);
    return tau_[i - 1] + w * (tau_[i] - tau_[i - 1]);
  }
  std::vector<double> breakpoints(double lo, double hi) const override {
    std::vector<double> out;
    for (double x : t_)
      if (x > lo && x < hi) out.push_back(x);
    return out;
  }
  std::optional<Value> constant_near(double x) const override {
    if (x < t_.front()) return tau_.front();
    return std::nullopt;
  }
  double log_availability() const override { return std::log(t_.back()); }

 private:
  std::vector<double> t_;
  std::vector<double> v_;
  std::vector<Value> tau_;
  bool complex_;
  std::string name_;
};

}  // namespace

MeanInterpolant interpolate_mean_curve(const MeanCurve& curve, bool is_complex, std::string name) {
  const std::size_t n = curve.grid.size();
  if (n < 3 || n % 2 == 0) throw PreconditionError("interpolation needs an odd number of at least 3 curve points");
  std::vector<double> t;
  std::vector<Value> tau;
  for (std::size_t i = 0; i < n; i += 2) {
    t.push_back(curve.grid[i]);
    tau.push_back(curve.tau[i]);
  }
  MeanInterpolant out;
  out.fn = std::make_shared<Interpolant>(std::move(t), std::move(tau), is_complex, std::move(name));
  for (std::size_t i = 1; i < n; i += 2)
    out.error_estimate = std::max(out.error_estimate, std::abs(out.fn->eval(curve.grid[i]) - curve.tau[i]));
  return out;
}

std::size_t interpolation_points(double t_min, double t_max, int per_unit) {
  if (!(t_min > 1.0) || !(t_max > t_min)) throw PreconditionError("interpolation points need 1 < t_min < t_max");
  const double span = std::log(std::log(t_max)) - std::log(std::log(t_min));
  const auto segments = static_cast<std::size_t>(std::max(1.0, std::ceil(per_unit * span)));
  return 2 * segments + 1;
}

FunctionPtr log_mean_function(FunctionPtr s, double log_horizon, double abs_tol) {
  return std::make_shared<LogMeanFunction>(std::move(s), log_horizon, abs_tol);
}

}  // namespace tauber
