#include "tauber/function.hpp"

#include <algorithm>
#include <cmath>

#include "tauber/error.hpp"

namespace tauber {

Value Function::eval_log(double log_x) const {
  const double x = std::exp(log_x);
  if (!std::isfinite(x)) throw HorizonError(name() + ": argument e^" + std::to_string(log_x) + " exceeds double range");
  return eval(x);
}

std::vector<double> Function::breakpoints(double, double) const { return {}; }

std::optional<Value> Function::constant_near(double) const { return std::nullopt; }

double Function::log_availability() const { return std::numeric_limits<double>::infinity(); }

double represented_limit(const Function& f) {
  const double a = f.log_availability();
  if (!std::isfinite(a)) return std::numeric_limits<double>::infinity();
  return std::exp(a) * (1.0 - 1e-13);
}

double real_value(const Value& v) {
  if (v.imag() != 0.0) throw PreconditionError("complex value where a real value is required");
  return v.real();
}

namespace {

class Negated final : public Function {
 public:
  explicit Negated(FunctionPtr f) : f_(std::move(f)), name_("-(" + f_->name() + ")") {}

  const std::string& name() const override { return name_; }
  bool is_complex() const override { return f_->is_complex(); }
  Value eval(double x) const override { return -f_->eval(x); }
  Value eval_log(double log_x) const override { return -f_->eval_log(log_x); }
  std::vector<double> breakpoints(double lo, double hi) const override { return f_->breakpoints(lo, hi); }
  std::optional<Value> constant_near(double x) const override {
    auto c = f_->constant_near(x);
    if (c) return -*c;
    return std::nullopt;
  }
  double log_availability() const override { return f_->log_availability(); }

 private:
  FunctionPtr f_;
  std::string name_;
};

class Combination final : public Function {
 public:
  Combination(double a, FunctionPtr f, double b, FunctionPtr g)
      : a_(a), b_(b), f_(std::move(f)), g_(std::move(g)) {
    name_ = format(a_) + "*" + f_->name() + " + " + format(b_) + "*" + g_->name();
  }

  const std::string& name() const override { return name_; }
  bool is_complex() const override { return f_->is_complex() || g_->is_complex(); }
  Value eval(double x) const override { return a_ * f_->eval(x) + b_ * g_->eval(x); }
  Value eval_log(double log_x) const override {
    return a_ * f_->eval_log(log_x) + b_ * g_->eval_log(log_x);
  }
  std::vector<double> breakpoints(double lo, double hi) const override {
    auto p = f_->breakpoints(lo, hi);
    auto q = g_->breakpoints(lo, hi);
    std::vector<double> out;
    out.reserve(p.size() + q.size());
    std::merge(p.begin(), p.end(), q.begin(), q.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  std::optional<Value> constant_near(double x) const override {
    auto cf = f_->constant_near(x);
    auto cg = g_->constant_near(x);
    if (cf && cg) return a_ * *cf + b_ * *cg;
    return std::nullopt;
  }
  double log_availability() const override {
    return std::min(f_->log_availability(), g_->log_availability());
  }

 private:
  static std::string format(double v) {
    std::string s = std::to_string(v);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  }

  double a_, b_;
  FunctionPtr f_, g_;
  std::string name_;
};

}  // namespace

FunctionPtr negate(FunctionPtr f) { return std::make_shared<Negated>(std::move(f)); }

FunctionPtr linear_combination(double a, FunctionPtr f, double b, FunctionPtr g) {
  return std::make_shared<Combination>(a, std::move(f), b, std::move(g));
}

}  // namespace tauber
