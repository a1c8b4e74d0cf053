#include <cmath>

#include "tauber/conditions.hpp"
#include "tauber/error.hpp"
#include "tauber/logmean.hpp"

namespace tauber {

namespace {

class Primitive final : public Function {
 public:
  Primitive(FunctionPtr f, double log_horizon, double abs_tol)
      : f_(f),
        name_("int[" + f->name() + "]"),
        log_horizon_(std::min(log_horizon, f->log_availability())),
        cum_(f, cumulative_knots(*f, std::exp(log_horizon_)), abs_tol, Kernel::plain) {}

  const std::string& name() const override { return name_; }
  bool is_complex() const override { return f_->is_complex(); }
  Value eval(double x) const override {
    if (!(x >= 1.0)) throw DomainError(name_ + ": argument below 1");
    if (std::log(x) > log_horizon_) throw HorizonError(name_ + ": argument beyond the computed horizon");
    return cum_.at(x);
  }
  // Kinks of the primitive sit where f changes formula.
  std::vector<double> breakpoints(double lo, double hi) const override { return f_->breakpoints(lo, hi); }
  std::optional<Value> constant_near(double x) const override {
    auto c = f_->constant_near(x);
    if (c && *c == Value{}) return cum_.at(x);
    return std::nullopt;
  }
  double log_availability() const override { return log_horizon_; }

 private:
  FunctionPtr f_;
  std::string name_;
  double log_horizon_;
  CumulativeIntegral cum_;
};

}  // namespace

FunctionPtr primitive(FunctionPtr f, double log_horizon, double abs_tol) {
  if (!(log_horizon > 0) || log_horizon > 690.0) throw PreconditionError("primitive horizon must be in (1, e^690]");
  return std::make_shared<Primitive>(std::move(f), log_horizon, abs_tol);
}

}  // namespace tauber
