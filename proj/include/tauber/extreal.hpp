#pragma once

// Extended-range real number for evaluating expressions at x = e^L with
// L beyond the double exponent range (doubly exponential horizons).
//
// A value is either an ordinary double or sign * exp(log_mag) with
// log_mag > kLogThreshold. Results that fall back into range are
// normalized to ordinary doubles so that the common path stays exact.

#include <cmath>
#include <limits>

#include "tauber/error.hpp"

namespace tauber {

class ExtReal {
 public:
  static constexpr double kLogThreshold = 700.0;

  constexpr ExtReal() = default;
  constexpr ExtReal(double v) : value_(v) {}  // NOLINT(implicit)

  static ExtReal from_log(double log_mag, int sign = 1) {
    ExtReal r;
    if (log_mag <= kLogThreshold) {
      r.value_ = sign * std::exp(log_mag);
      return r;
    }
    r.huge_ = true;
    r.log_mag_ = log_mag;
    r.sign_ = sign < 0 ? -1 : 1;
    return r;
  }

  bool is_huge() const noexcept { return huge_; }
  int sign() const noexcept {
    if (huge_) return sign_;
    return value_ > 0 ? 1 : (value_ < 0 ? -1 : 0);
  }

  // log|v|; -inf for zero.
  double log_abs() const noexcept {
    if (huge_) return log_mag_;
    return std::log(std::fabs(value_));
  }

  // Ordinary double; huge magnitudes saturate to +-inf.
  double to_double() const noexcept {
    if (huge_) return sign_ * std::numeric_limits<double>::infinity();
    return value_;
  }

  double finite_value() const {
    if (huge_) throw DomainError("value exceeds double range");
    return value_;
  }

  friend ExtReal operator-(const ExtReal& a) {
    ExtReal r = a;
    if (r.huge_) r.sign_ = -r.sign_;
    else r.value_ = -r.value_;
    return r;
  }

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    if (!a.huge_ && !b.huge_) return ExtReal(a.value_ + b.value_);
    if (a.sign() == 0) return b;
    if (b.sign() == 0) return a;
    const double la = a.log_abs();
    const double lb = b.log_abs();
    const ExtReal& big = la >= lb ? a : b;
    const double lbig = std::max(la, lb);
    const double ratio = std::exp(std::min(la, lb) - lbig);
    if (a.sign() == b.sign()) return from_log(lbig + std::log1p(ratio), big.sign());
    if (ratio == 1.0) return ExtReal(0.0);
    return from_log(lbig + std::log1p(-ratio), big.sign());
  }

  friend ExtReal operator-(const ExtReal& a, const ExtReal& b) { return a + (-b); }

  friend ExtReal operator*(const ExtReal& a, const ExtReal& b) {
    if (!a.huge_ && !b.huge_) {
      const double p = a.value_ * b.value_;
      if (std::isfinite(p)) return ExtReal(p);
    }
    const int s = a.sign() * b.sign();
    if (s == 0) return ExtReal(0.0);
    return from_log(a.log_abs() + b.log_abs(), s);
  }

  friend ExtReal operator/(const ExtReal& a, const ExtReal& b) {
    if (b.sign() == 0) throw DomainError("division by zero");
    if (!a.huge_ && !b.huge_) {
      const double q = a.value_ / b.value_;
      if (std::isfinite(q)) return ExtReal(q);
    }
    const int s = a.sign() * b.sign();
    if (s == 0) return ExtReal(0.0);
    return from_log(a.log_abs() - b.log_abs(), s);
  }

  friend bool operator<(const ExtReal& a, const ExtReal& b) {
    if (!a.huge_ && !b.huge_) return a.value_ < b.value_;
    return (b - a).sign() > 0;
  }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return !(b < a); }

 private:
  double value_ = 0.0;
  bool huge_ = false;
  double log_mag_ = 0.0;
  int sign_ = 1;
};

inline ExtReal ext_log(const ExtReal& a) {
  if (a.sign() <= 0) throw DomainError("log of nonpositive argument");
  return ExtReal(a.log_abs());
}

inline ExtReal ext_exp(const ExtReal& a) {
  if (a.is_huge()) {
    if (a.sign() < 0) return ExtReal(0.0);
    throw DomainError("exp argument exceeds extended range");
  }
  return ExtReal::from_log(a.finite_value());
}

inline ExtReal ext_pow(const ExtReal& base, const ExtReal& exponent) {
  if (!base.is_huge() && !exponent.is_huge()) {
    const double p = std::pow(base.finite_value(), exponent.finite_value());
    if (std::isfinite(p)) return ExtReal(p);
  }
  const double e = exponent.finite_value();
  if (base.sign() < 0) {
    if (e != std::floor(e)) throw DomainError("fractional power of negative base");
    const bool odd = std::fmod(std::fabs(e), 2.0) == 1.0;
    return ExtReal::from_log(e * base.log_abs(), odd ? -1 : 1);
  }
  if (base.sign() == 0) return ExtReal(e > 0 ? 0.0 : std::numeric_limits<double>::infinity());
  return ExtReal::from_log(e * base.log_abs());
}

}  // namespace tauber
