#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>

namespace pamlab {

// Magnitude-in-log-domain with a sign: value = sign * exp(log_mag).
// Carrier for e^{t*xi}-scale quantities that overflow binary64.
struct SignedLog {
  int sign = 0;           // -1, 0, +1
  double log_mag = -std::numeric_limits<double>::infinity();

  SignedLog() = default;
  SignedLog(int s, double lm) : sign(s), log_mag(s == 0 ? -inf() : lm) {}

  static double inf() { return std::numeric_limits<double>::infinity(); }

  static SignedLog zero() { return SignedLog(); }
  static SignedLog one() { return SignedLog(1, 0.0); }

  static SignedLog from_double(double v) {
    if (v == 0.0 || std::isnan(v)) return zero();
    return SignedLog(v > 0 ? 1 : -1, std::log(std::fabs(v)));
  }

  static SignedLog from_log(double lm) { return SignedLog(1, lm); }

  double to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_mag);
  }

  bool is_zero() const { return sign == 0; }

  SignedLog operator*(const SignedLog& o) const {
    if (sign == 0 || o.sign == 0) return zero();
    return SignedLog(sign * o.sign, log_mag + o.log_mag);
  }

  SignedLog operator/(const SignedLog& o) const {
    if (sign == 0) return zero();
    return SignedLog(sign * o.sign, log_mag - o.log_mag);
  }

  SignedLog operator-() const { return SignedLog(-sign, log_mag); }

  SignedLog operator+(const SignedLog& o) const {
    if (sign == 0) return o;
    if (o.sign == 0) return *this;
    const SignedLog& hi = log_mag >= o.log_mag ? *this : o;
    const SignedLog& lo = log_mag >= o.log_mag ? o : *this;
    double d = lo.log_mag - hi.log_mag;  // <= 0
    if (hi.sign == lo.sign) {
      return SignedLog(hi.sign, hi.log_mag + std::log1p(std::exp(d)));
    }
    double m = -std::expm1(d);  // 1 - e^d in [0,1]
    if (m == 0.0) return zero();
    return SignedLog(hi.sign, hi.log_mag + std::log(m));
  }

  SignedLog operator-(const SignedLog& o) const { return *this + (-o); }

  // |value| comparison.
  bool abs_less(const SignedLog& o) const {
    if (sign == 0) return o.sign != 0;
    if (o.sign == 0) return false;
    return log_mag < o.log_mag;
  }

  // "+exp(x)" with 17 significant digits.
  std::string str() const {
    if (sign == 0) return "0";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%cexp(%.17g)", sign > 0 ? '+' : '-',
                  log_mag);
    return buf;
  }
};

// Accumulator for long signed sums: terms are rescaled by the running max
// exponent and added with Neumaier compensation in the linear domain.
class SignedLogSum {
 public:
  void add(const SignedLog& v) {
    if (v.sign == 0) return;
    if (v.log_mag > scale_) rescale(v.log_mag);
    add_linear(v.sign * std::exp(v.log_mag - scale_));
  }

  void add(int sign, double log_mag) { add(SignedLog(sign, log_mag)); }

  // Running sum of |terms| at the same scale; used for cancellation checks.
  double abs_sum_log() const {
    return abs_sum_ > 0 ? scale_ + std::log(abs_sum_) : -SignedLog::inf();
  }

  SignedLog value() const {
    double s = sum_ + comp_;
    if (s == 0.0 || scale_ == -SignedLog::inf()) return SignedLog::zero();
    return SignedLog(s > 0 ? 1 : -1, scale_ + std::log(std::fabs(s)));
  }

  // exp(abs_sum_log - |value|): how many like-magnitude terms cancelled.
  double cancellation_factor() const {
    SignedLog v = value();
    if (v.sign == 0) return std::numeric_limits<double>::infinity();
    return std::exp(abs_sum_log() - v.log_mag);
  }

 private:
  void rescale(double new_scale) {
    if (scale_ != -SignedLog::inf()) {
      double f = std::exp(scale_ - new_scale);
      sum_ *= f;
      comp_ *= f;
      abs_sum_ *= f;
    }
    scale_ = new_scale;
  }

  void add_linear(double x) {
    abs_sum_ += std::fabs(x);
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  double scale_ = -SignedLog::inf();
  double sum_ = 0.0;
  double comp_ = 0.0;
  double abs_sum_ = 0.0;
};

}  // namespace pamlab
