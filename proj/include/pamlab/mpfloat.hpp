#pragma once

#include <mpfr.h>

#include <cstdlib>
#include <string>
#include <utility>

namespace pamlab {

// Thin RAII wrapper over an mpfr_t with per-value precision.  Only the
// operations the extended-precision kernels need; everything rounds to
// nearest.
class MpFloat {
 public:
  explicit MpFloat(mpfr_prec_t prec = 256) { mpfr_init2(x_, prec); }
  MpFloat(double v, mpfr_prec_t prec) {
    mpfr_init2(x_, prec);
    mpfr_set_d(x_, v, MPFR_RNDN);
  }
  MpFloat(const MpFloat& o) {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
  }
  MpFloat(MpFloat&& o) noexcept {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_swap(x_, o.x_);
  }
  MpFloat& operator=(const MpFloat& o) {
    if (this != &o) mpfr_set(x_, o.x_, MPFR_RNDN);
    return *this;
  }
  MpFloat& operator=(MpFloat&& o) noexcept {
    mpfr_swap(x_, o.x_);
    return *this;
  }
  ~MpFloat() { mpfr_clear(x_); }

  mpfr_prec_t prec() const { return mpfr_get_prec(x_); }
  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

  static MpFloat exp(const MpFloat& a) {
    MpFloat r(a.prec());
    mpfr_exp(r.x_, a.x_, MPFR_RNDN);
    return r;
  }
  static MpFloat log_abs(const MpFloat& a) {
    MpFloat r(a.prec());
    mpfr_abs(r.x_, a.x_, MPFR_RNDN);
    mpfr_log(r.x_, r.x_, MPFR_RNDN);
    return r;
  }

  friend MpFloat operator+(const MpFloat& a, const MpFloat& b) {
    MpFloat r(a.prec());
    mpfr_add(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
  }
  friend MpFloat operator-(const MpFloat& a, const MpFloat& b) {
    MpFloat r(a.prec());
    mpfr_sub(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
  }
  friend MpFloat operator*(const MpFloat& a, const MpFloat& b) {
    MpFloat r(a.prec());
    mpfr_mul(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
  }
  friend MpFloat operator/(const MpFloat& a, const MpFloat& b) {
    MpFloat r(a.prec());
    mpfr_div(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
  }
  MpFloat& operator+=(const MpFloat& b) {
    mpfr_add(x_, x_, b.x_, MPFR_RNDN);
    return *this;
  }
  MpFloat& operator*=(double d) {
    mpfr_mul_d(x_, x_, d, MPFR_RNDN);
    return *this;
  }

  int sign() const { return mpfr_sgn(x_); }
  bool is_zero() const { return mpfr_zero_p(x_); }

 private:
  mpfr_t x_;
};

// Extended-precision mantissa width: PAMLAB_PRECISION_BITS overrides the
// 256-bit default.
inline mpfr_prec_t extended_precision_bits() {
  if (const char* env = std::getenv("PAMLAB_PRECISION_BITS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 24 && v <= 1 << 20) return static_cast<mpfr_prec_t>(v);
  }
  return 256;
}

}  // namespace pamlab
