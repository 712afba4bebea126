// High-precision real scalar backed by MPFR.
//
// All jet/residue/singular-series arithmetic runs on these. The working
// precision is a process-global set once at startup (default 30 significant
// decimal digits plus guard bits); everything downstream inherits it, so a
// run is deterministic for a fixed configuration.
#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

namespace d3 {

class Real {
 public:
  // Process-global working precision. Call before any computation.
  static void set_working_digits(int decimal_digits);
  static int working_digits();
  static mpfr_prec_t working_bits();

  Real() { mpfr_init2(v_, working_bits()); mpfr_set_zero(v_, 1); }
  explicit Real(long x) : Real() { mpfr_set_si(v_, x, MPFR_RNDN); }
  explicit Real(unsigned long x) : Real() { mpfr_set_ui(v_, x, MPFR_RNDN); }
  explicit Real(int x) : Real(static_cast<long>(x)) {}
  explicit Real(double x) : Real() { mpfr_set_d(v_, x, MPFR_RNDN); }
  // Parses a decimal string exactly into the working precision.
  explicit Real(const char* decimal) : Real() {
    mpfr_set_str(v_, decimal, 10, MPFR_RNDN);
  }

  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

  friend Real operator+(Real a, const Real& b) { a += b; return a; }
  friend Real operator-(Real a, const Real& b) { a -= b; return a; }
  friend Real operator*(Real a, const Real& b) { a *= b; return a; }
  friend Real operator/(Real a, const Real& b) { a /= b; return a; }
  Real operator-() const { Real r(*this); mpfr_neg(r.v_, r.v_, MPFR_RNDN); return r; }

  Real& mul_si(long c) { mpfr_mul_si(v_, v_, c, MPFR_RNDN); return *this; }
  Real& div_si(long c) { mpfr_div_si(v_, v_, c, MPFR_RNDN); return *this; }
  Real& div_ui(unsigned long c) { mpfr_div_ui(v_, v_, c, MPFR_RNDN); return *this; }
  // this += a*c with no temporaries beyond MPFR internals; hot-loop helper.
  Real& add_mul_si(const Real& a, long c, Real& scratch) {
    mpfr_mul_si(scratch.v_, a.v_, c, MPFR_RNDN);
    mpfr_add(v_, v_, scratch.v_, MPFR_RNDN);
    return *this;
  }
  Real& add_mul(const Real& a, const Real& b, Real& scratch) {
    mpfr_mul(scratch.v_, a.v_, b.v_, MPFR_RNDN);
    mpfr_add(v_, v_, scratch.v_, MPFR_RNDN);
    return *this;
  }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  // Decimal string with the given number of significant digits (%Rg style).
  std::string str(int significant_digits = 20) const;

  friend Real abs(const Real& a) { Real r(a); mpfr_abs(r.v_, r.v_, MPFR_RNDN); return r; }
  friend Real sqrt(const Real& a) { Real r(a); mpfr_sqrt(r.v_, r.v_, MPFR_RNDN); return r; }
  friend Real log(const Real& a) { Real r(a); mpfr_log(r.v_, r.v_, MPFR_RNDN); return r; }
  friend Real exp(const Real& a) { Real r(a); mpfr_exp(r.v_, r.v_, MPFR_RNDN); return r; }
  friend Real pow(const Real& a, const Real& b) {
    Real r; mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend Real pow_si(const Real& a, long e) {
    Real r; mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN); return r;
  }
  friend Real max(const Real& a, const Real& b) { return a < b ? b : a; }
  friend Real min(const Real& a, const Real& b) { return a < b ? a : b; }

  static Real pi() { Real r; mpfr_const_pi(r.v_, MPFR_RNDN); return r; }
  // 10^-k, handy for tolerance literals.
  static Real eps10(int k) {
    Real r(1L); mpfr_mul_2si(r.v_, r.v_, 0, MPFR_RNDN);
    Real ten(10L); return r / pow_si(ten, k);
  }

 private:
  mpfr_t v_;
};

// |a-b| relative to max(|a|,|b|); 0 if both are below `floor_abs`.
Real rel_deviation(const Real& a, const Real& b, const Real& floor_abs);

}  // namespace d3
