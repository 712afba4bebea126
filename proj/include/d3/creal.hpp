// Minimal complex arithmetic over Real, for the contour-integration oracle.
#pragma once

#include "d3/real.hpp"

namespace d3 {

struct Complex {
  Real re, im;

  Complex() = default;
  explicit Complex(Real r) : re(std::move(r)), im(0L) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }

  friend Complex operator+(Complex a, const Complex& b) { a += b; return a; }
  friend Complex operator-(Complex a, const Complex& b) { a -= b; return a; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Real& s, const Complex& a) { return {s * a.re, s * a.im}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  Complex operator-() const { return {-re, -im}; }

  friend Real abs(const Complex& a) { return sqrt(a.re * a.re + a.im * a.im); }

  friend Complex exp(const Complex& a) {
    Real m = exp(a.re);
    Real c, s;
    mpfr_sin_cos(s.raw(), c.raw(), a.im.raw(), MPFR_RNDN);
    return {m * c, m * s};
  }
  // b^z for real b > 0.
  friend Complex pow_complex(const Real& b, const Complex& z) {
    Real lb = log(b);
    return exp(Complex{z.re * lb, z.im * lb});
  }
};

}  // namespace d3
