// Euler-product local factors attached to d_3 twisted by principal
// characters, realized as Laurent jets about s = 1:
//
//   g(s,q)     = prod_{p|q} (1-p^{-s})^3 sum_j d_3(p^{j+v_p(q)}) p^{-js}
//   G_{k,d}(s) = sum_{e|d} mu(e) e^{-s} g(s, ek)
//   H(s,q)     = sum_{d|q} mu(d)/phi(d) d^s G_{q/d,d}(s)
//   F_{k,q*}(s)= zeta^3(s) prod_{p|kq*} E_p(s)   (principal character mod q*)
//
// Each local sum collapses to a degree-2 polynomial in x = p^{-s}: the third
// differences of d_3(p^j) vanish. Everything is closed form at jet level;
// the truncated Dirichlet series survives only in the test oracle.
#pragma once

#include "d3/arith.hpp"
#include "d3/jets.hpp"

namespace d3::localfactors {

using arith::FactoredInteger;
using arith::u64;
using jets::Center;
using jets::LaurentJet;

struct LocalFactorKey {
  u64 p;  // prime
  int a;  // exponent v_p >= 0
};

// Integer coefficients (c0, c1, c2) of
//   (1-x)^3 sum_{j>=0} d_3(p^{j+a}) x^j = c0 + c1 x + c2 x^2,
// via the literal polynomial identity x^{-a} (1 - (1-x)^3 sum_{m<a} d_3(p^m) x^m).
// The shift by x^{-a} is verified exactly (low coefficients must vanish).
struct LocalPolynomial {
  std::int64_t c0, c1, c2;
};
LocalPolynomial local_factor_coefficients(int a);

// Analytic jet of the local factor at the given center; a <= 64.
LaurentJet local_euler_factor(const LocalFactorKey& key, Center center,
                              int order = jets::kDefaultOrder);

// g(s,q) as a jet: product of local factors over the primes of q; g(s,1) = 1.
LaurentJet g_jet(const FactoredInteger& q, Center center, int order = jets::kDefaultOrder);

// G_{k,d}(s) as a jet (divisor sum over e | d).
LaurentJet G_kd_jet(u64 k, u64 d, Center center, int order = jets::kDefaultOrder);

// H(s,q) as a jet; analytic (pole order 0). Requires sigma_0(q) <= 1e4.
LaurentJet H_jet(const FactoredInteger& q, Center center, int order = jets::kDefaultOrder);

// F_{k,q*}(s) / zeta^3(s): the analytic Euler-factor product over p | k q*.
LaurentJet f_principal_ratio_jet(u64 k, u64 qstar, Center center,
                                 int order = jets::kDefaultOrder);

// F_{k,q*}(s) about s=1 (pole order 3).
LaurentJet f_principal_jet(u64 k, u64 qstar, Center center = Center::kOne,
                           int order = jets::kDefaultOrder);

// Truncated-series oracle: sum_{n<=M, (n,q*)=1} d_3(nk)/n^s at real s >= 1.5,
// plus a crude upper bound for the discarded tail. Test oracle only.
struct TruncatedSeriesValue {
  Real value;
  Real tail_bound;
};
TruncatedSeriesValue dirichlet_truncation_oracle(u64 k, u64 qstar, const Real& s_real,
                                                 u64 cutoff);

// Definition-following evaluation of H(sigma, q) at a complex point with
// Re(sigma) > 1/2: local sums are summed term by term until the terms drop
// below `term_eps`. Independent of the jet machinery; contour-oracle helper.
Complex h_series_eval(const FactoredInteger& q, const Complex& sigma, const Real& term_eps);

}  // namespace d3::localfactors
