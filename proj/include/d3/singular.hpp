// The local-density main term machinery:
//
//   P(x,q)  = Res_{s=0} zeta^3(s+1) H(s+1,q) (x/q)^s
//           = b2 L^2 + b1 L + b0,  L = log(x/q)   (triple pole => quadratic)
//   P*(x,q) = sum_{d|q} mu(d) d/phi(d) * p_{q/d,d}(xd/q),
//             p_{k,q*}(y) = Res_{s=1} y^{s-1} F_{k,q*}(s)
//   S(x,h)  = sum_q c_q(h)/q^2 P(x,q)^2            (truncated, with a tail
//             estimate sigma_0(h) * sup|P|^2 * 2/q_max)
//
// P is materialized once per q as a quadratic in log(x/q); every x-evaluation,
// squared integral and h-sweep reuses it.
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "d3/arith.hpp"
#include "d3/real.hpp"

namespace d3::singular {

using arith::u64;

struct LogPolynomial {
  u64 q = 1;             // scale: value at x is sum_j b[j] log^j(x/q)
  std::vector<Real> b;   // degree = b.size() - 1, at most 4

  int degree() const { return static_cast<int>(b.size()) - 1; }
  Real eval(const Real& x) const;
  Real eval_log(const Real& log_x_over_q) const;
  // Same polynomial re-expanded about log(x/new_q); values are unchanged.
  LogPolynomial rebased(u64 new_q) const;
  LogPolynomial squared() const;  // degree 2 -> 4
};

// P(x,q) as a degree-2 LogPolynomial; jets route.
LogPolynomial p_polynomial(u64 q);

// P*(x,q) assembled from the principal-character Dirichlet series; must agree
// with p_polynomial coefficient-wise.
LogPolynomial p_star_polynomial(u64 q);

// Closed form for \int_N^{2N} P(x,q)^2 dx: the square is a quartic in
// log(x/q) and \int log^k u du = u sum_{i<=k} (-1)^{k-i} k!/i! log^i u.
Real integral_p_squared(const LogPolynomial& p, u64 n_lo, u64 n_hi);

// \int_a^b log^k(u) du, exact closed form (a, b > 0).
Real integral_log_pow(const Real& a, const Real& b, int k);

struct SingularValue {
  Real value;
  u64 q_max = 0;
  Real tail_estimate;
  u64 terms_used = 0;
};

// Shared memo of p_polynomial(q) for q = 1..q_max; extendable, and optionally
// filled by a worker pool (per-q results are independent, so the table is
// identical for any thread count).
class PTable {
 public:
  void ensure(u64 q_max, unsigned threads = 1);
  const LogPolynomial& at(u64 q) const { return polys_[q - 1]; }
  u64 size() const { return polys_.size(); }

 private:
  std::vector<LogPolynomial> polys_;
};

struct SingularOpts {
  u64 q_max = 0;           // 0 = auto (doubling from max(1000, 4h))
  Real rel_tol = Real("1e-3");
  u64 q_max_limit = u64(1) << 20;
  unsigned threads = 1;
  std::shared_ptr<PTable> table;  // optional shared memo
};

struct ComputationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Truncated S(x,h) with tail estimate; auto mode doubles q_max until
// tail < rel_tol * |value| (ComputationError past q_max_limit).
SingularValue singular_series(const Real& x, u64 h, const SingularOpts& opts = {});

// \int_N^{2N} S(x,h) dx via the per-q closed forms; same truncation contract.
SingularValue main_term_integral(u64 N, u64 h, const SingularOpts& opts = {});

// H * \int_N^{2N} P(t,1)^2 dt.
Real first_moment_main(u64 N, u64 H);

}  // namespace d3::singular
