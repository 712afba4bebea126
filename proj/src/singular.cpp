#include "d3/singular.hpp"

#include <algorithm>

#include "d3/jets.hpp"
#include "d3/localfactors.hpp"
#include "d3/parallel.hpp"

namespace d3::singular {

using jets::Center;
using jets::LaurentJet;

Real LogPolynomial::eval_log(const Real& L) const {
  Real acc(0L);
  for (int j = degree(); j >= 0; --j) {
    acc *= L;
    acc += b[static_cast<std::size_t>(j)];
  }
  return acc;
}

Real LogPolynomial::eval(const Real& x) const {
  Real L = log(x / Real(static_cast<unsigned long>(q)));
  return eval_log(L);
}

LogPolynomial LogPolynomial::rebased(u64 new_q) const {
  // log(x/q) = log(x/new_q) + c with c = log(new_q/q):
  // b'_i = sum_{j>=i} b_j C(j,i) c^{j-i}.
  Real c = log(Real(static_cast<unsigned long>(new_q)) / Real(static_cast<unsigned long>(q)));
  int deg = degree();
  LogPolynomial out;
  out.q = new_q;
  out.b.assign(static_cast<std::size_t>(deg + 1), Real(0L));
  // binomial table up to degree 4
  long binom[5][5] = {{1, 0, 0, 0, 0},
                      {1, 1, 0, 0, 0},
                      {1, 2, 1, 0, 0},
                      {1, 3, 3, 1, 0},
                      {1, 4, 6, 4, 1}};
  for (int j = 0; j <= deg; ++j) {
    Real cp(1L);
    for (int i = j; i >= 0; --i) {
      Real term = b[static_cast<std::size_t>(j)] * cp;
      term.mul_si(binom[j][i]);
      out.b[static_cast<std::size_t>(i)] += term;
      cp *= c;
    }
  }
  return out;
}

LogPolynomial LogPolynomial::squared() const {
  LogPolynomial out;
  out.q = q;
  out.b.assign(static_cast<std::size_t>(2 * degree() + 1), Real(0L));
  Real scratch;
  for (int i = 0; i <= degree(); ++i)
    for (int j = 0; j <= degree(); ++j)
      out.b[static_cast<std::size_t>(i + j)].add_mul(b[static_cast<std::size_t>(i)],
                                                     b[static_cast<std::size_t>(j)], scratch);
  return out;
}

LogPolynomial p_polynomial(u64 q) {
  if (q == 0) throw std::invalid_argument("p_polynomial: q >= 1 required");
  // Work about s=1 in w: zeta^3(s+1) H(s+1,q) about s=0 carries the same jet
  // as zeta^3 H about 1. Residue against e^{Lw} reads b_j = [z3 H]_{-1-j}/j!.
  arith::FactoredInteger fq = arith::factorize(q);
  LaurentJet z3 = jets::zeta_cubed_jet(Center::kOne);
  LaurentJet h = localfactors::H_jet(fq, Center::kOne);
  LaurentJet prod = jets::jet_mul(z3, h);
  LogPolynomial out;
  out.q = q;
  out.b.assign(3, Real(0L));
  Real fact(1L);
  for (int j = 0; j <= 2; ++j) {
    if (j >= 1) fact.mul_si(j);
    out.b[static_cast<std::size_t>(j)] = prod.at(-1 - j) / fact;
  }
  return out;
}

LogPolynomial p_star_polynomial(u64 q) {
  if (q == 0) throw std::invalid_argument("p_star_polynomial: q >= 1 required");
  arith::FactoredInteger fq = arith::factorize(q);
  LogPolynomial acc;
  acc.q = q;
  acc.b.assign(3, Real(0L));
  for (u64 d : arith::divisors(fq)) {
    arith::FactoredInteger fd = arith::factorize(d);
    int mu = arith::mobius(fd);
    if (mu == 0) continue;
    u64 phi = arith::totient(fd);
    // p_{q/d,d}(y) = Res_{s=1} y^{s-1} F_{q/d,d}(s)
    //             = F_{-3} L^2/2 + F_{-2} L + F_{-1},  L = log y.
    LaurentJet F = localfactors::f_principal_jet(q / d, d, Center::kOne);
    LogPolynomial pkq;
    pkq.q = q / d;  // evaluated at y = xd/q = x/(q/d)
    pkq.b.assign(3, Real(0L));
    pkq.b[2] = F.at(-3) / Real(2L);
    pkq.b[1] = F.at(-2);
    pkq.b[0] = F.at(-1);
    LogPolynomial shifted = pkq.rebased(q);
    Real w(static_cast<long>(mu) * static_cast<long>(d));
    w /= Real(static_cast<unsigned long>(phi));
    for (int j = 0; j <= 2; ++j)
      acc.b[static_cast<std::size_t>(j)] += w * shifted.b[static_cast<std::size_t>(j)];
  }
  return acc;
}

Real integral_log_pow(const Real& a, const Real& b, int k) {
  // F_k(u) = u sum_{i<=k} (-1)^{k-i} k!/i! log^i u solves F_k' = log^k u.
  long fact[9] = {1, 1, 2, 6, 24, 120, 720, 5040, 40320};
  if (k < 0 || k > 8) throw std::invalid_argument("integral_log_pow: k in 0..8");
  auto F = [&](const Real& u) {
    Real L = log(u);
    Real acc(0L);
    Real lp(1L);  // L^i ascending
    Real term;
    for (int i = 0; i <= k; ++i) {
      if (i > 0) lp *= L;
      term = lp;
      term.mul_si(fact[k] / fact[i]);
      if ((k - i) & 1) acc -= term; else acc += term;
    }
    return u * acc;
  };
  return F(b) - F(a);
}

Real integral_p_squared(const LogPolynomial& p, u64 n_lo, u64 n_hi) {
  LogPolynomial sq = p.squared();
  Real qr(static_cast<unsigned long>(p.q));
  Real a = Real(static_cast<unsigned long>(n_lo)) / qr;
  Real b = Real(static_cast<unsigned long>(n_hi)) / qr;
  Real total(0L);
  for (int k = 0; k <= sq.degree(); ++k)
    total += sq.b[static_cast<std::size_t>(k)] * qr * integral_log_pow(a, b, k);
  return total;
}

void PTable::ensure(u64 q_max, unsigned threads) {
  u64 have = polys_.size();
  if (q_max <= have) return;
  polys_.resize(q_max);
  parallel_for_index(q_max - have, threads, [&](std::size_t i) {
    u64 q = have + 1 + i;
    polys_[q - 1] = p_polynomial(q);
  });
}

namespace {

// Core truncated q-sum shared by singular_series and main_term_integral:
// term(q) = c_q(h)/q^2 * W(q) with W(q) = P(x,q)^2 or \int P^2. Summation in
// fixed chunks of 1024 q's, so the value is independent of threading.
struct QSum {
  Real value;
  Real sup_w_top_decade;  // max |W(q)| over q in (q_max/10, q_max]
};

template <class WFn>
QSum q_partial_sum(u64 h, u64 q_lo, u64 q_hi, const WFn& w_of_q) {
  std::vector<Real> chunk_sums;
  Real chunk(0L), scratch;
  Real sup(0L);
  u64 decade_lo = q_hi / 10;
  u64 in_chunk = 0;
  for (u64 q = q_lo; q <= q_hi; ++q) {
    arith::FactoredInteger fq = arith::factorize(q);
    long cq = static_cast<long>(arith::ramanujan_sum_factored(fq, arith::totient(fq), h));
    Real w = w_of_q(q);
    if (q > decade_lo) sup = max(sup, abs(w));
    if (cq != 0) {
      w.div_si(static_cast<long>(q));
      w.div_si(static_cast<long>(q));
      chunk.add_mul_si(w, cq, scratch);
    }
    if (++in_chunk == 1024) {
      chunk_sums.push_back(chunk);
      chunk = Real(0L);
      in_chunk = 0;
    }
  }
  if (in_chunk) chunk_sums.push_back(chunk);
  Real total(0L);
  for (const Real& c : chunk_sums) total += c;
  return {total, sup};
}

template <class WFn>
SingularValue truncated_sum(u64 h, const SingularOpts& opts, const WFn& w_of_q) {
  if (h == 0) throw std::invalid_argument("singular series: h >= 1 required");
  bool auto_mode = opts.q_max == 0;
  u64 q_max = auto_mode ? std::max<u64>(1000, 4 * h) : opts.q_max;
  arith::FactoredInteger fh = arith::factorize(h);
  Real sigma0(static_cast<unsigned long>(arith::divisors(fh).size()));

  SingularValue out;
  out.value = Real(0L);
  u64 done = 0;
  for (;;) {
    QSum part = q_partial_sum(h, done + 1, q_max, w_of_q);
    out.value += part.value;
    out.q_max = q_max;
    out.terms_used = q_max;
    // Tail rationale: sum_{d|h} d sum_{q>Q, d|q} q^{-2} ~ sigma_0(h)/Q, times
    // the observed sup of |W| near the truncation point, doubled for safety.
    out.tail_estimate = sigma0 * part.sup_w_top_decade * Real(2L) /
                        Real(static_cast<unsigned long>(q_max));
    done = q_max;
    if (!auto_mode) break;
    if (out.tail_estimate < opts.rel_tol * abs(out.value)) break;
    if (q_max * 2 > opts.q_max_limit)
      throw ComputationError("singular series: q_max limit reached in auto mode");
    q_max *= 2;
  }
  return out;
}

}  // namespace

SingularValue singular_series(const Real& x, u64 h, const SingularOpts& opts) {
  if (x <= Real(1L)) throw std::invalid_argument("singular_series: x > 1 required");
  std::shared_ptr<PTable> table = opts.table ? opts.table : std::make_shared<PTable>();
  u64 prefetch = opts.q_max ? opts.q_max : std::max<u64>(1000, 4 * h);
  table->ensure(prefetch, opts.threads);
  auto w = [&](u64 q) {
    if (q > table->size()) table->ensure(std::max(q, table->size() * 2), opts.threads);
    Real p = table->at(q).eval(x);
    return p * p;
  };
  return truncated_sum(h, opts, w);
}

SingularValue main_term_integral(u64 N, u64 h, const SingularOpts& opts) {
  if (N == 0) throw std::invalid_argument("main_term_integral: N >= 1 required");
  std::shared_ptr<PTable> table = opts.table ? opts.table : std::make_shared<PTable>();
  u64 prefetch = opts.q_max ? opts.q_max : std::max<u64>(1000, 4 * h);
  table->ensure(prefetch, opts.threads);
  auto w = [&](u64 q) {
    if (q > table->size()) table->ensure(std::max(q, table->size() * 2), opts.threads);
    return integral_p_squared(table->at(q), N, 2 * N);
  };
  return truncated_sum(h, opts, w);
}

Real first_moment_main(u64 N, u64 H) {
  if (H == 0) return Real(0L);
  return Real(static_cast<unsigned long>(H)) * integral_p_squared(p_polynomial(1), N, 2 * N);
}

}  // namespace d3::singular
