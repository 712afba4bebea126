#include "d3/localfactors.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace d3::localfactors {

namespace {

using arith::dk_prime_power;

int valuation(u64 n, u64 p) {
  int v = 0;
  while (n % p == 0) { n /= p; ++v; }
  return v;
}

// Jet of p^{-s} about the center (s=1 or the shifted copy at s=0, which
// expands the same function of w): (1/p) e^{-w log p}.
LaurentJet p_to_minus_s_jet(u64 p, Center center, int order) {
  Real lp = log(Real(static_cast<unsigned long>(p)));
  LaurentJet e = jets::exp_linear_jet(-lp, center, order);
  return jets::jet_scale(e, Real(1L) / Real(static_cast<unsigned long>(p)));
}

// Jet of d^{+s} about the center: d * e^{w log d}.
LaurentJet d_to_s_jet(u64 d, Center center, int order) {
  Real ld = log(Real(static_cast<unsigned long>(d)));
  LaurentJet e = jets::exp_linear_jet(ld, center, order);
  return jets::jet_scale(e, Real(static_cast<unsigned long>(d)));
}

}  // namespace

LocalPolynomial local_factor_coefficients(int a) {
  if (a < 0 || a > 64) throw std::invalid_argument("local_factor_coefficients: a in 0..64");
  if (a == 0) return {1, 0, 0};
  // (1-x)^3 * sum_{m<a} d_3(p^m) x^m, integer coefficients, degree a+2.
  std::vector<std::int64_t> poly(static_cast<std::size_t>(a + 3), 0);
  const std::int64_t binom[4] = {1, -3, 3, -1};
  for (int m = 0; m < a; ++m) {
    std::int64_t d3m = static_cast<std::int64_t>(dk_prime_power(3, static_cast<unsigned>(m)));
    for (int i = 0; i <= 3; ++i) poly[static_cast<std::size_t>(m + i)] += binom[i] * d3m;
  }
  // 1 - poly must be divisible by x^a with a quadratic quotient.
  poly[0] -= 1;
  for (auto& v : poly) v = -v;
  for (int i = 0; i < a; ++i) assert(poly[static_cast<std::size_t>(i)] == 0);
  for (std::size_t i = static_cast<std::size_t>(a + 3); i < poly.size(); ++i)
    assert(poly[i] == 0);
  return {poly[static_cast<std::size_t>(a)], poly[static_cast<std::size_t>(a + 1)],
          poly[static_cast<std::size_t>(a + 2)]};
}

LaurentJet local_euler_factor(const LocalFactorKey& key, Center center, int order) {
  LocalPolynomial lp = local_factor_coefficients(key.a);
  LaurentJet x = p_to_minus_s_jet(key.p, center, order);
  LaurentJet acc = jet_constant(Real(static_cast<long>(lp.c0)), center, order);
  acc = jets::jet_add(acc, jets::jet_scale(x, Real(static_cast<long>(lp.c1))));
  acc = jets::jet_add(acc, jets::jet_scale(jets::jet_mul(x, x), Real(static_cast<long>(lp.c2))));
  return acc;
}

LaurentJet g_jet(const FactoredInteger& q, Center center, int order) {
  LaurentJet acc = jet_constant(Real(1L), center, order);
  for (const auto& [p, e] : q.factors)
    acc = jets::jet_mul(acc, local_euler_factor({p, e}, center, order));
  return acc;
}

LaurentJet G_kd_jet(u64 k, u64 d, Center center, int order) {
  FactoredInteger fd = arith::factorize(d);
  LaurentJet acc = jet_constant(Real(0L), center, order);
  for (u64 e : arith::divisors(fd)) {
    FactoredInteger fe = arith::factorize(e);
    int mu = arith::mobius(fe);
    if (mu == 0) continue;
    FactoredInteger fek = arith::factorize(e * k);
    LaurentJet term = g_jet(fek, center, order);
    if (e > 1) {
      // e^{-s} = (1/e) e^{-w log e}
      Real le = log(Real(static_cast<unsigned long>(e)));
      LaurentJet es = jets::jet_scale(jets::exp_linear_jet(-le, center, order),
                                      Real(1L) / Real(static_cast<unsigned long>(e)));
      term = jets::jet_mul(es, term);
    }
    acc = jets::jet_add(acc, jets::jet_scale(term, Real(static_cast<long>(mu))));
  }
  return acc;
}

LaurentJet H_jet(const FactoredInteger& q, Center center, int order) {
  std::vector<u64> ds = arith::divisors(q);
  if (ds.size() > 10000) throw std::invalid_argument("H_jet: sigma_0(q) > 1e4");
  LaurentJet acc = jet_constant(Real(0L), center, order);
  for (u64 d : ds) {
    FactoredInteger fd = arith::factorize(d);
    int mu = arith::mobius(fd);
    if (mu == 0) continue;
    u64 phi = arith::totient(fd);
    LaurentJet term = G_kd_jet(q.n / d, d, center, order);
    if (d > 1) term = jets::jet_mul(d_to_s_jet(d, center, order), term);
    Real w(static_cast<long>(mu));
    w /= Real(static_cast<unsigned long>(phi));
    acc = jets::jet_add(acc, jets::jet_scale(term, w));
  }
  return acc;
}

LaurentJet f_principal_ratio_jet(u64 k, u64 qstar, Center center, int order) {
  // prod over p | k*qstar of E_p:
  //   p | k only:        (1-x)^3 sum_j d_3(p^{j+v_p(k)}) x^j   (local factor)
  //   p | qstar only:    (1-x)^3
  //   p | both:          d_3(p^{v_p(k)}) (1-x)^3               (chi_0 kills j>0)
  std::set<u64> ps;
  FactoredInteger fk = arith::factorize(k);
  FactoredInteger fq = arith::factorize(qstar);
  for (const auto& [p, e] : fk.factors) { (void)e; ps.insert(p); }
  for (const auto& [p, e] : fq.factors) { (void)e; ps.insert(p); }
  LaurentJet acc = jet_constant(Real(1L), center, order);
  for (u64 p : ps) {
    int a = valuation(k, p);
    bool in_qstar = qstar % p == 0;
    LaurentJet ep;
    if (a > 0 && !in_qstar) {
      ep = local_euler_factor({p, a}, center, order);
    } else {
      LaurentJet x = p_to_minus_s_jet(p, center, order);
      LaurentJet one_minus_x = jets::jet_sub(jet_constant(Real(1L), center, order), x);
      ep = jets::jet_mul(jets::jet_mul(one_minus_x, one_minus_x), one_minus_x);
      if (a > 0) {
        u64 d3k = dk_prime_power(3, static_cast<unsigned>(a));
        ep = jets::jet_scale(ep, Real(static_cast<unsigned long>(d3k)));
      }
    }
    acc = jets::jet_mul(acc, ep);
  }
  return acc;
}

LaurentJet f_principal_jet(u64 k, u64 qstar, Center center, int order) {
  return jets::jet_mul(jets::zeta_cubed_jet(center, order),
                       f_principal_ratio_jet(k, qstar, center, order));
}

TruncatedSeriesValue dirichlet_truncation_oracle(u64 k, u64 qstar, const Real& s_real,
                                                 u64 cutoff) {
  if (s_real < Real(1.5)) throw std::invalid_argument("truncation oracle: s >= 1.5 required");
  if (cutoff < 10000) throw std::invalid_argument("truncation oracle: cutoff >= 1e4 required");
  // Smallest-prime-factor table for n*k up to cutoff*k keeps the per-term
  // factorizations cheap; this oracle must not touch the jet code paths.
  u64 limit = cutoff * k;
  std::vector<std::uint32_t> spf(limit + 1, 0);
  for (u64 i = 2; i <= limit; ++i) {
    if (spf[i] == 0)
      for (u64 j = i; j <= limit; j += i)
        if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
  }
  auto d3_of = [&](u64 n) -> u64 {
    u64 r = 1;
    while (n > 1) {
      u64 p = spf[n];
      unsigned e = 0;
      while (n % p == 0) { n /= p; ++e; }
      r *= dk_prime_power(3, e);
    }
    return r;
  };
  Real sum(0L);
  Real ns, term;
  for (u64 n = 1; n <= cutoff; ++n) {
    if (qstar > 1 && arith::gcd_u64(n, qstar) != 1) continue;
    u64 d3 = d3_of(n * k);
    mpfr_set_ui(ns.raw(), n, MPFR_RNDN);
    mpfr_pow(ns.raw(), ns.raw(), s_real.raw(), MPFR_RNDN);
    mpfr_set_ui(term.raw(), d3, MPFR_RNDN);
    term /= ns;
    sum += term;
  }
  // Tail: partial summation against sum_{n<=t} d_3(n) <= t (log t + 2)^2 / 2
  // gives sum_{n>M} d_3(n) n^{-s} <= s (log M + 3)^2 M^{1-s} / (s-1), and the
  // coprimality restriction only shrinks it. d_3(nk) <= d_3(n) d_3(k).
  FactoredInteger fk = arith::factorize(k);
  Real logM = log(Real(static_cast<unsigned long>(cutoff)));
  Real lm3 = logM + Real(3L);
  Real tail = s_real * lm3 * lm3;
  tail *= pow(Real(static_cast<unsigned long>(cutoff)), Real(1L) - s_real);
  tail /= (s_real - Real(1L));
  tail *= Real(static_cast<unsigned long>(arith::dk_of(3, fk)));
  return {sum, tail};
}

Complex h_series_eval(const FactoredInteger& q, const Complex& sigma, const Real& term_eps) {
  // Direct sums: H = sum_{d|q} mu(d)/phi(d) d^sigma G_{q/d,d},
  // G = sum_{e|d} mu(e) e^{-sigma} g(sigma, e q/d), local sums term by term.
  std::map<std::pair<u64, int>, Complex> local_memo;
  auto local_sum = [&](u64 p, int a) -> Complex {
    auto it = local_memo.find({p, a});
    if (it != local_memo.end()) return it->second;
    Complex x = pow_complex(Real(static_cast<unsigned long>(p)), -sigma);
    Complex one{Real(1L), Real(0L)};
    Complex omx = one - x;
    Complex omx3 = omx * omx * omx;
    Complex acc{Real(0L), Real(0L)};
    Complex xp = one;
    Real ax = abs(x);
    for (int j = 0;; ++j) {
      u64 d3v = dk_prime_power(3, static_cast<unsigned>(j + a));
      acc += Real(static_cast<unsigned long>(d3v)) * xp;
      // Remaining terms are bounded by d_3(p^{j+1+a}) |x|^{j+1} / (1-|x|)^3.
      Real bound = Real(static_cast<unsigned long>(
                       dk_prime_power(3, static_cast<unsigned>(j + 1 + a)))) *
                   pow_si(ax, j + 1);
      Real denom = (Real(1L) - ax);
      bound /= denom * denom * denom;
      if (bound < term_eps) break;
      xp = xp * x;
    }
    Complex val = omx3 * acc;
    local_memo.emplace(std::make_pair(p, a), val);
    return val;
  };
  auto g_eval = [&](u64 m) -> Complex {
    Complex acc{Real(1L), Real(0L)};
    FactoredInteger fm = arith::factorize(m);
    for (const auto& [p, e] : fm.factors) acc = acc * local_sum(p, e);
    return acc;
  };
  Complex h{Real(0L), Real(0L)};
  for (u64 d : arith::divisors(q)) {
    FactoredInteger fd = arith::factorize(d);
    int mu_d = arith::mobius(fd);
    if (mu_d == 0) continue;
    u64 phi_d = arith::totient(fd);
    Complex gsum{Real(0L), Real(0L)};
    FactoredInteger fdd = fd;
    for (u64 e : arith::divisors(fdd)) {
      int mu_e = arith::mobius(arith::factorize(e));
      if (mu_e == 0) continue;
      Complex term = g_eval(e * (q.n / d));
      if (e > 1) term = pow_complex(Real(static_cast<unsigned long>(e)), -sigma) * term;
      gsum += Real(static_cast<long>(mu_e)) * term;
    }
    Complex term = gsum;
    if (d > 1) term = pow_complex(Real(static_cast<unsigned long>(d)), sigma) * term;
    Real w(static_cast<long>(mu_d));
    w /= Real(static_cast<unsigned long>(phi_d));
    h += w * term;
  }
  return h;
}

}  // namespace d3::localfactors
