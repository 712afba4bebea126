#include "d3/verify.hpp"

#include <algorithm>
#include <random>

#include "d3/arith.hpp"
#include "d3/convolution.hpp"
#include "d3/jets.hpp"
#include "d3/localfactors.hpp"
#include "d3/parallel.hpp"
#include "d3/singular.hpp"

namespace d3::verify {

namespace {

using jets::Center;
using jets::LaurentJet;

// Max |a_j - b_j| over shared coefficients, relative to the largest
// coefficient magnitude of either jet.
Real jet_rel_deviation(const LaurentJet& a, const LaurentJet& b, int up_to_order) {
  Real scale(0L);
  for (int j = -std::max(a.pole, b.pole); j <= up_to_order; ++j) {
    if (j >= -a.pole) scale = max(scale, abs(a.at(j)));
    if (j >= -b.pole) scale = max(scale, abs(b.at(j)));
  }
  if (scale.is_zero()) return Real(0L);
  Real dev(0L);
  for (int j = -std::max(a.pole, b.pole); j <= up_to_order; ++j) {
    Real av = (j >= -a.pole) ? a.at(j) : Real(0L);
    Real bv = (j >= -b.pole) ? b.at(j) : Real(0L);
    dev = max(dev, abs(av - bv));
  }
  return dev / scale;
}

Real poly_rel_deviation(const singular::LogPolynomial& a, const singular::LogPolynomial& b) {
  Real scale(0L);
  for (const Real& v : a.b) scale = max(scale, abs(v));
  for (const Real& v : b.b) scale = max(scale, abs(v));
  if (scale.is_zero()) return Real(0L);
  Real dev(0L);
  std::size_t n = std::max(a.b.size(), b.b.size());
  for (std::size_t j = 0; j < n; ++j) {
    Real av = j < a.b.size() ? a.b[j] : Real(0L);
    Real bv = j < b.b.size() ? b.b[j] : Real(0L);
    dev = max(dev, abs(av - bv));
  }
  return dev / scale;
}

}  // namespace

SuiteResult dual_identity(u64 q_max, unsigned threads) {
  SuiteResult res;
  res.columns = {"q", "max_rel_dev"};
  Real tol("1e-18");
  std::vector<Real> devs(q_max);
  parallel_for_index(q_max, threads, [&](std::size_t i) {
    u64 q = i + 1;
    devs[i] = poly_rel_deviation(singular::p_polynomial(q), singular::p_star_polynomial(q));
  });
  Real worst(0L);
  res.pass = true;
  for (u64 q = 1; q <= q_max; ++q) {
    res.rows.push_back({std::to_string(q), devs[q - 1].str(20)});
    worst = max(worst, devs[q - 1]);
    if (devs[q - 1] > tol) res.pass = false;
  }
  res.summary = "dual identity q<=" + std::to_string(q_max) + " worst dev " + worst.str(6);
  return res;
}

SuiteResult prime_power_cases(unsigned threads) {
  SuiteResult res;
  res.columns = {"p", "alpha", "beta", "rel_dev"};
  Real tol("1e-18");
  struct Item { u64 p; int alpha, beta; };
  std::vector<Item> items;
  for (u64 p : arith::primes_up_to(50))
    for (int alpha = 1; alpha <= 5; ++alpha)
      for (int beta = 0; beta <= alpha; ++beta) items.push_back({p, alpha, beta});
  std::vector<Real> devs(items.size());
  parallel_for_index(items.size(), threads, [&](std::size_t i) {
    auto [p, alpha, beta] = items[i];
    u64 d = 1;
    for (int j = 0; j < beta; ++j) d *= p;
    u64 q = 1;
    for (int j = 0; j < alpha; ++j) q *= p;
    LaurentJet ratio = localfactors::f_principal_ratio_jet(q / d, d, Center::kOne);
    LaurentJet gkd = localfactors::G_kd_jet(q / d, d, Center::kOne);
    devs[i] = jet_rel_deviation(ratio, gkd, jets::kDefaultOrder);
  });
  res.pass = true;
  Real worst(0L);
  for (std::size_t i = 0; i < items.size(); ++i) {
    res.rows.push_back({std::to_string(items[i].p), std::to_string(items[i].alpha),
                        std::to_string(items[i].beta), devs[i].str(20)});
    worst = max(worst, devs[i]);
    if (devs[i] > tol) res.pass = false;
  }
  res.summary = "prime-power cases worst dev " + worst.str(6);
  return res;
}

SuiteResult carmichael_zero_sum(u64 q_limit) {
  SuiteResult res;
  res.columns = {"q", "sum_c_q_h"};
  res.pass = true;
  for (u64 q = 1; q <= q_limit; ++q) {
    // Materialize c_q(h) for h = 1..q by strided accumulation of the divisor
    // sum (same formula, batched), then add them up one by one.
    arith::FactoredInteger fq = arith::factorize(q);
    std::vector<std::int64_t> c(q + 1, 0);
    for (u64 d : arith::divisors(fq)) {
      // contribution d * mu(q/d) to every h with d | h
      arith::FactoredInteger fqd = arith::factorize(q / d);
      int mu = arith::mobius(fqd);
      if (mu == 0) continue;
      std::int64_t add = static_cast<std::int64_t>(d) * mu;
      for (u64 h = d; h <= q; h += d) c[h] += add;
    }
    std::int64_t total = 0;
    for (u64 h = 1; h <= q; ++h) total += c[h];
    std::int64_t expect = q == 1 ? 1 : 0;
    if (total != expect) {
      res.pass = false;
      res.rows.push_back({std::to_string(q), std::to_string(total)});
    }
  }
  res.summary = res.pass ? "Carmichael zero-sum holds for all q <= " + std::to_string(q_limit)
                         : "Carmichael zero-sum FAILED";
  if (res.rows.empty())
    res.rows.push_back({std::to_string(q_limit), "0"});
  return res;
}

SuiteResult contour_agreement(int count, u64 seed, unsigned threads) {
  SuiteResult res;
  res.columns = {"x", "q", "rel_err"};
  Real tol("1e-10");
  std::mt19937_64 rng(seed);
  struct Item { double x; u64 q; };
  std::vector<Item> items;
  std::uniform_real_distribution<double> logx(std::log(100.0), std::log(1e6));
  std::uniform_int_distribution<u64> qd(1, 200);
  for (int i = 0; i < count; ++i) items.push_back({std::exp(logx(rng)), qd(rng)});

  std::vector<Real> errs(items.size());
  parallel_for_index(items.size(), threads, [&](std::size_t i) {
    u64 q = items[i].q;
    Real x(items[i].x);
    arith::FactoredInteger fq = arith::factorize(q);
    Real jet_value = singular::p_polynomial(q).eval(x);
    Real xq = x / Real(static_cast<unsigned long>(q));
    Real eps("1e-34");
    auto f = [&](const Complex& s) {
      Complex z = jets::zeta_near_one(s, 24);
      Complex h = localfactors::h_series_eval(fq, s + Complex{Real(1L), Real(0L)}, eps);
      Complex xs = pow_complex(xq, s);
      return z * z * z * h * xs;
    };
    Complex oracle = jets::contour_residue_oracle(
        f, Complex{Real(0L), Real(0L)}, Real(1L) / Real(8L), 64, 1e-11);
    errs[i] = abs(oracle.re - jet_value) / max(abs(jet_value), Real("1e-30"));
  });
  res.pass = true;
  Real worst(0L);
  for (std::size_t i = 0; i < items.size(); ++i) {
    res.rows.push_back({Real(items[i].x).str(20), std::to_string(items[i].q),
                        errs[i].str(20)});
    worst = max(worst, errs[i]);
    if (errs[i] > tol) res.pass = false;
  }
  res.summary = "contour agreement worst rel err " + worst.str(6);
  return res;
}

SuiteResult voronoi_envelope(u64 t_max, int random_count, u64 seed,
                             const sieve::SieveConfig& cfg) {
  SuiteResult res;
  res.columns = {"t", "partial_sum", "main", "abs_err", "envelope"};
  std::vector<u64> ts;
  for (u64 t = 1000; t <= t_max; t *= 10) ts.push_back(t);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> td(2, t_max);
  for (int i = 0; i < random_count; ++i) ts.push_back(td(rng));
  std::vector<u64> sums = sieve::d3_partial_sums(ts, cfg);
  res.pass = true;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    Real t(static_cast<unsigned long>(ts[i]));
    Real main = sieve::voronoi_main(t);
    Real err = abs(Real(sums[i]) - main);
    Real envelope = Real(10L) * pow(t, Real(2L) / Real(3L));
    if (err > envelope) res.pass = false;
    res.rows.push_back({std::to_string(ts[i]), std::to_string(sums[i]), main.str(20),
                        err.str(20), envelope.str(20)});
  }
  res.summary = res.pass ? "Voronoi envelope holds" : "Voronoi envelope FAILED";
  return res;
}

SuiteResult correlation_exactness(u64 N, u64 H, unsigned threads) {
  SuiteResult res;
  res.columns = {"h", "ntt", "brute", "equal"};
  sieve::SieveConfig cfg;
  cfg.threads = threads;
  std::vector<u64> fast = conv::shifted_sums_all(N, H, cfg);
  // Brute force against raw sieve values, no transform anywhere.
  sieve::SieveSegment seg = sieve::dk_segment(3, N, 2 * N + H, cfg);
  res.pass = true;
  for (u64 h = 1; h <= H; ++h) {
    unsigned __int128 acc = 0;
    for (u64 i = 0; i < N; ++i)
      acc += static_cast<unsigned __int128>(seg.values[i]) * seg.values[i + h];
    u64 brute = static_cast<u64>(acc);
    bool eq = brute == fast[h - 1];
    if (!eq) res.pass = false;
    res.rows.push_back({std::to_string(h), std::to_string(fast[h - 1]), std::to_string(brute),
                        eq ? "1" : "0"});
  }
  res.summary = res.pass ? "correlation exact for all lags" : "correlation mismatch";
  return res;
}

SuiteResult ingham_window(u64 N, const sieve::SieveConfig& cfg) {
  SuiteResult res;
  res.columns = {"N", "h", "ratio"};
  res.pass = true;
  for (u64 h = 1; h <= 8; ++h) {
    Real r = conv::ingham_ratio(N, h, cfg);
    if (!(r > Real(0.5) && r < Real(1.5))) res.pass = false;
    res.rows.push_back({std::to_string(N), std::to_string(h), r.str(20)});
  }
  res.summary = res.pass ? "Ingham ratios inside (0.5, 1.5)" : "Ingham ratio out of window";
  return res;
}

}  // namespace d3::verify
