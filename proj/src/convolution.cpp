#include "d3/convolution.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "d3/arith.hpp"
#include "d3/ntt.hpp"
#include "d3/parallel.hpp"

namespace d3::conv {

u64 dk_shifted_sum(unsigned k, u64 N, u64 h, const sieve::SieveConfig& cfg) {
  if (k < 1 || k > 3) throw std::invalid_argument("dk_shifted_sum: k in {1,2,3}");
  if (N == 0 || h == 0) throw std::invalid_argument("dk_shifted_sum: N, h >= 1 required");
  if (k == 1) return N;
  // Stream segments over (N, 2N+h]; keep a rolling window so d_k(n+h) pairs
  // with d_k(n) once both exist.
  std::vector<u64> window;  // d_k on (N, 2N+h]
  unsigned __int128 acc = 0;
  for (u64 lo = N; lo < 2 * N + h; lo += cfg.segment_size) {
    u64 hi = std::min(2 * N + h, lo + cfg.segment_size);
    sieve::SieveSegment seg = sieve::dk_segment(k, lo, hi, cfg);
    window.insert(window.end(), seg.values.begin(), seg.values.end());
  }
  for (u64 i = 0; i < N; ++i) acc += static_cast<unsigned __int128>(window[i]) * window[i + h];
  if (acc > UINT64_MAX) throw std::overflow_error("dk_shifted_sum: sum exceeds 64 bits");
  return static_cast<u64>(acc);
}

std::vector<u64> correlate_values(const std::vector<std::uint32_t>& a,
                                  const std::vector<std::uint32_t>& b, u64 max_lag,
                                  unsigned threads) {
  return ntt::correlate(a, b, max_lag, threads);
}

std::vector<u64> shifted_sums_all(u64 N, u64 H, const sieve::SieveConfig& cfg) {
  if (N == 0 || H == 0) throw std::invalid_argument("shifted_sums_all: N, H >= 1 required");
  if (N > 100'000'000ull) throw std::invalid_argument("shifted_sums_all: N <= 1e8 (desk scale)");
  if (H > N) throw std::invalid_argument("shifted_sums_all: H <= N required");
  // b = d_3 on (N, 2N+H]; a is its prefix of length N.
  std::vector<std::uint32_t> b;
  b.reserve(N + H);
  for (u64 lo = N; lo < 2 * N + H; lo += cfg.segment_size) {
    u64 hi = std::min(2 * N + H, lo + cfg.segment_size);
    sieve::SieveSegment seg = sieve::dk_segment(3, lo, hi, cfg);
    for (u64 v : seg.values) b.push_back(static_cast<std::uint32_t>(v));
  }
  std::vector<std::uint32_t> a(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(N));
  std::vector<u64> lags = ntt::correlate(a, b, H, cfg.threads);
  return {lags.begin() + 1, lags.end()};  // h = 1..H
}

DeltaValue delta(u64 N, u64 h, const DeltaOpts& opts) {
  if (!opts.allow_large_h && static_cast<double>(h) > std::sqrt(static_cast<double>(N)))
    throw std::invalid_argument("delta: h > sqrt(N); pass allow_large_h to override");
  DeltaValue out;
  out.d_value = dk_shifted_sum(3, N, h, opts.sieve);
  out.main_term = singular::main_term_integral(N, h, opts.singular);
  out.delta = Real(out.d_value) - out.main_term.value;
  return out;
}

MomentReport moment_report(u64 N, u64 H, int order, const MomentOpts& opts) {
  auto t0 = std::chrono::steady_clock::now();
  MomentReport rep;
  rep.N = N;
  rep.H = H;
  rep.order = order;
  rep.precision_digits = Real::working_digits();
  if (H > N) throw std::invalid_argument("moment_report: H <= N required");

  std::vector<u64> dvals = shifted_sums_all(N, H, opts.sieve);

  u64 q_max = opts.q_max ? opts.q_max : std::max<u64>(1000, 4 * H);
  auto table = std::make_shared<singular::PTable>();
  bool auto_mode = opts.q_max == 0;

  // Hoisted q-loop: the per-q integral I_q = \int_N^{2N} P(x,q)^2 dx is
  // shared by every h; main(h) = sum_q c_q(h)/q^2 I_q in fixed q order.
  std::vector<Real> mains(H);
  std::vector<Real> tails(H);
  std::vector<u64> sigma0(H);
  std::vector<arith::FactoredInteger> fh(H);
  parallel_for_index(H, opts.threads, [&](std::size_t i) {
    fh[i] = arith::factorize(static_cast<u64>(i + 1));
    sigma0[i] = arith::divisors(fh[i]).size();
  });

  u64 q_done = 0;
  std::vector<Real> iq_all;  // I_q for q = 1..q_done
  for (;;) {
    table->ensure(q_max, opts.threads);
    u64 fresh = q_max - q_done;
    iq_all.resize(q_max);
    std::vector<Real> wq(fresh);  // I_q / q^2
    std::vector<arith::FactoredInteger> fq(fresh);
    std::vector<u64> phiq(fresh);
    parallel_for_index(fresh, opts.threads, [&](std::size_t i) {
      u64 q = q_done + 1 + i;
      iq_all[q - 1] = singular::integral_p_squared(table->at(q), N, 2 * N);
      Real w = iq_all[q - 1];
      w.div_si(static_cast<long>(q));
      w.div_si(static_cast<long>(q));
      wq[i] = w;
      fq[i] = arith::factorize(q);
      phiq[i] = arith::totient(fq[i]);
    });
    parallel_for_index(H, opts.threads, [&](std::size_t i) {
      u64 h = i + 1;
      Real acc = mains[i], scratch;
      for (u64 q = q_done + 1; q <= q_max; ++q) {
        long cq = static_cast<long>(
            arith::ramanujan_sum_factored(fq[q - q_done - 1], phiq[q - q_done - 1], h));
        if (cq != 0) acc.add_mul_si(wq[q - q_done - 1], cq, scratch);
      }
      mains[i] = acc;
    });
    // sup |I_q| over the top decade feeds the per-h tail estimate.
    Real sup_top(0L);
    for (u64 q = q_max / 10 + 1; q <= q_max; ++q) sup_top = max(sup_top, abs(iq_all[q - 1]));
    q_done = q_max;

    bool all_ok = true;
    for (u64 i = 0; i < H; ++i) {
      tails[i] = Real(static_cast<unsigned long>(sigma0[i])) * sup_top * Real(2L) /
                 Real(static_cast<unsigned long>(q_max));
      if (!(tails[i] < opts.rel_tol * abs(mains[i]))) all_ok = false;
    }
    if (auto_mode && !all_ok && q_max * 2 <= (u64(1) << 20)) {
      q_max *= 2;
      continue;
    }
    rep.q_max_saturated = !all_ok;
    break;
  }
  rep.q_max = q_max;

  // Aggregates in fixed h order.
  Real sum_d(0L), sum_d2(0L), sum_main(0L), scratch;
  u64 exceed = 0;
  Real tenth = Real(1L) / Real(10L);
  if (opts.keep_per_h) rep.per_h.reserve(H);
  for (u64 i = 0; i < H; ++i) {
    Real d = Real(dvals[i]) - mains[i];
    sum_d += d;
    sum_d2.add_mul(d, d, scratch);
    sum_main += mains[i];
    if (abs(d) > tenth * mains[i]) ++exceed;
    if (opts.keep_per_h) rep.per_h.push_back({i + 1, dvals[i], mains[i], d});
  }
  rep.sum_delta = sum_d;
  rep.sum_delta_sq = sum_d2;
  rep.mean_main = sum_main / Real(static_cast<unsigned long>(H));
  rep.exceed_count = exceed;
  Real fm = singular::first_moment_main(N, H);
  rep.ratio1 = abs(sum_d) / fm;
  rep.ratio2 = sqrt(sum_d2 / Real(static_cast<unsigned long>(H))) / rep.mean_main;
  if (opts.timings) {
    auto t1 = std::chrono::steady_clock::now();
    rep.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  }
  return rep;
}

Real ingham_ratio(u64 N, u64 h, const sieve::SieveConfig& cfg) {
  if (h == 0 || N < 1000) throw std::invalid_argument("ingham_ratio: h >= 1, N >= 1e3");
  u64 d2sum = dk_shifted_sum(2, N, h, cfg);
  arith::Rational s = arith::sigma_minus_one(arith::factorize(h));
  Real pi = Real::pi();
  Real logn = log(Real(static_cast<unsigned long>(N)));
  Real pred = Real(6L) / (pi * pi);
  pred *= Real(static_cast<unsigned long>(s.num)) / Real(static_cast<unsigned long>(s.den));
  pred *= Real(static_cast<unsigned long>(N)) * logn * logn;
  return Real(d2sum) / pred;
}

}  // namespace d3::conv
