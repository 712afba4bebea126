// Exact shifted convolution sums D_k(N,h) = sum_{N<n<=2N} d_k(n) d_k(n+h),
// their discrepancy against the singular-series main term, and the moment
// experiments over h.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "d3/real.hpp"
#include "d3/sieve.hpp"
#include "d3/singular.hpp"

namespace d3::conv {

using u64 = std::uint64_t;

// Exact D_k(N,h), streamed over sieve values covering (N, 2N+h].
u64 dk_shifted_sum(unsigned k, u64 N, u64 h, const sieve::SieveConfig& cfg = {});

// Exact D_3(N,h) for every h = 1..H at once, via NTT/CRT cross-correlation of
// the d_3 values on (N,2N] against (N,2N+H]. out[h-1] = D(N,h).
std::vector<u64> shifted_sums_all(u64 N, u64 H, const sieve::SieveConfig& cfg = {});

// Same engine on caller-provided value arrays (a over (N,2N], b over
// (N,2N+H]); exposed for the correlation self-tests.
std::vector<u64> correlate_values(const std::vector<std::uint32_t>& a,
                                  const std::vector<std::uint32_t>& b, u64 max_lag,
                                  unsigned threads = 1);

struct DeltaOpts {
  singular::SingularOpts singular;
  sieve::SieveConfig sieve;
  bool allow_large_h = false;  // default guards h <= sqrt(N)
};

struct DeltaValue {
  u64 d_value = 0;
  singular::SingularValue main_term;
  Real delta;
};

// Delta(N,h) = D(N,h) - \int_N^{2N} S(x,h) dx.
DeltaValue delta(u64 N, u64 h, const DeltaOpts& opts = {});

struct MomentOpts {
  u64 q_max = u64(1) << 14;  // shared across all h; 0 = auto per worst tail
  Real rel_tol = Real("1e-3");
  unsigned threads = 1;
  sieve::SieveConfig sieve;
  bool keep_per_h = false;
  bool timings = false;  // off => wall_ms reported as 0 (byte-stable output)
};

struct PerH {
  u64 h;
  u64 d_value;
  Real main_term;
  Real delta;
};

struct MomentReport {
  u64 N = 0, H = 0;
  int order = 1;
  u64 q_max = 0;
  int precision_digits = 0;
  bool q_max_saturated = false;  // some h failed the tail check in auto mode
  Real sum_delta;
  Real sum_delta_sq;
  Real ratio1;        // |sum delta| / first_moment_main(N,H)
  Real ratio2;        // sqrt(sum delta^2 / H) / mean main term
  Real mean_main;
  u64 exceed_count = 0;  // # of h with |delta| > 0.1 * main term
  std::int64_t wall_ms = 0;
  std::vector<PerH> per_h;  // filled when keep_per_h
};

// All D(N,h) by exact correlation, all main terms from a shared P-table with
// the q-loop hoisted out of the h-loop; deterministic for any thread count.
MomentReport moment_report(u64 N, u64 H, int order, const MomentOpts& opts = {});

// D_2(N,h) / ((6/pi^2) sigma_{-1}(h) N log^2 N).
Real ingham_ratio(u64 N, u64 h, const sieve::SieveConfig& cfg = {});

}  // namespace d3::conv
