// Verification suites: identity, oracle-equivalence and trend checks that
// back both the `verify` CLI subcommand and the acceptance harness.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "d3/real.hpp"
#include "d3/sieve.hpp"

namespace d3::verify {

using u64 = std::uint64_t;

struct SuiteResult {
  bool pass = false;
  std::vector<std::string> columns;        // CSV schema of rows
  std::vector<std::vector<std::string>> rows;
  std::string summary;
};

// p_polynomial(q) vs p_star_polynomial(q), coefficient-wise relative
// deviation <= 1e-18, for q = 1..q_max. Rows: q, max_rel_dev.
SuiteResult dual_identity(u64 q_max, unsigned threads = 1);

// F_{q/d,d}/zeta^3 vs G_{q/d,d} jets for q = p^alpha, p <= 50, alpha <= 5,
// all d = p^beta. Rows: p, alpha, beta, rel_dev.
SuiteResult prime_power_cases(unsigned threads = 1);

// sum_{h<=q} c_q(h) = 0 exactly for 2 <= q <= q_limit (and = 1 for q = 1).
SuiteResult carmichael_zero_sum(u64 q_limit);

// Jets-based P(x,q) vs the trapezoidal contour integral of
// zeta^3(s+1) H(s+1,q) (x/q)^s on |s| = 1/8, for `count` seeded random (x,q).
// Rows: x, q, rel_err.
SuiteResult contour_agreement(int count, u64 seed, unsigned threads = 1);

// |d3_partial_sum(t) - voronoi_main(t)| <= 10 t^(2/3) on the fixed decades
// plus `random_count` seeded random t <= t_max. Rows: t, partial_sum, main,
// abs_err, envelope.
SuiteResult voronoi_envelope(u64 t_max, int random_count, u64 seed,
                             const sieve::SieveConfig& cfg = {});

// shifted_sums_all(N,H) vs per-h brute force, exact equality.
SuiteResult correlation_exactness(u64 N, u64 H, unsigned threads = 1);

// ingham_ratio in (0.5, 1.5) for h = 1..8 at N; rows: N, h, ratio.
SuiteResult ingham_window(u64 N, const sieve::SieveConfig& cfg = {});

}  // namespace d3::verify
