// Brute-force oracles shared across the test suites. Everything here is
// deliberately naive and independent of the library code paths it checks.
#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// d_k(n) by direct enumeration of ordered factorizations.
inline u64 dk_brute(unsigned k, u64 n) {
  if (k == 1) return 1;
  u64 total = 0;
  for (u64 d = 1; d <= n; ++d)
    if (n % d == 0) total += dk_brute(k - 1, n / d);
  return total;
}

// d_3(n) as the triple-loop count of ordered (a,b,c) with abc = n.
inline u64 d3_brute(u64 n) {
  u64 total = 0;
  for (u64 a = 1; a <= n; ++a) {
    if (n % a) continue;
    u64 m = n / a;
    for (u64 b = 1; b <= m; ++b)
      if (m % b == 0) ++total;
  }
  return total;
}

// sum_{n<=t} d_3(n) by the double hyperbola loop sum_a sum_{b<=t/a} floor(t/ab).
inline u64 d3_partial_sum_hyperbola(u64 t) {
  u64 s = 0;
  for (u64 a = 1; a <= t; ++a) {
    u64 ta = t / a;
    for (u64 b = 1; b <= ta; ++b) s += ta / b;
  }
  return s;
}

// Ramanujan sum by the exponential-sum definition, rounded to nearest int.
inline i64 ramanujan_exponential(u64 q, i64 h) {
  double acc = 0;
  for (u64 a = 1; a <= q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    acc += std::cos(2.0 * M_PI * double(a) * double(h) / double(q));
  }
  return static_cast<i64>(std::llround(acc));
}

// Trial-division factorization oracle.
inline std::vector<std::pair<u64, int>> factor_brute(u64 n) {
  std::vector<std::pair<u64, int>> f;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) { n /= d; ++e; }
      f.emplace_back(d, e);
    }
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

// Euler totient by counting coprime residues.
inline u64 totient_brute(u64 n) {
  u64 c = 0;
  for (u64 a = 1; a <= n; ++a)
    if (std::gcd(a, n) == 1) ++c;
  return c;
}

}  // namespace oracle
