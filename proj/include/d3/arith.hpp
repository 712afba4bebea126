// Exact elementary arithmetic: factorization, Moebius, totient, divisor
// counts on prime powers, Ramanujan sums c_q(h) = sum_{d | (q,h)} d mu(q/d).
// Everything here is exact 64-bit integer work; no floating point.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace d3::arith {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

struct PrimePower {
  u64 p;
  int e;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Canonical factorization: primes strictly increasing, exponents >= 1,
// product of p^e recovers n. n = 1 has an empty factor list.
struct FactoredInteger {
  u64 n = 1;
  std::vector<PrimePower> factors;
};

// Deterministic factorization for 1 <= n < 2^63: trial division over a
// precomputed prime table (primes <= 1e6) plus a deterministic Miller-Rabin
// check for any remaining cofactor. Throws std::invalid_argument on n = 0.
FactoredInteger factorize(u64 n);

// Deterministic Miller-Rabin for 64-bit n (fixed witness set).
bool is_prime_u64(u64 n);

// Primes up to `limit` (simple Eratosthenes).
std::vector<u64> primes_up_to(u64 limit);

int mobius(const FactoredInteger& n);
u64 totient(const FactoredInteger& n);

// All divisors of n, ascending.
std::vector<u64> divisors(const FactoredInteger& n);

// d_k(p^j) = C(j+k-1, k-1). Throws std::overflow_error past 64 bits.
u64 dk_prime_power(unsigned k, unsigned j);

// d_k(n) from a factorization.
u64 dk_of(unsigned k, const FactoredInteger& n);

// Ramanujan sum c_q(h), exact, via the divisor-sum formula over d | (q,|h|).
// c_q(0) = phi(q); c_q(-h) = c_q(h). Throws std::invalid_argument on q = 0.
i64 ramanujan_sum(u64 q, i64 h);

// Same value through the multiplicative prime-power closed form; the hot-loop
// path for the singular series. `fq` is the factorization of q.
i64 ramanujan_sum_factored(const FactoredInteger& fq, u64 phi_q, u64 h);

// Exact rational sigma_{-1}(h) = sum_{j | h} 1/j = sigma(h)/h.
struct Rational {
  u64 num, den;  // reduced
};
Rational sigma_minus_one(const FactoredInteger& h);

u64 gcd_u64(u64 a, u64 b);

}  // namespace d3::arith
