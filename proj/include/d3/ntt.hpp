// Exact integer cross-correlation via number-theoretic transforms over
// 32-bit primes, recombined by the Chinese remainder theorem. No floating
// point anywhere, so results are exact and order-independent.
//
// correlate(a, b, max_lag)[l] = sum_i a[i] * b[i + l],  l = 0..max_lag.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace d3::ntt {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct NttPrime {
  u32 p;
  int two_adicity;  // 2^a | p-1
};

// Candidate primes, largest 2-adicity first. Selection takes primes in order
// (subject to supporting the transform length) until the product exceeds the
// coefficient bound; two primes cover every realistic d_3 workload and a
// third joins automatically when the bound demands it.
const std::vector<NttPrime>& prime_pool();

// Primes for a transform of `length` with coefficient values < `bound`.
// Throws std::overflow_error if the pool cannot cover the bound.
std::vector<NttPrime> select_primes(u64 length, u128 bound);

// Exact correlation of nonnegative sequences. The conservative coefficient
// bound min(|a|,|b|) * max(a) * max(b) must fit u64 (else overflow_error).
std::vector<u64> correlate(const std::vector<u32>& a, const std::vector<u32>& b,
                           std::size_t max_lag, unsigned threads = 1);

// In-place iterative radix-2 NTT mod p (size a power of two, 2-adicity ok).
void ntt_forward(std::vector<u32>& data, u32 p, u32 root);
void ntt_inverse(std::vector<u32>& data, u32 p, u32 root);

// Primitive root of p (p-1 = c * 2^a with small c), deterministic.
u32 primitive_root(u32 p);

}  // namespace d3::ntt
