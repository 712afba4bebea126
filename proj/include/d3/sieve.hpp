// Exact segmented sieving of d_k(n) on intervals (lo, hi], streamed partial
// sums of d_3, and the residue main term they are compared against.
//
// Strategy: per segment, divide out every prime p <= sqrt(hi) from a residual
// copy of n and multiply d_k(p^e) factors together; a residual > 1 is a prime
// appearing to the first power. Memory is O(segment + pi(sqrt hi)) and the
// same pass yields exact d_k for any k.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "d3/real.hpp"

namespace d3::sieve {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

struct SieveConfig {
  u64 segment_size = u64(1) << 22;
  u64 max_bytes = u64(6) << 30;   // refuse allocations past this
  unsigned threads = 1;
  std::string cache_dir;          // empty = no on-disk cache
};

struct SieveSegment {
  u64 lo = 0, hi = 0;  // values for n in (lo, hi]
  unsigned k = 0;
  std::vector<u64> values;  // values[i] = d_k(lo + 1 + i)
};

// Exact d_k(n) for n in (lo, hi]. Requires 0 <= lo < hi <= 1e10.
// Throws ResourceError if the interval exceeds the memory budget.
SieveSegment dk_segment(unsigned k, u64 lo, u64 hi, const SieveConfig& cfg = {});

// Exact sum_{n<=t} d_3(n), streamed over segments (uses the cache if set).
u64 d3_partial_sum(u64 t, const SieveConfig& cfg = {});

// Batched partial sums at several checkpoints in one streaming pass;
// ts need not be sorted, results match the input order.
std::vector<u64> d3_partial_sums(const std::vector<u64>& ts, const SieveConfig& cfg = {});

// Residue main term for sum_{n<=t} d_3(n):
//   t (L^2/2 + (3 g0 - 1) L + 3 g0^2 - 3 g1 - 3 g0 + 1),  L = log t,
// the coefficients coming from the zeta^3 jet against e^{Lw}/(1+w).
Real voronoi_main(const Real& t);

// Exposed for tests: the three polynomial coefficients (a2, a1, a0).
struct VoronoiCoefficients {
  Real a2, a1, a0;
};
VoronoiCoefficients voronoi_coefficients();

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- segment cache (optional) ---
// Little-endian binary: magic "D3SEG\0", u16 version=1, u8 k, u64 lo, u64 hi,
// (hi-lo) u32 values, u64 FNV-1a checksum of the value bytes. Misses are
// silent; unreadable or corrupt files count as misses.
std::optional<std::vector<u32>> cache_load(const std::string& dir, unsigned k, u64 lo, u64 hi);
bool cache_store(const std::string& dir, unsigned k, u64 lo, u64 hi,
                 const std::vector<u64>& values);
u64 fnv1a64(const void* data, std::size_t bytes);

}  // namespace d3::sieve
