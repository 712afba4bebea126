#include "d3/ntt.hpp"

#include <algorithm>
#include <cassert>

#include "d3/parallel.hpp"

namespace d3::ntt {

namespace {

u32 mulmod(u32 a, u32 b, u32 p) { return static_cast<u32>(u64(a) * b % p); }

u32 powmod(u32 a, u64 e, u32 p) {
  u64 r = 1, x = a % p;
  while (e) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
    e >>= 1;
  }
  return static_cast<u32>(r);
}

std::vector<u32> factor_small(u32 n) {
  std::vector<u32> fs;
  for (u32 d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) fs.push_back(n);
  return fs;
}

}  // namespace

u32 primitive_root(u32 p) {
  std::vector<u32> fs = factor_small(p - 1);
  for (u32 g = 2;; ++g) {
    bool ok = true;
    for (u32 f : fs)
      if (powmod(g, (p - 1) / f, p) == 1) { ok = false; break; }
    if (ok) return g;
  }
}

const std::vector<NttPrime>& prime_pool() {
  static const std::vector<NttPrime> pool = {
      {3221225473u, 30},  // 3 * 2^30 + 1
      {3489660929u, 28},  // 13 * 2^28 + 1
      {2281701377u, 27},  // 17 * 2^27 + 1
      {2013265921u, 27},  // 15 * 2^27 + 1
      {469762049u, 26},   // 7 * 2^26 + 1
      {167772161u, 25},   // 5 * 2^25 + 1
  };
  return pool;
}

std::vector<NttPrime> select_primes(u64 length, u128 bound) {
  int need_adicity = 0;
  while ((u64(1) << need_adicity) < length) ++need_adicity;
  std::vector<NttPrime> out;
  u128 prod = 1;
  bool saturated = false;
  for (const NttPrime& np : prime_pool()) {
    if (np.two_adicity < need_adicity) continue;
    out.push_back(np);
    // Guard the running product against u128 overflow; past ~2^96 any
    // representable bound is already covered.
    if (prod > (u128(1) << 96)) saturated = true;
    if (!saturated) prod *= np.p;
    if ((out.size() >= 2 && (saturated || prod > bound))) return out;
  }
  throw std::overflow_error("ntt: prime pool cannot cover the requested length/bound");
}

void ntt_forward(std::vector<u32>& data, u32 p, u32 root) {
  std::size_t n = data.size();
  assert((n & (n - 1)) == 0);
  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    u32 wlen = powmod(root, (p - 1) / len, p);
    for (std::size_t i = 0; i < n; i += len) {
      u32 w = 1;
      for (std::size_t j = 0; j < len / 2; ++j) {
        u32 u = data[i + j];
        u32 v = mulmod(data[i + j + len / 2], w, p);
        data[i + j] = u + v < p ? u + v : u + v - p;
        data[i + j + len / 2] = u >= v ? u - v : u + p - v;
        w = mulmod(w, wlen, p);
      }
    }
  }
}

void ntt_inverse(std::vector<u32>& data, u32 p, u32 root) {
  u32 inv_root = powmod(root, p - 2, p);
  ntt_forward(data, p, inv_root);
  u32 inv_n = powmod(static_cast<u32>(data.size() % p), p - 2, p);
  for (auto& x : data) x = mulmod(x, inv_n, p);
}

std::vector<u64> correlate(const std::vector<u32>& a, const std::vector<u32>& b,
                           std::size_t max_lag, unsigned threads) {
  if (a.empty() || b.empty()) throw std::invalid_argument("correlate: empty input");
  if (max_lag >= b.size())
    throw std::invalid_argument("correlate: max_lag must be < |b|");
  u64 max_a = *std::max_element(a.begin(), a.end());
  u64 max_b = *std::max_element(b.begin(), b.end());
  u128 bound = u128(std::min(a.size(), b.size())) * max_a * max_b;
  if (bound > u128(UINT64_MAX))
    throw std::overflow_error("correlate: coefficient bound exceeds 64 bits");

  std::size_t conv_len = a.size() + b.size() - 1;
  std::size_t n = 1;
  while (n < conv_len) n <<= 1;
  std::vector<NttPrime> primes = select_primes(n, bound);

  // Correlation as convolution with a reversed: lag l sits at a.size()-1+l.
  std::size_t base = a.size() - 1;
  std::vector<std::vector<u32>> residues(primes.size());
  // One prime at a time keeps peak memory at two length-n arrays.
  for (std::size_t pi = 0; pi < primes.size(); ++pi) {
    u32 p = primes[pi].p;
    u32 root = primitive_root(p);
    std::vector<u32> fa(n, 0), fb(n, 0);
    for (std::size_t i = 0; i < a.size(); ++i) fa[a.size() - 1 - i] = a[i] % p;
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i] % p;
    if (threads >= 2) {
      std::thread t([&] { ntt_forward(fa, p, root); });
      ntt_forward(fb, p, root);
      t.join();
    } else {
      ntt_forward(fa, p, root);
      ntt_forward(fb, p, root);
    }
    parallel_blocks(n, threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) fa[i] = mulmod(fa[i], fb[i], p);
    });
    fb.clear();
    fb.shrink_to_fit();
    ntt_inverse(fa, p, root);
    residues[pi].resize(max_lag + 1);
    for (std::size_t l = 0; l <= max_lag; ++l) residues[pi][l] = fa[base + l];
  }

  // CRT (Garner) across the selected primes.
  std::vector<u64> out(max_lag + 1);
  for (std::size_t l = 0; l <= max_lag; ++l) {
    u128 x = residues[0][l];
    u128 mod = primes[0].p;
    for (std::size_t pi = 1; pi < primes.size(); ++pi) {
      u32 p = primes[pi].p;
      u32 xm = static_cast<u32>(x % p);
      u32 r = residues[pi][l];
      u32 diff = r >= xm ? r - xm : r + p - xm;
      u32 minv = powmod(static_cast<u32>(mod % p), p - 2, p);
      u32 t = mulmod(diff, minv, p);
      x += mod * t;
      mod *= p;
    }
    assert(x <= u128(UINT64_MAX));
    out[l] = static_cast<u64>(x);
  }
  return out;
}

}  // namespace d3::ntt
