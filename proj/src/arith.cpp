#include "d3/arith.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

namespace d3::arith {

namespace {

u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod_u64(u64 a, u64 e, u64 m) {
  u64 r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

const std::vector<u64>& small_prime_table() {
  static const std::vector<u64> table = primes_up_to(1'000'000);
  return table;
}

}  // namespace

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<bool> comp(limit + 1, false);
  for (u64 i = 2; i * i <= limit; ++i)
    if (!comp[i])
      for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
  for (u64 i = 2; i <= limit; ++i)
    if (!comp[i]) out.push_back(i);
  return out;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  // This witness set is deterministic for all n < 3.3e24.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

FactoredInteger factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  if (n >= (u64(1) << 63)) throw std::invalid_argument("factorize: n out of 64-bit signed range");
  FactoredInteger f;
  f.n = n;
  for (u64 p : small_prime_table()) {
    if (p * p > n) break;
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      f.factors.push_back({p, e});
    }
  }
  if (n > 1) {
    // Cofactor after stripping primes <= 1e6: either prime, or a product of
    // at most two primes > 1e6 (n < 2^63 < 1e6^4 rules out more). Inputs in
    // this project are <= ~1e10 so the two-prime case is p*q with p,q > 1e6
    // only when n > 1e12; still handled for contract completeness.
    if (is_prime_u64(n)) {
      f.factors.push_back({n, 1});
    } else {
      // sqrt split: n = p^2 or p*q found by Fermat-adjacent scan is overkill;
      // Pollard rho is the standard tool.
      u64 d = n;
      auto rho = [](u64 m) -> u64 {
        if (m % 2 == 0) return 2;
        for (u64 c = 1;; ++c) {
          u64 x = 2, y = 2, g = 1;
          auto step = [&](u64 v) { return (mulmod_u64(v, v, m) + c) % m; };
          while (g == 1) {
            x = step(x);
            y = step(step(y));
            g = std::gcd(x > y ? x - y : y - x, m);
          }
          if (g != m) return g;
        }
      };
      u64 a = rho(d);
      u64 b = d / a;
      if (a > b) std::swap(a, b);
      std::vector<u64> parts;
      for (u64 v : {a, b}) {
        if (is_prime_u64(v)) {
          parts.push_back(v);
        } else {
          u64 w = rho(v);
          parts.push_back(w);
          parts.push_back(v / w);
        }
      }
      std::sort(parts.begin(), parts.end());
      for (std::size_t i = 0; i < parts.size();) {
        std::size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        f.factors.push_back({parts[i], static_cast<int>(j - i)});
        i = j;
      }
    }
  }
  return f;
}

int mobius(const FactoredInteger& n) {
  int sign = 1;
  for (const auto& [p, e] : n.factors) {
    (void)p;
    if (e >= 2) return 0;
    sign = -sign;
  }
  return sign;
}

u64 totient(const FactoredInteger& n) {
  u64 t = n.n;
  for (const auto& [p, e] : n.factors) {
    (void)e;
    t = t / p * (p - 1);
  }
  return t;
}

std::vector<u64> divisors(const FactoredInteger& n) {
  std::vector<u64> ds{1};
  for (const auto& [p, e] : n.factors) {
    std::size_t sz = ds.size();
    u64 pe = 1;
    for (int i = 1; i <= e; ++i) {
      pe *= p;
      for (std::size_t j = 0; j < sz; ++j) ds.push_back(ds[j] * pe);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

u64 dk_prime_power(unsigned k, unsigned j) {
  if (k == 0) throw std::invalid_argument("dk_prime_power: k >= 1 required");
  // C(j+k-1, k-1) multiplicatively, overflow-checked.
  u128 r = 1;
  for (unsigned i = 1; i < k; ++i) {
    r = r * (j + i) / i;  // exact: product of i consecutive binomial steps
    if (r > u128(UINT64_MAX)) throw std::overflow_error("dk_prime_power: result exceeds 64 bits");
  }
  return static_cast<u64>(r);
}

u64 dk_of(unsigned k, const FactoredInteger& n) {
  u128 r = 1;
  for (const auto& [p, e] : n.factors) {
    (void)p;
    r *= dk_prime_power(k, static_cast<unsigned>(e));
    if (r > u128(UINT64_MAX)) throw std::overflow_error("dk_of: result exceeds 64 bits");
  }
  return static_cast<u64>(r);
}

i64 ramanujan_sum(u64 q, i64 h) {
  if (q == 0) throw std::invalid_argument("ramanujan_sum: q >= 1 required");
  u64 ah = h >= 0 ? static_cast<u64>(h) : static_cast<u64>(-h);
  FactoredInteger fq = factorize(q);
  u64 g = ah == 0 ? q : std::gcd(ah, q);
  // sum over d | g of d * mu(q/d); divisors of g also divide q.
  FactoredInteger fg = factorize(g);
  i64 s = 0;
  for (u64 d : divisors(fg)) {
    // mu(q/d) from the factorization of q: exponent of p in q/d.
    int mu = 1;
    bool zero = false;
    for (const auto& [p, e] : fq.factors) {
      u64 dd = d;
      int ed = 0;
      while (dd % p == 0) { dd /= p; ++ed; }
      int rem = e - ed;
      if (rem >= 2) { zero = true; break; }
      if (rem == 1) mu = -mu;
    }
    if (!zero) s += static_cast<i64>(d) * mu;
  }
  return s;
}

i64 ramanujan_sum_factored(const FactoredInteger& fq, u64 phi_q, u64 h) {
  if (h == 0) return static_cast<i64>(phi_q);
  // c_{p^a}(h): phi(p^a) if p^a | h; -p^(a-1) if v_p(h) = a-1; else 0.
  i64 c = 1;
  for (const auto& [p, a] : fq.factors) {
    u64 hh = h;
    int v = 0;
    while (v < a && hh % p == 0) { hh /= p; ++v; }
    if (v >= a) {
      u64 pe = 1;
      for (int i = 1; i < a; ++i) pe *= p;
      c *= static_cast<i64>(pe * (p - 1));
    } else if (v == a - 1) {
      u64 pe = 1;
      for (int i = 1; i < a; ++i) pe *= p;
      c *= -static_cast<i64>(pe);
    } else {
      return 0;
    }
  }
  return c;
}

Rational sigma_minus_one(const FactoredInteger& h) {
  // sum_{j|h} 1/j = sigma(h)/h, reduced.
  u128 sigma = 1;
  for (const auto& [p, e] : h.factors) {
    u128 s = 1, pe = 1;
    for (int i = 0; i < e; ++i) { pe *= p; s += pe; }
    sigma *= s;
  }
  if (sigma > u128(UINT64_MAX)) throw std::overflow_error("sigma_minus_one: sigma(h) exceeds 64 bits");
  u64 num = static_cast<u64>(sigma), den = h.n;
  u64 g = std::gcd(num, den);
  return {num / g, den / g};
}

}  // namespace d3::arith
