#include "d3/sieve.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>

#include "d3/arith.hpp"
#include "d3/jets.hpp"
#include "d3/parallel.hpp"

namespace d3::sieve {

namespace {

constexpr u64 kSieveLimit = 10'000'000'000ull;

u64 isqrt_u64(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

void sieve_block(unsigned k, u64 lo, u64 hi, const std::vector<u64>& primes,
                 std::vector<u64>& values) {
  u64 len = hi - lo;
  values.assign(len, 1);
  std::vector<u64> rem(len);
  for (u64 i = 0; i < len; ++i) rem[i] = lo + 1 + i;
  if (lo == 0) rem[0] = 1;  // n = 1
  for (u64 p : primes) {
    if (p * p > hi) break;
    u64 first = ((lo / p) + 1) * p;  // smallest multiple of p > lo
    for (u64 n = first; n <= hi; n += p) {
      u64 i = n - lo - 1;
      unsigned e = 0;
      while (rem[i] % p == 0) { rem[i] /= p; ++e; }
      values[i] *= arith::dk_prime_power(k, e);
    }
  }
  for (u64 i = 0; i < len; ++i)
    if (rem[i] > 1) values[i] *= k;  // leftover prime > sqrt(hi), exponent 1
#ifndef NDEBUG
  if (k == 3)
    for (u64 v : values) assert(v < (u64(1) << 32));
#endif
}

}  // namespace

u64 fnv1a64(const void* data, std::size_t bytes) {
  const auto* p = static_cast<const unsigned char*>(data);
  u64 h = 14695981039346656037ull;
  for (std::size_t i = 0; i < bytes; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

constexpr char kMagic[6] = {'D', '3', 'S', 'E', 'G', '\0'};
constexpr std::uint16_t kVersion = 1;

std::string cache_path(const std::string& dir, unsigned k, u64 lo, u64 hi) {
  return dir + "/seg-v" + std::to_string(kVersion) + "-k" + std::to_string(k) + "-" +
         std::to_string(lo) + "-" + std::to_string(hi) + ".d3seg";
}

template <class T>
void put_le(std::string& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

template <class T>
bool get_le(const std::string& in, std::size_t& off, T& v) {
  if (off + sizeof(T) > in.size()) return false;
  v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    v |= static_cast<T>(static_cast<unsigned char>(in[off + i])) << (8 * i);
  off += sizeof(T);
  return true;
}

}  // namespace

std::optional<std::vector<u32>> cache_load(const std::string& dir, unsigned k, u64 lo, u64 hi) {
  if (dir.empty()) return std::nullopt;
  std::string path = cache_path(dir, k, lo, hi);
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) return std::nullopt;
  std::string buf;
  char tmp[1 << 16];
  std::size_t got;
  while ((got = std::fread(tmp, 1, sizeof(tmp), f)) > 0) buf.append(tmp, got);
  std::fclose(f);

  std::size_t off = 0;
  if (buf.size() < 6 || std::memcmp(buf.data(), kMagic, 6) != 0) return std::nullopt;
  off = 6;
  std::uint16_t ver;
  std::uint8_t kk;
  u64 flo, fhi;
  if (!get_le(buf, off, ver) || ver != kVersion) return std::nullopt;
  if (!get_le(buf, off, kk) || kk != k) return std::nullopt;
  if (!get_le(buf, off, flo) || flo != lo) return std::nullopt;
  if (!get_le(buf, off, fhi) || fhi != hi) return std::nullopt;
  u64 len = hi - lo;
  if (buf.size() != off + 4 * len + 8) return std::nullopt;
  u64 sum = fnv1a64(buf.data() + off, 4 * len);
  std::vector<u32> vals(len);
  for (u64 i = 0; i < len; ++i) {
    u32 v;
    get_le(buf, off, v);
    vals[i] = v;
  }
  u64 stored;
  get_le(buf, off, stored);
  if (stored != sum) return std::nullopt;
  return vals;
}

bool cache_store(const std::string& dir, unsigned k, u64 lo, u64 hi,
                 const std::vector<u64>& values) {
  if (dir.empty()) return false;
  for (u64 v : values)
    if (v > 0xffffffffull) return false;  // format stores u32 payloads
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::string payload;
  payload.reserve(4 * values.size());
  for (u64 v : values) put_le(payload, static_cast<u32>(v));
  std::string buf;
  buf.append(kMagic, 6);
  put_le(buf, kVersion);
  put_le(buf, static_cast<std::uint8_t>(k));
  put_le(buf, lo);
  put_le(buf, hi);
  buf += payload;
  put_le(buf, fnv1a64(payload.data(), payload.size()));

  std::string path = cache_path(dir, k, lo, hi);
  std::string tmp_path = path + ".tmp";
  std::FILE* f = std::fopen(tmp_path.c_str(), "wb");
  if (!f) return false;
  bool ok = std::fwrite(buf.data(), 1, buf.size(), f) == buf.size();
  ok = (std::fclose(f) == 0) && ok;
  if (!ok) {
    std::remove(tmp_path.c_str());
    return false;
  }
  std::filesystem::rename(tmp_path, path, ec);
  return !ec;
}

SieveSegment dk_segment(unsigned k, u64 lo, u64 hi, const SieveConfig& cfg) {
  if (k == 0) throw std::invalid_argument("dk_segment: k >= 1 required");
  if (!(lo < hi) || hi > kSieveLimit)
    throw std::invalid_argument("dk_segment: need 0 <= lo < hi <= 1e10");
  u64 len = hi - lo;
  u64 need = len * 16 + isqrt_u64(hi);
  if (need > cfg.max_bytes)
    throw ResourceError("dk_segment: interval exceeds the memory budget");

  SieveSegment seg;
  seg.lo = lo;
  seg.hi = hi;
  seg.k = k;

  if (!cfg.cache_dir.empty()) {
    if (auto cached = cache_load(cfg.cache_dir, k, lo, hi)) {
      seg.values.assign(cached->begin(), cached->end());
      return seg;
    }
  }

  std::vector<u64> primes = arith::primes_up_to(isqrt_u64(hi));
  u64 nblocks = (len + cfg.segment_size - 1) / cfg.segment_size;
  std::vector<std::vector<u64>> blocks(nblocks);
  parallel_for_index(nblocks, cfg.threads, [&](std::size_t b) {
    u64 blo = lo + b * cfg.segment_size;
    u64 bhi = std::min(hi, blo + cfg.segment_size);
    sieve_block(k, blo, bhi, primes, blocks[b]);
  });
  seg.values.reserve(len);
  for (auto& b : blocks) {
    seg.values.insert(seg.values.end(), b.begin(), b.end());
    b.clear();
    b.shrink_to_fit();
  }

  if (!cfg.cache_dir.empty()) cache_store(cfg.cache_dir, k, lo, hi, seg.values);
  return seg;
}

std::vector<u64> d3_partial_sums(const std::vector<u64>& ts, const SieveConfig& cfg) {
  if (ts.empty()) return {};
  u64 tmax = *std::max_element(ts.begin(), ts.end());
  if (tmax == 0 || tmax > kSieveLimit)
    throw std::invalid_argument("d3_partial_sums: need 1 <= t <= 1e10");
  std::vector<u64> sorted(ts);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<std::pair<u64, u64>> sums;  // (t, partial sum)
  sums.reserve(sorted.size());
  u64 acc = 0;
  std::size_t next = 0;
  for (u64 lo = 0; lo < tmax; lo += cfg.segment_size) {
    u64 hi = std::min(tmax, lo + cfg.segment_size);
    SieveSegment seg = dk_segment(3, lo, hi, cfg);
    for (u64 i = 0; i < hi - lo; ++i) {
      acc += seg.values[i];
      u64 n = lo + 1 + i;
      while (next < sorted.size() && sorted[next] == n) {
        sums.emplace_back(n, acc);
        ++next;
      }
    }
  }
  std::vector<u64> out;
  out.reserve(ts.size());
  for (u64 t : ts) {
    auto it = std::lower_bound(sums.begin(), sums.end(), std::make_pair(t, u64(0)));
    out.push_back(it->second);
  }
  return out;
}

u64 d3_partial_sum(u64 t, const SieveConfig& cfg) { return d3_partial_sums({t}, cfg)[0]; }

VoronoiCoefficients voronoi_coefficients() {
  // Res_{s=1} zeta^3(s) t^s / s = t * sum_j [zeta^3]_{-1-j} * g_j(L), where
  // g(w) = e^{Lw}/(1+w). Collapsing g_j = sum_{i<=j} (-1)^{j-i} L^i/i! gives
  // a2 = 1/2, a1 = 3 g0 - 1, a0 = 3 g0^2 - 3 g1 - 3 g0 + 1.
  Real g0 = jets::stieltjes(0);
  Real g1 = jets::stieltjes(1);
  VoronoiCoefficients c;
  c.a2 = Real(1L) / Real(2L);
  c.a1 = Real(3L) * g0 - Real(1L);
  c.a0 = Real(3L) * g0 * g0 - Real(3L) * g1 - Real(3L) * g0 + Real(1L);
  return c;
}

Real voronoi_main(const Real& t) {
  if (t < Real(1L)) throw std::invalid_argument("voronoi_main: t >= 1 required");
  static const VoronoiCoefficients c = voronoi_coefficients();
  Real L = log(t);
  return t * ((c.a2 * L + c.a1) * L + c.a0);
}

}  // namespace d3::sieve
