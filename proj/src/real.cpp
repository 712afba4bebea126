#include "d3/real.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace d3 {

namespace {
// 30 decimal digits + 32 guard bits; divisor-sum cancellation in the H jets
// eats ~8 digits at q ~ 10^3..10^4, the guard keeps the 1e-18 identity
// tolerances comfortable at the default setting.
std::atomic<int> g_digits{30};

mpfr_prec_t bits_for(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + 32;
}
}  // namespace

void Real::set_working_digits(int decimal_digits) {
  if (decimal_digits < 30) decimal_digits = 30;
  g_digits.store(decimal_digits, std::memory_order_relaxed);
}

int Real::working_digits() { return g_digits.load(std::memory_order_relaxed); }

mpfr_prec_t Real::working_bits() { return bits_for(working_digits()); }

std::string Real::str(int significant_digits) const {
  char* out = nullptr;
  mpfr_asprintf(&out, "%.*Rg", significant_digits, v_);
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

Real rel_deviation(const Real& a, const Real& b, const Real& floor_abs) {
  Real diff = abs(a - b);
  Real scale = max(abs(a), abs(b));
  if (scale <= floor_abs) return Real(0L);
  return diff / scale;
}

}  // namespace d3
