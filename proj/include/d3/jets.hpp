// Truncated Laurent-series ("jet") arithmetic about a fixed expansion center,
// Stieltjes constants via Euler-Maclaurin, and a trapezoidal contour-integral
// residue oracle used only by tests.
//
// A jet holds coefficients of w^{-m} .. w^K where w = s - center. Products
// of jets with poles cannot fill all K retained orders exactly; `valid` keeps
// the highest order whose coefficient is complete, and residue extraction
// asserts valid >= -1.
#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "d3/creal.hpp"
#include "d3/real.hpp"

namespace d3::jets {

enum class Center { kZero, kOne };

inline constexpr int kDefaultOrder = 3;
inline constexpr int kMaxPole = 3;

struct LaurentJet {
  Center center = Center::kOne;
  int pole = 0;               // m, 0..3
  int order = kDefaultOrder;  // K
  int valid = kDefaultOrder;  // highest complete coefficient order
  std::vector<Real> c;        // c[i] = coeff of w^(i - pole); size pole+order+1

  const Real& at(int j) const { return c[static_cast<std::size_t>(j + pole)]; }
  Real& at(int j) { return c[static_cast<std::size_t>(j + pole)]; }

  // Magnitude of the top retained coefficient; truncation-health metric.
  Real guard_magnitude() const { return abs(c.back()); }
};

LaurentJet jet_constant(Real value, Center center, int order = kDefaultOrder);
LaurentJet jet_add(const LaurentJet& a, const LaurentJet& b);
LaurentJet jet_sub(const LaurentJet& a, const LaurentJet& b);
LaurentJet jet_mul(const LaurentJet& a, const LaurentJet& b);
LaurentJet jet_scale(const LaurentJet& a, const Real& s);

// Strips exactly-zero leading coefficients after cancellation (e.g. the
// product (1/w)*(w) normalizes back to pole order 0).
LaurentJet jet_normalized(const LaurentJet& a);

// Analytic jet of e^{Lw}: coefficients L^j/j!, j = 0..order.
LaurentJet exp_linear_jet(const Real& L, Center center, int order = kDefaultOrder);

// Coefficient of w^{-1} (0 for an analytic jet). Requires jet.valid >= -1.
Real residue_of(const LaurentJet& j);

// Stieltjes constant gamma_n at the working precision via Euler-Maclaurin
// with explicit error control. n = 0..3 is the contractual range and is
// cross-checked against embedded reference strings (mismatch throws); larger
// n (up to 30) feeds the internal zeta jets and the contour oracle.
Real stieltjes(int n);

// zeta(s) about s=1: 1/w + sum_n (-1)^n gamma_n w^n / n!.
LaurentJet zeta_jet(Center center = Center::kOne, int order = kDefaultOrder);

// zeta^3(s) about s=1, pole order 3, all retained coefficients complete
// (built from a zeta jet carried to order+2 internally).
LaurentJet zeta_cubed_jet(Center center = Center::kOne, int order = kDefaultOrder);

// zeta(1+w) for complex w with |w| <= 1/3 by the truncated Laurent series;
// `terms` coefficients past the pole. Oracle-side evaluation only.
Complex zeta_near_one(const Complex& w, int terms = 24);

// Trapezoidal approximation of (1/2pi i) \oint f ds on |s - center| = radius.
// Evaluates at m and 2m points; throws std::runtime_error if the refinement
// moves the result by more than `tol` (non-convergence). Test oracle only.
Complex contour_residue_oracle(const std::function<Complex(const Complex&)>& f,
                               const Complex& center, const Real& radius,
                               int m = 64, double tol = 1e-12);

}  // namespace d3::jets
