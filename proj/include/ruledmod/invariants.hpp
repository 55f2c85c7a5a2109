#pragma once

#include <numeric>
#include <ostream>
#include <string>
#include <utility>

#include "ruledmod/surface.hpp"

namespace ruledmod {

// Chern vector (r, xi, chi) of a coherent sheaf of positive rank: rank,
// first Chern class (integral) and Euler characteristic. Rank 0 is
// rejected; the discriminant of torsion sheaves is not defined here.
struct ChernVector {
  long long r;
  DivClass xi;
  long long chi;

  ChernVector(long long rank, DivClass c1, long long euler)
      : r(rank), xi(std::move(c1)), chi(euler) {
    if (r < 1) throw input_error("rank must be a positive integer");
    if (!xi.is_integral()) throw input_error("c1 class must be integral");
  }

  // (xi . f) = a, the degree of xi in the fiber direction.
  long long fiber_degree() const { return xi.a.num(); }

  std::string str() const {
    return "(" + std::to_string(r) + ", " + xi.str() + ", " + std::to_string(chi) + ")";
  }

  friend bool operator==(const ChernVector&, const ChernVector&) = default;
  friend std::ostream& operator<<(std::ostream& os, const ChernVector& e) { return os << e.str(); }
};

// mu(e) = xi / r.
inline DivClass slope_vec(const ChernVector& e) {
  return Rational(1, e.r) * e.xi;
}

// Delta(e) = (-2 r chi + 2 r^2 chi(O_X) - r (xi.K_X) + (xi^2)) / (2 r^2).
// Non-negative for Chern vectors of mu-semistable sheaves (Bogomolov).
inline Rational discriminant(const ChernVector& e, const RuledSurface& s) {
  const DivClass k = canonical(s);
  const Rational n = Rational(-2 * e.r * e.chi) + Rational(2 * e.r * e.r * s.chi_O()) -
                     Rational(e.r) * intersect(e.xi, k, s) + intersect(e.xi, e.xi, s);
  return n / Rational(2 * e.r * e.r);
}

// The unique c2 consistent with Delta via Riemann-Roch:
// c2 = r chi(O_X) + (xi.(xi - K_X)) / 2 - chi. Integer-valued on integral
// input; returned exactly as a rational for cross-checking.
inline Rational c2(const ChernVector& e, const RuledSurface& s) {
  const DivClass k = canonical(s);
  return Rational(e.r * s.chi_O()) + intersect(e.xi, e.xi - k, s) / Rational(2) - Rational(e.chi);
}

// Euler pairing chi(e1, e2) via Riemann-Roch:
// r1 r2 [ ((mu2 - mu1)^2 - (mu2 - mu1).K_X) / 2 + chi(O_X) - Delta1 - Delta2 ].
inline Rational euler_pairing(const ChernVector& e1, const ChernVector& e2,
                              const RuledSurface& s) {
  const DivClass d = slope_vec(e2) - slope_vec(e1);
  const Rational quad = (intersect(d, d, s) - intersect(d, canonical(s), s)) / Rational(2);
  return Rational(e1.r * e2.r) *
         (quad + Rational(s.chi_O()) - discriminant(e1, s) - discriminant(e2, s));
}

// H-slope (xi . H(x)) / r.
inline Rational slope_h(const ChernVector& e, const Rational& x, const RuledSurface& s) {
  return intersect(e.xi, polarization(x), s) / Rational(e.r);
}

// Chern vector of E tensor O(D) for integral D:
// (r, xi + r D, chi + (xi.D) + r (D.(D - K_X)) / 2). Preserves Delta.
inline ChernVector twist(const ChernVector& e, const DivClass& d, const RuledSurface& s) {
  if (!d.is_integral()) throw input_error("twist class must be integral");
  const DivClass k = canonical(s);
  const Rational shift =
      intersect(e.xi, d, s) + Rational(e.r) * intersect(d, d - k, s) / Rational(2);
  if (!shift.is_integer()) throw std::logic_error("twist shift must be integral");
  return ChernVector(e.r, e.xi + Rational(e.r) * d, e.chi + shift.num());
}

struct NormalizedVector {
  ChernVector vec;
  long long m = 0;  // vec = twist(input, m * C0)
};

// Twist by the unique multiple of C0 that puts the fiber degree into
// [0, r). Twisting by C0 moves (xi.f) by r; twisting by f fixes it.
inline NormalizedVector normalize_fiber_degree(const ChernVector& e, const RuledSurface& s) {
  const long long a = e.fiber_degree();
  long long q = a / e.r;
  if (a % e.r != 0 && a < 0) --q;  // floor division
  const long long m = -q;
  return {twist(e, DivClass{Rational(m), Rational(0)}, s), m};
}

// Componentwise sum, the invariants of an extension of e2 by e1.
inline ChernVector sum(const ChernVector& e1, const ChernVector& e2) {
  return ChernVector(e1.r + e2.r, e1.xi + e2.xi, e1.chi + e2.chi);
}

// gcd(r, a, b, chi) where xi = a C0 + b f; always >= 1.
inline long long gcd_divisibility(const ChernVector& e) {
  auto g = std::gcd(e.r, e.xi.a.num());
  g = std::gcd(g, e.xi.b.num());
  g = std::gcd(g, e.chi);
  return g;
}

}  // namespace ruledmod
