#pragma once

#include <ostream>
#include <string>

#include "ruledmod/errors.hpp"
#include "ruledmod/rational.hpp"

namespace ruledmod {

// Numerical type of a ruled surface pi: X -> C. C is a smooth curve of
// genus g, C0 a minimal section with (C0^2) = -e and f a fiber, so that
// NS(X) = Z C0 + Z f with (C0.f) = 1 and (f^2) = 0. The canonical class
// is K_X = -2 C0 - (2 - 2g + e) f and chi(O_X) = 1 - g.
struct RuledSurface {
  long long genus = 0;
  long long invariant = 0;  // e

  RuledSurface(long long g, long long e) : genus(g), invariant(e) {
    if (g < 0) throw input_error("genus must be non-negative");
  }

  long long chi_O() const { return 1 - genus; }

  friend bool operator==(const RuledSurface&, const RuledSurface&) = default;
};

// Class a*C0 + b*f in NS(X) tensor Q, with exact rational coordinates.
struct DivClass {
  Rational a{};
  Rational b{};

  bool is_integral() const { return a.is_integer() && b.is_integer(); }
  bool is_zero() const { return a.is_zero() && b.is_zero(); }

  std::string str() const { return "(" + a.str() + ", " + b.str() + ")"; }

  friend DivClass operator+(const DivClass& x, const DivClass& y) { return {x.a + y.a, x.b + y.b}; }
  friend DivClass operator-(const DivClass& x, const DivClass& y) { return {x.a - y.a, x.b - y.b}; }
  friend DivClass operator-(const DivClass& x) { return {-x.a, -x.b}; }
  friend DivClass operator*(const Rational& c, const DivClass& d) { return {c * d.a, c * d.b}; }
  friend DivClass operator*(const DivClass& d, const Rational& c) { return c * d; }

  friend bool operator==(const DivClass&, const DivClass&) = default;
  friend std::ostream& operator<<(std::ostream& os, const DivClass& d) { return os << d.str(); }
};

// Bilinear extension of (C0^2) = -e, (C0.f) = 1, (f^2) = 0.
inline Rational intersect(const DivClass& d1, const DivClass& d2, const RuledSurface& s) {
  return Rational(-s.invariant) * d1.a * d2.a + d1.a * d2.b + d2.a * d1.b;
}

inline DivClass canonical(const RuledSurface& s) {
  return {Rational(-2), Rational(-(2 - 2 * s.genus + s.invariant))};
}

// H(x) = C0 + x f. Construction does not itself check ampleness.
inline DivClass polarization(const Rational& x) { return {Rational(1), x}; }

// Exclusive lower bound of the ample segment of the ray H(x):
// H(x) is ample iff x is strictly above this value.
inline Rational ample_threshold(const RuledSurface& s) {
  return s.invariant >= 0 ? Rational(s.invariant) : Rational(s.invariant, 2);
}

// Standard numerical ampleness criterion on a ruled surface:
// a > 0 and b > a e for e >= 0, b > a e / 2 for e < 0.
inline bool is_ample(const RuledSurface& s, const DivClass& d) {
  if (!(d.a > Rational(0))) return false;
  return d.b > d.a * ample_threshold(s);
}

// (K_X . H(x)) = e + 2g - 2 - 2x.
inline Rational k_dot_h(const RuledSurface& s, const Rational& x) {
  return Rational(s.invariant + 2 * s.genus - 2) - Rational(2) * x;
}

}  // namespace ruledmod
