#pragma once

#include <random>

#include "ruledmod/invariants.hpp"

namespace testgen {

using ruledmod::ChernVector;
using ruledmod::DivClass;
using ruledmod::Rational;
using ruledmod::RuledSurface;

inline long long pick(std::mt19937& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline Rational rational(std::mt19937& rng, long long num_range = 20, long long den_max = 8) {
  return Rational(pick(rng, -num_range, num_range), pick(rng, 1, den_max));
}

inline Rational nonzero_rational(std::mt19937& rng, long long num_range = 20,
                                 long long den_max = 8) {
  Rational r = rational(rng, num_range, den_max);
  while (r.is_zero()) r = rational(rng, num_range, den_max);
  return r;
}

inline RuledSurface surface(std::mt19937& rng, long long gmax = 3, long long emax = 3) {
  return RuledSurface(pick(rng, 0, gmax), pick(rng, -emax, emax));
}

inline DivClass integral_class(std::mt19937& rng, long long range = 6) {
  return {Rational(pick(rng, -range, range)), Rational(pick(rng, -range, range))};
}

inline ChernVector vector(std::mt19937& rng, long long rmax = 4, long long coord = 6,
                          long long chi_range = 8) {
  return ChernVector(pick(rng, 1, rmax), integral_class(rng, coord),
                     pick(rng, -chi_range, chi_range));
}

// A rational strictly above the ample threshold of the ray.
inline Rational ample_x(std::mt19937& rng, const RuledSurface& s) {
  return ruledmod::ample_threshold(s) + Rational(pick(rng, 1, 24), pick(rng, 1, 8));
}

}  // namespace testgen
