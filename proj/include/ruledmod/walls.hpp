#pragma once

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ruledmod/invariants.hpp"

namespace ruledmod {

/*
  Walls and chambers on the polarization ray H(x) = C0 + x f.

  A numerical sub-datum of e = (r, xi, chi) is (r1, xi1, chi1) with
  0 < r1 < r, both discriminants Delta(r1, xi1, chi1) and
  Delta(r - r1, xi - xi1, chi - chi1) non-negative, mu difference
  xi1/r1 - xi/r nonzero, and some ample H orthogonal to that difference.
  On the ray the orthogonality condition is a single crossing point x_w,
  so walls are points of the ample segment and chambers are the open
  intervals between consecutive walls.

  Enumeration is finite: with eta = r*xi1 - r1*xi = (alpha, beta), the
  discriminant decomposition identity and Delta >= 0 on both sides force

      -2 r^2 r1 (r - r1) Delta(e) <= (eta^2) < 0,

  and (eta^2) = alpha * (2 beta - e alpha) is a nonzero integer multiple
  of alpha, so |alpha| is bounded by the same quantity. Every candidate
  then has finitely many beta.
*/

// Interval of polarization parameters x. An absent upper endpoint means
// the interval is unbounded above.
struct RayInterval {
  Rational lo{};
  bool lo_closed = false;
  std::optional<Rational> hi{};
  bool hi_closed = true;

  bool unbounded() const { return !hi.has_value(); }

  bool empty() const {
    if (!hi) return false;
    if (lo < *hi) return false;
    if (*hi < lo) return true;
    return !(lo_closed && hi_closed);
  }

  bool contains(const Rational& x) const {
    if (x < lo || (x == lo && !lo_closed)) return false;
    if (!hi) return true;
    return x < *hi || (x == *hi && hi_closed);
  }

  std::string str() const {
    std::string s = lo_closed ? "[" : "(";
    s += lo.str() + ", ";
    s += hi ? hi->str() + (hi_closed ? "]" : ")") : std::string("inf)");
    return s;
  }

  friend bool operator==(const RayInterval&, const RayInterval&) = default;
  friend std::ostream& operator<<(std::ostream& os, const RayInterval& v) { return os << v.str(); }
};

// One destabilizing sub-datum on a wall: the rank and c1 of the
// sub-object together with the closed interval of Euler characteristics
// keeping both discriminants non-negative.
struct WallWitness {
  long long r1 = 0;
  DivClass xi1{};
  long long chi_min = 0;
  long long chi_max = 0;

  friend bool operator==(const WallWitness&, const WallWitness&) = default;
};

// A wall: crossing point on the ray, the primitive integral class
// orthogonal to H(x_w) normalized so (zeta.f) > 0, and all witnesses.
struct Wall {
  Rational x{};
  DivClass zeta{};
  std::vector<WallWitness> witnesses;

  friend bool operator==(const Wall&, const Wall&) = default;
};

struct ChamberDecomposition {
  RayInterval range;  // query clipped to the ample segment
  std::vector<Wall> walls;
  std::vector<RayInterval> chambers;
};

// Intersection of a query with the ample segment (ample_threshold, inf).
inline std::optional<RayInterval> clip_to_ample(const RuledSurface& s, const RayInterval& query) {
  RayInterval out = query;
  const Rational amin = ample_threshold(s);
  if (out.lo < amin) {
    out.lo = amin;
    out.lo_closed = false;
  } else if (out.lo == amin) {
    out.lo_closed = false;
  }
  if (out.empty()) return std::nullopt;
  return out;
}

// Crossing point of the wall cut out by a sub-datum of rank r1 and c1
// xi1: the x with (xi1/r1 - xi/r).H(x) = 0, when it exists.
inline std::optional<Rational> wall_of(const ChernVector& e, long long r1, const DivClass& xi1,
                                       const RuledSurface& s) {
  if (r1 <= 0 || r1 >= e.r) throw input_error("sub-datum rank must satisfy 0 < r1 < r");
  if (!xi1.is_integral()) throw input_error("sub-datum c1 class must be integral");
  const DivClass d = Rational(1, r1) * xi1 - slope_vec(e);
  if (d.is_zero()) return std::nullopt;       // mu(E) - mu(F) = 0
  if (d.a.is_zero()) return std::nullopt;     // (d.H(x)) = d.b never vanishes
  return Rational(s.invariant) - d.b / d.a;
}

// All integers chi1 with Delta(r1, xi1, chi1) >= 0 and
// Delta(r - r1, xi - xi1, chi - chi1) >= 0. The first constraint is
// decreasing and the second increasing in chi1, so the set is a closed
// integer interval, possibly empty.
inline std::optional<std::pair<long long, long long>> chi_feasible(const ChernVector& e,
                                                                   long long r1,
                                                                   const DivClass& xi1,
                                                                   const RuledSurface& s) {
  if (r1 <= 0 || r1 >= e.r) throw input_error("sub-datum rank must satisfy 0 < r1 < r");
  if (!xi1.is_integral()) throw input_error("sub-datum c1 class must be integral");
  const DivClass k = canonical(s);
  const long long r2 = e.r - r1;
  const DivClass xi2 = e.xi - xi1;
  const Rational upper = (Rational(2 * r1 * r1 * s.chi_O()) - Rational(r1) * intersect(xi1, k, s) +
                          intersect(xi1, xi1, s)) /
                         Rational(2 * r1);
  const Rational lower = Rational(e.chi - r2 * s.chi_O()) + intersect(xi2, k, s) / Rational(2) -
                         intersect(xi2, xi2, s) / Rational(2 * r2);
  const long long lo = lower.ceil();
  const long long hi = upper.floor();
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

namespace detail {

struct RawWitness {
  Rational x;
  WallWitness witness;
  long long eta_a = 0;
  long long eta_b = 0;
};

inline long long iabs(long long v) { return v < 0 ? -v : v; }

// Witnesses of rank r1 with crossing point inside `clip`. The search is
// over eta = (alpha, beta) as described at the top of the file.
inline std::vector<RawWitness> witnesses_for_split(const ChernVector& e, const RuledSurface& s,
                                                   const RayInterval& clip, long long r1,
                                                   const Rational& delta) {
  std::vector<RawWitness> out;
  const long long r = e.r;
  const long long r2 = r - r1;
  const Rational bound = Rational(2 * r * r * r1 * r2) * delta;
  if (bound < Rational(1)) return out;  // (eta^2) is a negative integer >= -bound
  const long long b = bound.floor();
  constexpr long long kEnumerationCap = 250'000;
  if (b > kEnumerationCap) {
    throw input_error("wall enumeration bound " + std::to_string(b) +
                      " exceeds the supported size");
  }
  const long long e_inv = s.invariant;
  const long long a0 = e.xi.a.num();
  const long long b0 = e.xi.b.num();
  for (long long alpha = -b; alpha <= b; ++alpha) {
    if (alpha == 0) continue;
    if ((alpha + r1 * a0) % r != 0) continue;  // xi1 = (eta + r1 xi) / r integral
    // (eta^2) = alpha * t with t = 2 beta - e alpha, t and e alpha of
    // equal parity; |t| <= bound / |alpha| and sign(t) = -sign(alpha).
    const long long tmax = b / iabs(alpha);
    const long long tsign = alpha > 0 ? -1 : 1;
    for (long long mag = 1; mag <= tmax; ++mag) {
      const long long t = tsign * mag;
      if ((t + e_inv * alpha) % 2 != 0) continue;
      const long long beta = (t + e_inv * alpha) / 2;
      if ((beta + r1 * b0) % r != 0) continue;
      const DivClass xi1{Rational((alpha + r1 * a0) / r), Rational((beta + r1 * b0) / r)};
      const Rational x_w = Rational(e_inv) - Rational(beta, alpha);
      if (!is_ample(s, polarization(x_w))) continue;
      if (!clip.contains(x_w)) continue;
      const auto chi_range = chi_feasible(e, r1, xi1, s);
      if (!chi_range) continue;
      out.push_back({x_w, WallWitness{r1, xi1, chi_range->first, chi_range->second}, alpha, beta});
    }
  }
  return out;
}

inline DivClass primitive_direction(long long eta_a, long long eta_b) {
  if (eta_a < 0) {
    eta_a = -eta_a;
    eta_b = -eta_b;
  }
  const long long g = std::gcd(eta_a, iabs(eta_b));
  return {Rational(eta_a / g), Rational(eta_b / g)};
}

}  // namespace detail

// All walls of e with crossing point in `query`, clipped to the ample
// segment of the ray. Witnesses landing on the same point are merged
// into one wall and sorted by (r1, xi1).
inline std::vector<Wall> enumerate_walls(const ChernVector& e, const RuledSurface& s,
                                         const RayInterval& query) {
  if (query.hi && !(query.lo < *query.hi)) {
    throw input_error("polarization range must satisfy x_lo < x_hi");
  }
  const auto clip = clip_to_ample(s, query);
  if (!clip) {
    throw input_error("polarization range is empty after clipping to the ample segment (x > " +
                      ample_threshold(s).str() + ")");
  }
  const Rational delta = discriminant(e, s);
  std::vector<detail::RawWitness> raw;
  if (delta >= Rational(0) && e.r > 1) {
    std::vector<std::future<std::vector<detail::RawWitness>>> parts;
    for (long long r1 = 2; r1 < e.r; ++r1) {
      parts.push_back(std::async(std::launch::async, detail::witnesses_for_split, e, s, *clip, r1,
                                 delta));
    }
    raw = detail::witnesses_for_split(e, s, *clip, 1, delta);
    for (auto& part : parts) {
      auto found = part.get();
      raw.insert(raw.end(), found.begin(), found.end());
    }
  }
  std::map<Rational, Wall> merged;
  for (const auto& w : raw) {
    auto [it, inserted] = merged.try_emplace(w.x);
    if (inserted) {
      it->second.x = w.x;
      it->second.zeta = detail::primitive_direction(w.eta_a, w.eta_b);
    }
    it->second.witnesses.push_back(w.witness);
  }
  std::vector<Wall> walls;
  walls.reserve(merged.size());
  for (auto& [x, wall] : merged) {
    std::sort(wall.witnesses.begin(), wall.witnesses.end(),
              [](const WallWitness& lhs, const WallWitness& rhs) {
                return std::tuple(lhs.r1, lhs.xi1.a.num(), lhs.xi1.b.num()) <
                       std::tuple(rhs.r1, rhs.xi1.a.num(), rhs.xi1.b.num());
              });
    walls.push_back(std::move(wall));
  }
  return walls;
}

// Walls plus the connected components of their complement in the clipped
// query. Endpoints at walls are open; endpoints at the boundary of the
// query inherit its closedness; a final unbounded chamber stays open.
inline ChamberDecomposition chambers(const ChernVector& e, const RuledSurface& s,
                                     const RayInterval& query) {
  std::vector<Wall> walls = enumerate_walls(e, s, query);
  const RayInterval clip = *clip_to_ample(s, query);
  std::vector<RayInterval> chambers;
  Rational cur = clip.lo;
  bool cur_closed = clip.lo_closed;
  for (const Wall& w : walls) {
    if (cur < w.x) {
      chambers.push_back({cur, cur_closed, w.x, false});
    }
    cur = w.x;
    cur_closed = false;
  }
  if (clip.unbounded()) {
    chambers.push_back({cur, cur_closed, std::nullopt, false});
  } else {
    RayInterval last{cur, cur_closed, clip.hi, clip.hi_closed};
    if (!last.empty()) chambers.push_back(last);
  }
  return {clip, std::move(walls), std::move(chambers)};
}

}  // namespace ruledmod
