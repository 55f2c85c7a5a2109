#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ruledmod/walls.hpp"

namespace ruledmod {

/*
  Numerical invariants of moduli stacks of mu-semistable sheaves on a
  ruled surface, polarized along the ray H(x) = C0 + x f:

   - dimension 2 r^2 Delta(e) - r^2 chi(O_X) of the stack, smooth when
     (K_X.H) < 0 (otherwise only a lower bound of the same value holds
     and the computation is refused);
   - dimensions of filtration strata and the strict codimension bound for
     wall filtration types;
   - the sharp existence threshold x0 = e/2 + r^2 Delta / (r1 r2) on an
     elliptic ruled surface, where r1 = (xi.f) after normalization;
   - the extension 0 -> F1(C0) -> E -> F2 -> 0 of pullbacks realizing a
     general member at the threshold.
*/

// Filtration type: the Chern vectors of the graded pieces, in order,
// together with their sum.
struct FiltrationType {
  std::vector<ChernVector> parts;
  ChernVector total;

  static FiltrationType of(std::vector<ChernVector> parts) {
    if (parts.empty()) throw input_error("filtration type needs at least one part");
    ChernVector total = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) total = sum(total, parts[i]);
    return {std::move(parts), std::move(total)};
  }
};

enum class FiltrationClass { HN, JH, Neither };

// Dimension of the stack of mu-semistable sheaves with invariants e,
// valid where H(x) is ample and (K_X.H(x)) < 0.
inline Rational stack_dim(const ChernVector& e, const RuledSurface& s, const Rational& x) {
  if (!is_ample(s, polarization(x))) {
    throw input_error("H(x) = C0 + x f is not ample for x = " + x.str() + " (need x > " +
                      ample_threshold(s).str() + ")");
  }
  const Rational kh = k_dot_h(s, x);
  const Rational value =
      Rational(2 * e.r * e.r) * discriminant(e, s) - Rational(e.r * e.r * s.chi_O());
  if (!(kh < Rational(0))) {
    throw hypothesis_error(
        "smooth dimension formula requires (K_X.H(x)) < 0, got (K_X.H) = " + kh.str() +
        "; only the lower bound dim >= 2 r^2 Delta(e) - r^2 chi(O_X) = " + value.str() +
        " is guaranteed");
  }
  return value;
}

struct FiltrationDim {
  Rational dim;         // 2 r^2 Delta(e) - r^2 chi(O_X) + sum_{i<j} chi(e_i, e_j)
  Rational codim_term;  // -sum_{i<j} chi(e_i, e_j)
};

inline FiltrationDim filtration_stack_dim(const FiltrationType& f, const RuledSurface& s) {
  Rational pairing_sum(0);
  for (std::size_t i = 0; i < f.parts.size(); ++i) {
    for (std::size_t j = i + 1; j < f.parts.size(); ++j) {
      pairing_sum += euler_pairing(f.parts[i], f.parts[j], s);
    }
  }
  const ChernVector& e = f.total;
  const Rational base =
      Rational(2 * e.r * e.r) * discriminant(e, s) - Rational(e.r * e.r * s.chi_O());
  return {base + pairing_sum, -pairing_sum};
}

// HN when the H(x)-slopes of the parts are strictly decreasing, JH when
// they are all equal (a single part counts as JH), Neither otherwise.
inline FiltrationClass classify_filtration(const FiltrationType& f, const Rational& x,
                                           const RuledSurface& s) {
  if (!is_ample(s, polarization(x))) {
    throw input_error("H(x) = C0 + x f is not ample for x = " + x.str());
  }
  bool all_equal = true;
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < f.parts.size(); ++i) {
    const Rational lhs = slope_h(f.parts[i], x, s);
    const Rational rhs = slope_h(f.parts[i + 1], x, s);
    if (lhs != rhs) all_equal = false;
    if (!(lhs > rhs)) decreasing = false;
  }
  if (all_equal) return FiltrationClass::JH;
  if (decreasing) return FiltrationClass::HN;
  return FiltrationClass::Neither;
}

// Certificate that a wall filtration stratum has positive codimension:
// every Euler pairing chi(e_i, e_j), i < j, is listed and the verdict is
// that all of them are negative, which pins the stratum dimension
// strictly below 2 r^2 Delta(e) + r^2 (g - 1).
struct WallCodimCertificate {
  struct Pairing {
    std::size_t i = 0;
    std::size_t j = 0;
    Rational chi{};
  };
  bool positive = false;
  std::vector<Pairing> pairings;
  Rational filtration_dim{};
  Rational bound{};  // 2 r^2 Delta(e) + r^2 (g - 1)
};

// Requires a wall filtration type: at least two parts, all H(x_wall)-
// slopes equal, and strictly monotone fiber-degree slopes (xi_i.f)/r_i,
// so that the type is the HN type of one of the two adjacent chambers.
inline WallCodimCertificate hn_wall_codim_positive(const FiltrationType& f,
                                                   const Rational& x_wall,
                                                   const RuledSurface& s) {
  if (!is_ample(s, polarization(x_wall))) {
    throw input_error("H(x) = C0 + x f is not ample for x = " + x_wall.str());
  }
  if (f.parts.size() < 2) throw input_error("not a wall filtration type: fewer than two parts");
  bool increasing = true;
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < f.parts.size(); ++i) {
    if (slope_h(f.parts[i], x_wall, s) != slope_h(f.parts[i + 1], x_wall, s)) {
      throw input_error("not a wall filtration type: H(x)-slopes differ at x = " + x_wall.str());
    }
    const Rational lhs = Rational(f.parts[i].fiber_degree(), f.parts[i].r);
    const Rational rhs = Rational(f.parts[i + 1].fiber_degree(), f.parts[i + 1].r);
    if (!(lhs < rhs)) increasing = false;
    if (!(lhs > rhs)) decreasing = false;
  }
  if (!increasing && !decreasing) {
    throw input_error(
        "not a wall filtration type: fiber-degree slopes are not strictly monotone");
  }
  WallCodimCertificate cert;
  cert.positive = true;
  for (std::size_t i = 0; i < f.parts.size(); ++i) {
    for (std::size_t j = i + 1; j < f.parts.size(); ++j) {
      const Rational chi = euler_pairing(f.parts[i], f.parts[j], s);
      if (!(chi < Rational(0))) cert.positive = false;
      cert.pairings.push_back({i, j, chi});
    }
  }
  const ChernVector& e = f.total;
  cert.filtration_dim = filtration_stack_dim(f, s).dim;
  cert.bound =
      Rational(2 * e.r * e.r) * discriminant(e, s) + Rational(e.r * e.r * (s.genus - 1));
  return cert;
}

struct ExistsResult {
  bool exists = false;
  Rational delta{};
  long long twist = 0;       // multiple of C0 used to normalize the input
  long long fiber_rank = 0;  // r1 = (xi.f) of the normalized vector, in [0, r)
  std::optional<Rational> x0{};
  std::string reason;
  std::string note;
};

// Non-emptiness of the stack of mu-semistable sheaves with invariants e
// at polarization H(x), for an elliptic ruled surface. The decision is
// twist-invariant; the input is normalized first and the twist recorded.
inline ExistsResult exists_mu_ss(const ChernVector& e, const RuledSurface& s, const Rational& x) {
  if (s.genus != 1) {
    throw hypothesis_error(
        "existence criterion requires genus 1 (elliptic ruled surface): the threshold rule "
        "r^2 Delta(e) >= r1 r2 (x - e/2) is established only for g = 1; got g = " +
        std::to_string(s.genus));
  }
  if (!is_ample(s, polarization(x))) {
    throw input_error("H(x) = C0 + x f is not ample for x = " + x.str() + " (need x > " +
                      ample_threshold(s).str() + ")");
  }
  const NormalizedVector n = normalize_fiber_degree(e, s);
  ExistsResult res;
  res.delta = discriminant(n.vec, s);
  res.twist = n.m;
  res.fiber_rank = n.vec.fiber_degree();
  const long long r = e.r;
  const long long r1 = res.fiber_rank;
  if (r1 == 0) {
    res.exists = res.delta >= Rational(0);
    if (res.exists) {
      res.reason = "Delta(e) = " + res.delta.str() + " >= 0 and r | (xi.f)";
    } else {
      res.reason = "Delta(e) = " + res.delta.str() + " < 0 (Bogomolov inequality)";
    }
  } else {
    const long long r2 = r - r1;
    const Rational lhs = Rational(r * r) * res.delta;
    const Rational rhs = Rational(r1 * r2) * (x - Rational(s.invariant, 2));
    res.x0 = Rational(s.invariant, 2) + lhs / Rational(r1 * r2);
    res.exists = lhs >= rhs;
    res.reason = "r^2 Delta(e) = " + lhs.str() + (res.exists ? " >= " : " < ") +
                 "r1 r2 (x - e/2) = " + rhs.str();
    if (res.delta.is_zero()) {
      res.reason += "; Delta(e) = 0 and r = " + std::to_string(r) +
                    " does not divide (xi.f), so no polarization admits a semistable sheaf";
    }
  }
  if (res.twist != 0) {
    res.reason += "; input normalized by twist m = " + std::to_string(res.twist) + " (by C0)";
  }
  if (s.invariant > 0) {
    res.note = "e > 0: threshold applied via the general chamber-variation existence result";
  }
  return res;
}

// Non-emptiness with respect to every polarization close to -K_X, for an
// elliptic ruled surface with nef anticanonical class (e = 0 or -1):
// non-empty iff Delta(e) > 0, or Delta(e) = 0 and r | (xi.f).
inline ExistsResult exists_nef_anticanonical(const ChernVector& e, const RuledSurface& s) {
  if (s.genus != 1 || (s.invariant != 0 && s.invariant != -1)) {
    throw hypothesis_error(
        "criterion requires an elliptic ruled surface with nef anticanonical class "
        "(g = 1 and e in {0, -1}); got g = " +
        std::to_string(s.genus) + ", e = " + std::to_string(s.invariant));
  }
  ExistsResult res;
  res.delta = discriminant(e, s);
  res.fiber_rank = ((e.fiber_degree() % e.r) + e.r) % e.r;
  const bool divisible = res.fiber_rank == 0;
  if (res.delta > Rational(0)) {
    res.exists = true;
    res.reason = "Delta(e) = " + res.delta.str() + " > 0";
  } else if (res.delta.is_zero() && divisible) {
    res.exists = true;
    res.reason = "Delta(e) = 0 and r | (xi.f)";
  } else if (res.delta.is_zero()) {
    res.exists = false;
    res.reason = "Delta(e) = 0 and r = " + std::to_string(e.r) + " does not divide (xi.f) = " +
                 std::to_string(e.fiber_degree());
  } else {
    res.exists = false;
    res.reason = "Delta(e) = " + res.delta.str() + " < 0 (Bogomolov inequality)";
  }
  return res;
}

// Extension data for a general member at the existence threshold:
// 0 -> F1(C0) -> E -> F2 -> 0 with F1, F2 pullbacks of semistable
// bundles on the base of ranks r1, r2 and degrees d1, d2.
struct ExtensionData {
  long long r1 = 0;
  long long d1 = 0;
  long long r2 = 0;
  long long d2 = 0;
  Rational x0{};

  friend bool operator==(const ExtensionData&, const ExtensionData&) = default;
};

inline ExtensionData construct_general(const ChernVector& e, const RuledSurface& s) {
  if (s.genus != 1) {
    throw hypothesis_error("construction requires genus 1; got g = " + std::to_string(s.genus));
  }
  const long long a = e.fiber_degree();
  if (a < 0 || a >= e.r) {
    throw input_error("construct_general expects a normalized vector with 0 <= (xi.f) < r; "
                      "normalize the fiber degree first");
  }
  if (a == 0) {
    throw hypothesis_error(
        "construction needs both pieces of the extension: requires 0 < (xi.f) < r, got "
        "(xi.f) = 0");
  }
  const long long r = e.r;
  const long long r1 = a;
  const long long r2 = r - r1;
  const long long d = e.xi.b.num();
  const long long d1 =
      r1 * s.invariant - d + e.chi - (r + r1) * (1 - s.genus);
  ExtensionData data{r1, d1, r2, d - d1,
                     Rational(s.invariant, 2) +
                         Rational(r * r) * discriminant(e, s) / Rational(r1 * r2)};
  // Consistency guards: chi of the extension reconstructs the input and
  // the two closed forms of the threshold agree.
  const long long chi_check = d + d1 + (r + r1) * (1 - s.genus) - r1 * s.invariant;
  const Rational x0_alt =
      Rational(s.invariant) + Rational(r1 * d - r * d1) / Rational(r1 * r2);
  if (chi_check != e.chi || x0_alt != data.x0) {
    throw std::logic_error("construction data failed its consistency checks");
  }
  return data;
}

// Codimension of the non-locally-free locus inside the mu-stable locus
// when (K_X.H) < 0.
inline long long non_lf_codim(const ChernVector& e) { return e.r - 1; }

}  // namespace ruledmod
