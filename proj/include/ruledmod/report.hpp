#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ruledmod/moduli.hpp"

namespace ruledmod {

// A verdict flag together with the hypothesis that justifies it (or the
// hypothesis that failed, when unset).
struct Flag {
  bool set = false;
  std::string note;
};

// Existence verdict on one piece of the queried range: either an open
// chamber or a single wall point (a degenerate closed interval).
struct SegmentVerdict {
  RayInterval where{};
  bool is_wall = false;
  bool exists = false;
};

struct Report {
  Report(RuledSurface s, ChernVector input, ChernVector norm)
      : surface(s), vector(std::move(input)), normalized(std::move(norm)) {}

  RuledSurface surface;
  ChernVector vector;
  std::optional<Rational> x{};         // point query
  std::optional<RayInterval> query{};  // range query (clipped to the ample segment)

  ChernVector normalized;
  long long twist = 0;
  Rational delta{};
  long long fiber_rank = 0;
  long long gcd = 1;

  std::optional<Rational> x0{};
  std::optional<Rational> dim_stack{};
  std::optional<Rational> dim_coarse{};  // stack dim + 1 on the stable locus (convention)
  std::string dim_note;                  // refusal explanation when dims are unset

  std::optional<bool> exists{};  // point queries; unset for range queries or g != 1
  std::string exists_reason;
  std::vector<SegmentVerdict> segments;    // range queries
  std::optional<RayInterval> exists_on{};  // merged region where the stack is non-empty
  std::string existence_note;

  ChamberDecomposition decomposition;  // full decomposition of the ample segment
  std::string position;                // point queries: chamber or wall containing x
  long long non_locally_free_codim = 0;

  Flag irreducible;
  Flag generically_stable_locally_free;
  Flag fiber_restriction_rigid;
  Flag fine_smooth_projective;

  std::optional<ExtensionData> construction{};
  std::vector<std::string> notes;
};

namespace detail {

inline Rational sample_point(const RayInterval& chamber) {
  if (!chamber.hi) return chamber.lo + Rational(1);
  if (chamber.lo == *chamber.hi) return chamber.lo;
  return (chamber.lo + *chamber.hi) / Rational(2);
}

inline Report report_core(const ChernVector& e, const RuledSurface& s) {
  const NormalizedVector n = normalize_fiber_degree(e, s);
  Report rep(s, e, n.vec);
  rep.twist = n.m;
  rep.delta = discriminant(e, s);
  rep.fiber_rank = n.vec.fiber_degree();
  rep.gcd = gcd_divisibility(e);
  rep.non_locally_free_codim = non_lf_codim(e);
  if (rep.fiber_rank > 0) {
    rep.x0 = Rational(s.invariant, 2) +
             Rational(e.r * e.r) * rep.delta / Rational(rep.fiber_rank * (e.r - rep.fiber_rank));
  }
  rep.decomposition =
      chambers(e, s, RayInterval{ample_threshold(s), false, std::nullopt, false});
  rep.notes.push_back(
      "ampleness on the ray uses the standard numerical criterion for ruled surfaces "
      "(H(x) ample iff x > " +
      ample_threshold(s).str() + ")");
  rep.notes.push_back(
      "walls are numerical: defined by discriminant-feasible sub-data, with no sheaf-level "
      "witness implied");
  return rep;
}

inline void report_dims(Report& rep, const Rational& at, bool boundary_open) {
  const Rational kh = k_dot_h(rep.surface, at);
  const bool ok = kh < Rational(0) || (boundary_open && kh.is_zero());
  const ChernVector& e = rep.vector;
  const Rational value = Rational(2 * e.r * e.r) * rep.delta -
                         Rational(e.r * e.r * rep.surface.chi_O());
  if (ok) {
    rep.dim_stack = value;
    rep.dim_coarse = value + Rational(1);
  } else {
    rep.dim_note = "(K_X.H) = " + kh.str() +
                   " >= 0 on the query: the smooth dimension formula does not apply; only the "
                   "lower bound dim >= " +
                   value.str() + " is guaranteed";
  }
}

inline void report_flags(Report& rep, bool kh_negative, bool exists_somewhere) {
  rep.irreducible.set = kh_negative;
  rep.irreducible.note = kh_negative
                             ? "(K_X.H) < 0 over the query"
                             : "not established: (K_X.H) >= 0 somewhere in the query";
  const bool general_member = rep.surface.genus == 1 && rep.vector.r > 1 && exists_somewhere;
  rep.generically_stable_locally_free.set = general_member;
  rep.generically_stable_locally_free.note =
      general_member ? "g = 1, r > 1 and the stack is non-empty"
                     : "requires g = 1, r > 1 and a non-empty stack";
  rep.fiber_restriction_rigid.set = general_member;
  rep.fiber_restriction_rigid.note =
      general_member
          ? "a general member restricts to a rigid bundle on a general fiber"
          : "requires g = 1, r > 1 and a non-empty stack";
  const bool fine = rep.gcd == 1 && kh_negative;
  rep.fine_smooth_projective.set = fine;
  rep.fine_smooth_projective.note =
      fine ? "gcd(r, xi, chi) = 1 and (K_X.H) < 0"
           : "requires gcd(r, xi, chi) = 1 and (K_X.H) < 0 (gcd = " + std::to_string(rep.gcd) +
                 ")";
}

inline void report_construction(Report& rep, bool exists_somewhere) {
  if (rep.surface.genus == 1 && rep.fiber_rank > 0 && exists_somewhere) {
    rep.construction = construct_general(rep.normalized, rep.surface);
  }
}

}  // namespace detail

// Aggregated verdicts at a single polarization H(x).
inline Report moduli_report(const ChernVector& e, const RuledSurface& s, const Rational& x) {
  if (!is_ample(s, polarization(x))) {
    throw input_error("H(x) = C0 + x f is not ample for x = " + x.str() + " (need x > " +
                      ample_threshold(s).str() + ")");
  }
  Report rep = detail::report_core(e, s);
  rep.x = x;
  detail::report_dims(rep, x, false);
  bool exists_somewhere = false;
  if (s.genus == 1) {
    const ExistsResult res = exists_mu_ss(e, s, x);
    rep.exists = res.exists;
    rep.exists_reason = res.reason;
    rep.existence_note = res.note;
    exists_somewhere = res.exists;
  } else {
    rep.existence_note =
        "existence undecided: the criterion requires g = 1, got g = " + std::to_string(s.genus);
  }
  const Wall* on_wall = nullptr;
  const Wall* below = nullptr;
  const Wall* above = nullptr;
  for (const Wall& w : rep.decomposition.walls) {
    if (w.x == x) on_wall = &w;
    if (w.x < x) below = &w;
    if (x < w.x && above == nullptr) above = &w;
  }
  if (on_wall != nullptr) {
    rep.position = "on wall x = " + x.str();
  } else {
    const std::string lo = below ? below->x.str() : ample_threshold(s).str();
    const std::string hi = above ? above->x.str() : "inf";
    rep.position = "in chamber (" + lo + ", " + hi + ")";
  }
  detail::report_flags(rep, k_dot_h(s, x) < Rational(0), exists_somewhere);
  detail::report_construction(rep, exists_somewhere);
  return rep;
}

// Aggregated verdicts over a range of polarizations, one existence
// verdict per chamber and per wall of the clipped query.
inline Report moduli_report(const ChernVector& e, const RuledSurface& s,
                            const RayInterval& query) {
  Report rep = detail::report_core(e, s);
  const ChamberDecomposition local = chambers(e, s, query);
  rep.query = local.range;
  detail::report_dims(rep, local.range.lo, !local.range.lo_closed);
  bool exists_somewhere = false;
  if (s.genus == 1) {
    std::vector<SegmentVerdict> segments;
    auto verdict_at = [&](const Rational& at) { return exists_mu_ss(e, s, at).exists; };
    std::size_t next_wall = 0;
    for (const RayInterval& chamber : local.chambers) {
      while (next_wall < local.walls.size() && !(chamber.lo < local.walls[next_wall].x)) {
        const Rational& wx = local.walls[next_wall].x;
        segments.push_back({RayInterval{wx, true, wx, true}, true, verdict_at(wx)});
        ++next_wall;
      }
      segments.push_back({chamber, false, verdict_at(detail::sample_point(chamber))});
    }
    for (; next_wall < local.walls.size(); ++next_wall) {
      const Rational& wx = local.walls[next_wall].x;
      segments.push_back({RayInterval{wx, true, wx, true}, true, verdict_at(wx)});
    }
    rep.segments = std::move(segments);
    for (const SegmentVerdict& seg : rep.segments) exists_somewhere |= seg.exists;
    // Merged region: existence is x <= x0, or range-wide when r1 = 0 and
    // Delta >= 0.
    if (rep.fiber_rank == 0) {
      if (rep.delta >= Rational(0)) rep.exists_on = local.range;
    } else {
      RayInterval merged = local.range;
      if (!merged.hi || *rep.x0 < *merged.hi) {
        merged.hi = *rep.x0;
        merged.hi_closed = true;
      }
      if (!merged.empty()) rep.exists_on = merged;
    }
    if (!local.chambers.empty()) {
      const ExistsResult probe =
          exists_mu_ss(e, s, detail::sample_point(local.chambers.front()));
      rep.exists_reason = probe.reason;
      rep.existence_note = probe.note;
    }
  } else {
    rep.existence_note =
        "existence undecided: the criterion requires g = 1, got g = " + std::to_string(s.genus);
  }
  const Rational kh_at_lo = k_dot_h(s, local.range.lo);
  const bool kh_negative =
      kh_at_lo < Rational(0) || (kh_at_lo.is_zero() && !local.range.lo_closed);
  detail::report_flags(rep, kh_negative, exists_somewhere);
  detail::report_construction(rep, exists_somewhere);
  return rep;
}

}  // namespace ruledmod
