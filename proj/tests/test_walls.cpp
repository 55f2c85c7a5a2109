#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "ruledmod/walls.hpp"
#include "wall_oracle.hpp"

using namespace ruledmod;

namespace {
const RuledSurface kE0(1, 0);
const DivClass kC0{Rational(1), Rational(0)};
const DivClass kFiber{Rational(0), Rational(1)};
const RayInterval kZeroToFour{Rational(0), false, Rational(4), true};

RayInterval open_range(const Rational& lo, const Rational& hi) {
  return {lo, false, hi, true};
}
}  // namespace

TEST_CASE("wall_of worked values") {
  const ChernVector e(2, kC0 + kFiber, 0);
  CHECK(wall_of(e, 1, kC0, kE0) == Rational(1));
  CHECK(wall_of(e, 1, kC0 - kFiber, kE0) == Rational(3));
  // mu(F) = mu(E) gives no wall; a slope difference with no C0 component
  // never meets the ray.
  CHECK_FALSE(wall_of(ChernVector(2, Rational(2) * kC0, 0), 1, kC0, kE0).has_value());
  CHECK_FALSE(
      wall_of(ChernVector(2, Rational(2) * kC0, 0), 1, kC0 + Rational(3) * kFiber, kE0)
          .has_value());
  CHECK_THROWS_AS(wall_of(e, 0, kC0, kE0), input_error);
  CHECK_THROWS_AS(wall_of(e, 2, kC0, kE0), input_error);
  CHECK_THROWS_AS(wall_of(e, 1, DivClass{Rational(1, 2), Rational(1, 2)}, kE0), input_error);
}

TEST_CASE("chi_feasible worked values") {
  const ChernVector e(2, kC0 + kFiber, 0);
  CHECK(chi_feasible(e, 1, kC0, kE0) == std::make_pair(-1LL, 0LL));
  CHECK(chi_feasible(e, 1, kC0 - kFiber, kE0) == std::make_pair(-2LL, -2LL));
  CHECK(chi_feasible(ChernVector(2, kC0 + kFiber, 1), 1, kC0, kE0) ==
        std::make_pair(0LL, 0LL));
  // Large chi on the sub-datum starves the quotient: empty interval.
  CHECK_FALSE(chi_feasible(ChernVector(2, kC0 + kFiber, 9), 1, kC0, kE0).has_value());
  CHECK_THROWS_AS(chi_feasible(e, 2, kC0, kE0), input_error);
  CHECK_THROWS_AS(chi_feasible(e, 1, DivClass{Rational(1, 2), Rational(0)}, kE0), input_error);
}

TEST_CASE("wall enumeration fixtures") {
  SUBCASE("three walls") {
    const auto walls = enumerate_walls(ChernVector(2, kC0 + kFiber, 0), kE0, kZeroToFour);
    REQUIRE(walls.size() == 3);
    CHECK(walls[0].x == Rational(1, 3));
    CHECK(walls[1].x == Rational(1));
    CHECK(walls[2].x == Rational(3));
    CHECK(walls[0].zeta == DivClass{Rational(3), Rational(-1)});
    CHECK(walls[1].zeta == DivClass{Rational(1), Rational(-1)});
    CHECK(walls[2].zeta == DivClass{Rational(1), Rational(-3)});
    // Both sides of each wall appear as witnesses.
    REQUIRE(walls[1].witnesses.size() == 2);
    CHECK(walls[1].witnesses[0] == WallWitness{1, kFiber, 0, 1});
    CHECK(walls[1].witnesses[1] == WallWitness{1, kC0, -1, 0});
    REQUIRE(walls[2].witnesses.size() == 2);
    CHECK(walls[2].witnesses[0] == WallWitness{1, Rational(2) * kFiber, 2, 2});
    CHECK(walls[2].witnesses[1] == WallWitness{1, kC0 - kFiber, -2, -2});
  }
  SUBCASE("single wall") {
    const auto walls = enumerate_walls(ChernVector(2, kC0 + kFiber, 1), kE0, kZeroToFour);
    REQUIRE(walls.size() == 1);
    CHECK(walls[0].x == Rational(1));
    CHECK(walls[0].zeta == DivClass{Rational(1), Rational(-1)});
  }
  SUBCASE("discriminant zero admits no wall") {
    CHECK(enumerate_walls(ChernVector(2, kC0, 0), kE0, kZeroToFour).empty());
    CHECK(enumerate_walls(ChernVector(2, kC0, 0), kE0, open_range(Rational(0), Rational(50)))
              .empty());
  }
  SUBCASE("negative discriminant is empty, not an error") {
    CHECK(enumerate_walls(ChernVector(2, kC0, 5), kE0, kZeroToFour).empty());
  }
  SUBCASE("rank one has no sub-data") {
    CHECK(enumerate_walls(ChernVector(1, kC0, -3), kE0, kZeroToFour).empty());
  }
}

TEST_CASE("range validation and clipping") {
  const ChernVector e(2, kC0 + kFiber, 0);
  CHECK_THROWS_AS(enumerate_walls(e, kE0, open_range(Rational(4), Rational(1))), input_error);
  CHECK_THROWS_AS(enumerate_walls(e, kE0, open_range(Rational(2), Rational(2))), input_error);
  // Entirely below the ample segment.
  CHECK_THROWS_AS(enumerate_walls(e, kE0, open_range(Rational(-5), Rational(0))), input_error);
  // Straddling the ample boundary clips silently.
  const auto walls = enumerate_walls(e, kE0, open_range(Rational(-5), Rational(2)));
  REQUIRE(walls.size() == 2);
  CHECK(walls[0].x == Rational(1, 3));
  CHECK(walls[1].x == Rational(1));
}

TEST_CASE("boundary semantics at range endpoints") {
  const ChernVector e(2, kC0 + kFiber, 0);
  CHECK(enumerate_walls(e, kE0, RayInterval{Rational(1), true, Rational(2), true}).size() == 1);
  CHECK(enumerate_walls(e, kE0, RayInterval{Rational(1), false, Rational(2), true}).empty());
  CHECK(enumerate_walls(e, kE0, RayInterval{Rational(2), false, Rational(3), true}).size() == 1);
  CHECK(enumerate_walls(e, kE0, RayInterval{Rational(2), false, Rational(3), false}).empty());
}

TEST_CASE("chamber decomposition fixtures") {
  SUBCASE("bounded range") {
    const auto d = chambers(ChernVector(2, kC0 + kFiber, 0), kE0, kZeroToFour);
    REQUIRE(d.chambers.size() == 4);
    CHECK(d.chambers[0] == RayInterval{Rational(0), false, Rational(1, 3), false});
    CHECK(d.chambers[1] == RayInterval{Rational(1, 3), false, Rational(1), false});
    CHECK(d.chambers[2] == RayInterval{Rational(1), false, Rational(3), false});
    CHECK(d.chambers[3] == RayInterval{Rational(3), false, Rational(4), true});
  }
  SUBCASE("unbounded range ends with an unbounded chamber") {
    const auto d = chambers(ChernVector(2, kC0 + kFiber, 0), kE0,
                            RayInterval{Rational(0), false, std::nullopt, false});
    REQUIRE(d.chambers.size() == 4);
    CHECK(d.chambers[3] == RayInterval{Rational(3), false, std::nullopt, false});
  }
  SUBCASE("no walls means a single chamber") {
    const auto d = chambers(ChernVector(2, kC0, 0), kE0, kZeroToFour);
    REQUIRE(d.chambers.size() == 1);
    CHECK(d.chambers[0] == kZeroToFour);
  }
  SUBCASE("range above every wall is a single chamber") {
    const auto d =
        chambers(ChernVector(2, kC0 + kFiber, 0), kE0, open_range(Rational(5), Rational(9)));
    REQUIRE(d.walls.empty());
    REQUIRE(d.chambers.size() == 1);
    CHECK(d.chambers[0] == open_range(Rational(5), Rational(9)));
  }
  SUBCASE("wall at a closed endpoint bounds open chambers") {
    const auto d = chambers(ChernVector(2, kC0 + kFiber, 0), kE0,
                            RayInterval{Rational(1), true, Rational(3), true});
    REQUIRE(d.walls.size() == 2);
    REQUIRE(d.chambers.size() == 1);
    CHECK(d.chambers[0] == RayInterval{Rational(1), false, Rational(3), false});
  }
}

TEST_CASE("enumerated walls satisfy their defining identities") {
  std::mt19937 rng(59);
  for (int i = 0; i < 60; ++i) {
    const RuledSurface s(1, testgen::pick(rng, -1, 1));
    const ChernVector e(testgen::pick(rng, 2, 4), testgen::integral_class(rng, 3),
                        testgen::pick(rng, -4, 4));
    const Rational lo = ample_threshold(s);
    const auto walls = enumerate_walls(e, s, RayInterval{lo, false, lo + Rational(6), true});
    for (const Wall& w : walls) {
      REQUIRE(intersect(w.zeta, polarization(w.x), s).is_zero());
      REQUIRE(intersect(w.zeta, w.zeta, s) < Rational(0));
      REQUIRE(w.zeta.a > Rational(0));
      REQUIRE(std::gcd(w.zeta.a.num(), w.zeta.b.num()) == 1);
      REQUIRE(is_ample(s, polarization(w.x)));
      REQUIRE_FALSE(w.witnesses.empty());
      for (const WallWitness& wit : w.witnesses) {
        REQUIRE(wall_of(e, wit.r1, wit.xi1, s) == w.x);
        REQUIRE(wit.chi_min <= wit.chi_max);
        REQUIRE(wit.chi_max - wit.chi_min < 1000);
        const DivClass xi2 = e.xi - wit.xi1;
        for (long long chi1 = wit.chi_min; chi1 <= wit.chi_max; ++chi1) {
          REQUIRE(discriminant(ChernVector(wit.r1, wit.xi1, chi1), s) >= Rational(0));
          REQUIRE(discriminant(ChernVector(e.r - wit.r1, xi2, e.chi - chi1), s) >=
                  Rational(0));
        }
        // One step outside the interval violates a discriminant bound.
        REQUIRE((discriminant(ChernVector(wit.r1, wit.xi1, wit.chi_max + 1), s) < Rational(0) ||
                 discriminant(ChernVector(e.r - wit.r1, xi2, e.chi - wit.chi_max - 1), s) <
                     Rational(0)));
      }
    }
  }
}

TEST_CASE("decomposition invariants: sorted walls, chambers free of walls") {
  std::mt19937 rng(101);
  for (int i = 0; i < 40; ++i) {
    const RuledSurface s(1, testgen::pick(rng, -1, 1));
    const ChernVector e(testgen::pick(rng, 2, 4), testgen::integral_class(rng, 3),
                        testgen::pick(rng, -4, 4));
    const Rational lo = ample_threshold(s);
    const auto d = chambers(e, s, RayInterval{lo, false, lo + Rational(7), true});
    for (std::size_t w = 1; w < d.walls.size(); ++w) {
      REQUIRE(d.walls[w - 1].x < d.walls[w].x);
    }
    for (const RayInterval& chamber : d.chambers) {
      REQUIRE_FALSE(chamber.empty());
      for (const Wall& w : d.walls) REQUIRE_FALSE(chamber.contains(w.x));
      REQUIRE((d.range.contains(chamber.lo) || !chamber.lo_closed));
    }
  }
}

TEST_CASE("monotone refinement: a larger range keeps walls in the overlap") {
  std::mt19937 rng(61);
  for (int i = 0; i < 40; ++i) {
    const RuledSurface s(1, testgen::pick(rng, -1, 1));
    const ChernVector e(testgen::pick(rng, 2, 3), testgen::integral_class(rng, 2),
                        testgen::pick(rng, -3, 3));
    const Rational lo = ample_threshold(s);
    const RayInterval narrow{lo + Rational(1, 2), false, lo + Rational(2), true};
    const RayInterval wide{lo, false, lo + Rational(8), true};
    const auto walls_narrow = enumerate_walls(e, s, narrow);
    const auto walls_wide = enumerate_walls(e, s, wide);
    std::vector<Wall> restricted;
    for (const Wall& w : walls_wide) {
      if (narrow.contains(w.x)) restricted.push_back(w);
    }
    REQUIRE(walls_narrow == restricted);
  }
}

TEST_CASE("wall set is twist-equivariant") {
  std::mt19937 rng(67);
  for (int i = 0; i < 30; ++i) {
    const RuledSurface s(1, testgen::pick(rng, -1, 1));
    const ChernVector e(testgen::pick(rng, 2, 3), testgen::integral_class(rng, 2),
                        testgen::pick(rng, -3, 3));
    const long long m = testgen::pick(rng, -2, 2);
    const DivClass d = (i % 2 == 0) ? DivClass{Rational(m), Rational(0)}
                                    : DivClass{Rational(0), Rational(m)};
    const ChernVector te = twist(e, d, s);
    const Rational lo = ample_threshold(s);
    const RayInterval range{lo, false, lo + Rational(6), true};
    const auto walls = enumerate_walls(e, s, range);
    const auto twisted_walls = enumerate_walls(te, s, range);
    REQUIRE(walls.size() == twisted_walls.size());
    const DivClass k = canonical(s);
    for (std::size_t w = 0; w < walls.size(); ++w) {
      REQUIRE(walls[w].x == twisted_walls[w].x);
      REQUIRE(walls[w].zeta == twisted_walls[w].zeta);
      REQUIRE(walls[w].witnesses.size() == twisted_walls[w].witnesses.size());
      for (std::size_t v = 0; v < walls[w].witnesses.size(); ++v) {
        const WallWitness& wit = walls[w].witnesses[v];
        const Rational shift = intersect(wit.xi1, d, s) +
                               Rational(wit.r1) * intersect(d, d - k, s) / Rational(2);
        const WallWitness expected{wit.r1, wit.xi1 + Rational(wit.r1) * d,
                                   wit.chi_min + shift.num(), wit.chi_max + shift.num()};
        REQUIRE(twisted_walls[w].witnesses[v] == expected);
      }
    }
  }
}

TEST_CASE("enumeration agrees with the brute-force oracle") {
  std::mt19937 rng(71);
  int nonempty = 0;
  for (int i = 0; i < 40; ++i) {
    const RuledSurface s(1, testgen::pick(rng, -1, 1));
    const ChernVector e(testgen::pick(rng, 2, 4), testgen::integral_class(rng, 3),
                        testgen::pick(rng, -5, 5));
    const Rational lo = ample_threshold(s);
    const RayInterval range{lo, false, lo + Rational(6), true};
    const auto walls = enumerate_walls(e, s, range);
    const auto expected = wall_oracle::scan(e, s, range);
    REQUIRE(walls.size() == expected.size());
    auto it = expected.begin();
    for (const Wall& w : walls) {
      REQUIRE(w.x == it->first);
      REQUIRE(wall_oracle::flatten(w) == it->second);
      ++it;
    }
    if (!walls.empty()) ++nonempty;
  }
  CHECK(nonempty > 5);  // the sample is not vacuous
}
