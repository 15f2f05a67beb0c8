#include <doctest.h>

#include <random>

#include "solenoidk/dynamics.hpp"

using namespace solenoidk;

namespace {

SubstitutionSystem sys(std::vector<std::string> edges, std::vector<std::string> images) {
  return SubstitutionSystem::from_strings(edges, images);
}

SubstitutionSystem aab_ab() { return sys({"a", "b"}, {"aab", "ab"}); }
SubstitutionSystem two() { return sys({"a"}, {"aa"}); }
SubstitutionSystem ab_ab() { return sys({"a", "b"}, {"ab", "ab"}); }

Rational q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("apply_g on arc points and germs") {
  CHECK(apply_g(two(), PLPoint(Interior{0, q(1, 3)})) == PLPoint(Interior{0, q(2, 3)}));
  CHECK(apply_g(aab_ab(), PLPoint(Interior{0, q(1, 2)})) == PLPoint(Interior{0, q(1, 2)}));
  CHECK(apply_g(aab_ab(), PLPoint(GermPoint{{1, 0}})) == PLPoint(GermPoint{{1, 0}}));
  // a@1/3 hits the boundary between the first two letters of aab.
  CHECK(apply_g(aab_ab(), PLPoint(Interior{0, q(1, 3)})) == PLPoint(GermPoint{{0, 0}}));
  CHECK(apply_g(aab_ab(), PLPoint(Interior{0, q(2, 3)})) == PLPoint(GermPoint{{0, 1}}));
  CHECK(apply_g(aab_ab(), YPoint(Interior{0, q(2, 3)})) == YPoint(Vertex{}));
}

TEST_CASE("fixed point counts") {
  const QuotientPresentation a(aab_ab()), d2(two());
  CHECK(fix_count(d2, 3) == 7);
  CHECK(fix_count(a, 1) == 2);
  CHECK(fix_count(a, 2) == 6);
  CHECK(fix_count_oracle(ab_ab(), 1) == 1);
  CHECK(fix_count_oracle(aab_ab(), 2) == 6);
}

TEST_CASE("oracle agreement on bundled systems") {
  for (const auto& s : {aab_ab(), two(), ab_ab()}) {
    const QuotientPresentation qp(s);
    for (std::size_t n = 1; n <= 8; ++n) {
      CAPTURE(n);
      REQUIRE(fix_count(qp, n) == fix_count_oracle(s, n));
      REQUIRE(fix_count(qp, n) == fix_count_presolenoid(s, n));
    }
  }
}

TEST_CASE("circle covers") {
  for (long d : {2L, 3L}) {
    const auto s = sys({"a"}, {std::string(static_cast<std::size_t>(d), 'a')});
    const QuotientPresentation qp(s);
    Integer power = 1;
    for (std::size_t n = 1; n <= 10; ++n) {
      power *= d;
      REQUIRE(fix_count(qp, n) == power - 1);
      REQUIRE(fix_count_oracle(s, n) == power - 1);
    }
  }
}

TEST_CASE("zeta series") {
  const ZetaSeries z = zeta_series(QuotientPresentation(two()), 4);
  CHECK(z.counts == std::vector<Integer>{1, 3, 7, 15});
  REQUIRE(z.guess);
  CHECK(z.guess->to_string() == "(1 - t)/(1 - 2t)");

  const ZetaSeries a = zeta_series(QuotientPresentation(aab_ab()), 2);
  CHECK(a.counts == std::vector<Integer>{2, 6});
  CHECK_FALSE(a.guess);

  const ZetaSeries a8 = zeta_series(QuotientPresentation(aab_ab()), 8);
  REQUIRE(a8.guess);
  CHECK(a8.guess->to_string() == "(1 - t)/(1 - 3t + t^2)");
  for (const auto& x : a8.series) CHECK(x.get_den() == 1);
}

TEST_CASE("rose distance") {
  CHECK(rose_distance(YPoint(Interior{0, q(1, 10)}), YPoint(Interior{0, q(9, 10)})) == q(1, 5));
  CHECK(rose_distance(YPoint(Interior{0, q(1, 4)}), YPoint(Interior{1, q(1, 2)})) == q(3, 4));
  CHECK(rose_distance(YPoint(Vertex{}), YPoint(Interior{1, q(1, 3)})) == q(1, 3));
}

TEST_CASE("wieler witnesses") {
  const WielerSearch d = wieler_axiom_witness(two(), 2, 200, 1);
  REQUIRE(d.witness);
  CHECK(d.witness->k == 1);
  CHECK(d.witness->gamma == q(1, 2));
  CHECK(d.witness->beta == q(1, 8));

  const WielerSearch a = wieler_axiom_witness(aab_ab(), 2, 200, 1);
  REQUIRE(a.witness);
  CHECK(a.witness->k == 1);
  CHECK(a.witness->gamma == q(1, 2));
}

TEST_CASE("cover membership") {
  const QuotientPresentation qp(two());
  const CoverSpec c(qp, 1);
  CHECK(c.element_count() == 4);  // two cells, one junction, one germ
  CHECK(c.elements_containing(Interior{0, q(1, 5)}).size() == 2);
  CHECK(c.elements_containing(Interior{0, q(1, 2)}).size() == 1);
  CHECK(c.elements_containing(Interior{0, q(1, 4)}).size() == 1);
}

TEST_CASE("doubling map pair separates at the first step") {
  const QuotientPresentation qp(two());
  const SeparationReport r = forward_expansive_witness(qp, CoverSpec(qp, 1), 10, 5);
  // Grid order: 1/5, 2/5, 3/5, 4/5, germ.
  CHECK(r.time(0, 1) == 1);
  // Elements of the level-1 cover are half the circle long, too coarse for
  // 2/5 and 3/5, which keep landing in a common junction or germ element.
  CHECK_FALSE(r.all_separated());
  CHECK(forward_expansive_witness(qp, CoverSpec(qp, 2), 10, 5).all_separated());
}

TEST_CASE("expansiveness on the non-Hausdorff example") {
  const QuotientPresentation qp(aab_ab());
  const SeparationReport r2 = forward_expansive_witness(qp, CoverSpec(qp, 2), 20, 16);
  const SeparationReport r3 = forward_expansive_witness(qp, CoverSpec(qp, 3), 20, 16);
  CHECK(r2.all_separated());
  CHECK(r3.all_separated());
  for (std::size_t i = 0; i < r2.point_count; ++i)
    for (std::size_t j = i + 1; j < r2.point_count; ++j) REQUIRE(r3.time(i, j) <= r2.time(i, j));
}

TEST_CASE("shift equivalence identities") {
  for (const auto& s : {aab_ab(), two(), ab_ab()}) {
    const QuotientPresentation qp(s);
    const ShiftEquivalenceReport r = shift_equivalence_check(qp, 300, 5);
    CHECK(r.identities.size() == 4);
  }
  const QuotientPresentation d(two());
  const ShiftEquivalence se(d);
  CHECK(se.k0() == 0);
  const YPoint y = Interior{0, q(3, 7)};
  CHECK(r_map(se.s_map(y)) == y);
  try {
    shift_equivalence_check(QuotientPresentation(sys({"a", "b"}, {"ab", "ba"})), 10, 1);
    FAIL("expected NoFlattening");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoFlattening);
  }
}

TEST_CASE("solenoid points") {
  const auto s = two();
  SolenoidPoint x{{Interior{0, q(1, 4)}, Interior{0, q(1, 8)}}};
  require_solenoid_point(s, x);
  const SolenoidPoint y = solenoid_apply_phi(s, x);
  CHECK(y.coords == std::vector<YPoint>{Interior{0, q(1, 2)}, Interior{0, q(1, 4)}, Interior{0, q(1, 8)}});
  CHECK(solenoid_shift(y).coords == x.coords);

  const SolenoidPoint bad{{Interior{0, q(1, 4)}, Interior{0, q(1, 3)}}};
  CHECK_THROWS_AS(require_solenoid_point(s, bad), Error);
}

TEST_CASE("p_map projects onto the zeroth coordinate") {
  for (const auto& s : {aab_ab(), two(), ab_ab()}) {
    const QuotientPresentation qp(s);
    const ShiftEquivalence se(qp);
    std::mt19937_64 rng(11);
    std::size_t vertex_hits = 0;
    for (int i = 0; i < 1000; ++i) {
      const SolenoidPoint x = random_solenoid_point(s, 4, rng);
      require_solenoid_point(s, x);
      const PLPoint p = p_map(se, x);
      REQUIRE(r_map(p) == x.coords.front());
      if (std::holds_alternative<Vertex>(x.coords.front())) ++vertex_hits;
    }
    CHECK(vertex_hits > 0);
  }
}

TEST_CASE("p_map at the vertex of aab/ab") {
  const auto s = aab_ab();
  const QuotientPresentation qp(s);
  const ShiftEquivalence se(qp);
  // x1 = a@1/3 lies over the boundary a|a of g(a), so x0 is the vertex.
  const SolenoidPoint x{{Vertex{}, Interior{0, q(1, 3)}}};
  require_solenoid_point(s, x);
  CHECK(p_map(se, x) == PLPoint(GermPoint{{0, 0}}));
  CHECK_THROWS_AS(p_map(se, SolenoidPoint{{Vertex{}}}), Error);
}
