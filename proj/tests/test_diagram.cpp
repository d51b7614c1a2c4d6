#include "doctest.h"
#include "linkforge/diagram.hpp"

using namespace linkforge;

namespace {

const char* kTrefoil = "X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n";

}

TEST_CASE("parse_pd basics") {
  Diagram unknot = parse_pd("O\n");
  CHECK(unknot.crossings.empty());
  CHECK(unknot.free_loops == 1);
  CHECK(components(unknot) == 1);

  Diagram tre = parse_pd(kTrefoil);
  CHECK(tre.crossings.size() == 3);
  CHECK(components(tre) == 1);

  CHECK_THROWS_AS(parse_pd(""), DiagramError);
  CHECK_THROWS_AS(parse_pd("# only a comment\n"), DiagramError);
  // label 1 used three times
  CHECK_THROWS_WITH_AS(parse_pd("X 1 1 1 2\nX 2 3 3 4\n"), doctest::Contains("non-matching arc"),
                       DiagramError);
  CHECK_THROWS_AS(parse_pd("X 1 2 3\n"), DiagramError);
  CHECK_THROWS_AS(parse_pd("Y 1 2 3 4\n"), DiagramError);
  // virtual kink: labels match but the rotation system is not planar
  CHECK_THROWS_AS(parse_pd("X 1 2 1 2\n"), DiagramError);
}

TEST_CASE("round trip") {
  for (const char* text : {kTrefoil, "O\nX 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n"}) {
    Diagram d = parse_pd(text);
    Diagram d2 = parse_pd(serialize(d));
    CHECK(d == d2);
  }
}

TEST_CASE("braid closures") {
  BraidWord tre{2, {1, 1, 1}};
  Diagram d = braid_closure(tre);
  CHECK(d.crossings.size() == 3);
  CHECK(components(d) == 1);
  CHECK(canonical_code(d) == canonical_code(parse_pd(kTrefoil)));

  Diagram t3 = braid_closure(BraidWord{3, {}});
  CHECK(t3.crossings.empty());
  CHECK(t3.free_loops == 3);
  CHECK(components(t3) == 3);

  std::vector<int> gamma;
  for (int rep = 0; rep < 10; ++rep)
    for (int i = 1; i <= 4; ++i) gamma.push_back(i);
  Diagram chen = braid_closure(BraidWord{5, gamma});
  CHECK(chen.crossings.size() == 40);
  CHECK(components(chen) == 5);

  Diagram id5 = braid_closure(BraidWord{5, {}});
  CHECK(components(id5) == 5);

  CHECK_THROWS_AS(braid_closure(BraidWord{2, {2}}), DiagramError);
  CHECK_THROWS_AS(parse_braid("BR 2: 5"), DiagramError);
  BraidWord parsed = parse_braid("BR 3: 1 -2 1 -2");
  CHECK(parsed.strand_count == 3);
  CHECK(parsed.letters == std::vector<int>{1, -2, 1, -2});
}

TEST_CASE("mirror is an involution") {
  Diagram tre = parse_pd(kTrefoil);
  Diagram m = mirror(tre);
  CHECK(canonical_code(m) != canonical_code(tre));  // trefoil is chiral
  CHECK(mirror(m) == tre);
  CHECK(components(m) == 1);

  Diagram unknot = parse_pd("O\n");
  CHECK(mirror(unknot) == unknot);
}

TEST_CASE("canonical code is label independent") {
  Diagram tre = parse_pd(kTrefoil);
  Diagram shifted = relabeled(tre, 100);
  CHECK(canonical_code(tre) == canonical_code(shifted));
  CHECK(canonical_code(tre) != canonical_code(braid_closure(BraidWord{2, {1, 1}})));
}

TEST_CASE("linking matrix mod 2") {
  Diagram t2 = braid_closure(BraidWord{2, {}});
  IntMat lk = linking_matrix_mod2(t2);
  CHECK(lk.rows() == 2);
  CHECK(lk == IntMat::Zero(2, 2));

  Diagram hopf = braid_closure(BraidWord{2, {1, 1}});
  CHECK(components(hopf) == 2);
  IntMat hk = linking_matrix_mod2(hopf);
  CHECK(hk(0, 1) == 1);
  CHECK(hk(1, 0) == 1);
  CHECK(hk(0, 0) == 0);

  // borromean rings: all pairwise linking numbers vanish
  Diagram bor = braid_closure(BraidWord{3, {1, -2, 1, -2, 1, -2}});
  CHECK(components(bor) == 3);
  IntMat bk = linking_matrix_mod2(bor);
  CHECK(bk == IntMat::Zero(3, 3));

  CHECK_THROWS_AS(linking_matrix_mod2(parse_pd(kTrefoil)), DiagramError);
}

TEST_CASE("tangle rotation and composition") {
  Tangle zero = zero_tangle();
  Tangle inf = infinity_tangle();
  validate(zero);
  validate(inf);

  CHECK(canonical_code(tangle_rotate(zero, 4)) == canonical_code(zero));
  CHECK(canonical_code(tangle_rotate(zero, 1)) == canonical_code(inf));
  CHECK(canonical_code(tangle_rotate(inf, 1)) == canonical_code(zero));

  Tangle zz = tangle_compose(zero, zero);
  CHECK(zz.diagram.free_loops == 0);
  CHECK(canonical_code(zz) == canonical_code(zero));

  Tangle ii = tangle_compose(inf, inf);
  CHECK(ii.diagram.free_loops == 1);

  Tangle cr = crossing_tangle(+1);
  validate(cr);
  Tangle cc = tangle_compose(cr, cr);
  CHECK(cc.diagram.crossings.size() == 2);
  validate(cc);

  CHECK_THROWS_AS(tangle_compose(zero, Tangle{Diagram{{}, 0}, {1, 2, 3, 4, 4, 3}}),
                  DiagramError);
}

TEST_CASE("numerator closures") {
  CHECK(components(numerator_closure(zero_tangle())) == 2);   // two nested circles
  CHECK(components(numerator_closure(infinity_tangle())) == 1);
  Diagram hopfish = numerator_closure(tangle_compose(crossing_tangle(1), crossing_tangle(1)));
  CHECK(hopfish.crossings.size() == 2);
  CHECK(components(hopfish) == 2);
}

TEST_CASE("tangle parsing") {
  Tangle t = parse_tangle("X 1 2 3 4\nT 1 2 3 4\n");
  CHECK(t.boundary.size() == 4);
  CHECK(t.diagram.crossings.size() == 1);
  CHECK_THROWS_AS(parse_tangle("X 1 2 3 4\n"), DiagramError);
  CHECK_THROWS_AS(parse_tangle("T 1 2 3\nX 1 2 3 4\n"), DiagramError);
  Tangle zt = parse_tangle("T 1 2 2 1\n");
  CHECK(canonical_code(zt) == canonical_code(zero_tangle()));
}
