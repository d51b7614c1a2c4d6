#include "doctest.h"
#include "linkforge/coloring.hpp"
#include "linkforge/kauffman.hpp"
#include "linkforge/moves.hpp"
#include "test_util.hpp"

using namespace linkforge;
using testutil::Rng;

namespace {

Diagram two_loops() {
  Diagram d;
  d.free_loops = 2;
  return d;
}

Diagram one_loop() {
  Diagram d;
  d.free_loops = 1;
  return d;
}

StrandRef loop_ref(int i) { return StrandRef{true, i, 0}; }

// numerator closure of the p/q twist tangle: insert between two circles
Diagram two_bridge(int p, int q) {
  Move m;
  m.kind = MoveKind::RationalMove;
  m.p = p;
  m.q = q;
  m.site = {loop_ref(0), loop_ref(1), {}};
  return apply(two_loops(), m);
}

Diagram trefoil() { return braid_closure(BraidWord{2, {1, 1, 1}}); }

}  // namespace

TEST_CASE("n-moves between two circles build torus links") {
  Move m;
  m.kind = MoveKind::NMove;
  m.site = {loop_ref(0), loop_ref(1), {}};

  m.n = 2;
  Diagram hopf = apply(two_loops(), m);
  CHECK(canonical_code(hopf) == canonical_code(braid_closure(BraidWord{2, {1, 1}})));

  m.n = 3;
  Diagram t23 = apply(two_loops(), m);
  CHECK(components(t23) == 1);
  CHECK(determinant(t23) == 3);

  m.n = 1;
  Diagram merged = apply(two_loops(), m);
  CHECK(components(merged) == 1);
  CHECK(merged.crossings.size() == 1);
}

TEST_CASE("n-move on a single folded circle makes curls") {
  Move m;
  m.kind = MoveKind::NMove;
  m.n = 1;
  m.site = {loop_ref(0), loop_ref(0), {}};
  Diagram kink = apply(one_loop(), m);
  CHECK(kink.crossings.size() == 1);
  CHECK(components(kink) == 1);
  CHECK(eval_phi5(kink) == GoldenValue{1, 0});

  m.n = 4;
  Diagram curls = apply(one_loop(), m);
  CHECK(curls.crossings.size() == 4);
  CHECK(components(curls) == 1);
  for (Int k : {3, 5, 7}) CHECK(coloring_space(curls, k).cardinality_int() == k);
}

TEST_CASE("rational insertions realize two-bridge links: determinant = |p|") {
  struct Case {
    int p, q;
  };
  for (Case c : std::initializer_list<Case>{{1, 1}, {2, 1}, {3, 1}, {5, 2}, {-5, 2}, {5, -2},
                                            {7, 3}, {8, 3}, {15, 4}, {25, 9}, {11, 5}, {13, 5},
                                            {-15, 4}, {35, 12}, {75, 34}}) {
    Diagram d = two_bridge(c.p, c.q);
    CHECK(determinant(d) == std::abs(c.p));
  }
  CHECK(components(two_bridge(0, 1)) == 2);
  CHECK(determinant(two_bridge(0, 1)) == 0);
}

TEST_CASE("known two-bridge identifications") {
  // 5/2 closes to the figure eight knot
  Diagram d52 = two_bridge(5, 2);
  CHECK(components(d52) == 1);
  CHECK(coloring_space(d52, 5).cardinality_int() == 25);
  CHECK(eval_phi5(d52) == GoldenValue{-1, -2});

  // 15/4 closes to a 7-crossing knot with determinant 15 (7_4)
  Diagram d74 = two_bridge(15, 4);
  CHECK(components(d74) == 1);
  CHECK(d74.crossings.size() == 7);
  CHECK(determinant(d74) == 15);
  CHECK(coloring_space(d74, 5).cardinality_int() == 25);
  CHECK(coloring_space(d74, 3).cardinality_int() == 9);

  // 25/9 closes to an 8-crossing knot with determinant 25 (8_8)
  Diagram d88 = two_bridge(25, 9);
  CHECK(components(d88) == 1);
  CHECK(d88.crossings.size() == 8);
  CHECK(determinant(d88) == 25);
  CHECK(coloring_space(d88, 5).cardinality_int() == 25);

  // 8/3 closes to the whitehead link
  Diagram wh = two_bridge(8, 3);
  CHECK(components(wh) == 2);
  CHECK(determinant(wh) == 8);
}

TEST_CASE("sq-moves agree with the matching rational move on all invariants") {
  for (auto [s, q] : std::vector<std::pair<int, int>>{
           {2, 2}, {-2, -2}, {2, 3}, {-3, -2}, {4, -3}, {2, 5}, {1, 1}, {3, 1}}) {
    Move sq;
    sq.kind = MoveKind::SQMove;
    sq.s = s;
    sq.q = q;
    sq.site = {loop_ref(0), loop_ref(1), {}};
    Move rat;
    rat.kind = MoveKind::RationalMove;
    rat.p = s * q + 1;
    rat.q = q;
    rat.site = sq.site;
    Diagram a = apply(two_loops(), sq);
    Diagram b = apply(two_loops(), rat);
    CHECK(components(a) == components(b));
    CHECK(determinant(a) == determinant(b));
    for (Int m = 3; m <= 13; ++m)
      CHECK(structure_equal(coloring_space(a, m), coloring_space(b, m)));
    CHECK(eval_phi5(a) == eval_phi5(b));
  }
}

TEST_CASE("sq(2,2) insertions negate the golden evaluation") {
  Rng rng(31);
  std::vector<Diagram> bases = {trefoil(), braid_closure(BraidWord{3, {1, -2, 1, -2}}),
                                braid_closure(BraidWord{2, {1, 1}}), two_bridge(15, 4)};
  int checked = 0;
  for (const Diagram& base : bases) {
    GoldenValue before = eval_phi5(base);
    auto sites = insertion_sites(base);
    for (int trial = 0; trial < 6; ++trial) {
      const MoveSite& site = sites[rng.below(static_cast<int>(sites.size()))];
      Move m;
      m.kind = MoveKind::SQMove;
      m.s = rng.coin() ? 2 : -2;
      m.q = m.s;
      m.site = site;
      Diagram after = apply(base, m);
      CHECK(eval_phi5(after) + before == GoldenValue{0, 0});
      ++checked;
    }
  }
  CHECK(checked == 24);
}

TEST_CASE("r1 and r2 insertions and deletions round trip") {
  Diagram tre = trefoil();
  DiagramIndex idx(tre);
  int edge = idx.edge_labels()[0];

  Move r1;
  r1.kind = MoveKind::R1Plus;
  r1.site.a = r1.site.b = StrandRef{false, edge, 0};
  for (int sign : {1, -1}) {
    r1.sign = sign;
    Diagram kinked = apply(tre, r1);
    CHECK(kinked.crossings.size() == 4);
    CHECK(kauffman_framed(kinked) == kauffman_framed(tre).shifted(sign, 0));
    // remove it again
    auto sites = r1_deletion_sites(kinked);
    REQUIRE(!sites.empty());
    Move r1m;
    r1m.kind = MoveKind::R1Minus;
    r1m.site = sites.front();
    CHECK(canonical_code(apply(kinked, r1m)) == canonical_code(tre));
  }

  auto ins = insertion_sites(tre);
  Move r2;
  r2.kind = MoveKind::R2Plus;
  r2.site = ins.front();
  Diagram poked = apply(tre, r2);
  CHECK(poked.crossings.size() == 5);
  CHECK(kauffman_framed(poked) == kauffman_framed(tre));
  auto sites2 = r2_deletion_sites(poked);
  REQUIRE(!sites2.empty());
  Move r2m;
  r2m.kind = MoveKind::R2Minus;
  r2m.site = sites2.front();
  Diagram back = apply(poked, r2m);
  CHECK(canonical_code(r_reduce(back)) == canonical_code(tre));

  CHECK_THROWS_AS(apply(tre, r2m), MoveError);  // non-bigon site
}

TEST_CASE("r3 at a triangle is an involution preserving invariants") {
  // the braid-relation configuration sigma1 sigma2 sigma1 has a slidable triangle;
  // the borromean braid closure's triangles are cyclically woven and must refuse
  CHECK(r3_sites(braid_closure(BraidWord{3, {1, -2, 1, -2, 1, -2}})).empty());

  std::vector<Diagram> bases = {braid_closure(BraidWord{3, {1, 2, 1, 1}}),
                                braid_closure(BraidWord{3, {1, 2, 1, -2}}),
                                braid_closure(BraidWord{3, {1, 2, 1, 2}})};
  int seen = 0;
  for (const Diagram& base : bases) {
    for (const MoveSite& site : r3_sites(base)) {
      Move m;
      m.kind = MoveKind::R3;
      m.site = site;
      Diagram once = apply(base, m);
      CHECK(once.crossings.size() == base.crossings.size());
      for (Int k : {3, 4, 5})
        CHECK(structure_equal(coloring_space(once, k), coloring_space(base, k)));
      CHECK(kauffman_framed(once) == kauffman_framed(base));
      // some triangle flips back to the original diagram
      bool restored = false;
      for (const MoveSite& bs : r3_sites(once)) {
        Move mb;
        mb.kind = MoveKind::R3;
        mb.site = bs;
        if (canonical_code(apply(once, mb)) == canonical_code(base)) restored = true;
      }
      CHECK(restored);
      ++seen;
    }
  }
  CHECK(seen >= 2);
}

TEST_CASE("twist deletion undoes insertion") {
  Rng rng(77);
  Diagram tre = trefoil();
  auto sites = insertion_sites(tre);
  for (int trial = 0; trial < 5; ++trial) {
    const MoveSite& site = sites[rng.below(static_cast<int>(sites.size()))];
    int n = 2 + rng.below(3);
    Move ins;
    ins.kind = MoveKind::NMove;
    ins.n = rng.coin() ? n : -n;
    ins.site = site;
    Diagram big = apply(tre, ins);
    REQUIRE(big.crossings.size() == tre.crossings.size() + std::abs(ins.n));

    Move del;
    del.kind = MoveKind::NMove;
    del.n = ins.n;
    del.remove = true;
    for (int c = 0; c < std::abs(ins.n); ++c)
      del.site.crossings.push_back(static_cast<int>(tre.crossings.size()) + c);
    Diagram small = apply(big, del);
    CHECK(canonical_code(small) == canonical_code(tre));
  }
}

TEST_CASE("k-move invariance of colorings") {
  Rng rng(13);
  std::vector<Diagram> bases = {trefoil(), two_bridge(15, 4),
                                braid_closure(BraidWord{3, {1, -2, 1, -2}})};
  for (Int k : {3, 4, 5, 7}) {
    for (const Diagram& base : bases) {
      ColoringSpace before = coloring_space(base, k);
      auto sites = insertion_sites(base);
      for (int trial = 0; trial < 4; ++trial) {
        Move m;
        m.kind = MoveKind::NMove;
        m.n = rng.coin() ? static_cast<int>(k) : -static_cast<int>(k);
        m.site = sites[rng.below(static_cast<int>(sites.size()))];
        CHECK(structure_equal(coloring_space(apply(base, m), k), before));
      }
    }
  }
}

TEST_CASE("4-moves preserve the linking matrix mod 2") {
  Rng rng(17);
  Diagram base = braid_closure(BraidWord{3, {1, -2, 1, -2, 1, -2}});
  IntMat before = linking_matrix_mod2(base);
  auto sites = insertion_sites(base);
  for (int trial = 0; trial < 10; ++trial) {
    Move m;
    m.kind = MoveKind::NMove;
    m.n = rng.coin() ? 4 : -4;
    m.site = sites[rng.below(static_cast<int>(sites.size()))];
    Diagram after = apply(base, m);
    if (components(after) != components(base)) continue;  // orientation of matrix rows
    CHECK(linking_matrix_mod2(after) == before);
  }
}

TEST_CASE("condition 3.1 at concrete sites") {
  // unknot folded on itself
  Condition31Report u = verify_condition31(one_loop(), loop_ref(0), loop_ref(0));
  CHECK(u.condition_ok);
  CHECK(u.mirror_ok);
  CHECK(u.involution_ok);

  // joining the two circles of the trivial 2-link
  Condition31Report t = verify_condition31(two_loops(), loop_ref(0), loop_ref(1));
  CHECK(t.condition_ok);
  CHECK(t.mirror_ok);

  // an honest edge site on the trefoil
  Diagram tre = trefoil();
  auto sites = insertion_sites(tre);
  Condition31Report r = verify_condition31(tre, sites.front().a, sites.front().b);
  CHECK(r.condition_ok);
  CHECK(r.mirror_ok);
  CHECK(r.involution_ok);
}

TEST_CASE("certificates replay and count moves") {
  MoveCertificate cert;
  cert.start_diagram = two_loops();
  cert.claim_components = 2;
  cert.claim_crossings = 0;
  CertificateReport rep = verify_certificate(cert);
  CHECK(rep.valid);
  CHECK(rep.count_22 == 0);
  CHECK(rep.final_components == 2);

  // sq(2,2) insertion counted toward the parity bound
  MoveCertificate flip;
  flip.start_diagram = trefoil();
  Move ins;
  ins.kind = MoveKind::SQMove;
  ins.s = 2;
  ins.q = 2;
  ins.site = insertion_sites(trefoil()).front();
  flip.steps.push_back(ins);
  Diagram expect = apply(trefoil(), ins);
  flip.claim_components = components(expect);
  flip.claim_crossings = static_cast<int>(expect.crossings.size());
  CertificateReport rep2 = verify_certificate(flip);
  CHECK(rep2.valid);
  CHECK(rep2.count_22 == 1);
  CHECK(rep2.final_crossings == 7);

  // an invalid step reports its index
  MoveCertificate bad;
  bad.start_diagram = trefoil();
  Move r2m;
  r2m.kind = MoveKind::R2Minus;
  r2m.site.crossings = {0, 1};
  bad.steps.push_back(r2m);
  CertificateReport rep3 = verify_certificate(bad);
  CHECK(!rep3.valid);
  CHECK(rep3.failed_step == 0);
}

TEST_CASE("is_n_rotor") {
  CHECK(is_n_rotor(testutil::trivial_tangle(2), 2));
  CHECK(is_n_rotor(testutil::adjacent_pairs_tangle(3), 3));
  // three parallel chords are not fixed by a third of a turn
  CHECK(!is_n_rotor(testutil::trivial_tangle(3), 3));
  CHECK(is_n_rotor(crossing_tangle(1), 2));  // a single crossing is pi-rotation symmetric
  validate(testutil::wheel_rotor(2, 1));
  validate(testutil::wheel_rotor(3, 1));
  validate(testutil::wheel_rotor(5, -1));
  CHECK(is_n_rotor(testutil::wheel_rotor(2, 1), 2));
  CHECK(is_n_rotor(testutil::wheel_rotor(3, 1), 3));
  CHECK(is_n_rotor(testutil::wheel_rotor(5, -1), 5));
  CHECK_THROWS_AS(is_n_rotor(testutil::trivial_tangle(2), 3), MoveError);
}

TEST_CASE("rotor flip with a symmetric trivial rotor fixes the diagram") {
  Rng rng(7);
  int done = 0;
  for (int trial = 0; trial < 20 && done < 6; ++trial) {
    Tangle stator = testutil::random_algebraic_tangle(rng, 2, 2 + rng.below(3));
    Tangle rotor = testutil::trivial_tangle(2);
    try {
      GluedRotor g = glue_rotor(stator, rotor);
      Diagram flipped = rotor_flip(g.diagram, g.marker);
      CHECK(canonical_code(flipped) == canonical_code(g.diagram));
      ++done;
    } catch (const MoveError&) {
      continue;  // stator boundary strand without crossings
    }
  }
  CHECK(done == 6);
}

TEST_CASE("rotor flip preserves the determinant") {
  Rng rng(23);
  int done = 0;
  for (int trial = 0; trial < 40 && done < 8; ++trial) {
    int n = 2 + trial % 2;
    Tangle rotor = testutil::wheel_rotor(n, rng.coin() ? 1 : -1);
    Tangle stator = testutil::random_algebraic_tangle(rng, n, 1 + rng.below(3));
    try {
      GluedRotor g = glue_rotor(stator, rotor);
      Diagram flipped = rotor_flip(g.diagram, g.marker);
      CHECK(determinant(flipped) == determinant(g.diagram));
      CHECK(components(flipped) == components(g.diagram));
      ++done;
    } catch (const MoveError&) {
      continue;
    }
  }
  CHECK(done == 8);
}

TEST_CASE("p-rotor flips preserve col_p") {
  Rng rng(41);
  int done = 0;
  for (int trial = 0; trial < 200 && done < 8; ++trial) {
    Int p = (trial % 2 == 0) ? 3 : 5;
    Tangle rotor = testutil::wheel_rotor(static_cast<int>(p), rng.coin() ? 1 : -1);
    Tangle stator = testutil::random_algebraic_tangle(rng, static_cast<int>(p), 4 + rng.below(3));
    try {
      GluedRotor g = glue_rotor(stator, rotor);
      Diagram flipped = rotor_flip(g.diagram, g.marker);
      CHECK(structure_equal(coloring_space(flipped, p), coloring_space(g.diagram, p)));
      ++done;
    } catch (const MoveError&) {
      continue;
    }
  }
  CHECK(done == 8);
}
