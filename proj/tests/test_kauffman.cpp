#include "doctest.h"
#include "linkforge/coloring.hpp"
#include "linkforge/kauffman.hpp"
#include "test_util.hpp"

using namespace linkforge;
using testutil::Rng;

namespace {

Diagram unknot() {
  Diagram d;
  d.free_loops = 1;
  return d;
}

Diagram trivial_link(int n) {
  Diagram d;
  d.free_loops = n;
  return d;
}

Diagram trefoil() { return braid_closure(BraidWord{2, {1, 1, 1}}); }
Diagram figure_eight() { return braid_closure(BraidWord{3, {1, -2, 1, -2}}); }

GoldenValue sqrt5_pow(int k) {
  GoldenValue v{1, 0};
  for (int i = 0; i < k; ++i) v = v * golden_sqrt5();
  return v;
}

}  // namespace

TEST_CASE("golden arithmetic") {
  GoldenValue x{0, 1};
  CHECK(x * x == GoldenValue{1, -1});                    // x^2 = 1 - x
  CHECK(golden_sqrt5() * golden_sqrt5() == GoldenValue{5, 0});
  CHECK(golden_eval(kauffman_delta()) == golden_sqrt5());  // delta -> sqrt 5
}

TEST_CASE("decompose") {
  CHECK(decompose({1, 0}).epsilon == 1);
  CHECK(decompose({1, 0}).lambda == 0);
  CHECK(decompose({-1, -2}).epsilon == -1);
  CHECK(decompose({-1, -2}).lambda == 1);
  CHECK(decompose({-5, 0}).epsilon == -1);
  CHECK(decompose({-5, 0}).lambda == 2);
  CHECK(decompose({5, 10}).lambda == 3);
  CHECK(decompose(sqrt5_pow(4)).lambda == 4);
  CHECK_THROWS_AS(decompose({0, 0}), std::domain_error);
  CHECK_THROWS_AS(decompose({2, 0}), std::domain_error);
  CHECK_THROWS_AS(decompose({1, 1}), std::domain_error);
}

TEST_CASE("framed kauffman of trivial diagrams") {
  CHECK(kauffman_framed(unknot()) == LaurentPoly2::constant(1));
  CHECK(kauffman_framed(trivial_link(2)) == kauffman_delta());

  // single positive curl evaluates to a, negative curl to a^-1
  Diagram pos_curl = braid_closure(BraidWord{2, {1}});
  CHECK(kauffman_framed(pos_curl) == LaurentPoly2::monomial(1, 0, 1));
  Diagram neg_curl = braid_closure(BraidWord{2, {-1}});
  CHECK(kauffman_framed(neg_curl) == LaurentPoly2::monomial(-1, 0, 1));

  // R2 pattern reduces to the 2-component unlink
  CHECK(kauffman_framed(braid_closure(BraidWord{2, {1, -1}})) == kauffman_delta());
}

TEST_CASE("specialization golden values from the literature") {
  CHECK(eval_phi5(unknot()) == GoldenValue{1, 0});
  for (int n = 1; n <= 5; ++n) CHECK(eval_phi5(trivial_link(n)) == sqrt5_pow(n - 1));

  CHECK(eval_phi5(trefoil()) == GoldenValue{-1, 0});
  GoldenValue f41 = eval_phi5(figure_eight());
  CHECK(f41 == GoldenValue{-1, -2});  // -sqrt5
  PhiDecomposition d41 = decompose(f41);
  CHECK(d41.epsilon == -1);
  CHECK(d41.lambda == 1);

  // 5_1 reduces to T_2 by a 5-move, so |F| = sqrt5
  GoldenValue f51 = eval_phi5(braid_closure(BraidWord{2, {1, 1, 1, 1, 1}}));
  CHECK(decompose(f51).lambda == 1);
}

TEST_CASE("lemma 3.2 identity col_5 = 5 F^2 on small links") {
  for (const Diagram& d :
       {unknot(), trivial_link(2), trivial_link(3), trefoil(), figure_eight(),
        braid_closure(BraidWord{2, {1, 1}}), braid_closure(BraidWord{3, {1, -2, 1, -2, 1, -2}}),
        braid_closure(BraidWord{2, {1, 1, 1, 1, 1}})}) {
    GoldenValue f = eval_phi5(d);
    GoldenValue square = f * f;
    CHECK(square.v == 0);
    ColoringSpace cs = coloring_space(d, 5);
    CHECK(cs.cardinality_int() == 5 * square.u);
  }
}

TEST_CASE("skein relation holds exactly") {
  Rng rng(99);
  int done = 0;
  for (int trial = 0; trial < 60 && done < 25; ++trial) {
    std::vector<int> letters;
    int strands = 2 + rng.below(2);
    int len = 3 + rng.below(4);
    for (int i = 0; i < len; ++i) {
      int g = 1 + rng.below(strands - 1);
      letters.push_back(rng.coin() ? g : -g);
    }
    Diagram d = braid_closure(BraidWord{strands, letters});
    if (d.crossings.empty()) continue;
    int c = rng.below(static_cast<int>(d.crossings.size()));
    const auto& e = d.crossings[c].ends;
    Diagram sw = switch_crossing(d, c);
    Diagram s0 = splice(d, {c}, {{e[0], e[1]}, {e[2], e[3]}});
    Diagram s1 = splice(d, {c}, {{e[0], e[3]}, {e[1], e[2]}});

    // F(L+) + F(L-) = x (F(L0) + F(Linf)) in both rings
    LaurentPoly2 lhs = kauffman_framed(d) + kauffman_framed(sw);
    LaurentPoly2 rhs = (kauffman_framed(s0) + kauffman_framed(s1)).shifted(0, 1);
    CHECK(lhs == rhs);

    GoldenValue gl = eval_phi5(d) + eval_phi5(sw);
    GoldenValue gr = GoldenValue{0, 1} * (eval_phi5(s0) + eval_phi5(s1));
    CHECK(gl == gr);
    ++done;
  }
  CHECK(done == 25);
}

TEST_CASE("golden specialization agrees with substituting the full polynomial") {
  for (const Diagram& d : {trefoil(), figure_eight(), braid_closure(BraidWord{2, {1, 1}}),
                           braid_closure(BraidWord{3, {1, -2, 1, -2, 1, -2}})}) {
    CHECK(golden_eval(kauffman_framed(d)) == eval_phi5(d));
  }
}

TEST_CASE("reidemeister invariance of the specialization") {
  // R1 kinks change kauffman_framed by a^{+-1} and eval_phi5 not at all
  Diagram k1 = braid_closure(BraidWord{2, {1, 1, 1, 1}});  // writhe 4 diagram of hopf-ish link
  Diagram base = braid_closure(BraidWord{2, {1, 1}});
  CHECK(eval_phi5(braid_closure(BraidWord{2, {1}})) == eval_phi5(unknot()));
  CHECK(eval_phi5(braid_closure(BraidWord{2, {1, -1}})) == eval_phi5(trivial_link(2)));
  (void)k1;
  (void)base;

  // conjugated braid words close to the same link (here trefoil + split circle)
  Diagram conj = braid_closure(BraidWord{3, {2, 1, 1, 1, -2}});
  CHECK(components(conj) == 2);
  CHECK(eval_phi5(conj) == golden_sqrt5() * eval_phi5(trefoil()));
  CHECK(kauffman_framed(conj) == kauffman_delta() * kauffman_framed(trefoil()));
  // stabilization adds one curl worth of framing
  Diagram stab = braid_closure(BraidWord{3, {1, 1, 1, 2}});
  CHECK(eval_phi5(stab) == eval_phi5(trefoil()));
  CHECK(kauffman_framed(stab) == kauffman_framed(trefoil()).shifted(1, 0));
}

TEST_CASE("node budget guard") {
  CHECK_THROWS_AS(eval_phi5(trefoil(), 2), SkeinBudgetExceeded);
  CHECK_THROWS_AS(kauffman_framed(Diagram{}), DiagramError);  // empty diagram
}
