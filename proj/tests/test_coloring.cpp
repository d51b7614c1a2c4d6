#include "doctest.h"
#include "linkforge/coloring.hpp"

using namespace linkforge;

namespace {

Diagram trefoil() { return braid_closure(BraidWord{2, {1, 1, 1}}); }
Diagram figure_eight() { return braid_closure(BraidWord{3, {1, -2, 1, -2}}); }

// brute-force oracle: count assignments of Z_k to arcs satisfying every crossing
Int brute_col(const Diagram& d, Int k) {
  IntMat rel = coloring_relations(d);
  int vars = static_cast<int>(rel.cols());
  Int count = 0;
  std::vector<Int> a(vars, 0);
  while (true) {
    bool ok = true;
    for (int r = 0; r < rel.rows() && ok; ++r) {
      Int s = 0;
      for (int c = 0; c < vars; ++c) s += rel(r, c) * a[c];
      if (mod_reduce(s, k) != 0) ok = false;
    }
    if (ok) ++count;
    int i = 0;
    while (i < vars && ++a[i] == k) a[i++] = 0;
    if (i == vars) break;
  }
  return count;
}

}  // namespace

TEST_CASE("coloring spaces of small diagrams") {
  Diagram unknot;
  unknot.free_loops = 1;
  ColoringSpace u5 = coloring_space(unknot, 5);
  CHECK(u5.dim() == 1);
  CHECK(u5.cardinality_string() == "5");
  CHECK(u5.cardinality_int() == 5);

  ColoringSpace t3 = coloring_space(trefoil(), 3);
  CHECK(t3.cardinality_int() == 9);
  CHECK(t3.cardinality_string() == "3^2");
  CHECK(brute_col(trefoil(), 3) == 9);

  ColoringSpace t5 = coloring_space(trefoil(), 5);
  CHECK(t5.cardinality_int() == 5);

  ColoringSpace f5 = coloring_space(figure_eight(), 5);
  CHECK(f5.cardinality_int() == 25);
  CHECK(brute_col(figure_eight(), 5) == 25);

  // composite modulus via Smith reduction: trefoil mod 6 = Z_6 x Z_3
  ColoringSpace t6 = coloring_space(trefoil(), 6);
  CHECK(t6.cardinality_int() == brute_col(trefoil(), 6));
  ColoringSpace t4 = coloring_space(trefoil(), 4);
  CHECK(t4.cardinality_int() == brute_col(trefoil(), 4));
  ColoringSpace f4 = coloring_space(figure_eight(), 4);
  CHECK(f4.cardinality_int() == brute_col(figure_eight(), 4));
}

TEST_CASE("coloring basis satisfies the relations and contains monochromatic") {
  for (Int k : {3, 4, 5, 6, 7, 9}) {
    Diagram d = figure_eight();
    ColoringSpace cs = coloring_space(d, k);
    IntMat rel = coloring_relations(d);
    for (int i = 0; i < cs.basis.rows(); ++i) {
      IntVec prod = rel * cs.basis.row(i).transpose();
      for (int j = 0; j < prod.size(); ++j) CHECK(mod_reduce(prod[j], k) == 0);
    }
    if (is_prime(k)) {
      RowSpan span(cs.ambient_dim, k);
      for (int i = 0; i < cs.basis.rows(); ++i) span.insert(cs.basis.row(i).transpose());
      CHECK(span.contains(IntVec::Ones(cs.ambient_dim)));
    }
  }
}

TEST_CASE("coloring is invariant under mirror and relabeling") {
  for (Int k : {3, 5, 7}) {
    ColoringSpace a = coloring_space(trefoil(), k);
    CHECK(structure_equal(a, coloring_space(mirror(trefoil()), k)));
    CHECK(structure_equal(a, coloring_space(relabeled(trefoil(), 50), k)));
  }
}

TEST_CASE("determinants") {
  Diagram unknot;
  unknot.free_loops = 1;
  CHECK(determinant(unknot) == 1);

  CHECK(determinant(trefoil()) == 3);
  CHECK(determinant(figure_eight()) == 5);
  CHECK(determinant(braid_closure(BraidWord{2, {1, 1}})) == 2);   // hopf
  CHECK(determinant(braid_closure(BraidWord{2, {1, 1, 1, 1, 1}})) == 5);  // 5_1

  // split diagrams have infinite H_1
  Diagram t2;
  t2.free_loops = 2;
  CHECK(determinant(t2) == 0);
  Diagram split = trefoil();
  split.free_loops = 1;
  CHECK(determinant(split) == 0);
  // connected unlink diagram (clasp-free R2 pattern) also gives 0
  CHECK(determinant(braid_closure(BraidWord{2, {1, -1}})) == 0);
}

TEST_CASE("boundary images of elementary tangles") {
  // 0-tangle boundary colorings: (a, b, b, a); image dim 2, kernel 0
  BoundaryColoringSpace z = boundary_image(zero_tangle(), 3);
  CHECK(z.n == 2);
  CHECK(z.image_dim == 2);
  CHECK(z.kernel_dim == 0);
  for (int i = 0; i < z.image_basis.rows(); ++i) {
    Int alt = 0;
    for (int j = 0; j < 4; ++j) alt += ((j % 2 == 0) ? -1 : 1) * z.image_basis(i, j);
    CHECK(mod_reduce(alt, 3) == 0);
  }

  BoundaryColoringSpace c = boundary_image(crossing_tangle(1), 5);
  CHECK(c.image_dim == 2);
  CHECK(c.kernel_dim == 0);

  // monochromatic coloring maps to the constant vector
  ColoringSpace cs = coloring_space(zero_tangle(), 3);
  RowSpan span(4, 3);
  for (int i = 0; i < z.image_basis.rows(); ++i) span.insert(z.image_basis.row(i).transpose());
  CHECK(span.contains(IntVec::Ones(4)));
}
