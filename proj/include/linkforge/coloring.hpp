#pragma once

#include <optional>
#include <string>

#include "linkforge/diagram.hpp"
#include "linkforge/linalg.hpp"

namespace linkforge {

// The abelian group Col_k(D) of Fox k-colorings.
struct ColoringSpace {
  Int modulus = 0;
  int ambient_dim = 0;              // arcs plus free loops
  IntMat basis;                     // one generator per row, entries in [0,k)
  std::vector<Int> cyclic_factors;  // nontrivial cyclic orders, ascending
  std::map<Int, int> cardinality_exponents;

  int dim() const { return static_cast<int>(cyclic_factors.size()); }
  std::string cardinality_string() const;        // e.g. "5^3"
  std::optional<Int> cardinality_int() const;    // absent when it would overflow
};

// true when the cyclic structures agree (the move-invariance notion of equality)
bool structure_equal(const ColoringSpace& a, const ColoringSpace& b);

// Relation matrix (one row 2*over - under - under per crossing), columns
// indexed by arcs then free loops.
IntMat coloring_relations(const Diagram& d);
IntMat coloring_relations(const Tangle& t);

ColoringSpace coloring_space(const Diagram& d, Int k);
ColoringSpace coloring_space(const Tangle& t, Int k);

// Image of psi: Col_p(T) -> Z_p^{2n} on the boundary coordinates.
struct BoundaryColoringSpace {
  Int p = 0;
  int n = 0;
  IntMat image_basis;  // rows; 2n columns in boundary order
  int image_dim = 0;
  int kernel_dim = 0;
};

BoundaryColoringSpace boundary_image(const Tangle& t, Int p);

// Order of the torsion of H_1 of the double branched cover; 0 when infinite
// (split diagrams included).
Int determinant(const Diagram& d);

}  // namespace linkforge
