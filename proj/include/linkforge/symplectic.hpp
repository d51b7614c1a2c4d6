#pragma once

#include "linkforge/coloring.hpp"
#include "linkforge/diagram.hpp"
#include "linkforge/linalg.hpp"

namespace linkforge {

// The space Z_p^{2n-2} = Z_p^{2n-1} / <monochromatic> carrying the symplectic
// form induced by phi(f_i, f_j) = +-1 for |i-j| = 1, 0 otherwise, where
// f_k = e_k + e_{k+1} spans the alternating-sum-zero subspace of Z_p^{2n}.
// Quotient representatives are f-coordinate vectors with the last coordinate
// reduced to zero via f_1 + f_3 + ... + f_{2n-1} = 0.
struct SymplecticSpace {
  Int p = 0;
  int n = 0;

  int full_dim() const { return 2 * n - 1; }  // f-coordinates before the quotient
  int dim() const { return 2 * n - 2; }
};

SymplecticSpace symplectic_space(int n, Int p);

// phi on f-coordinate vectors of length 2n-1 (or quotient reps of length 2n-2)
Int form_value(const SymplecticSpace& s, const IntVec& u, const IntVec& v);

// A subspace of the quotient, stored as a reduced-row-echelon basis.
struct SymplecticSubspace {
  SymplecticSpace space;
  IntMat basis;  // rows, 2n-2 columns

  int dim() const { return static_cast<int>(basis.rows()); }

  friend bool operator==(const SymplecticSubspace& a, const SymplecticSubspace& b) {
    return a.space.p == b.space.p && a.space.n == b.space.n && a.basis == b.basis;
  }
  friend bool operator<(const SymplecticSubspace& a, const SymplecticSubspace& b);
};

SymplecticSubspace make_subspace(const SymplecticSpace& s, const IntMat& rows);

bool is_isotropic(const SymplecticSubspace& w);
bool is_lagrangian(const SymplecticSubspace& w);

// Number of Lagrangian subspaces of (F_p)^{2n-2}: product of (p^i + 1).
Int lagrangian_count(int n, Int p);

// Exhaustive enumeration (guarded against non-desk-scale inputs).
std::vector<SymplecticSubspace> enumerate_lagrangians(const SymplecticSpace& s);

// e-coordinates (length 2n, alternating sum 0) -> f-coordinates (length 2n-1)
IntVec e_to_f(const SymplecticSpace& s, const IntVec& a);
// reduce an f-coordinate vector into the quotient (length 2n-2)
IntVec quotient_rep(const SymplecticSpace& s, const IntVec& f);

// Image of the boundary map on Col_p(T)/<monochromatic> inside the quotient;
// Lagrangian for every tangle.
SymplecticSubspace tangle_lagrangian(const Tangle& t, Int p);

}  // namespace linkforge
