#include "linkforge/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace linkforge {

SymplecticSpace symplectic_space(int n, Int p) {
  if (n < 2) throw std::invalid_argument("symplectic space needs n >= 2");
  if (!is_prime(p)) throw std::invalid_argument("symplectic space needs a prime p");
  return SymplecticSpace{p, n};
}

Int form_value(const SymplecticSpace& s, const IntVec& u, const IntVec& v) {
  int len = static_cast<int>(u.size());
  if (static_cast<int>(v.size()) != len || (len != s.full_dim() && len != s.dim()))
    throw std::invalid_argument("form_value: dimension mismatch");
  __int128 acc = 0;
  for (int i = 0; i + 1 < len; ++i) {
    acc += (__int128)u[i] * v[i + 1];
    acc -= (__int128)u[i + 1] * v[i];
  }
  return mod_reduce(static_cast<Int>(acc % s.p), s.p);
}

bool operator<(const SymplecticSubspace& a, const SymplecticSubspace& b) {
  if (a.basis.rows() != b.basis.rows()) return a.basis.rows() < b.basis.rows();
  for (int i = 0; i < a.basis.rows(); ++i)
    for (int j = 0; j < a.basis.cols(); ++j)
      if (a.basis(i, j) != b.basis(i, j)) return a.basis(i, j) < b.basis(i, j);
  return false;
}

SymplecticSubspace make_subspace(const SymplecticSpace& s, const IntMat& rows) {
  if (rows.cols() != s.dim() && rows.rows() > 0)
    throw std::invalid_argument("subspace basis has wrong ambient dimension");
  RowSpan span(s.dim(), s.p);
  for (int i = 0; i < rows.rows(); ++i) span.insert(rows.row(i).transpose());
  return SymplecticSubspace{s, span.basis()};
}

bool is_isotropic(const SymplecticSubspace& w) {
  for (int i = 0; i < w.basis.rows(); ++i)
    for (int j = i + 1; j < w.basis.rows(); ++j)
      if (form_value(w.space, w.basis.row(i).transpose(), w.basis.row(j).transpose()) != 0)
        return false;
  return true;
}

bool is_lagrangian(const SymplecticSubspace& w) {
  return w.dim() == w.space.n - 1 && is_isotropic(w);
}

Int lagrangian_count(int n, Int p) {
  if (n < 2) throw std::invalid_argument("lagrangian_count needs n >= 2");
  __int128 prod = 1;
  for (int i = 1; i <= n - 1; ++i) {
    __int128 f = 1;
    for (int j = 0; j < i; ++j) f *= p;
    prod *= f + 1;
    if (prod > (__int128)std::numeric_limits<Int>::max())
      throw std::overflow_error("lagrangian_count overflow");
  }
  return static_cast<Int>(prod);
}

std::vector<SymplecticSubspace> enumerate_lagrangians(const SymplecticSpace& s) {
  const int dim = s.dim();
  const int k = s.n - 1;

  // guard: candidate echelon forms are bounded by p^(k*dim)
  double log_candidates = k * dim * std::log2(static_cast<double>(s.p));
  if (log_candidates > 24)  // ~10^7
    throw std::invalid_argument("enumerate_lagrangians: size guard exceeded");

  // all pivot column choices, then all fillings of the free entries
  std::vector<SymplecticSubspace> found;
  std::vector<int> pivots(k);
  std::function<void(int, int)> choose = [&](int from, int idx) {
    if (idx == k) {
      std::vector<std::pair<int, int>> free_slots;
      for (int r = 0; r < k; ++r)
        for (int c = pivots[r] + 1; c < dim; ++c) {
          bool is_pivot_col = false;
          for (int r2 = 0; r2 < k; ++r2)
            if (pivots[r2] == c) is_pivot_col = true;
          if (!is_pivot_col) free_slots.emplace_back(r, c);
        }
      IntMat m = IntMat::Zero(k, dim);
      for (int r = 0; r < k; ++r) m(r, pivots[r]) = 1;
      std::function<void(size_t)> fill = [&](size_t slot) {
        if (slot == free_slots.size()) {
          SymplecticSubspace w{s, m};
          if (is_isotropic(w)) found.push_back(w);
          return;
        }
        auto [r, c] = free_slots[slot];
        for (Int v = 0; v < s.p; ++v) {
          m(r, c) = v;
          fill(slot + 1);
        }
        m(r, c) = 0;
      };
      fill(0);
      return;
    }
    for (int c = from; c < dim; ++c) {
      pivots[idx] = c;
      choose(c + 1, idx + 1);
    }
  };
  choose(0, 0);
  std::sort(found.begin(), found.end());
  return found;
}

IntVec e_to_f(const SymplecticSpace& s, const IntVec& a) {
  const int m = 2 * s.n;
  if (static_cast<int>(a.size()) != m) throw std::invalid_argument("e_to_f: wrong length");
  IntVec c(s.full_dim());
  Int prev = 0;
  for (int i = 0; i < m - 1; ++i) {
    c[i] = mod_reduce(a[i] - prev, s.p);
    prev = c[i];
  }
  if (mod_reduce(a[m - 1] - prev, s.p) != 0)
    throw std::invalid_argument("e_to_f: vector violates the alternating condition");
  return c;
}

IntVec quotient_rep(const SymplecticSpace& s, const IntVec& f) {
  if (static_cast<int>(f.size()) != s.full_dim())
    throw std::invalid_argument("quotient_rep: wrong length");
  // subtract f[last] * (1,0,1,0,...,1) to zero the final coordinate
  IntVec r(s.dim());
  Int t = f[s.full_dim() - 1];
  for (int i = 0; i < s.dim(); ++i) {
    Int v = f[i];
    if (i % 2 == 0) v -= t;
    r[i] = mod_reduce(v, s.p);
  }
  return r;
}

SymplecticSubspace tangle_lagrangian(const Tangle& t, Int p) {
  int m = static_cast<int>(t.boundary.size());
  SymplecticSpace s = symplectic_space(m / 2, p);
  ColoringSpace cs = coloring_space(t, p);
  ArcStructure arcs = arc_structure(t);

  RowSpan span(s.dim(), p);
  for (int i = 0; i < cs.basis.rows(); ++i) {
    IntVec bvec(m);
    for (int j = 0; j < m; ++j) bvec[j] = cs.basis(i, arcs.arc_of.at(t.boundary[j]));
    span.insert(quotient_rep(s, e_to_f(s, bvec)));
  }
  SymplecticSubspace w{s, span.basis()};
  if (!is_lagrangian(w))
    throw std::logic_error("tangle_lagrangian: image failed the Lagrangian check");
  return w;
}

}  // namespace linkforge
