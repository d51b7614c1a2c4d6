#include "linkforge/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace linkforge {

Int mod_pow(Int a, Int e, Int m) {
  a = mod_reduce(a, m);
  Int r = 1 % m;
  while (e > 0) {
    if (e & 1) r = (__int128)r * a % m;
    a = (__int128)a * a % m;
    e >>= 1;
  }
  return r;
}

Int mod_inverse(Int a, Int m) {
  Int t = 0, new_t = 1, r = m, new_r = mod_reduce(a, m);
  while (new_r != 0) {
    Int q = r / new_r;
    std::swap(t -= q * new_t, new_t);
    std::swap(r -= q * new_r, new_r);
  }
  if (r != 1) throw std::domain_error("mod_inverse: not a unit");
  return mod_reduce(t, m);
}

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::map<Int, int> factorize(Int n) {
  std::map<Int, int> f;
  for (Int d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      ++f[d];
      n /= d;
    }
  if (n > 1) ++f[n];
  return f;
}

std::vector<int> rref_mod(IntMat& m, Int p) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = mod_reduce(m(i, j), p);

  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) m.row(piv).swap(m.row(r));
    Int inv = mod_inverse(m(r, c), p);
    for (int j = c; j < cols; ++j) m(r, j) = (__int128)m(r, j) * inv % p;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Int f = m(i, c);
      for (int j = c; j < cols; ++j)
        m(i, j) = mod_reduce(m(i, j) - (__int128)f * m(r, j) % p, p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank_mod(IntMat m, Int p) { return static_cast<int>(rref_mod(m, p).size()); }

IntMat nullspace_mod(const IntMat& m, Int p) {
  IntMat r = m;
  std::vector<int> pivots = rref_mod(r, p);
  const int cols = static_cast<int>(m.cols());
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;

  IntMat basis(cols - static_cast<int>(pivots.size()), cols);
  basis.setZero();
  int out = 0;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    basis(out, c) = 1;
    for (int i = 0; i < static_cast<int>(pivots.size()); ++i)
      basis(out, pivots[i]) = mod_reduce(-r(i, c), p);
    ++out;
  }
  return basis;
}

bool RowSpan::insert(IntVec v) {
  if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("RowSpan: dimension mismatch");
  std::vector<Int> w(dim_);
  for (int i = 0; i < dim_; ++i) w[i] = mod_reduce(v[i], p_);
  for (int c = 0; c < dim_; ++c) {
    if (w[c] == 0) continue;
    auto it = rows_.find(c);
    if (it == rows_.end()) {
      Int inv = mod_inverse(w[c], p_);
      for (int j = c; j < dim_; ++j) w[j] = (__int128)w[j] * inv % p_;
      // reduce existing rows against the new one
      for (auto& [piv, row] : rows_) {
        Int f = row[c];
        if (f == 0) continue;
        for (int j = c; j < dim_; ++j) row[j] = mod_reduce(row[j] - (__int128)f * w[j] % p_, p_);
      }
      rows_.emplace(c, std::move(w));
      return true;
    }
    Int f = w[c];
    const std::vector<Int>& row = it->second;
    for (int j = c; j < dim_; ++j) w[j] = mod_reduce(w[j] - (__int128)f * row[j] % p_, p_);
  }
  return false;
}

bool RowSpan::contains(IntVec v) const {
  std::vector<Int> w(dim_);
  for (int i = 0; i < dim_; ++i) w[i] = mod_reduce(v[i], p_);
  for (int c = 0; c < dim_; ++c) {
    if (w[c] == 0) continue;
    auto it = rows_.find(c);
    if (it == rows_.end()) return false;
    Int f = w[c];
    for (int j = c; j < dim_; ++j) w[j] = mod_reduce(w[j] - (__int128)f * it->second[j] % p_, p_);
  }
  return true;
}

IntMat RowSpan::basis() const {
  IntMat b(rows_.size(), dim_);
  int i = 0;
  for (const auto& [piv, row] : rows_) {
    for (int j = 0; j < dim_; ++j) b(i, j) = row[j];
    ++i;
  }
  return b;
}

namespace {

constexpr Int kOverflowLimit = Int(1) << 60;

void check_range(const IntMat& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > kOverflowLimit)
        throw std::overflow_error("smith_normal_form: entry overflow");
}

}  // namespace

SmithForm smith_normal_form(IntMat a) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  SmithForm out;
  out.cols = cols;
  out.right = IntMat::Identity(cols, cols);

  int t = 0;
  while (t < rows && t < cols) {
    // locate a minimal nonzero entry in the trailing block
    int bi = -1, bj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (a(i, j) != 0 && (bi < 0 || std::abs(a(i, j)) < std::abs(a(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi < 0) break;
    if (bi != t) a.row(bi).swap(a.row(t));
    if (bj != t) {
      a.col(bj).swap(a.col(t));
      out.right.col(bj).swap(out.right.col(t));
    }

    bool clean = true;
    for (int i = t + 1; i < rows; ++i) {
      Int q = a(i, t) / a(t, t);
      if (q != 0) a.row(i) -= q * a.row(t);
      if (a(i, t) != 0) clean = false;
    }
    for (int j = t + 1; j < cols; ++j) {
      Int q = a(t, j) / a(t, t);
      if (q != 0) {
        a.col(j) -= q * a.col(t);
        out.right.col(j) -= q * out.right.col(t);
      }
      if (a(t, j) != 0) clean = false;
    }
    check_range(a);
    if (!clean) continue;  // smaller remainders surfaced; re-pivot

    // divisibility: pivot must divide the rest of the block
    bool divides = true;
    for (int i = t + 1; i < rows && divides; ++i)
      for (int j = t + 1; j < cols && divides; ++j)
        if (a(i, j) % a(t, t) != 0) {
          a.row(t) += a.row(i);
          divides = false;
        }
    if (!divides) continue;

    if (a(t, t) < 0) {
      a.col(t) = -a.col(t);
      out.right.col(t) = -out.right.col(t);
    }
    ++t;
  }

  out.rank = t;
  for (int i = 0; i < t; ++i) out.divisors.push_back(a(i, i));
  return out;
}

}  // namespace linkforge
