#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace linkforge {

using Int = std::int64_t;
using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

// canonical representative in [0, m)
inline Int mod_reduce(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

Int mod_pow(Int a, Int e, Int m);

// inverse of a unit mod m; throws std::domain_error if gcd(a, m) != 1
Int mod_inverse(Int a, Int m);

bool is_prime(Int n);

// prime factorization, ascending
std::map<Int, int> factorize(Int n);

// In-place reduced row echelon form over F_p. Returns the pivot columns.
std::vector<int> rref_mod(IntMat& m, Int p);

int rank_mod(IntMat m, Int p);

// Basis of { x : m x = 0 } over F_p, one solution per row.
IntMat nullspace_mod(const IntMat& m, Int p);

// Row space over F_p maintained in reduced echelon form.
class RowSpan {
 public:
  RowSpan(int dim, Int p) : dim_(dim), p_(p) {}

  // Reduce v against the current basis; insert the remainder if nonzero.
  // Returns true when the rank grew.
  bool insert(IntVec v);
  bool contains(IntVec v) const;
  int rank() const { return static_cast<int>(rows_.size()); }
  int dim() const { return dim_; }

  // basis rows ordered by pivot column
  IntMat basis() const;

  friend bool operator==(const RowSpan& a, const RowSpan& b) {
    return a.dim_ == b.dim_ && a.p_ == b.p_ && a.rows_ == b.rows_;
  }

 private:
  int dim_;
  Int p_;
  std::map<int, std::vector<Int>> rows_;  // pivot column -> normalized row
};

struct SmithForm {
  std::vector<Int> divisors;  // nonzero d_1 | d_2 | ... | d_r
  IntMat right;               // unimodular V with (U A V) diagonal; V tracks the variables
  int rank = 0;
  int cols = 0;
};

// Smith normal form over Z. Throws std::overflow_error if intermediate
// entries leave the safe int64 range.
SmithForm smith_normal_form(IntMat a);

}  // namespace linkforge
