#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "linkforge/diagram.hpp"

namespace linkforge {

struct SkeinBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Integer Laurent polynomial in a and x.
struct LaurentPoly2 {
  std::map<std::pair<int, int>, Int> terms;  // (a power, x power) -> coefficient

  static LaurentPoly2 constant(Int c);
  static LaurentPoly2 monomial(int a_pow, int x_pow, Int c);

  bool is_zero() const { return terms.empty(); }
  LaurentPoly2& operator+=(const LaurentPoly2& o);
  LaurentPoly2& operator-=(const LaurentPoly2& o);
  friend LaurentPoly2 operator+(LaurentPoly2 a, const LaurentPoly2& b) { return a += b; }
  friend LaurentPoly2 operator-(LaurentPoly2 a, const LaurentPoly2& b) { return a -= b; }
  friend LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b);
  friend bool operator==(const LaurentPoly2&, const LaurentPoly2&) = default;

  LaurentPoly2 shifted(int da, int dx) const;  // multiply by a^da x^dx
  std::string str() const;                     // deterministic term list
};

// the trivial-circle factor (a + a^-1) x^-1 - 1
LaurentPoly2 kauffman_delta();

// Exact element u + v*x of Z[x]/(x^2 + x - 1), x = (-1+sqrt5)/2 = 2cos(2pi/5).
struct GoldenValue {
  Int u = 0;
  Int v = 0;

  friend GoldenValue operator+(GoldenValue a, GoldenValue b) { return {a.u + b.u, a.v + b.v}; }
  friend GoldenValue operator-(GoldenValue a, GoldenValue b) { return {a.u - b.u, a.v - b.v}; }
  friend GoldenValue operator*(GoldenValue a, GoldenValue b) {
    // x^2 = 1 - x
    return {a.u * b.u + a.v * b.v, a.u * b.v + a.v * b.u - a.v * b.v};
  }
  friend bool operator==(const GoldenValue&, const GoldenValue&) = default;

  bool is_zero() const { return u == 0 && v == 0; }
};

inline GoldenValue golden_sqrt5() { return {1, 2}; }  // 2x + 1

// epsilon * sqrt5^lambda
struct PhiDecomposition {
  int epsilon = 1;
  int lambda = 0;
};

// Framed Kauffman polynomial of a nonempty diagram, F(unknot) = 1.
LaurentPoly2 kauffman_framed(const Diagram& d);

// Exact F_L(1, 2cos(2pi/5)) by skein recursion in Z[x]/(x^2+x-1).
GoldenValue eval_phi5(const Diagram& d);

// substitute a = 1, x = 2cos(2pi/5) into a full polynomial
GoldenValue golden_eval(const LaurentPoly2& p);

// Split g = +-sqrt5^lambda; throws std::domain_error otherwise.
PhiDecomposition decompose(const GoldenValue& g);

// recursion node cap; reads LINKFORGE_NODE_BUDGET when no override is given
long skein_node_budget();

struct SkeinCounters {
  long nodes = 0;
  long budget = 0;
};

// advanced entry points with explicit budget control
LaurentPoly2 kauffman_framed(const Diagram& d, long node_budget);
GoldenValue eval_phi5(const Diagram& d, long node_budget);

}  // namespace linkforge
